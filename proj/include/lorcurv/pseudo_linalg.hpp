#pragma once

#include <complex>
#include <optional>
#include <tuple>
#include <vector>

#include "lorcurv/complex.hpp"
#include "lorcurv/matrix.hpp"
#include "lorcurv/poly.hpp"

namespace lorcurv {

struct Signature {
  int pos = 0, neg = 0, null = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Signature by Jacobi's leading-principal-minor rule when every minor is
// nonzero, otherwise by symmetric congruence reduction (handles zero pivots
// and degenerate forms).
template <class S>
Signature symmetric_signature(const Matrix<S>& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("signature of non-square matrix");
  size_t n = g.rows();
  std::vector<S> minors(n + 1, S(1));
  bool all_nonzero = true;
  for (size_t k = 1; k <= n && all_nonzero; ++k) {
    Matrix<S> lead(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) lead(i, j) = g(i, j);
    minors[k] = lead.det();
    if (is_zero(minors[k])) all_nonzero = false;
  }
  if (all_nonzero) {
    Signature s;
    for (size_t k = 1; k <= n; ++k) {
      bool flip = (minors[k] < S(0)) != (minors[k - 1] < S(0));
      (flip ? s.neg : s.pos)++;
    }
    return s;
  }
  // Congruence reduction fallback.
  Matrix<S> a = g;
  Signature s;
  std::vector<bool> done(n, false);
  size_t remaining = n;
  while (remaining > 0) {
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && !is_zero(a(i, i))) {
        if (piv == n || scalar_traits<S>::better_pivot(a(i, i), a(piv, piv))) piv = i;
      }
    if (piv == n) {
      // No nonzero diagonal entry. Mix in an off-diagonal one if any remains.
      size_t bi = n, bj = n;
      for (size_t i = 0; i < n && bi == n; ++i)
        if (!done[i])
          for (size_t j = i + 1; j < n; ++j)
            if (!done[j] && !is_zero(a(i, j))) {
              bi = i;
              bj = j;
              break;
            }
      if (bi == n) {
        s.null += static_cast<int>(remaining);
        return s;
      }
      // e_bi += e_bj makes a(bi,bi) = 2 a(bi,bj) != 0.
      for (size_t k = 0; k < n; ++k) a(bi, k) += a(bj, k);
      for (size_t k = 0; k < n; ++k) a(k, bi) += a(k, bj);
      continue;
    }
    (a(piv, piv) > S(0) ? s.pos : s.neg)++;
    done[piv] = true;
    --remaining;
    S inv = S(1) / a(piv, piv);
    for (size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      S f = a(i, piv) * inv;
      if (is_zero(f)) continue;
      for (size_t j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= f * a(piv, j);
      a(i, piv) = S(0);
    }
    for (size_t j = 0; j < n; ++j)
      if (!done[j]) a(piv, j) = S(0);
  }
  return s;
}

// Nondegenerate symmetric bilinear form with cached inverse.
template <class S>
class InnerProduct {
 public:
  explicit InnerProduct(Matrix<S> gram) : g_(std::move(gram)) {
    if (g_.rows() != g_.cols()) throw std::invalid_argument("gram matrix must be square");
    if (g_ != g_.transpose()) throw std::invalid_argument("gram matrix must be symmetric");
    if (is_zero(g_.det())) throw std::invalid_argument("gram matrix must be nondegenerate");
    ginv_ = g_.inverse();
  }

  size_t dim() const { return g_.rows(); }
  const Matrix<S>& gram() const { return g_; }
  const Matrix<S>& gram_inverse() const { return ginv_; }

  S dot(const std::vector<S>& u, const std::vector<S>& v) const {
    auto gv = g_.apply(v);
    S r(0);
    for (size_t i = 0; i < u.size(); ++i) r += u[i] * gv[i];
    return r;
  }

  Signature signature() const { return symmetric_signature(g_); }
  bool lorentzian() const {
    auto s = signature();
    return s.null == 0 && s.neg == 1 && s.pos == static_cast<int>(dim()) - 1;
  }

  // Metric adjoint: <f(u),v> = <u, adjoint(f)(v)>.
  Matrix<S> adjoint(const Matrix<S>& f) const { return ginv_ * f.transpose() * g_; }

  bool self_adjoint(const Matrix<S>& f) const {
    Matrix<S> gf = g_ * f;
    return gf == gf.transpose();
  }
  bool skew_adjoint(const Matrix<S>& f) const {
    Matrix<S> gf = g_ * f;
    return gf == -gf.transpose();
  }

  // Endomorphism (u ^ v): x -> <v,x> u - <u,x> v.
  Matrix<S> wedge(const std::vector<S>& u, const std::vector<S>& v) const {
    size_t n = dim();
    auto gu = g_.apply(u), gv = g_.apply(v);
    Matrix<S> w(n, n);
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) w(i, j) = gv[j] * u[i] - gu[j] * v[i];
    return w;
  }

  Matrix<S> wedge_basis(size_t i, size_t j) const {
    std::vector<S> u(dim(), S(0)), v(dim(), S(0));
    u[i] = S(1);
    v[j] = S(1);
    return wedge(u, v);
  }

 private:
  Matrix<S> g_, ginv_;
};

enum class SymCanonicalKind { Diag, ComplexPair, Alpha2, Alpha3 };

inline const char* to_string(SymCanonicalKind k) {
  switch (k) {
    case SymCanonicalKind::Diag: return "diagonalizable";
    case SymCanonicalKind::ComplexPair: return "complex-pair";
    case SymCanonicalKind::Alpha2: return "jordan-2";
    case SymCanonicalKind::Alpha3: return "jordan-3";
  }
  return "?";
}

template <class S>
struct SymCanonicalType {
  SymCanonicalKind kind;
  // Rational (resp. tolerated) real eigenvalues with algebraic multiplicity.
  std::vector<std::pair<S, int>> real_eigenvalues;
  bool eigenvalues_complete = false;
  // Eigenvalue carrying the Jordan block, for Alpha2/Alpha3.
  std::optional<S> jordan_eigenvalue;
};

namespace detail {

// Roots of a monic polynomial over doubles, Durand-Kerner.
inline std::vector<std::complex<double>> numeric_roots(const std::vector<double>& monic) {
  size_t n = monic.size() - 1;
  std::vector<std::complex<double>> z(n);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> p(1, 0);
  for (size_t i = 0; i < n; ++i, p *= seed) z[i] = p * seed;
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = 0;
    for (size_t i = monic.size(); i-- > 0;) r = r * x + monic[i];
    return r;
  };
  for (int it = 0; it < 200; ++it) {
    double moved = 0;
    for (size_t i = 0; i < n; ++i) {
      std::complex<double> d = 1;
      for (size_t j = 0; j < n; ++j)
        if (j != i) d *= z[i] - z[j];
      if (std::abs(d) < 1e-300) continue;
      auto step = eval(z[i]) / d;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

}  // namespace detail

// Jordan shape of a self-adjoint endomorphism of a Lorentzian space. On such
// spaces at most one nontrivial Jordan block occurs (size 2 or 3, real
// eigenvalue), or one complex-conjugate eigenvalue pair; everything else is
// diagonalizable with real eigenvalues.
template <class S>
SymCanonicalType<S> symmetric_canonical_type(const InnerProduct<S>& ip, const Matrix<S>& f) {
  if (!ip.self_adjoint(f))
    throw std::invalid_argument("symmetric_canonical_type needs a self-adjoint endomorphism");
  SymCanonicalType<S> out;
  auto cp = f.char_poly();
  Poly<S> chi(cp);

  if constexpr (scalar_traits<S>::exact) {
    auto rr = rational_roots(chi);
    int mult_sum = 0;
    for (auto& [r, m] : rr.roots) {
      out.real_eigenvalues.push_back({r, m});
      mult_sum += m;
    }
    out.eigenvalues_complete = rr.complete && mult_sum == chi.deg();

    Poly<S> rad = squarefree_radical(chi);
    // Evaluate rad at f; zero matrix iff f is diagonalizable over C.
    Matrix<S> radf(f.rows(), f.cols());
    {
      Matrix<S> id = Matrix<S>::identity(f.rows());
      Matrix<S> acc(f.rows(), f.cols());
      Matrix<S> pw = id;
      for (int i = 0; i <= rad.deg(); ++i) {
        acc += pw * rad.c[i];
        if (i < rad.deg()) pw = pw * f;
      }
      radf = acc;
    }
    if (radf.is_zero_matrix()) {
      int real_distinct = real_root_count(chi);
      out.kind = (real_distinct == rad.deg()) ? SymCanonicalKind::Diag
                                              : SymCanonicalKind::ComplexPair;
      return out;
    }
    // Non-semisimple: locate the eigenvalue carrying the block among the
    // repeated roots.
    Poly<S> rep = poly_gcd(chi, chi.derivative());
    auto rep_roots = rational_roots(rep);
    for (auto& [lam, m] : rep_roots.roots) {
      Matrix<S> a = f;
      for (size_t i = 0; i < a.rows(); ++i) a(i, i) -= lam;
      Matrix<S> a2 = a * a;
      size_t r1 = a.rank(), r2 = a2.rank(), r3 = (a2 * a).rank();
      if (r1 == r2) continue;  // semisimple at lam
      out.jordan_eigenvalue = lam;
      out.kind = (r2 > r3) ? SymCanonicalKind::Alpha3 : SymCanonicalKind::Alpha2;
      return out;
    }
    throw std::domain_error(
        "non-semisimple eigenvalue is not rational; exact canonical type unavailable");
  } else {
    // Float path: numeric roots, then tolerance-based clustering and ranks.
    std::vector<double> mc(cp.size());
    for (size_t i = 0; i < cp.size(); ++i) mc[i] = scalar_traits<S>::to_double(cp[i]);
    auto roots = detail::numeric_roots(mc);
    double tol = float_tol();
    double scale = 1.0;
    for (auto& z : roots) scale = std::max(scale, std::abs(z));
    std::vector<std::pair<std::complex<double>, int>> clusters;
    for (auto& z : roots) {
      bool merged = false;
      for (auto& [c, m] : clusters)
        if (std::abs(z - c) <= 1e3 * tol * scale) {
          c = (c * double(m) + z) / double(m + 1);
          ++m;
          merged = true;
          break;
        }
      if (!merged) clusters.push_back({z, 1});
    }
    // Multiple roots come back with ~sqrt(eps) error; rank probes below must
    // not resolve that noise as structure.
    double spread = 0;
    for (auto& z : roots) {
      double best = 1e300;
      for (auto& [c, m] : clusters) best = std::min(best, std::abs(z - c));
      spread = std::max(spread, best);
    }
    double rank_tol = std::max(tol, 10 * spread);
    bool has_complex = false;
    for (auto& [c, m] : clusters) {
      if (std::abs(c.imag()) > 1e3 * tol * scale) {
        has_complex = true;
      } else {
        out.real_eigenvalues.push_back({S(c.real()), m});
      }
    }
    out.eigenvalues_complete = true;
    if (has_complex) {
      out.kind = SymCanonicalKind::ComplexPair;
      return out;
    }
    ToleranceGuard guard(rank_tol);
    for (auto& [lam, m] : out.real_eigenvalues) {
      if (m < 2) continue;
      Matrix<S> a = f;
      for (size_t i = 0; i < a.rows(); ++i) a(i, i) -= lam;
      Matrix<S> a2 = a * a;
      size_t r1 = a.rank(), r2 = a2.rank(), r3 = (a2 * a).rank();
      if (r1 == r2) continue;
      out.jordan_eigenvalue = lam;
      out.kind = (r2 > r3) ? SymCanonicalKind::Alpha3 : SymCanonicalKind::Alpha2;
      return out;
    }
    out.kind = SymCanonicalKind::Diag;
    return out;
  }
}

}  // namespace lorcurv
