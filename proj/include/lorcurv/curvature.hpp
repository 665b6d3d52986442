#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lorcurv/pseudo_linalg.hpp"

namespace lorcurv {

template <class S>
std::vector<S> basis_vec(size_t n, size_t i) {
  std::vector<S> v(n, S(0));
  v[i] = S(1);
  return v;
}

// Index of the pair (i,j), i<j, in lexicographic order. For n=4 this matches
// the bivector basis order e12, e13, e14, e23, e24, e34.
inline size_t pair_index(size_t i, size_t j, size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::vector<std::pair<size_t, size_t>> index_pairs(size_t n) {
  std::vector<std::pair<size_t, size_t>> p;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) p.push_back({i, j});
  return p;
}

// Algebraic curvature tensor: a bivector's worth of endomorphism values over
// a fixed inner product space. K(i,j) stored for i<j; K(v,u) = -K(u,v).
template <class S>
class CurvatureTensor {
 public:
  CurvatureTensor(InnerProduct<S> ip, std::vector<Matrix<S>> components)
      : ip_(std::move(ip)), k_(std::move(components)) {
    size_t n = ip_.dim();
    if (k_.size() != n * (n - 1) / 2)
      throw std::invalid_argument("curvature tensor needs one component per basis pair");
    for (const auto& m : k_)
      if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("curvature component shape mismatch");
  }

  static CurvatureTensor zero(InnerProduct<S> ip) {
    size_t n = ip.dim();
    return CurvatureTensor(std::move(ip),
                           std::vector<Matrix<S>>(n * (n - 1) / 2, Matrix<S>(n, n)));
  }

  size_t dim() const { return ip_.dim(); }
  const InnerProduct<S>& ip() const { return ip_; }
  const std::vector<Matrix<S>>& components() const { return k_; }

  const Matrix<S>& at(size_t i, size_t j) const { return k_[pair_index(i, j, dim())]; }
  Matrix<S>& at(size_t i, size_t j) { return k_[pair_index(i, j, dim())]; }

  Matrix<S> eval_basis(size_t i, size_t j) const {
    if (i == j) return Matrix<S>(dim(), dim());
    return i < j ? at(i, j) : -at(j, i);
  }

  Matrix<S> eval(const std::vector<S>& u, const std::vector<S>& v) const {
    size_t n = dim();
    Matrix<S> r(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        S c = u[i] * v[j] - u[j] * v[i];
        if (!is_zero(c)) r += at(i, j) * c;
      }
    return r;
  }

  // K(w, e_b) for an arbitrary first argument.
  Matrix<S> eval_left(const std::vector<S>& w, size_t b) const {
    size_t n = dim();
    Matrix<S> r(n, n);
    for (size_t i = 0; i < n; ++i) {
      if (is_zero(w[i]) || i == b) continue;
      r += eval_basis(i, b) * w[i];
    }
    return r;
  }

 private:
  InnerProduct<S> ip_;
  std::vector<Matrix<S>> k_;
};

struct CurvatureDefect {
  enum Kind { None, ValuesNotSkewAdjoint, FirstBianchi, PairSymmetry } kind = None;
  size_t i = 0, j = 0, k = 0, l = 0;
  bool ok() const { return kind == None; }
};

// Checks the algebraic curvature axioms. Antisymmetry in the argument pair
// holds by construction of the storage.
template <class S>
CurvatureDefect validate(const CurvatureTensor<S>& kt) {
  size_t n = kt.dim();
  const auto& ip = kt.ip();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!ip.skew_adjoint(kt.at(i, j))) return {CurvatureDefect::ValuesNotSkewAdjoint, i, j};
  // First Bianchi: K(u,v)w + K(v,w)u + K(w,u)v = 0 on basis triples.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        auto s = kt.at(i, j).apply(basis_vec<S>(n, k));
        auto t = kt.eval_basis(j, k).apply(basis_vec<S>(n, i));
        auto u = kt.eval_basis(k, i).apply(basis_vec<S>(n, j));
        for (size_t r = 0; r < n; ++r)
          if (!is_zero(s[r] + t[r] + u[r])) return {CurvatureDefect::FirstBianchi, i, j, k};
      }
  // Pair symmetry: <K(ei,ej)el, ek> = <K(ek,el)ej, ei>.
  const auto& g = ip.gram();
  auto entry = [&](size_t a, size_t b, size_t c, size_t d) {
    // <K(ea,eb)ed, ec>
    auto v = kt.eval_basis(a, b).apply(basis_vec<S>(n, d));
    S r(0);
    for (size_t x = 0; x < n; ++x) r += g(c, x) * v[x];
    return r;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = i; k < n; ++k)
        for (size_t l = k + 1; l < n; ++l)
          if (!(entry(i, j, k, l) == entry(k, l, i, j)))
            return {CurvatureDefect::PairSymmetry, i, j, k, l};
  return {};
}

// ric(u,w) = tr(a -> K(u,a)w), returned as a bilinear form matrix.
template <class S>
Matrix<S> ricci_form(const CurvatureTensor<S>& kt) {
  size_t n = kt.dim();
  Matrix<S> ric(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      S t(0);
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        auto v = kt.eval_basis(i, r).apply(basis_vec<S>(n, j));
        t += v[r];
      }
      ric(i, j) = t;
    }
  return ric;
}

template <class S>
Matrix<S> ricci_operator(const CurvatureTensor<S>& kt) {
  return kt.ip().gram_inverse() * ricci_form(kt);
}

template <class S>
S scalar_curvature(const CurvatureTensor<S>& kt) {
  return ricci_operator(kt).trace();
}

struct PairCounterexample {
  size_t i, j, a, b;
};

// Semi-symmetry: curvature operators act as derivations of the tensor,
// [K(u,v), K(a,b)] = K(K(u,v)a, b) + K(a, K(u,v)b). First failing basis
// quadruple in lexicographic order, if any.
template <class S>
std::optional<PairCounterexample> semi_symmetry_counterexample(const CurvatureTensor<S>& kt) {
  size_t n = kt.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const Matrix<S>& kij = kt.at(i, j);
      for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
          Matrix<S> lhs = commutator(kij, kt.at(a, b));
          auto ka = kij.apply(basis_vec<S>(n, a));
          auto kb = kij.apply(basis_vec<S>(n, b));
          Matrix<S> rhs = kt.eval_left(ka, b) - kt.eval_left(kb, a);
          if (lhs != rhs) return PairCounterexample{i, j, a, b};
        }
    }
  return std::nullopt;
}

template <class S>
bool is_semi_symmetric(const CurvatureTensor<S>& kt) {
  return !semi_symmetry_counterexample(kt).has_value();
}

// Ricci operator commutes with every curvature operator; a consequence of
// semi-symmetry used as a cheaper screen.
template <class S>
std::optional<std::pair<size_t, size_t>> ricci_commutes_counterexample(
    const CurvatureTensor<S>& kt) {
  Matrix<S> ric = ricci_operator(kt);
  size_t n = kt.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!commutator(kt.at(i, j), ric).is_zero_matrix()) return std::make_pair(i, j);
  return std::nullopt;
}

template <class S>
bool ricci_commutes(const CurvatureTensor<S>& kt) {
  return !ricci_commutes_counterexample(kt).has_value();
}

// Lie algebra generated by the curvature operators.
template <class S>
std::vector<Matrix<S>> primitive_holonomy(const CurvatureTensor<S>& kt) {
  std::vector<Matrix<S>> basis = independent_subset(kt.components());
  bool grew = true;
  while (grew) {
    grew = false;
    size_t sz = basis.size();
    for (size_t a = 0; a < sz && !grew; ++a)
      for (size_t b = a + 1; b < sz && !grew; ++b) {
        Matrix<S> c = commutator(basis[a], basis[b]);
        if (c.is_zero_matrix()) continue;
        if (!in_span(c, basis)) {
          basis.push_back(c);
          grew = true;
        }
      }
  }
  return basis;
}

// Holonomy data: the algebra generated by curvature operators, and its
// closure under bracketing with a set of stabilizing operators.
template <class S>
struct Holonomy {
  std::vector<Matrix<S>> primitive;  // h(K)
  std::vector<Matrix<S>> full;       // h(g)
};

template <class S>
Holonomy<S> holonomy_closure(const std::vector<Matrix<S>>& stabilizers,
                             const CurvatureTensor<S>& K) {
  Holonomy<S> h;
  h.primitive = primitive_holonomy(K);
  h.full = h.primitive;
  bool grew = true;
  while (grew) {
    grew = false;
    size_t sz = h.full.size();
    for (size_t i = 0; i < stabilizers.size() && !grew; ++i)
      for (size_t a = 0; a < sz && !grew; ++a) {
        Matrix<S> c = commutator(stabilizers[i], h.full[a]);
        if (!c.is_zero_matrix() && !in_span(c, h.full)) {
          h.full.push_back(c);
          grew = true;
        }
      }
    for (size_t a = 0; a < sz && !grew; ++a)
      for (size_t b = a + 1; b < sz && !grew; ++b) {
        Matrix<S> c = commutator(h.full[a], h.full[b]);
        if (!c.is_zero_matrix() && !in_span(c, h.full)) {
          h.full.push_back(c);
          grew = true;
        }
      }
  }
  return h;
}

template <class S>
struct RicciBlock {
  S eigenvalue;      // 0 for the null block
  bool null_block;   // generalized kernel ker(Ric^2)
  Matrix<S> basis;   // one column per basis vector
};

template <class S>
struct RicciSplitting {
  std::vector<RicciBlock<S>> blocks;
  bool complete = false;             // dimensions add up to n
  bool orthogonal = false;           // blocks pairwise orthogonal
  bool nondegenerate = false;        // the form restricts nondegenerately
  bool cross_curvature_zero = false; // K(Vi, Vj) = 0 for i != j
  bool nonnull_blocks_big = false;   // dim >= 2 away from the null block
  bool ok() const {
    return complete && orthogonal && nondegenerate && cross_curvature_zero &&
           nonnull_blocks_big;
  }
};

// Orthogonal decomposition into the generalized null space of Ric and the
// nonzero eigenspaces. Exact mode requires rational eigenvalues.
template <class S>
RicciSplitting<S> ricci_splitting(const CurvatureTensor<S>& kt) {
  size_t n = kt.dim();
  Matrix<S> ric = ricci_operator(kt);
  RicciSplitting<S> out;

  std::vector<S> eigs;
  if constexpr (scalar_traits<S>::exact) {
    auto rr = rational_roots(Poly<S>(ric.char_poly()));
    int mult = 0;
    for (auto& [r, m] : rr.roots) mult += m;
    if (!rr.complete || mult != static_cast<int>(n))
      throw std::domain_error("ricci eigenvalues are not all rational in exact mode");
    for (auto& [r, m] : rr.roots)
      if (!is_zero(r)) eigs.push_back(r);
  } else {
    std::vector<double> mc;
    for (auto& c : Poly<S>(ric.char_poly()).c) mc.push_back(scalar_traits<S>::to_double(c));
    auto roots = detail::numeric_roots(mc);
    double scale = 1;
    for (auto& z : roots) scale = std::max(scale, std::abs(z));
    for (auto& z : roots) {
      if (std::abs(z.imag()) > float_tol() * 1e3 * scale) continue;
      S cand(z.real());
      if (is_zero(cand)) continue;
      bool dup = false;
      for (auto& e : eigs)
        if (e == cand) dup = true;
      if (!dup) eigs.push_back(cand);
    }
  }

  Matrix<S> ric2 = ric * ric;
  Matrix<S> null_basis = ric2.nullspace();
  if (null_basis.cols() > 0)
    out.blocks.push_back({S(0), true, null_basis});
  for (auto& lam : eigs) {
    Matrix<S> shifted = ric;
    for (size_t i = 0; i < n; ++i) shifted(i, i) -= lam;
    Matrix<S> eb = shifted.nullspace();
    if (eb.cols() > 0) out.blocks.push_back({lam, false, eb});
  }

  size_t total = 0;
  for (auto& b : out.blocks) total += b.basis.cols();
  out.complete = (total == n);

  const auto& g = kt.ip().gram();
  out.orthogonal = true;
  for (size_t a = 0; a < out.blocks.size(); ++a)
    for (size_t b = a + 1; b < out.blocks.size(); ++b) {
      Matrix<S> cross = out.blocks[a].basis.transpose() * g * out.blocks[b].basis;
      if (!cross.is_zero_matrix()) out.orthogonal = false;
    }
  out.nondegenerate = true;
  for (auto& b : out.blocks) {
    Matrix<S> gb = b.basis.transpose() * g * b.basis;
    if (is_zero(gb.det())) out.nondegenerate = false;
  }
  out.cross_curvature_zero = true;
  for (size_t a = 0; a < out.blocks.size(); ++a)
    for (size_t b = a + 1; b < out.blocks.size(); ++b)
      for (size_t ca = 0; ca < out.blocks[a].basis.cols(); ++ca)
        for (size_t cb = 0; cb < out.blocks[b].basis.cols(); ++cb) {
          auto u = out.blocks[a].basis.col(ca);
          auto v = out.blocks[b].basis.col(cb);
          if (!kt.eval(u, v).is_zero_matrix()) out.cross_curvature_zero = false;
        }
  out.nonnull_blocks_big = true;
  for (auto& b : out.blocks)
    if (!b.null_block && b.basis.cols() < 2) out.nonnull_blocks_big = false;
  return out;
}

// In dimension 3 the full curvature is determined by Ricci:
// K(X,Y) = tr(Ric)/2 * X^Y - X^(Ric Y) - (Ric X)^Y.
template <class S>
CurvatureTensor<S> curvature_from_ricci_3d(const InnerProduct<S>& ip, const Matrix<S>& ric_op) {
  if (ip.dim() != 3) throw std::invalid_argument("ricci reconstruction needs dimension 3");
  S half_tr = ric_op.trace() / S(2);
  std::vector<Matrix<S>> comps;
  for (auto [i, j] : index_pairs(3)) {
    auto x = basis_vec<S>(3, i), y = basis_vec<S>(3, j);
    auto ry = ric_op.apply(y), rx = ric_op.apply(x);
    Matrix<S> m = ip.wedge(x, y) * half_tr - ip.wedge(x, ry) - ip.wedge(rx, y);
    comps.push_back(m);
  }
  return CurvatureTensor<S>(ip, std::move(comps));
}

// Weyl projection: subtracts the Ricci-determined part so the result is
// Ricci-flat. Defined for dimension >= 4.
template <class S>
CurvatureTensor<S> weyl(const CurvatureTensor<S>& kt) {
  size_t n = kt.dim();
  if (n < 4) throw std::invalid_argument("weyl projection needs dimension >= 4");
  Matrix<S> ric = ricci_operator(kt);
  S scal = ric.trace();
  S nm2 = S(static_cast<int>(n)) - S(2);
  S a1 = S(-1) / nm2;
  S a0 = scal / (S(2) * (S(static_cast<int>(n)) - S(1)) * nm2);
  Matrix<S> A = ric * a1;
  for (size_t i = 0; i < n; ++i) A(i, i) += a0;
  std::vector<Matrix<S>> comps;
  for (auto [i, j] : index_pairs(n)) {
    auto x = basis_vec<S>(n, i), y = basis_vec<S>(n, j);
    auto ax = A.apply(x), ay = A.apply(y);
    comps.push_back(kt.at(i, j) - kt.ip().wedge(x, ay) - kt.ip().wedge(ax, y));
  }
  return CurvatureTensor<S>(kt.ip(), std::move(comps));
}

// mu with K(u,v) = mu u^v for every pair, when constant.
template <class S>
std::optional<S> constant_curvature_coefficient(const CurvatureTensor<S>& kt) {
  size_t n = kt.dim();
  // Candidate ratio from the first pair with a nonzero wedge.
  std::optional<S> mu;
  for (auto [i, j] : index_pairs(n)) {
    Matrix<S> w = kt.ip().wedge_basis(i, j);
    const Matrix<S>& k = kt.at(i, j);
    if (w.is_zero_matrix()) continue;
    if (k.is_zero_matrix()) {
      mu = S(0);
      break;
    }
    for (size_t r = 0; r < n && !mu; ++r)
      for (size_t c = 0; c < n && !mu; ++c)
        if (!is_zero(w(r, c))) mu = k(r, c) / w(r, c);
    break;
  }
  if (!mu.has_value()) mu = S(0);  // degenerate: every wedge vanished
  for (auto [i, j] : index_pairs(n))
    if (!(kt.ip().wedge_basis(i, j) * (*mu) == kt.at(i, j))) return std::nullopt;
  return mu;
}

}  // namespace lorcurv
