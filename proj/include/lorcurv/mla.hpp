#pragma once

#include <optional>
#include <vector>

#include "lorcurv/curvature.hpp"

namespace lorcurv {

// Lie algebra with a nondegenerate symmetric bilinear form, the algebraic
// model of a Lie group with a left-invariant pseudo-Riemannian metric.
// Brackets are stored for basis pairs i<j.
template <class S>
class MetricLieAlgebra {
 public:
  MetricLieAlgebra(InnerProduct<S> ip, std::vector<std::vector<S>> brackets)
      : ip_(std::move(ip)), br_(std::move(brackets)) {
    size_t n = ip_.dim();
    if (br_.size() != n * (n - 1) / 2)
      throw std::invalid_argument("need one bracket per basis pair");
    for (const auto& v : br_)
      if (v.size() != n) throw std::invalid_argument("bracket vector dimension mismatch");
  }

  size_t dim() const { return ip_.dim(); }
  const InnerProduct<S>& ip() const { return ip_; }

  std::vector<S> bracket_basis(size_t i, size_t j) const {
    size_t n = dim();
    if (i == j) return std::vector<S>(n, S(0));
    if (i < j) return br_[pair_index(i, j, n)];
    auto v = br_[pair_index(j, i, n)];
    for (auto& x : v) x = -x;
    return v;
  }

  std::vector<S> bracket(const std::vector<S>& u, const std::vector<S>& v) const {
    size_t n = dim();
    std::vector<S> r(n, S(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        S c = u[i] * v[j] - u[j] * v[i];
        if (is_zero(c)) continue;
        const auto& b = br_[pair_index(i, j, n)];
        for (size_t k = 0; k < n; ++k) r[k] += c * b[k];
      }
    return r;
  }

  Matrix<S> ad(size_t i) const {
    size_t n = dim();
    Matrix<S> m(n, n);
    for (size_t j = 0; j < n; ++j) {
      auto b = bracket_basis(i, j);
      for (size_t k = 0; k < n; ++k) m(k, j) = b[k];
    }
    return m;
  }

  // First failing Jacobi triple (i<j<k), if any.
  std::optional<std::array<size_t, 3>> jacobi_defect() const {
    size_t n = dim();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) {
          auto a = bracket(bracket_basis(i, j), basis_vec<S>(n, k));
          auto b = bracket(bracket_basis(j, k), basis_vec<S>(n, i));
          auto c = bracket(bracket_basis(k, i), basis_vec<S>(n, j));
          for (size_t r = 0; r < n; ++r)
            if (!is_zero(a[r] + b[r] + c[r])) return std::array<size_t, 3>{i, j, k};
        }
    return std::nullopt;
  }
  bool valid() const { return !jacobi_defect().has_value(); }

  // Left-invariant Levi-Civita connection by the Koszul formula:
  // 2<L_u v, w> = <[u,v],w> + <[w,u],v> + <[w,v],u>.
  std::vector<Matrix<S>> levi_civita() const {
    size_t n = dim();
    std::vector<Matrix<S>> L;
    L.reserve(n);
    const Matrix<S>& ginv = ip_.gram_inverse();
    for (size_t i = 0; i < n; ++i) {
      Matrix<S> r(n, n);  // r(j,k) = <L_i e_j, e_k>
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
          S s = dot(bracket_basis(i, j), k) + dot(bracket_basis(k, i), j) +
                dot(bracket_basis(k, j), i);
          r(j, k) = s / S(2);
        }
      L.push_back(ginv * r.transpose());
    }
    return L;
  }

  Matrix<S> connection_at(const std::vector<S>& u, const std::vector<Matrix<S>>& L) const {
    size_t n = dim();
    Matrix<S> m(n, n);
    for (size_t i = 0; i < n; ++i)
      if (!is_zero(u[i])) m += L[i] * u[i];
    return m;
  }

  // K(u,v) = L_[u,v] - [L_u, L_v].
  CurvatureTensor<S> curvature() const {
    auto L = levi_civita();
    return curvature(L);
  }
  CurvatureTensor<S> curvature(const std::vector<Matrix<S>>& L) const {
    size_t n = dim();
    std::vector<Matrix<S>> comps;
    for (auto [i, j] : index_pairs(n))
      comps.push_back(connection_at(bracket_basis(i, j), L) - commutator(L[i], L[j]));
    return CurvatureTensor<S>(ip_, std::move(comps));
  }

 private:
  S dot(const std::vector<S>& v, size_t k) const {
    const Matrix<S>& g = ip_.gram();
    S r(0);
    for (size_t x = 0; x < v.size(); ++x) r += g(k, x) * v[x];
    return r;
  }

  InnerProduct<S> ip_;
  std::vector<std::vector<S>> br_;
};

// Slices of a (1,3)-shaped tensor: index [u][pair(v,w)] -> endomorphism.
template <class S>
using TensorSlices = std::vector<std::vector<Matrix<S>>>;

// (nabla_u K)(v,w) = [L_u, K(v,w)] - K(L_u v, w) - K(v, L_u w).
template <class S>
TensorSlices<S> covariant_derivative(const MetricLieAlgebra<S>& mla,
                                     const std::vector<Matrix<S>>& L,
                                     const CurvatureTensor<S>& K) {
  size_t n = mla.dim();
  TensorSlices<S> out(n);
  for (size_t u = 0; u < n; ++u) {
    for (auto [v, w] : index_pairs(n)) {
      auto lv = L[u].apply(basis_vec<S>(n, v));
      auto lw = L[u].apply(basis_vec<S>(n, w));
      Matrix<S> m = commutator(L[u], K.at(v, w)) - K.eval_left(lv, w) + K.eval_left(lw, v);
      out[u].push_back(m);
    }
  }
  return out;
}

// Slice evaluation with an arbitrary coefficient vector in the u slot.
template <class S>
Matrix<S> slice_eval(const TensorSlices<S>& t, const std::vector<S>& u, size_t pair) {
  size_t n = t.size();
  Matrix<S> r = t[0][pair] * u[0];
  for (size_t i = 1; i < n; ++i)
    if (!is_zero(u[i])) r += t[i][pair] * u[i];
  return r;
}

template <class S>
bool slices_vanish(const TensorSlices<S>& t) {
  for (const auto& row : t)
    for (const auto& m : row)
      if (!m.is_zero_matrix()) return false;
  return true;
}

// (nabla^2 K)_{u,v} = L_u . ((nabla K)_v) - (nabla K)_{L_u v}, where L_u acts
// as a derivation on all three remaining slots of (nabla K)_v.
template <class S>
std::vector<TensorSlices<S>> second_covariant_derivative(const MetricLieAlgebra<S>& mla,
                                                         const std::vector<Matrix<S>>& L,
                                                         const CurvatureTensor<S>& K,
                                                         const TensorSlices<S>& nk) {
  size_t n = mla.dim();
  auto pairs = index_pairs(n);
  std::vector<TensorSlices<S>> out(n, TensorSlices<S>(n));
  for (size_t u = 0; u < n; ++u) {
    for (size_t v = 0; v < n; ++v) {
      auto lv = L[u].apply(basis_vec<S>(n, v));
      for (size_t pi = 0; pi < pairs.size(); ++pi) {
        auto [w, t] = pairs[pi];
        // Derivation action of L_u on the slice (nabla K)_v at (w,t).
        Matrix<S> m = commutator(L[u], nk[v][pi]);
        auto lw = L[u].apply(basis_vec<S>(n, w));
        auto lt = L[u].apply(basis_vec<S>(n, t));
        // Subtract slots: (nabla K)_v(L_u w, t) + (nabla K)_v(w, L_u t).
        for (size_t a = 0; a < n; ++a) {
          if (!is_zero(lw[a])) {
            if (a < t)
              m -= nk[v][pair_index(a, t, n)] * lw[a];
            else if (a > t)
              m += nk[v][pair_index(t, a, n)] * lw[a];
          }
          if (!is_zero(lt[a])) {
            if (w < a)
              m -= nk[v][pair_index(w, a, n)] * lt[a];
            else if (w > a)
              m += nk[v][pair_index(a, w, n)] * lt[a];
          }
        }
        // Subtract the connection acting through the direction slot.
        m -= slice_eval(nk, lv, pi);
        out[u][v].push_back(m);
      }
    }
  }
  return out;
}

template <class S>
bool locally_symmetric(const MetricLieAlgebra<S>& mla, const std::vector<Matrix<S>>& L,
                       const CurvatureTensor<S>& K) {
  return slices_vanish(covariant_derivative(mla, L, K));
}

template <class S>
bool second_order_symmetric(const MetricLieAlgebra<S>& mla, const std::vector<Matrix<S>>& L,
                            const CurvatureTensor<S>& K) {
  auto nk = covariant_derivative(mla, L, K);
  for (const auto& t : second_covariant_derivative(mla, L, K, nk))
    if (!slices_vanish(t)) return false;
  return true;
}

template <class S>
Holonomy<S> holonomy(const MetricLieAlgebra<S>&, const std::vector<Matrix<S>>& L,
                     const CurvatureTensor<S>& K) {
  return holonomy_closure(L, K);
}

// The vector h with <u,h> = tr(ad_u) for all u. On any metric Lie algebra it
// satisfies L_h h = 0 and has self-adjoint R_h; both are asserted here.
template <class S>
std::vector<S> unimodular_vector(const MetricLieAlgebra<S>& mla,
                                 const std::vector<Matrix<S>>& L) {
  size_t n = mla.dim();
  std::vector<S> t(n);
  for (size_t i = 0; i < n; ++i) t[i] = mla.ad(i).trace();
  auto h = mla.ip().gram_inverse().apply(t);
  auto lh = mla.connection_at(h, L).apply(h);
  for (auto& x : lh)
    if (!is_zero(x)) throw std::domain_error("trace vector is not geodesic");
  // R_h: column j = L_j h.
  Matrix<S> rh(n, n);
  for (size_t j = 0; j < n; ++j) {
    auto c = L[j].apply(h);
    for (size_t i = 0; i < n; ++i) rh(i, j) = c[i];
  }
  if (!mla.ip().self_adjoint(rh))
    throw std::domain_error("return operator of the trace vector is not self-adjoint");
  return h;
}

struct IdentitySuiteReport {
  bool torsion_free = false;
  bool metric_compatible = false;
  bool curvature_valid = false;
  bool second_bianchi = false;
  bool derived_perp_matches = false;  // [g,g]-perp = self-adjoint return ops
  bool image_perp_matches = false;    // (g.g)-perp = vanishing return ops
  bool primitive_in_full = false;
  bool full_is_skew = false;
  bool ok() const {
    return torsion_free && metric_compatible && curvature_valid && second_bianchi &&
           derived_perp_matches && image_perp_matches && primitive_in_full && full_is_skew;
  }
};

namespace detail {

// Subspaces as column collections; equality via ranks.
template <class S>
bool same_span(const Matrix<S>& a, const Matrix<S>& b) {
  size_t n = a.rows();
  Matrix<S> sa(a.cols(), n), sb(b.cols(), n), sab(a.cols() + b.cols(), n);
  for (size_t c = 0; c < a.cols(); ++c)
    for (size_t r = 0; r < n; ++r) sa(c, r) = sab(c, r) = a(r, c);
  for (size_t c = 0; c < b.cols(); ++c)
    for (size_t r = 0; r < n; ++r) sb(c, r) = sab(a.cols() + c, r) = b(r, c);
  size_t ra = sa.rank(), rb = sb.rank(), rab = sab.rank();
  return ra == rb && rb == rab;
}

// Orthogonal complement of the span of the given columns.
template <class S>
Matrix<S> perp(const InnerProduct<S>& ip, const Matrix<S>& cols) {
  Matrix<S> sys(cols.cols(), ip.dim());
  Matrix<S> gc = ip.gram() * cols;  // rows: <col_c, e_j> as functionals
  for (size_t c = 0; c < cols.cols(); ++c)
    for (size_t j = 0; j < ip.dim(); ++j) sys(c, j) = gc(j, c);
  return sys.nullspace();
}

}  // namespace detail

// Structural identities tying the connection, curvature, and the return
// operators R_u (v -> L_v u) to the algebra; dimension-independent.
template <class S>
IdentitySuiteReport identity_suite(const MetricLieAlgebra<S>& mla) {
  IdentitySuiteReport rep;
  size_t n = mla.dim();
  auto L = mla.levi_civita();
  auto K = mla.curvature(L);

  rep.torsion_free = true;
  for (auto [i, j] : index_pairs(n)) {
    auto lij = L[i].apply(basis_vec<S>(n, j));
    auto lji = L[j].apply(basis_vec<S>(n, i));
    auto br = mla.bracket_basis(i, j);
    for (size_t k = 0; k < n; ++k)
      if (!(lij[k] - lji[k] == br[k])) rep.torsion_free = false;
  }
  rep.metric_compatible = true;
  for (size_t i = 0; i < n; ++i)
    if (!mla.ip().skew_adjoint(L[i])) rep.metric_compatible = false;

  rep.curvature_valid = validate(K).ok();
  rep.second_bianchi = true;
  {
    auto nk = covariant_derivative(mla, L, K);
    for (size_t i = 0; i < n && rep.second_bianchi; ++i)
      for (size_t j = i + 1; j < n && rep.second_bianchi; ++j)
        for (size_t k = j + 1; k < n; ++k) {
          // Cyclic sum; (nabla_j K)(e_k, e_i) = -(nabla_j K)(e_i, e_k).
          Matrix<S> cyc = nk[i][pair_index(j, k, n)];
          cyc -= nk[j][pair_index(i, k, n)];
          cyc += nk[k][pair_index(i, j, n)];
          if (!cyc.is_zero_matrix()) {
            rep.second_bianchi = false;
            break;
          }
        }
  }

  // Return operators R_u, column j = L_j u; linear in u through C_m.
  std::vector<Matrix<S>> C(n, Matrix<S>(n, n));
  for (size_t m = 0; m < n; ++m)
    for (size_t j = 0; j < n; ++j) {
      auto c = L[j].apply(basis_vec<S>(n, m));
      for (size_t i = 0; i < n; ++i) C[m](i, j) = c[i];
    }
  const Matrix<S>& g = mla.ip().gram();
  // {u : R_u self-adjoint}: rows are the strict upper entries of GR_u - (GR_u)^T.
  size_t npairs = n * (n - 1) / 2;
  Matrix<S> sym_sys(npairs, n), zero_sys(n * n, n);
  for (size_t m = 0; m < n; ++m) {
    Matrix<S> gc = g * C[m];
    size_t r = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) sym_sys(r++, m) = gc(i, j) - gc(j, i);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) zero_sys(i * n + j, m) = C[m](i, j);
  }
  Matrix<S> self_adjoint_space = sym_sys.nullspace();
  Matrix<S> vanishing_space = zero_sys.nullspace();

  // [g,g] and g.g as column spans.
  auto pairs = index_pairs(n);
  Matrix<S> derived(n, pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto b = mla.bracket_basis(pairs[p].first, pairs[p].second);
    for (size_t i = 0; i < n; ++i) derived(i, p) = b[i];
  }
  Matrix<S> image(n, n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      auto v = L[a].apply(basis_vec<S>(n, b));
      for (size_t i = 0; i < n; ++i) image(i, a * n + b) = v[i];
    }

  rep.derived_perp_matches =
      detail::same_span(detail::perp(mla.ip(), derived), self_adjoint_space);
  rep.image_perp_matches = detail::same_span(detail::perp(mla.ip(), image), vanishing_space);

  auto h = holonomy(mla, L, K);
  rep.primitive_in_full = true;
  for (const auto& m : h.primitive)
    if (!in_span(m, h.full)) rep.primitive_in_full = false;
  rep.full_is_skew = true;
  for (const auto& m : h.full)
    if (!mla.ip().skew_adjoint(m)) rep.full_is_skew = false;
  return rep;
}

// Block-diagonal sum of two metric Lie algebras.
template <class S>
MetricLieAlgebra<S> direct_sum(const MetricLieAlgebra<S>& a, const MetricLieAlgebra<S>& b) {
  size_t na = a.dim(), nb = b.dim(), n = na + nb;
  Matrix<S> g(n, n);
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < na; ++j) g(i, j) = a.ip().gram()(i, j);
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j) g(na + i, na + j) = b.ip().gram()(i, j);
  std::vector<std::vector<S>> br;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      std::vector<S> v(n, S(0));
      if (j < na) {
        auto w = a.bracket_basis(i, j);
        for (size_t k = 0; k < na; ++k) v[k] = w[k];
      } else if (i >= na) {
        auto w = b.bracket_basis(i - na, j - na);
        for (size_t k = 0; k < nb; ++k) v[na + k] = w[k];
      }
      br.push_back(v);
    }
  return MetricLieAlgebra<S>(InnerProduct<S>(g), br);
}

}  // namespace lorcurv
