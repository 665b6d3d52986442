#pragma once

#include <optional>
#include <vector>

#include "lorcurv/curvature.hpp"

namespace lorcurv {

// Isotropy presentation of a homogeneous space: a Lie algebra on h + m with
// dim h isotropy generators followed by dim m coset directions. Brackets are
// stored on the full algebra; geometric operators live on m and use the
// m-projection of brackets throughout, so non-reductive complements are fine.
template <class S>
class HomogeneousPair {
 public:
  HomogeneousPair(size_t iso_dim, size_t coset_dim, std::vector<std::vector<S>> brackets)
      : dh_(iso_dim), n_(coset_dim), br_(std::move(brackets)) {
    size_t N = dh_ + n_;
    if (br_.size() != N * (N - 1) / 2)
      throw std::invalid_argument("need one bracket per basis pair of h + m");
    for (const auto& v : br_)
      if (v.size() != N) throw std::invalid_argument("bracket vector dimension mismatch");
  }

  size_t iso_dim() const { return dh_; }
  size_t dim() const { return n_; }
  size_t total_dim() const { return dh_ + n_; }

  std::vector<S> bracket_basis(size_t i, size_t j) const {
    size_t N = total_dim();
    if (i == j) return std::vector<S>(N, S(0));
    if (i < j) return br_[pair_index(i, j, N)];
    auto v = br_[pair_index(j, i, N)];
    for (auto& x : v) x = -x;
    return v;
  }

  std::vector<S> bracket(const std::vector<S>& u, const std::vector<S>& v) const {
    size_t N = total_dim();
    std::vector<S> r(N, S(0));
    for (size_t i = 0; i < N; ++i)
      for (size_t j = i + 1; j < N; ++j) {
        S c = u[i] * v[j] - u[j] * v[i];
        if (is_zero(c)) continue;
        const auto& b = br_[pair_index(i, j, N)];
        for (size_t k = 0; k < N; ++k) r[k] += c * b[k];
      }
    return r;
  }

  std::optional<std::array<size_t, 3>> jacobi_defect() const {
    size_t N = total_dim();
    for (size_t i = 0; i < N; ++i)
      for (size_t j = i + 1; j < N; ++j)
        for (size_t k = j + 1; k < N; ++k) {
          auto a = bracket(bracket_basis(i, j), basis_vec<S>(N, k));
          auto b = bracket(bracket_basis(j, k), basis_vec<S>(N, i));
          auto c = bracket(bracket_basis(k, i), basis_vec<S>(N, j));
          for (size_t r = 0; r < N; ++r)
            if (!is_zero(a[r] + b[r] + c[r])) return std::array<size_t, 3>{i, j, k};
        }
    return std::nullopt;
  }

  // [h,h] must stay inside h.
  bool isotropy_is_subalgebra() const {
    for (size_t i = 0; i < dh_; ++i)
      for (size_t j = i + 1; j < dh_; ++j) {
        auto b = bracket_basis(i, j);
        for (size_t k = dh_; k < total_dim(); ++k)
          if (!is_zero(b[k])) return false;
      }
    return true;
  }

  bool valid() const { return isotropy_is_subalgebra() && !jacobi_defect().has_value(); }

  // m-projection of ad: rho(x_i) u_j = [x_i, u_j]_m, an n x n matrix. The
  // index i runs over the full algebra.
  Matrix<S> rho(size_t i) const {
    Matrix<S> m(n_, n_);
    for (size_t j = 0; j < n_; ++j) {
      auto b = bracket_basis(i, dh_ + j);
      for (size_t k = 0; k < n_; ++k) m(k, j) = b[dh_ + k];
    }
    return m;
  }

  // Basis of the isotropy-invariant symmetric forms on m:
  // rho(x)^T B + B rho(x) = 0 for every isotropy generator x.
  std::vector<Matrix<S>> invariant_metric_space() const {
    size_t vars = n_ * (n_ + 1) / 2;
    auto unpack = [&](size_t v) {  // v -> (i<=j)
      for (size_t i = 0, c = 0; i < n_; ++i)
        for (size_t j = i; j < n_; ++j, ++c)
          if (c == v) return std::pair<size_t, size_t>{i, j};
      return std::pair<size_t, size_t>{0, 0};
    };
    Matrix<S> sys(dh_ * n_ * n_, vars);
    for (size_t h = 0; h < dh_; ++h) {
      Matrix<S> r = rho(h);
      for (size_t v = 0; v < vars; ++v) {
        auto [a, b] = unpack(v);
        // Contribution of B_ab (and its mirror) to rho^T B + B rho.
        for (size_t i = 0; i < n_; ++i)
          for (size_t j = 0; j < n_; ++j) {
            S val(0);
            // (rho^T B)_{ij} = sum_k rho(k,i) B(k,j); B_{ab} hits k=a,j=b and k=b,j=a.
            if (b == j) val += r(a, i);
            if (a == j) val += r(b, i);
            // (B rho)_{ij} = sum_k B(i,k) rho(k,j)
            if (a == i) val += r(b, j);
            if (b == i) val += r(a, j);
            if (a == b) val = val / S(2);
            sys(h * n_ * n_ + i * n_ + j, v) = val;
          }
      }
    }
    Matrix<S> null = sys.nullspace();
    std::vector<Matrix<S>> basis;
    for (size_t c = 0; c < null.cols(); ++c) {
      Matrix<S> B(n_, n_);
      size_t v = 0;
      for (size_t i = 0; i < n_; ++i)
        for (size_t j = i; j < n_; ++j, ++v) B(i, j) = B(j, i) = null(v, c);
      basis.push_back(B);
    }
    return basis;
  }

  bool metric_invariant(const Matrix<S>& B) const {
    for (size_t h = 0; h < dh_; ++h) {
      Matrix<S> r = rho(h);
      if (!(r.transpose() * B + B * r).is_zero_matrix()) return false;
    }
    return true;
  }

 private:
  size_t dh_, n_;
  std::vector<std::vector<S>> br_;
};

// Geometry of a homogeneous pair with a chosen invariant metric on m.
template <class S>
struct HomogeneousGeometry {
  InnerProduct<S> ip;
  // Connection operators on m, one per basis element of h + m; the h block
  // is the isotropy representation itself.
  std::vector<Matrix<S>> nabla;
  CurvatureTensor<S> curvature;
  Matrix<S> ricci_form;
  Matrix<S> ricci_operator;
};

template <class S>
HomogeneousGeometry<S> homogeneous_geometry(const HomogeneousPair<S>& hp, Matrix<S> metric) {
  size_t dh = hp.iso_dim(), n = hp.dim();
  if (!hp.metric_invariant(metric))
    throw std::invalid_argument("metric is not isotropy-invariant");
  InnerProduct<S> ip(std::move(metric));
  const Matrix<S>& B = ip.gram();
  const Matrix<S>& Binv = ip.gram_inverse();

  auto m_part = [&](const std::vector<S>& full) {
    std::vector<S> v(n);
    for (size_t k = 0; k < n; ++k) v[k] = full[dh + k];
    return v;
  };

  std::vector<Matrix<S>> nabla;
  for (size_t i = 0; i < dh; ++i) nabla.push_back(hp.rho(i));
  // nabla(y) z = [y,z]_m / 2 + nu(y,z); 2 B(nu(a,b), c) = B([c,a]_m, b) + B([c,b]_m, a).
  for (size_t a = 0; a < n; ++a) {
    Matrix<S> na(n, n);
    for (size_t b = 0; b < n; ++b) {
      auto half = m_part(hp.bracket_basis(dh + a, dh + b));
      std::vector<S> rhs(n);
      for (size_t c = 0; c < n; ++c) {
        auto ca = m_part(hp.bracket_basis(dh + c, dh + a));
        auto cb = m_part(hp.bracket_basis(dh + c, dh + b));
        S t(0);
        for (size_t k = 0; k < n; ++k) t += ca[k] * B(k, b) + cb[k] * B(k, a);
        rhs[c] = t / S(2);
      }
      auto nu = Binv.apply(rhs);
      for (size_t k = 0; k < n; ++k) na(k, b) = half[k] / S(2) + nu[k];
    }
    nabla.push_back(na);
  }

  // K(a,b) = nabla([a,b]_m) + rho([a,b]_h) - [nabla(a), nabla(b)] on m pairs.
  std::vector<Matrix<S>> comps;
  for (auto [a, b] : index_pairs(n)) {
    auto full = hp.bracket_basis(dh + a, dh + b);
    Matrix<S> k(n, n);
    for (size_t i = 0; i < dh; ++i)
      if (!is_zero(full[i])) k += nabla[i] * full[i];
    for (size_t i = 0; i < n; ++i)
      if (!is_zero(full[dh + i])) k += nabla[dh + i] * full[dh + i];
    k -= commutator(nabla[dh + a], nabla[dh + b]);
    comps.push_back(k);
  }

  // ric_{ij} = sum_r [K(u_i, u_r) u_j]_r. Symmetry is a consistency
  // requirement, not an assumption.
  Matrix<S> ric(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      S t(0);
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        size_t lo = std::min(i, r), hi = std::max(i, r);
        const Matrix<S>& km = comps[pair_index(lo, hi, n)];
        S v = km(r, j);
        t += (i < r) ? v : -v;
      }
      ric(i, j) = t;
    }
  if (ric != ric.transpose())
    throw std::domain_error("ricci form of the homogeneous pair is not symmetric");

  Matrix<S> ric_op = Binv * ric;
  CurvatureTensor<S> K(ip, std::move(comps));
  return HomogeneousGeometry<S>{std::move(ip), std::move(nabla), std::move(K), std::move(ric),
                                std::move(ric_op)};
}

// Full holonomy: curvature algebra closed under all connection operators,
// isotropy block included.
template <class S>
Holonomy<S> homogeneous_holonomy(const HomogeneousGeometry<S>& geo) {
  return holonomy_closure(geo.nabla, geo.curvature);
}

// A metric Lie algebra viewed as a homogeneous pair with trivial isotropy.
template <class S, class MLA>
HomogeneousPair<S> as_homogeneous_pair(const MLA& mla) {
  size_t n = mla.dim();
  std::vector<std::vector<S>> br;
  for (auto [i, j] : index_pairs(n)) br.push_back(mla.bracket_basis(i, j));
  return HomogeneousPair<S>(0, n, std::move(br));
}

}  // namespace lorcurv
