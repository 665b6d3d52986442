#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "lorcurv/complex.hpp"
#include "lorcurv/curvature.hpp"
#include "lorcurv/poly.hpp"

namespace lorcurv {

// Induced inner product on bivectors, basis ordered like index_pairs(4):
// <u^v, w^t> = <u,w><v,t> - <u,t><v,w>.
template <class S>
Matrix<S> lam2_gram(const InnerProduct<S>& ip) {
  if (ip.dim() != 4) throw std::invalid_argument("bivector machinery needs dimension 4");
  auto pairs = index_pairs(4);
  const Matrix<S>& g = ip.gram();
  Matrix<S> g2(6, 6);
  for (size_t a = 0; a < 6; ++a)
    for (size_t b = 0; b < 6; ++b) {
      auto [u, v] = pairs[a];
      auto [w, t] = pairs[b];
      g2(a, b) = g(u, w) * g(v, t) - g(u, t) * g(v, w);
    }
  return g2;
}

// Bivector (coordinates in the pair basis) as a skew-adjoint endomorphism.
template <class S>
Matrix<S> bivector_endo(const InnerProduct<S>& ip, const std::vector<S>& coords) {
  auto pairs = index_pairs(ip.dim());
  Matrix<S> m(ip.dim(), ip.dim());
  for (size_t p = 0; p < pairs.size(); ++p)
    if (!is_zero(coords[p])) m += ip.wedge_basis(pairs[p].first, pairs[p].second) * coords[p];
  return m;
}

// Hodge endomorphism of bivectors, normalized so the volume form has square
// norm -1. With d = -det(gram) > 0 the operator is sqrt(d) * j0 where j0 is
// rational; the scale is carried separately so exact mode stays exact.
template <class S>
struct HodgeStar {
  Matrix<S> j0;
  S d;  // J = sqrt(d) * j0, and d * j0^2 = -Id

  std::optional<S> scale() const {
    if constexpr (scalar_traits<S>::exact) {
      return rational_sqrt(d);
    } else {
      return S(std::sqrt(scalar_traits<S>::to_double(d)));
    }
  }
  Matrix<S> j() const {
    auto s = scale();
    if (!s.has_value())
      throw std::domain_error("volume normalization is irrational in exact mode");
    return j0 * *s;
  }
};

namespace detail {

inline int perm_sign4(const std::array<size_t, 4>& p) {
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int s = 1;
  auto q = p;
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j)
      if (q[i] > q[j]) {
        std::swap(q[i], q[j]);
        s = -s;
      }
  return s;
}

}  // namespace detail

template <class S>
HodgeStar<S> hodge_star(const InnerProduct<S>& ip) {
  if (ip.dim() != 4) throw std::invalid_argument("hodge star needs dimension 4");
  S det = ip.gram().det();
  S d = -det;
  if (!(d > S(0)))
    throw std::invalid_argument("hodge star needs a metric of odd negative index");
  auto pairs = index_pairs(4);
  Matrix<S> w(6, 6);
  for (size_t a = 0; a < 6; ++a)
    for (size_t b = 0; b < 6; ++b) {
      auto [u, v] = pairs[a];
      auto [x, y] = pairs[b];
      w(a, b) = S(detail::perm_sign4({u, v, x, y}));
    }
  Matrix<S> j0 = (w * lam2_gram(ip).inverse()).transpose();
  return HodgeStar<S>{std::move(j0), std::move(d)};
}

// K as one endomorphism of bivectors: Ktilde = G2^{-1} M with
// M[(uv),(wt)] = <K(u,v) e_t, e_w>.
template <class S>
Matrix<S> total_operator(const CurvatureTensor<S>& kt) {
  if (kt.dim() != 4) throw std::invalid_argument("total operator needs dimension 4");
  auto pairs = index_pairs(4);
  const Matrix<S>& g = kt.ip().gram();
  Matrix<S> m(6, 6);
  for (size_t a = 0; a < 6; ++a) {
    auto [u, v] = pairs[a];
    Matrix<S> gk = g * kt.at(u, v);
    for (size_t b = 0; b < 6; ++b) {
      auto [w, t] = pairs[b];
      m(a, b) = gk(w, t);
    }
  }
  return lam2_gram(kt.ip()).inverse() * m;
}

template <class S>
struct EinsteinCheck {
  bool einstein;
  S lambda;  // Ric = lambda Id when einstein
};

// Dual-route Einstein test: the trace route (Ric - (scal/4) Id = 0) and the
// commutation route ([Ktilde, j0] = 0) must agree; disagreement is an
// internal inconsistency, not an input property.
template <class S>
EinsteinCheck<S> is_einstein(const CurvatureTensor<S>& kt) {
  Matrix<S> ric = ricci_operator(kt);
  S lambda = ric.trace() / S(4);
  Matrix<S> dev = ric;
  for (size_t i = 0; i < 4; ++i) dev(i, i) -= lambda;
  bool route_trace = dev.is_zero_matrix();
  bool route_hodge =
      commutator(total_operator(kt), hodge_star(kt.ip()).j0).is_zero_matrix();
  if (route_trace != route_hodge)
    throw std::domain_error("einstein routes disagree: trace deviation vs hodge commutation");
  return {route_trace, route_trace ? lambda : S(0)};
}

// Complex structure on bivectors (multiplication by i realized by the Hodge
// operator) turns Ktilde into a complex 3x3 matrix when it commutes with J.
template <class S>
struct ComplexTotal {
  Matrix<Cx<S>> op;               // 3x3 over S[i]
  std::array<size_t, 3> basis;    // pair-basis indices of the complex basis
};

template <class S>
ComplexTotal<S> complex_total_operator(const CurvatureTensor<S>& kt) {
  auto ein = is_einstein(kt);
  if (!ein.einstein)
    throw std::invalid_argument("complex reduction needs an Einstein curvature tensor");
  auto hs = hodge_star(kt.ip());
  auto s = hs.scale();
  if (!s.has_value())
    throw std::domain_error("volume normalization is irrational in exact mode");
  Matrix<S> J = hs.j0 * *s;
  Matrix<S> Kt = total_operator(kt);

  // Greedy complex basis: b, Jb extend the real span two at a time.
  std::array<size_t, 3> chosen{};
  Matrix<S> span(6, 6);
  size_t cols = 0, found = 0;
  auto col_rank = [&](const Matrix<S>& m, size_t used) {
    Matrix<S> sub(used, 6);
    for (size_t c = 0; c < used; ++c)
      for (size_t r = 0; r < 6; ++r) sub(c, r) = m(r, c);
    return sub.rank();
  };
  for (size_t p = 0; p < 6 && found < 3; ++p) {
    Matrix<S> trial = span;
    auto e = basis_vec<S>(6, p);
    auto je = J.apply(e);
    for (size_t r = 0; r < 6; ++r) {
      trial(r, cols) = e[r];
      trial(r, cols + 1) = je[r];
    }
    if (col_rank(trial, cols + 2) == cols + 2) {
      span = trial;
      chosen[found++] = p;
      cols += 2;
    }
  }
  if (found < 3) throw std::domain_error("hodge complex basis construction failed");

  Matrix<S> basis(6, 6);
  for (size_t k = 0; k < 3; ++k) {
    auto e = basis_vec<S>(6, chosen[k]);
    auto je = J.apply(e);
    for (size_t r = 0; r < 6; ++r) {
      basis(r, 2 * k) = e[r];
      basis(r, 2 * k + 1) = je[r];
    }
  }
  Matrix<S> binv = basis.inverse();
  Matrix<Cx<S>> op(3, 3);
  for (size_t k = 0; k < 3; ++k) {
    auto target = Kt.apply(basis.col(2 * k));
    auto coords = binv.apply(target);
    for (size_t j = 0; j < 3; ++j) op(j, k) = Cx<S>(coords[2 * j], coords[2 * j + 1]);
  }
  return ComplexTotal<S>{std::move(op), chosen};
}

enum class PetrovKind { I, II, III };

inline const char* to_string(PetrovKind k) {
  switch (k) {
    case PetrovKind::I: return "I";
    case PetrovKind::II: return "II";
    case PetrovKind::III: return "III";
  }
  return "?";
}

template <class S>
struct PetrovResult {
  PetrovKind kind;
  std::vector<std::pair<Cx<S>, int>> eigenvalues;
  bool eigenvalues_complete;
};

namespace detail {

inline std::vector<std::complex<double>> numeric_roots_cx(
    const std::vector<std::complex<double>>& monic) {
  size_t n = monic.size() - 1;
  std::vector<std::complex<double>> z(n);
  std::complex<double> seed(0.4, 0.9), p(1, 0);
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

template <class S>
Matrix<Cx<S>> eval_poly_at(const Poly<Cx<S>>& p, const Matrix<Cx<S>>& m) {
  size_t n = m.rows();
  Matrix<Cx<S>> acc(n, n), pw = Matrix<Cx<S>>::identity(n);
  for (int i = 0; i <= p.deg(); ++i) {
    acc += pw * p.c[i];
    if (i < p.deg()) pw = pw * m;
  }
  return acc;
}

}  // namespace detail

// Jordan type of the complex 3x3 reduction. Exact mode decides everything
// through polynomial gcds and ranks; only linear factors are ever solved, so
// no root extraction can fail. Float mode clusters numeric roots.
template <class S>
PetrovResult<S> petrov_type(const CurvatureTensor<S>& kt) {
  auto ct = complex_total_operator(kt);  // enforces Einstein
  const Matrix<Cx<S>>& C = ct.op;
  PetrovResult<S> out;
  out.eigenvalues_complete = false;

  if constexpr (scalar_traits<S>::exact) {
    Poly<Cx<S>> chi(C.char_poly());
    Poly<Cx<S>> g = poly_gcd(chi, chi.derivative());
    if (g.deg() == 0) {
      // Three distinct eigenvalues: diagonalizable. Roots are reported only
      // when they happen to be Gaussian rationals found by deflation of the
      // real/imaginary split; otherwise the list stays partial.
      out.kind = PetrovKind::I;
      bool all_real = true;
      for (const auto& c : chi.c)
        if (!is_zero(c.im)) all_real = false;
      if (all_real) {
        Poly<S> re({chi.c[0].re, chi.c[1].re, chi.c[2].re, chi.c[3].re});
        auto rr = rational_roots(re);
        int found = 0;
        for (auto& [r, m] : rr.roots) {
          out.eigenvalues.push_back({Cx<S>(r), m});
          found += m;
        }
        out.eigenvalues_complete = rr.complete && found == 3;
      }
      return out;
    }
    if (g.deg() == 1) {
      Cx<S> z2 = -g.c[0] / g.c[1];
      // chi = (x - z2)^2 (x - z1)
      Poly<Cx<S>> lin(std::vector<Cx<S>>{-z2, Cx<S>(S(1))});
      Poly<Cx<S>> rest = divmod(divmod(chi, lin).first, lin).first;
      Cx<S> z1 = -rest.c[0] / rest.c[1];
      out.eigenvalues.push_back({z2, 2});
      out.eigenvalues.push_back({z1, 1});
      out.eigenvalues_complete = true;
      Poly<Cx<S>> rad = divmod(chi, g).first;
      out.kind = detail::eval_poly_at(rad, C).is_zero_matrix() ? PetrovKind::I : PetrovKind::II;
      return out;
    }
    // g quadratic: triple eigenvalue z, g = (x - z)^2.
    Cx<S> z = -g.c[1] / (g.c[2] * Cx<S>(S(2)));
    out.eigenvalues.push_back({z, 3});
    out.eigenvalues_complete = true;
    Matrix<Cx<S>> shifted = C;
    for (size_t i = 0; i < 3; ++i) shifted(i, i) -= z;
    if (shifted.is_zero_matrix())
      out.kind = PetrovKind::I;
    else if ((shifted * shifted).is_zero_matrix())
      out.kind = PetrovKind::II;
    else
      out.kind = PetrovKind::III;
    return out;
  } else {
    auto cp = C.char_poly();
    std::vector<std::complex<double>> mc;
    for (auto& c : cp)
      mc.push_back({scalar_traits<S>::to_double(c.re), scalar_traits<S>::to_double(c.im)});
    auto roots = detail::numeric_roots_cx(mc);
    double scale = 1;
    for (auto& z : roots) scale = std::max(scale, std::abs(z));
    std::vector<std::pair<std::complex<double>, int>> clusters;
    for (auto& z : roots) {
      bool merged = false;
      for (auto& [c, m] : clusters)
        if (std::abs(z - c) <= 1e3 * float_tol() * scale) {
          c = (c * double(m) + z) / double(m + 1);
          ++m;
          merged = true;
          break;
        }
      if (!merged) clusters.push_back({z, 1});
    }
    double spread = 0;
    for (auto& z : roots) {
      double best = 1e300;
      for (auto& [c, m] : clusters) best = std::min(best, std::abs(z - c));
      spread = std::max(spread, best);
    }
    ToleranceGuard guard(std::max(float_tol(), 10 * spread));
    for (auto& [c, m] : clusters)
      out.eigenvalues.push_back({Cx<S>(S(c.real()), S(c.imag())), m});
    out.eigenvalues_complete = true;
    out.kind = PetrovKind::I;
    for (auto& [c, m] : clusters) {
      if (m < 2) continue;
      Matrix<Cx<S>> shifted = C;
      Cx<S> z(S(c.real()), S(c.imag()));
      for (size_t i = 0; i < 3; ++i) shifted(i, i) -= z;
      size_t geo = 3 - shifted.rank();
      if (static_cast<int>(geo) == m) continue;  // semisimple at this eigenvalue
      if (m - static_cast<int>(geo) >= 2)
        out.kind = PetrovKind::III;
      else
        out.kind = PetrovKind::II;
    }
    return out;
  }
}

enum class EinsteinSemisymBranch { ConstantCurvature, TypeI2, TypeII2 };

inline const char* to_string(EinsteinSemisymBranch b) {
  switch (b) {
    case EinsteinSemisymBranch::ConstantCurvature: return "constant-curvature";
    case EinsteinSemisymBranch::TypeI2: return "type-I-2dim";
    case EinsteinSemisymBranch::TypeII2: return "type-II-2dim";
  }
  return "?";
}

template <class S>
struct EinsteinSemisymClass {
  EinsteinSemisymBranch branch;
  S lambda;
  size_t holonomy_dim;
};

// Branch classification of a 4d Einstein semi-symmetric curvature tensor.
// Every branch re-verifies its defining property; a tensor that fits no
// branch is an inconsistency.
template <class S>
EinsteinSemisymClass<S> classify_einstein_semisym(const CurvatureTensor<S>& kt) {
  auto ein = is_einstein(kt);
  if (!ein.einstein) throw std::invalid_argument("classification needs an Einstein tensor");
  if (!is_semi_symmetric(kt))
    throw std::invalid_argument("classification needs a semi-symmetric tensor");
  size_t dim = primitive_holonomy(kt).size();
  S lambda = ein.lambda;

  if (dim == 6 || dim == 0) {
    auto mu = constant_curvature_coefficient(kt);
    if (!mu.has_value() || !(*mu == -(lambda / S(3))))
      throw std::domain_error("full holonomy without constant curvature coefficient");
    return {EinsteinSemisymBranch::ConstantCurvature, lambda, dim};
  }
  if (dim == 2) {
    if (!is_zero(lambda)) {
      auto pt = petrov_type(kt);
      bool shape_ok = pt.kind == PetrovKind::I && pt.eigenvalues_complete;
      if (shape_ok) {
        bool saw_neg_lambda = false, saw_zero_double = false;
        for (auto& [z, m] : pt.eigenvalues) {
          if (z == Cx<S>(-lambda) && m == 1) saw_neg_lambda = true;
          if (z == Cx<S>(S(0)) && m == 2) saw_zero_double = true;
        }
        shape_ok = saw_neg_lambda && saw_zero_double;
      }
      if (!shape_ok)
        throw std::domain_error("2-dimensional holonomy with nonzero einstein constant "
                                "must have eigenvalues (-lambda, 0, 0)");
      return {EinsteinSemisymBranch::TypeI2, lambda, dim};
    }
    Matrix<S> Kt = total_operator(kt);
    if (Kt.is_zero_matrix() || !(Kt * Kt).is_zero_matrix())
      throw std::domain_error("ricci-flat 2-dimensional holonomy must square to zero");
    return {EinsteinSemisymBranch::TypeII2, lambda, dim};
  }
  throw std::domain_error("einstein semi-symmetric holonomy dimension must be 0, 2, or 6");
}

template <class S>
struct IsotropicNormalForm {
  S sum_ab;   // A + B, always computed; -1 for a correctly scaled tensor
  S prod_ab;  // A * B
  std::optional<std::pair<S, S>> ab;  // present when A, B lie in the scalar field
  std::optional<Matrix<S>> basis;     // columns e, f, g, h when representable
  bool verified = false;              // recomputation in the basis matches the pattern
};

// Normal form of a Ricci-isotropic semi-symmetric space: an adapted basis
// (e, f, g, h) with <e,e> = <f,f> = <g,h> = 1 in which K(e,h) = A e^g,
// K(f,h) = B f^g and every other component vanishes.
template <class S>
IsotropicNormalForm<S> isotropic_normal_form(const CurvatureTensor<S>& kt) {
  if (kt.dim() != 4) throw std::invalid_argument("isotropic normal form needs dimension 4");
  Matrix<S> ric = ricci_operator(kt);
  if (ric.is_zero_matrix()) throw std::invalid_argument("ricci vanishes: not isotropic");
  if (!(ric * ric).is_zero_matrix())
    throw std::invalid_argument("ricci does not square to zero: not isotropic");
  if (ric.rank() != 1)
    throw std::domain_error("isotropic ricci must have a one-dimensional image");

  size_t n = 4;
  const auto& ip = kt.ip();
  // Null direction spanning the image of Ric.
  std::vector<S> g0;
  for (size_t c = 0; c < n && g0.empty(); ++c) {
    auto col = ric.col(c);
    for (auto& x : col)
      if (!is_zero(x)) {
        g0 = col;
        break;
      }
  }
  if (!is_zero(ip.dot(g0, g0)))
    throw std::domain_error("image of an isotropic ricci must be null");

  // Null partner with <g0, h0> = 1.
  std::vector<S> h0;
  for (size_t k = 0; k < n; ++k) {
    auto ek = basis_vec<S>(n, k);
    S p = ip.dot(g0, ek);
    if (is_zero(p)) continue;
    std::vector<S> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = ek[i] / p;
    S vv = ip.dot(v, v);
    h0 = v;
    for (size_t i = 0; i < n; ++i) h0[i] -= vv / S(2) * g0[i];
    break;
  }

  // Spacelike complement E = {g0, h0}-perp.
  Matrix<S> sys(2, n);
  auto gg0 = ip.gram().apply(g0), gh0 = ip.gram().apply(h0);
  for (size_t j = 0; j < n; ++j) {
    sys(0, j) = gg0[j];
    sys(1, j) = gh0[j];
  }
  Matrix<S> E = sys.nullspace();
  if (E.cols() != 2) throw std::domain_error("isotropic complement is not a plane");
  auto v1 = E.col(0), v2 = E.col(1);
  // Orthogonalize within E; the complement of a hyperbolic plane in Lorentzian
  // signature is positive definite, so the pivots cannot vanish.
  S c12 = ip.dot(v1, v2), c11 = ip.dot(v1, v1);
  if (is_zero(c11)) throw std::domain_error("isotropic complement is degenerate");
  for (size_t i = 0; i < n; ++i) v2[i] -= c12 / c11 * v1[i];

  // T0 x = K(x, h0) h0 on E, in the (v1, v2) frame.
  auto t_of = [&](const std::vector<S>& x) { return kt.eval(x, h0).apply(h0); };
  auto tv1 = t_of(v1), tv2 = t_of(v2);
  for (const auto& tv : {tv1, tv2})
    if (!is_zero(ip.dot(tv, g0)) || !is_zero(ip.dot(tv, h0)))
      throw std::domain_error("curvature does not stabilize the isotropic complement");
  // Coordinates of tv in the (v1,v2) frame via the E gram.
  S n1 = ip.dot(v1, v1), n2 = ip.dot(v2, v2);
  if (is_zero(n2)) throw std::domain_error("isotropic complement is degenerate");
  Matrix<S> T(2, 2);
  T(0, 0) = ip.dot(v1, tv1) / n1;
  T(1, 0) = ip.dot(v2, tv1) / n2;
  T(0, 1) = ip.dot(v1, tv2) / n1;
  T(1, 1) = ip.dot(v2, tv2) / n2;

  // ric(h0,h0) fixes the scale: with g = c g0, h = h0/c the normal form needs
  // ric(h,h) = 1, so c^2 = ric(h0,h0).
  Matrix<S> ric_f = ricci_form(kt);
  S r0(0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r0 += h0[i] * ric_f(i, j) * h0[j];
  if (!(r0 > S(0)))
    throw std::domain_error("isotropic scale is not positive; no adapted basis exists");

  IsotropicNormalForm<S> out;
  Matrix<S> Tn = T * (S(1) / r0);
  out.sum_ab = Tn.trace();
  out.prod_ab = Tn.det();

  // Eigenvalues of the 2x2 normalized operator.
  S tr = out.sum_ab, det = out.prod_ab;
  S disc = tr * tr - S(4) * det;
  std::optional<S> sq;
  if constexpr (scalar_traits<S>::exact) {
    sq = rational_sqrt(disc);
  } else {
    double dd = scalar_traits<S>::to_double(disc);
    if (dd >= -float_tol()) sq = S(std::sqrt(std::max(0.0, dd)));
  }
  if (!sq.has_value()) return out;  // invariants only
  S A = (tr + *sq) / S(2), B = (tr - *sq) / S(2);
  out.ab = std::make_pair(A, B);

  // Adapted basis needs sqrt(r0) and unit-norm eigenvectors.
  auto sqrt_of = [](const S& x) -> std::optional<S> {
    if constexpr (scalar_traits<S>::exact) {
      return rational_sqrt(x);
    } else {
      double v = scalar_traits<S>::to_double(x);
      if (v <= 0) return std::nullopt;
      return S(std::sqrt(v));
    }
  };
  auto c = sqrt_of(r0);
  if (!c.has_value()) return out;

  // Eigenvectors of Tn in the (v1, v2) frame.
  std::vector<S> e_vec(n), f_vec(n);
  auto build = [&](S ca, S cb, std::vector<S>& dst) {
    for (size_t i = 0; i < n; ++i) dst[i] = ca * v1[i] + cb * v2[i];
  };
  if (is_zero(*sq)) {
    build(S(1), S(0), e_vec);
    build(S(0), S(1), f_vec);
  } else {
    // (Tn - B) projects onto the A-eigenline.
    Matrix<S> pa = Tn, pb = Tn;
    pa(0, 0) -= B;
    pa(1, 1) -= B;
    pb(0, 0) -= A;
    pb(1, 1) -= A;
    auto pick = [&](const Matrix<S>& p, std::vector<S>& dst) {
      for (size_t col = 0; col < 2; ++col) {
        if (!is_zero(p(0, col)) || !is_zero(p(1, col))) {
          build(p(0, col), p(1, col), dst);
          return;
        }
      }
    };
    pick(pa, e_vec);
    pick(pb, f_vec);
  }
  auto ne = sqrt_of(ip.dot(e_vec, e_vec)), nf = sqrt_of(ip.dot(f_vec, f_vec));
  if (!ne.has_value() || !nf.has_value()) return out;
  for (size_t i = 0; i < n; ++i) {
    e_vec[i] /= *ne;
    f_vec[i] /= *nf;
  }
  std::vector<S> g_vec(n), h_vec(n);
  for (size_t i = 0; i < n; ++i) {
    g_vec[i] = g0[i] * *c;
    h_vec[i] = h0[i] / *c;
  }
  Matrix<S> basis(n, 4);
  for (size_t i = 0; i < n; ++i) {
    basis(i, 0) = e_vec[i];
    basis(i, 1) = f_vec[i];
    basis(i, 2) = g_vec[i];
    basis(i, 3) = h_vec[i];
  }

  // Verify: metric and curvature take the normal form in the new basis.
  Matrix<S> P = basis;
  Matrix<S> Pinv = P.inverse();
  Matrix<S> gnew = P.transpose() * ip.gram() * P;
  Matrix<S> expect_g(4, 4);
  expect_g(0, 0) = expect_g(1, 1) = S(1);
  expect_g(2, 3) = expect_g(3, 2) = S(1);
  bool ok = gnew == expect_g;
  if (ok) {
    InnerProduct<S> nip(expect_g);
    auto cols = [&](size_t k) { return P.col(k); };
    for (size_t a = 0; a < 4 && ok; ++a)
      for (size_t b = a + 1; b < 4 && ok; ++b) {
        Matrix<S> knew = Pinv * kt.eval(cols(a), cols(b)) * P;
        Matrix<S> want(4, 4);
        if (a == 0 && b == 3) want = nip.wedge_basis(0, 2) * A;
        if (a == 1 && b == 3) want = nip.wedge_basis(1, 2) * B;
        if (knew != want) ok = false;
      }
  }
  out.verified = ok;
  out.basis = std::move(basis);
  return out;
}

}  // namespace lorcurv
