#include <catch_amalgamated.hpp>

#include "lorcurv/curvature.hpp"

using namespace lorcurv;
using M = Matrix<Rat>;

namespace {

InnerProduct<Rat> euclid(size_t n) {
  M g(n, n);
  for (size_t i = 0; i < n; ++i) g(i, i) = Rat(1);
  return InnerProduct<Rat>(g);
}

InnerProduct<Rat> mink(size_t n) {
  M g(n, n);
  for (size_t i = 0; i + 1 < n; ++i) g(i, i) = Rat(1);
  g(n - 1, n - 1) = Rat(-1);
  return InnerProduct<Rat>(g);
}

CurvatureTensor<Rat> constant_curv(const InnerProduct<Rat>& ip, Rat mu) {
  std::vector<M> comps;
  for (auto [i, j] : index_pairs(ip.dim())) comps.push_back(ip.wedge_basis(i, j) * mu);
  return CurvatureTensor<Rat>(ip, comps);
}

// K(ei,ej) = mu_ij ei^ej: valid for any orthogonal basis and any
// coefficients; semi-symmetric only for compatible coefficient patterns.
CurvatureTensor<Rat> diagonal_tensor(const InnerProduct<Rat>& ip, std::vector<Rat> mus) {
  std::vector<M> comps;
  size_t k = 0;
  for (auto [i, j] : index_pairs(ip.dim())) comps.push_back(ip.wedge_basis(i, j) * mus[k++]);
  return CurvatureTensor<Rat>(ip, comps);
}

}  // namespace

TEST_CASE("constant curvature: axioms, ricci, coefficient") {
  for (auto ip : {euclid(4), mink(4)}) {
    Rat mu(3, 2);
    auto kt = constant_curv(ip, mu);
    CHECK(validate(kt).ok());
    // K = mu u^v on all pairs forces Ric = -mu (n-1) Id.
    M ric = ricci_operator(kt);
    CHECK(ric == M::identity(4) * Rat(-9, 2));
    CHECK(scalar_curvature(kt) == Rat(-18));
    CHECK(is_semi_symmetric(kt));
    CHECK(ricci_commutes(kt));
    CHECK(constant_curvature_coefficient(kt).value() == mu);
    CHECK(primitive_holonomy(kt).size() == 6);
    // Constant curvature has vanishing Weyl part.
    auto w = weyl(kt);
    for (const auto& c : w.components()) CHECK(c.is_zero_matrix());
  }
}

TEST_CASE("curvature validation rejects broken tensors") {
  auto ip = euclid(4);
  auto kt = constant_curv(ip, Rat(1));
  // Break skew-adjointness.
  auto bad1 = kt;
  bad1.at(0, 1) = M::identity(4);
  auto d1 = validate(bad1);
  CHECK(d1.kind == CurvatureDefect::ValuesNotSkewAdjoint);
  // Skew-adjoint values but first Bianchi fails: K(e1,e2) = e1^e3.
  auto bad2 = CurvatureTensor<Rat>::zero(ip);
  bad2.at(0, 1) = ip.wedge_basis(0, 2);
  auto d2 = validate(bad2);
  CHECK(d2.kind == CurvatureDefect::FirstBianchi);
}

TEST_CASE("pair symmetry failure is detected") {
  // K(e1,e2) = e3^e4 with K(e3,e4) = 0: values are skew-adjoint but the
  // tensor is not symmetric under pair exchange.
  auto ip = euclid(4);
  auto bad = CurvatureTensor<Rat>::zero(ip);
  bad.at(0, 1) = ip.wedge_basis(2, 3);
  auto d = validate(bad);
  CHECK(d.kind != CurvatureDefect::None);
}

TEST_CASE("product-type tensor: splitting and semi-symmetry") {
  auto ip = mink(4);
  // Blocks {e1,e2} with mu and {e3,e4} with nu; mixed pairs flat.
  Rat mu(2), nu(-3);
  auto kt = diagonal_tensor(ip, {mu, Rat(0), Rat(0), Rat(0), Rat(0), nu});
  CHECK(validate(kt).ok());
  CHECK(is_semi_symmetric(kt));
  CHECK(ricci_commutes(kt));
  CHECK(!constant_curvature_coefficient(kt).has_value());

  // Block Ricci values: -mu on the first plane, -nu on the second; the
  // second plane carries the timelike direction but stays -nu * Id.
  M ric = ricci_operator(kt);
  CHECK(ric(0, 0) == -mu);
  CHECK(ric(1, 1) == -mu);
  CHECK(ric(2, 2) == -nu);
  CHECK(ric(3, 3) == -nu);

  auto sp = ricci_splitting(kt);
  CHECK(sp.ok());
  REQUIRE(sp.blocks.size() == 2);
  CHECK(sp.blocks[0].basis.cols() == 2);
  CHECK(sp.blocks[1].basis.cols() == 2);

  // Degenerate one block to zero eigenvalue: generalized kernel block.
  auto kt0 = diagonal_tensor(ip, {mu, Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
  auto sp0 = ricci_splitting(kt0);
  CHECK(sp0.ok());
  REQUIRE(sp0.blocks.size() == 2);
  CHECK(sp0.blocks[0].null_block);
  CHECK(sp0.blocks[0].basis.cols() == 2);
}

TEST_CASE("semi-symmetry counterexample is lexicographically first") {
  auto ip = euclid(4);
  // mu12 * mu13 must match mu23 for the (0,1)x(0,2) derivation identity;
  // violate it and nothing else earlier.
  auto kt = diagonal_tensor(ip, {Rat(1), Rat(1), Rat(1), Rat(5), Rat(1), Rat(1)});
  CHECK(validate(kt).ok());
  auto cex = semi_symmetry_counterexample(kt);
  REQUIRE(cex.has_value());
  CHECK(cex->i == 0);
  CHECK(cex->j == 1);
  CHECK(cex->a == 0);
  CHECK(cex->b == 2);
  CHECK(!is_semi_symmetric(kt));
}

TEST_CASE("3d reconstruction from ricci inverts ricci") {
  auto ip3 = mink(3);
  // Any self-adjoint operator is a valid ricci for the reconstruction.
  M a{{Rat(2), Rat(1), Rat(0)}, {Rat(1), Rat(-1), Rat(2)}, {Rat(0), Rat(-2), Rat(3)}};
  REQUIRE(ip3.self_adjoint(a));
  auto kt = curvature_from_ricci_3d(ip3, a);
  CHECK(validate(kt).ok());
  CHECK(ricci_operator(kt) == a);
  // Constant curvature round trip: Ric = -2 mu Id gives K = mu u^v.
  Rat mu(5, 7);
  auto cc = curvature_from_ricci_3d(ip3, M::identity(3) * (Rat(-2) * mu));
  CHECK(constant_curvature_coefficient(cc).value() == mu);
}

TEST_CASE("weyl part is ricci flat") {
  auto ip = mink(4);
  auto kt = diagonal_tensor(ip, {Rat(2), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-3)});
  auto w = weyl(kt);
  CHECK(ricci_form(w).is_zero_matrix());
  // Weyl projection is idempotent.
  auto w2 = weyl(w);
  for (auto [i, j] : index_pairs(4)) CHECK(w2.at(i, j) == w.at(i, j));
}

TEST_CASE("splitting requires rational eigenvalues in exact mode") {
  auto ip3 = euclid(3);
  M a{{Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(2), Rat(0)}, {Rat(0), Rat(0), Rat(5)}};
  auto kt = curvature_from_ricci_3d(ip3, a);
  CHECK_THROWS_AS(ricci_splitting(kt), std::domain_error);
}

TEST_CASE("float mode curvature pipeline") {
  Matrix<Fp> g(4, 4);
  for (int i = 0; i < 4; ++i) g(i, i) = Fp(i == 3 ? -1 : 1);
  InnerProduct<Fp> ip(g);
  std::vector<Matrix<Fp>> comps;
  for (auto [i, j] : index_pairs(4)) comps.push_back(ip.wedge_basis(i, j) * Fp(0.5));
  CurvatureTensor<Fp> kt(ip, comps);
  CHECK(validate(kt).ok());
  CHECK(is_semi_symmetric(kt));
  auto ric = ricci_operator(kt);
  CHECK(ric(0, 0) == Fp(-1.5));
  CHECK(constant_curvature_coefficient(kt).value() == Fp(0.5));
}
