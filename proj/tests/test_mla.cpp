#include <catch_amalgamated.hpp>

#include "lorcurv/mla.hpp"

using namespace lorcurv;
using M = Matrix<Rat>;
using V = std::vector<Rat>;

namespace {

M diag2(int a, int b) { return M{{Rat(a), Rat(0)}, {Rat(0), Rat(b)}}; }

// [e,f] = c e on a 2d space.
MetricLieAlgebra<Rat> affine2(M gram, Rat c) {
  return MetricLieAlgebra<Rat>(InnerProduct<Rat>(gram), {V{c, Rat(0)}});
}

// Cross-product algebra on 3d euclidean space; bi-invariant metric.
MetricLieAlgebra<Rat> so3() {
  M g(3, 3);
  for (int i = 0; i < 3; ++i) g(i, i) = Rat(1);
  // pairs (0,1)->e3, (0,2)->-e2, (1,2)->e1
  return MetricLieAlgebra<Rat>(
      InnerProduct<Rat>(g),
      {V{Rat(0), Rat(0), Rat(1)}, V{Rat(0), Rat(-1), Rat(0)}, V{Rat(1), Rat(0), Rat(0)}});
}

}  // namespace

TEST_CASE("jacobi validation") {
  CHECK(so3().valid());
  // [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=e2 fails Jacobi on (e1,e2,e3).
  M g(3, 3);
  for (int i = 0; i < 3; ++i) g(i, i) = Rat(1);
  MetricLieAlgebra<Rat> bad(
      InnerProduct<Rat>(g),
      {V{Rat(0), Rat(0), Rat(1)}, V{Rat(1), Rat(0), Rat(0)}, V{Rat(0), Rat(1), Rat(0)}});
  auto d = bad.jacobi_defect();
  REQUIRE(d.has_value());
  CHECK(*d == std::array<size_t, 3>{0, 1, 2});
}

TEST_CASE("2d affine algebra: connection and curvature closed forms") {
  // [e,f] = c e. Four metric normal forms; curvature is c^2-proportional.
  for (Rat lam : {Rat(1), Rat(2), Rat(-3)}) {
    Rat l2 = lam * lam;
    {
      // euclidean, [e,f] = lam e
      auto mla = affine2(diag2(1, 1), lam);
      auto L = mla.levi_civita();
      CHECK(L[0] == M{{Rat(0), lam}, {-lam, Rat(0)}});
      CHECK(L[1] == M(2, 2));
      auto K = mla.curvature(L);
      CHECK(K.at(0, 1) == M{{Rat(0), l2}, {-l2, Rat(0)}});
      // K = lam^2 e^f; sectional coefficient lam^2
      CHECK(constant_curvature_coefficient(K).value() == l2);
      CHECK(identity_suite(mla).ok());
    }
    {
      // <f,f> = -1, [e,f] = -lam e
      auto mla = affine2(diag2(1, -1), -lam);
      auto L = mla.levi_civita();
      CHECK(L[0] == M{{Rat(0), -lam}, {-lam, Rat(0)}});
      CHECK(L[1] == M(2, 2));
      auto K = mla.curvature(L);
      CHECK(K.at(0, 1) == M{{Rat(0), l2}, {l2, Rat(0)}});
      CHECK(constant_curvature_coefficient(K).value() == -l2);
    }
    {
      // <e,e> = -1, [e,f] = lam e
      auto mla = affine2(diag2(-1, 1), lam);
      auto L = mla.levi_civita();
      CHECK(L[0] == M{{Rat(0), lam}, {lam, Rat(0)}});
      CHECK(L[1] == M(2, 2));
      auto K = mla.curvature(L);
      CHECK(K.at(0, 1) == M{{Rat(0), l2}, {l2, Rat(0)}});
      CHECK(constant_curvature_coefficient(K).value() == l2);
    }
    {
      // null-plane metric, [e,f] = -lam e: flat, L_e = 0
      auto mla = affine2(M{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, -lam);
      auto L = mla.levi_civita();
      CHECK(L[0] == M(2, 2));
      CHECK(L[1] == M{{lam, Rat(0)}, {Rat(0), -lam}});
      auto K = mla.curvature(L);
      CHECK(K.at(0, 1).is_zero_matrix());
      CHECK(constant_curvature_coefficient(K).value() == Rat(0));
    }
  }
}

TEST_CASE("bi-invariant cross-product algebra is constant curvature") {
  auto mla = so3();
  auto L = mla.levi_civita();
  // Bi-invariance: L_u = ad_u / 2.
  for (size_t i = 0; i < 3; ++i) CHECK(L[i] == mla.ad(i) * Rat(1, 2));
  auto K = mla.curvature(L);
  CHECK(validate(K).ok());
  CHECK(constant_curvature_coefficient(K).value() == Rat(-1, 4));
  CHECK(ricci_operator(K) == M::identity(3) * Rat(1, 2));
  CHECK(is_semi_symmetric(K));
  CHECK(locally_symmetric(mla, L, K));
  CHECK(second_order_symmetric(mla, L, K));
  auto h = holonomy(mla, L, K);
  CHECK(h.primitive.size() == 3);
  CHECK(h.full.size() == 3);
  CHECK(identity_suite(mla).ok());
}

TEST_CASE("identity suite holds across sample algebras") {
  // Solvable: [h,e1]=e1, [h,e2]=2e2 with h timelike.
  M g(3, 3);
  g(0, 0) = Rat(-1);
  g(1, 1) = Rat(1);
  g(2, 2) = Rat(1);
  MetricLieAlgebra<Rat> solv(
      InnerProduct<Rat>(g),
      {V{Rat(0), Rat(1), Rat(0)}, V{Rat(0), Rat(0), Rat(2)}, V{Rat(0), Rat(0), Rat(0)}});
  REQUIRE(solv.valid());
  CHECK(identity_suite(solv).ok());

  // Product of the cross-product algebra with a line.
  M gl{{Rat(1)}};
  MetricLieAlgebra<Rat> line(InnerProduct<Rat>(gl), {});
  auto prod = direct_sum(so3(), line);
  REQUIRE(prod.valid());
  CHECK(prod.dim() == 4);
  CHECK(identity_suite(prod).ok());

  // Product curvature splits: primitive holonomy stays 3-dimensional.
  auto L = prod.levi_civita();
  auto K = prod.curvature(L);
  auto h = holonomy(prod, L, K);
  CHECK(h.primitive.size() == 3);
  CHECK(locally_symmetric(prod, L, K));
}

TEST_CASE("unimodular trace vector") {
  // Cross-product algebra is unimodular: h = 0.
  auto mla = so3();
  auto L = mla.levi_civita();
  auto h = unimodular_vector(mla, L);
  for (auto& x : h) CHECK(is_zero(x));

  // [e,f] = 2e: tr ad_f = -2, so h = -2f under the euclidean metric.
  auto aff = affine2(diag2(1, 1), Rat(2));
  auto La = aff.levi_civita();
  auto ha = unimodular_vector(aff, La);
  CHECK(ha == V{Rat(0), Rat(-2)});
  // Defining property <u,h> = tr(ad_u).
  for (size_t i = 0; i < 2; ++i)
    CHECK(aff.ip().dot(basis_vec<Rat>(2, i), ha) == aff.ad(i).trace());
}

TEST_CASE("direct sums block correctly") {
  auto a = affine2(diag2(1, 1), Rat(1));
  auto b = affine2(diag2(1, -1), Rat(3));
  auto s = direct_sum(a, b);
  REQUIRE(s.valid());
  CHECK(s.bracket_basis(0, 1) == V{Rat(1), Rat(0), Rat(0), Rat(0)});
  CHECK(s.bracket_basis(2, 3) == V{Rat(0), Rat(0), Rat(3), Rat(0)});
  CHECK(s.bracket_basis(0, 2) == V{Rat(0), Rat(0), Rat(0), Rat(0)});
  CHECK(s.bracket_basis(1, 3) == V{Rat(0), Rat(0), Rat(0), Rat(0)});
  // Mixed-pair curvature vanishes on a product.
  auto K = s.curvature();
  CHECK(K.at(0, 2).is_zero_matrix());
  CHECK(K.at(0, 3).is_zero_matrix());
  CHECK(K.at(1, 2).is_zero_matrix());
  CHECK(K.at(1, 3).is_zero_matrix());
  CHECK(identity_suite(s).ok());
}

TEST_CASE("float mode mla agrees with exact on the affine algebra") {
  Matrix<Fp> g{{Fp(1), Fp(0)}, {Fp(0), Fp(1)}};
  MetricLieAlgebra<Fp> mla(InnerProduct<Fp>(g), {std::vector<Fp>{Fp(2), Fp(0)}});
  auto L = mla.levi_civita();
  CHECK(L[0](0, 1) == Fp(2));
  CHECK(L[0](1, 0) == Fp(-2));
  auto K = mla.curvature(L);
  CHECK(K.at(0, 1)(0, 1) == Fp(4));
  CHECK(identity_suite(mla).ok());
}
