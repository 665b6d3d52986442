#include <catch_amalgamated.hpp>

#include "lorcurv/pseudo_linalg.hpp"

using namespace lorcurv;
using M = Matrix<Rat>;

static M diag4(int a, int b, int c, int d) {
  M g(4, 4);
  g(0, 0) = Rat(a);
  g(1, 1) = Rat(b);
  g(2, 2) = Rat(c);
  g(3, 3) = Rat(d);
  return g;
}

TEST_CASE("signature by minors and by congruence fallback") {
  CHECK(symmetric_signature(diag4(1, 1, 1, -1)) == Signature{3, 1, 0});
  CHECK(symmetric_signature(diag4(-1, -1, 2, 3)) == Signature{2, 2, 0});
  // Null-plane form: leading minor vanishes, fallback kicks in.
  M np{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(symmetric_signature(np) == Signature{1, 1, 0});
  // Degenerate form.
  M dg{{Rat(1), Rat(0)}, {Rat(0), Rat(0)}};
  CHECK(symmetric_signature(dg) == Signature{1, 0, 1});
  // 4d mixed with zero corner.
  M g(4, 4);
  g(0, 1) = g(1, 0) = Rat(1);
  g(2, 2) = Rat(1);
  g(3, 3) = Rat(1);
  CHECK(symmetric_signature(g) == Signature{3, 1, 0});
}

TEST_CASE("inner product validation and adjoints") {
  CHECK_THROWS(InnerProduct<Rat>(M{{Rat(0)}}));
  CHECK_THROWS(InnerProduct<Rat>(M{{Rat(1), Rat(2)}, {Rat(0), Rat(1)}}));
  InnerProduct<Rat> ip(diag4(1, 1, 1, -1));
  CHECK(ip.lorentzian());
  CHECK(ip.dot({Rat(1), Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(0), Rat(0), Rat(1)}) == Rat(0));
  M f(4, 4);
  f(0, 3) = Rat(2);
  M fs = ip.adjoint(f);
  // <f e4, e1> = 2 = <e4, f* e1> = -[f* e1]_4
  CHECK(fs(3, 0) == Rat(-2));
  CHECK(ip.self_adjoint(diag4(5, 7, 7, 9)));
  CHECK(!ip.self_adjoint(f));
  // adjoint is an involution and reverses products
  M a{{Rat(1), Rat(2), Rat(0), Rat(1)},
      {Rat(0), Rat(1), Rat(3), Rat(0)},
      {Rat(2), Rat(0), Rat(1), Rat(1)},
      {Rat(1), Rat(1), Rat(0), Rat(2)}};
  CHECK(ip.adjoint(ip.adjoint(a)) == a);
  M b = a.transpose();
  CHECK(ip.adjoint(a * b) == ip.adjoint(b) * ip.adjoint(a));
}

TEST_CASE("wedge endomorphisms are skew-adjoint and bilinear") {
  InnerProduct<Rat> ip(diag4(1, 1, 1, -1));
  std::vector<Rat> u{Rat(1), Rat(2), Rat(0), Rat(1)}, v{Rat(0), Rat(1), Rat(-1), Rat(3)};
  M w = ip.wedge(u, v);
  CHECK(ip.skew_adjoint(w));
  M wvu = ip.wedge(v, u);
  CHECK(wvu == -w);
  // (u ^ v) x = <v,x> u - <u,x> v
  std::vector<Rat> x{Rat(1), Rat(0), Rat(1), Rat(0)};
  auto wx = w.apply(x);
  Rat vu = ip.dot(v, x), ux = ip.dot(u, x);
  for (size_t i = 0; i < 4; ++i) CHECK(wx[i] == vu * u[i] - ux * v[i]);
  CHECK(ip.wedge(u, u).is_zero_matrix());
  // wedge_basis agrees
  std::vector<Rat> e0{Rat(1), Rat(0), Rat(0), Rat(0)}, e3{Rat(0), Rat(0), Rat(0), Rat(1)};
  CHECK(ip.wedge_basis(0, 3) == ip.wedge(e0, e3));
}

TEST_CASE("canonical type: diagonalizable") {
  InnerProduct<Rat> ip(diag4(1, 1, 1, -1));
  M f = diag4(2, 2, 5, 7);
  auto t = symmetric_canonical_type(ip, f);
  CHECK(t.kind == SymCanonicalKind::Diag);
  REQUIRE(t.eigenvalues_complete);
  REQUIRE(t.real_eigenvalues.size() == 3);
  CHECK(t.real_eigenvalues[0] == std::pair<Rat, int>{Rat(2), 2});
  CHECK(t.real_eigenvalues[1] == std::pair<Rat, int>{Rat(5), 1});
  CHECK(t.real_eigenvalues[2] == std::pair<Rat, int>{Rat(7), 1});
}

TEST_CASE("canonical type: complex pair") {
  M g{{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
  InnerProduct<Rat> ip(g);
  // self-adjoint for diag(1,-1): g f symmetric
  M f{{Rat(3), Rat(1)}, {Rat(-1), Rat(3)}};
  REQUIRE(ip.self_adjoint(f));
  auto t = symmetric_canonical_type(ip, f);
  CHECK(t.kind == SymCanonicalKind::ComplexPair);
  CHECK(t.real_eigenvalues.empty());
}

TEST_CASE("canonical type: jordan blocks") {
  M g2{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  InnerProduct<Rat> ip2(g2);
  M f2{{Rat(5), Rat(0)}, {Rat(1), Rat(5)}};
  REQUIRE(ip2.self_adjoint(f2));
  auto t2 = symmetric_canonical_type(ip2, f2);
  CHECK(t2.kind == SymCanonicalKind::Alpha2);
  REQUIRE(t2.jordan_eigenvalue.has_value());
  CHECK(*t2.jordan_eigenvalue == Rat(5));

  M g3{{Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}};
  InnerProduct<Rat> ip3(g3);
  M f3{{Rat(-2), Rat(0), Rat(0)}, {Rat(1), Rat(-2), Rat(0)}, {Rat(0), Rat(1), Rat(-2)}};
  REQUIRE(ip3.self_adjoint(f3));
  auto t3 = symmetric_canonical_type(ip3, f3);
  CHECK(t3.kind == SymCanonicalKind::Alpha3);
  CHECK(*t3.jordan_eigenvalue == Rat(-2));
}

TEST_CASE("canonical type in float mode") {
  Matrix<Fp> g{{Fp(1), Fp(0)}, {Fp(0), Fp(-1)}};
  InnerProduct<Fp> ip(g);
  Matrix<Fp> f{{Fp(3), Fp(1)}, {Fp(-1), Fp(3)}};
  auto t = symmetric_canonical_type(ip, f);
  CHECK(t.kind == SymCanonicalKind::ComplexPair);

  Matrix<Fp> g4(4, 4);
  for (int i = 0; i < 4; ++i) g4(i, i) = Fp(i == 3 ? -1 : 1);
  InnerProduct<Fp> ip4(g4);
  Matrix<Fp> d4(4, 4);
  d4(0, 0) = Fp(2);
  d4(1, 1) = Fp(2);
  d4(2, 2) = Fp(5);
  d4(3, 3) = Fp(7);
  auto td = symmetric_canonical_type(ip4, d4);
  CHECK(td.kind == SymCanonicalKind::Diag);
  bool saw2 = false;
  for (auto& [v, m] : td.real_eigenvalues)
    if (m == 2 && v == Fp(2)) saw2 = true;
  CHECK(saw2);

  Matrix<Fp> gn{{Fp(0), Fp(1)}, {Fp(1), Fp(0)}};
  InnerProduct<Fp> ipn(gn);
  Matrix<Fp> fn{{Fp(5), Fp(0)}, {Fp(1), Fp(5)}};
  auto tn = symmetric_canonical_type(ipn, fn);
  CHECK(tn.kind == SymCanonicalKind::Alpha2);
}
