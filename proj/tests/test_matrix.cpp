#include <catch_amalgamated.hpp>

#include "lorcurv/complex.hpp"
#include "lorcurv/matrix.hpp"

using namespace lorcurv;
using M = Matrix<Rat>;

TEST_CASE("matrix arithmetic and products") {
  M a{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
  M b{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(a * b == M{{Rat(2), Rat(1)}, {Rat(4), Rat(3)}});
  CHECK(b * a == M{{Rat(3), Rat(4)}, {Rat(1), Rat(2)}});
  CHECK(a + b - b == a);
  CHECK((a * Rat(2))(1, 1) == Rat(8));
  CHECK(a.transpose()(0, 1) == Rat(3));
  CHECK(a.trace() == Rat(5));
  CHECK(commutator(a, b) == a * b - b * a);
}

TEST_CASE("determinant, rank, inverse") {
  M a{{Rat(2), Rat(1), Rat(0)}, {Rat(0), Rat(1, 2), Rat(1)}, {Rat(1), Rat(0), Rat(3)}};
  CHECK(a.det() == Rat(4));
  CHECK(a.rank() == 3);
  CHECK(a.inverse() * a == M::identity(3));
  M sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK(sing.det() == Rat(0));
  CHECK(sing.rank() == 1);
  CHECK_THROWS(sing.inverse());
}

TEST_CASE("nullspace and solve") {
  M a{{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}};
  M ns = a.nullspace();
  CHECK(ns.cols() == 2);
  for (size_t k = 0; k < ns.cols(); ++k) {
    auto v = ns.col(k);
    auto av = a.apply(v);
    for (const auto& x : av) CHECK(is_zero(x));
  }
  M b{{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
  auto x = b.solve({Rat(3), Rat(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(2));
  CHECK((*x)[1] == Rat(1));
  M inc{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK(!inc.solve({Rat(0), Rat(1)}).has_value());
}

TEST_CASE("characteristic polynomial") {
  M a{{Rat(2), Rat(0)}, {Rat(0), Rat(3)}};
  auto cp = a.char_poly();  // x^2 - 5x + 6
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == Rat(6));
  CHECK(cp[1] == Rat(-5));
  CHECK(cp[2] == Rat(1));
  M n{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
  auto cpn = n.char_poly();  // x^2
  CHECK(cpn[0] == Rat(0));
  CHECK(cpn[1] == Rat(0));
  CHECK(cpn[2] == Rat(1));
}

TEST_CASE("span utilities") {
  M e1{{Rat(1), Rat(0)}, {Rat(0), Rat(0)}};
  M e2{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
  M s{{Rat(2), Rat(-3)}, {Rat(0), Rat(0)}};
  CHECK(span_dim<Rat>({e1, e2, s}) == 2);
  CHECK(in_span(s, {e1, e2}));
  M out{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}};
  CHECK(!in_span(out, {e1, e2}));
  auto basis = independent_subset<Rat>({e1, s, e2, e1 + e2});
  CHECK(basis.size() == 2);
}

TEST_CASE("elimination over the complex rationals") {
  using C = Cx<Rat>;
  Matrix<C> m{{C(Rat(1), Rat(1)), C(Rat(0))}, {C(Rat(0)), C(Rat(2))}};
  CHECK(m.det() == C(Rat(2), Rat(2)));
  CHECK(m.inverse() * m == Matrix<C>::identity(2));
  Matrix<C> s{{C(Rat(1)), C::i()}, {C::i(), C(Rat(-1))}};
  CHECK(s.rank() == 1);
  CHECK(s.det() == C(Rat(0)));
}

TEST_CASE("float mode pivots by magnitude") {
  Matrix<Fp> a{{Fp(1e-12), Fp(1)}, {Fp(1), Fp(1)}};
  CHECK(a.rank() == 2);
  Matrix<Fp> near_sing{{Fp(1), Fp(2)}, {Fp(2), Fp(4 + 1e-13)}};
  CHECK(near_sing.rank() == 1);
}
