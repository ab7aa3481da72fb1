// Phase-space model tests: bracket conventions, construction-time structure
// checks, Killing equations, perfect-square factorization.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qalg/phase.hpp"

using namespace qalg;

TEST_CASE("flat canonical bracket orientation") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  auto R = m->ring();
  RatFn p1 = RatFn::var(R, "p1"), p2 = RatFn::var(R, "p2");
  RatFn x = RatFn::var(R, "x"), y = RatFn::var(R, "y");
  RatFn J = x * p2 - y * p1;
  CHECK(m->bracket(p1, x) == RatFn::constant(R, GaussRat(1)));
  CHECK(m->bracket(p1, J) == p2);
  RatFn H = p1 * p1 + p2 * p2;
  CHECK(m->bracket(H, J).is_zero());
  CHECK(m->is_constant_of_motion(J * J, H));
  CHECK_FALSE(m->is_constant_of_motion(x * p1, H));
  // {J^2, p1^2} = -4 J p1 p2
  CHECK(m->bracket(J * J, p1 * p1) == GaussRat(-4) * J * p1 * p2);
  // antisymmetry on a mixed pair
  RatFn f = x * x * p1 + y * p2, g = y * p1 * p2;
  CHECK((m->bracket(f, g) + m->bracket(g, f)).is_zero());
}

TEST_CASE("model-bound J shorthand parses") {
  auto m = PhaseModel::make(ModelId::FlatE2, {"a1"});
  RatFn v = m->parse("J^2 + p1*p2");
  auto R = m->ring();
  RatFn J = RatFn::var(R, "x") * RatFn::var(R, "p2") - RatFn::var(R, "y") * RatFn::var(R, "p1");
  CHECK(v == J * J + RatFn::var(R, "p1") * RatFn::var(R, "p2"));
}

TEST_CASE("sphere model construction validates structure") {
  // make() runs: rewrite confluence, Jacobi on all generator triples, and
  // the two constraint Casimir checks; any failure throws.
  auto m = PhaseModel::make(ModelId::SphereO3);
  auto R = m->ring();
  Poly s1 = Poly::var(R, "s1"), s2 = Poly::var(R, "s2"), s3 = Poly::var(R, "s3");
  Poly J1 = Poly::var(R, "J1"), J2 = Poly::var(R, "J2"), J3 = Poly::var(R, "J3");
  CHECK(s1 * s1 + s2 * s2 + s3 * s3 == Poly::constant(R, GaussRat(1)));
  CHECK((s1 * J1 + s2 * J2 + s3 * J3).is_zero());
  RatFn H = m->free_hamiltonian();
  CHECK(H == RatFn(J1 * J1 + J2 * J2 + J3 * J3));
  for (const char* g : {"J1", "J2", "J3"})
    CHECK(m->is_constant_of_motion(RatFn::var(R, g), H));
  CHECK_FALSE(m->is_constant_of_motion(RatFn::var(R, "s1"), H));
  // frozen structure constants
  CHECK(m->bracket_poly(J3, J1) == -J2);
  CHECK(m->bracket_poly(J3, J2) == J1);
  CHECK(m->bracket_poly(J1, J2) == -J3);
  CHECK(m->bracket_poly(J1, s2) == -s3);
  CHECK(m->bracket_poly(J2, s3) == -s1);
  CHECK(m->bracket_poly(J3, s1) == -s2);
  // rational observables: {H, a1/s1^2 + ...} style potentials work
  RatFn pot = RatFn(Poly::constant(R, GaussRat(1)), s1 * s1);
  RatFn b = m->bracket(H, pot);
  CHECK_FALSE(b.is_zero());
}

TEST_CASE("trig chart of the sphere") {
  auto m = PhaseModel::make(ModelId::TrigChartSphere);
  auto R = m->ring();
  Poly ch = Poly::var(R, "ch"), sh = Poly::var(R, "sh");
  Poly cphi = Poly::var(R, "cphi"), sphi = Poly::var(R, "sphi");
  CHECK(ch * ch - sh * sh == Poly::constant(R, GaussRat(1)));
  CHECK(cphi * cphi + sphi * sphi == Poly::constant(R, GaussRat(1)));
  // lambda = 1/ch^2, G1 = -2 sh/ch, G2 = 0
  CHECK(m->metric_G(0) == RatFn(GaussRat(-2) * sh, ch));
  CHECK(m->metric_G(1).is_zero());
  CHECK(m->free_hamiltonian() ==
        RatFn(ch * ch * (Poly::var(R, "ppsi", 2) + Poly::var(R, "pphi", 2))));
  // chart functions evolve by the tabulated derivations
  RatFn ppsi = RatFn::var(R, "ppsi");
  CHECK(m->bracket(ppsi, RatFn(ch)) == RatFn(sh));
  CHECK(m->bracket(RatFn::var(R, "pphi"), RatFn(sphi)) == RatFn(cphi));
  // pphi is a constant of the free motion (phi is ignorable)
  CHECK(m->is_constant_of_motion(RatFn::var(R, "pphi"), m->free_hamiltonian()));
}

TEST_CASE("radial chart model") {
  auto m = PhaseModel::make(ModelId::FlatPolarLike);
  auto R = m->ring();
  Poly r = Poly::var(R, "r"), x = Poly::var(R, "x"), y = Poly::var(R, "y");
  CHECK(r * r == x * x + y * y);
  RatFn p1 = RatFn::var(R, "p1");
  CHECK(m->bracket(p1, RatFn(r)) == RatFn(x, r));
  // H is still free flat motion; J is a symmetry and r-dependent things mix in
  CHECK(m->is_constant_of_motion(m->parse("J"), m->free_hamiltonian()));
}

TEST_CASE("killing equation check") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  auto R = m->ring();
  RatFn x = RatFn::var(R, "x"), y = RatFn::var(R, "y");
  RatFn zero = RatFn::zero(R), one = RatFn::constant(R, GaussRat(1));
  // tensor of J^2: (y^2, -xy; -xy, x^2)
  CHECK(killing_check(m, y * y, -(x * y), x * x));
  CHECK(killing_check(m, one, zero, zero));   // p1^2
  CHECK_FALSE(killing_check(m, x, zero, zero));
  // via observables
  CHECK(killing_check_observable(m, m->parse("J^2")));
  CHECK(killing_check_observable(m, m->parse("p1*p2")));
  CHECK_FALSE(killing_check_observable(m, m->parse("x*p1^2")));
}

TEST_CASE("perfect square factorization") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  auto R = m->ring();
  auto sq = [&](const char* src) { return perfect_square_factor(m, m->parse(src)); };
  auto v1 = sq("p1^2");
  REQUIRE(v1.has_value());
  CHECK(v1->xi1 == RatFn::constant(R, GaussRat(1)));
  CHECK(v1->xi2.is_zero());
  auto v2 = sq("(p1+i*p2)^2");
  REQUIRE(v2.has_value());
  CHECK(v2->xi1 == RatFn::constant(R, GaussRat(1)));
  CHECK(v2->xi2 == RatFn::constant(R, GaussRat::i()));
  CHECK_FALSE(sq("J*p1").has_value());
  auto v3 = sq("J^2");
  REQUIRE(v3.has_value());
  CHECK(v3->xi1 == RatFn::var(R, "y"));
  CHECK(v3->xi2 == -RatFn::var(R, "x"));
  auto v4 = sq("p2^2");
  REQUIRE(v4.has_value());
  CHECK(v4->xi1.is_zero());
  CHECK(v4->xi2 == RatFn::constant(R, GaussRat(1)));
  // sign convention: -p2 flips to +p2 direction; 4*J^2 scales
  auto v5 = sq("4*J^2");
  REQUIRE(v5.has_value());
  CHECK(v5->xi1 == GaussRat(2) * RatFn::var(R, "y"));
  // -(p1^2) has xi1 = i which normalizes to positive imaginary part
  auto v6 = sq("-(p1^2)");
  REQUIRE(v6.has_value());
  CHECK(v6->xi1 == RatFn::constant(R, GaussRat::i()));
}
