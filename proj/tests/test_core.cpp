// Unit tests for the exact arithmetic core: Gaussian rationals, quotient
// rings, polynomials, rational functions, and expression I/O.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qalg/exprio.hpp"
#include "qalg/poly.hpp"
#include "qalg/ratfn.hpp"

using namespace qalg;

namespace {

RingPtr flat_ring() {
  return RingCtx::make({{"x", VarKind::Position},
                        {"y", VarKind::Position},
                        {"p1", VarKind::Momentum},
                        {"p2", VarKind::Momentum},
                        {"a1", VarKind::Parameter},
                        {"a2", VarKind::Parameter},
                        {"a3", VarKind::Parameter}});
}

// Plane with a registered radial extension r, r^2 = x^2 + y^2.
RingPtr radial_ring() {
  auto T = [](int r, int x, int y, long num, long den = 1) {
    return RawTerm{Exp{r, x, y}, GaussRat(num, den)};
  };
  RewriteRule rr{Exp{2, 0, 0}, {T(0, 2, 0, 1), T(0, 0, 2, 1)}};
  RingCtx::DerivEntry dx{"r", "x", RatRaw{{T(0, 1, 0, 1)}, {T(1, 0, 0, 1)}}};
  RingCtx::DerivEntry dy{"r", "y", RatRaw{{T(0, 0, 1, 1)}, {T(1, 0, 0, 1)}}};
  return RingCtx::make(
      {{"r", VarKind::Extension}, {"x", VarKind::Position}, {"y", VarKind::Position}},
      {rr}, {dx, dy});
}

}  // namespace

TEST_CASE("gaussian rational arithmetic and parsing") {
  GaussRat a(3, 4), b(1, 2);
  CHECK((a + b) == GaussRat(5, 4));
  CHECK((a * b) == GaussRat(3, 8));
  GaussRat z = GaussRat(1, 2) + GaussRat::i() * GaussRat(2, 3);
  CHECK(z.str() == "1/2+2/3*i");
  CHECK(GaussRat::parse("1/2+2/3*i") == z);
  CHECK(GaussRat::parse("-i") == -GaussRat::i());
  CHECK(GaussRat::parse("7") == GaussRat(7));
  CHECK(GaussRat::parse("7")->str() == "7");
  // norm-based inverse: (1+i)^-1 = (1-i)/2
  GaussRat w = GaussRat(1) + GaussRat::i();
  CHECK(w * w.inverse() == GaussRat(1));
  CHECK(w.inverse() == GaussRat(1, 2) - GaussRat::i() * GaussRat(1, 2));
  CHECK_THROWS_AS(GaussRat::zero().inverse(), std::domain_error);
}

TEST_CASE("polynomial arithmetic in a free ring") {
  auto R = flat_ring();
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  Poly s = (x + y) * (x + y);
  CHECK(s == x * x + GaussRat(2) * x * y + y * y);
  CHECK(s.total_degree() == 2);
  CHECK(s.term_count() == 3);
  CHECK((s - s).is_zero());
  Poly p1 = Poly::var(R, "p1");
  CHECK((x * p1 * p1).momentum_degree() == 2);
  CHECK(x.diff_formal(0) == Poly::constant(R, GaussRat(1)));
  CHECK((x * x * y).diff_formal(0) == GaussRat(2) * x * y);
  // graded-lex leading term of x^2 + x*y^2: degree picks x*y^2
  Poly q = x * x + x * y * y;
  CHECK(q.leading_exp() == Exp{1, 2, 0, 0, 0, 0, 0});
}

TEST_CASE("exact division") {
  auto R = flat_ring();
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  Poly num = x * x - y * y, den = x - y, q(R);
  REQUIRE(num.try_divide(den, q));
  CHECK(q == x + y);
  CHECK_FALSE((x * x + y).try_divide(den, q));
}

TEST_CASE("quotient ring reduction and validation") {
  auto R = radial_ring();
  validate_ring(R);  // confluence + derivations compatible with r^2 = x^2+y^2
  Poly r = Poly::var(R, "r"), x = Poly::var(R, "x"), y = Poly::var(R, "y");
  CHECK(r * r == x * x + y * y);
  CHECK(r.pow(4) == (x * x + y * y) * (x * x + y * y));
  CHECK((r.pow(3)).degree_in(0) == 1);  // r^3 -> r(x^2+y^2)
  // chain rule: d(r^3)/dx = 3 r^2 * x/r = 3 r x
  RatFn d = RatFn::diff_poly(r.pow(3), "x");
  CHECK(d == RatFn(GaussRat(3) * r * x));
  // derivation that breaks the relation must be rejected
  auto T = [](int rr, int xx, int yy, long n) { return RawTerm{Exp{rr, xx, yy}, GaussRat(n)}; };
  RewriteRule rule{Exp{2, 0, 0}, {T(0, 2, 0, 1), T(0, 0, 2, 1)}};
  RingCtx::DerivEntry bad{"r", "x", RatRaw{{T(0, 0, 1, 1)}, {T(1, 0, 0, 1)}}};  // dr/dx = y/r
  auto B = RingCtx::make(
      {{"r", VarKind::Extension}, {"x", VarKind::Position}, {"y", VarKind::Position}},
      {rule}, {bad});
  CHECK_THROWS_AS(validate_ring(B), std::logic_error);
}

TEST_CASE("rewrite rules must strictly decrease") {
  // r^2 -> r^3 grows and must be rejected at construction.
  RawTerm t{Exp{3}, GaussRat(1)};
  CHECK_THROWS_AS(RingCtx::make({{"r", VarKind::Extension}}, {RewriteRule{Exp{2}, {t}}}),
                  std::invalid_argument);
}

TEST_CASE("rational function normalization") {
  auto R = flat_ring();
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  RatFn f(x * x - y * y, x - y);
  CHECK(f.is_poly());
  CHECK(f.as_poly() == x + y);
  RatFn g(GaussRat(3) * x * y, x * x);  // content cancel -> 3y/x
  CHECK(g.num() == GaussRat(3) * y);
  CHECK(g.den() == x);
  RatFn three_over_x = RatFn(Poly::constant(R, GaussRat(3)), x);
  CHECK(three_over_x * RatFn(x) == RatFn(Poly::constant(R, GaussRat(3))));
  // equality through cross-multiplication
  CHECK(RatFn(x, y) + RatFn(y, x) == RatFn(x * x + y * y, x * y));
  CHECK(RatFn(x, y) != RatFn(y, x));
  // monic denominator
  RatFn h(x, GaussRat(2) * y);
  CHECK(h.den() == y);
  CHECK(h.num() == GaussRat(1, 2) * x);
}

TEST_CASE("substitution across rings") {
  auto R = flat_ring();
  auto S = radial_ring();
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  // map x -> r, y -> x into the radial ring
  std::map<std::string, RatFn> m{{"x", RatFn::var(S, "r")}, {"y", RatFn::var(S, "x")}};
  RatFn image = subst(x * x + y, m, S);
  Poly expect = Poly::var(S, "x", 2) + Poly::var(S, "y", 2) + Poly::var(S, "x");
  CHECK(image == RatFn(expect));
}

TEST_CASE("expression printing is deterministic and parses back") {
  auto R = flat_ring();
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  Poly p = x * x - y * y;
  CHECK(print_poly(p) == "x^2 - y^2");
  RatFn f(Poly::constant(R, GaussRat(3)), x);
  CHECK(print_ratfn(f) == "3/x");
  RatFn g = parse_ratfn("a1*(x^2+y^2) + a2/x^2 + a3/y^2", R);
  CHECK(parse_ratfn(print_ratfn(g), R) == g);
  // complex coefficients survive the round trip
  RatFn h = parse_ratfn("(1/2+2/3*i)*x*y - i*y^2", R);
  CHECK(parse_ratfn(print_ratfn(h), R) == h);
  CHECK(parse_ratfn("(x+y)^2", R) == RatFn((x + y) * (x + y)));
  // precedence: ^ above unary minus above * /
  CHECK(parse_ratfn("-x^2", R) == RatFn(-(x * x)));
  CHECK(parse_ratfn("6/2/3", R) == RatFn(Poly::constant(R, GaussRat(1))));
}

TEST_CASE("parser reports byte offsets") {
  auto R = flat_ring();
  try {
    parse_ratfn("x +", R);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 3);
  }
  CHECK_THROWS_AS(parse_ratfn("x + q", R), ParseError);
  CHECK_THROWS_AS(parse_ratfn("x/(y-y)", R), ParseError);
  CHECK_THROWS_AS(parse_ratfn("d[x] + 1", R), ParseError);
}
