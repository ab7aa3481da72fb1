#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <climits>
#include <optional>
#include <string>

#include "qalg/closure.hpp"
#include "qalg/exprio.hpp"
#include "qalg/phase.hpp"
#include "qalg/weyl.hpp"

using namespace qalg;

namespace {

Poly pres_parse(const ClosureReport& rep, const std::string& src) {
  return parse_ratfn(src, rep.pres, {}).as_poly();
}

std::optional<GaussRat> sc(const ClosureReport& rep, const std::string& name) {
  for (const auto& e : rep.structure)
    if (e.name == name) {
      if (!e.coeff.is_constant()) return std::nullopt;
      return e.coeff.constant_value();
    }
  return std::nullopt;
}

// Highest part of a presentation polynomial under the grading that weights
// every generator and parameter 2 but X only 1 (X is first order).
std::string weighted_top(const Poly& p) {
  const RingPtr& r = p.ring();
  int ix = r->index_of("X");
  auto grade = [&](const Exp& e) {
    long g = 0;
    for (size_t i = 0; i < e.size(); ++i)
      g += static_cast<long>(e[i]) * (static_cast<int>(i) == ix ? 1 : 2);
    return g;
  };
  long best = LONG_MIN;
  for (const auto& [e, c] : p.terms()) best = std::max(best, grade(e));
  Poly out = Poly::zero(r);
  for (const auto& [e, c] : p.terms())
    if (grade(e) == best) out = out + Poly::from_raw(r, {RawTerm{e, c}});
  return out.str();
}

}  // namespace

TEST_CASE("free closure: rotation squared with translation squared") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  RatFn L1 = m->parse("J^2");
  RatFn L2 = m->parse("p1^2");
  ClosureReport rep = solve_nondeg_closure(*m, H, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(rep.gradient_ok);
  CHECK(rep.casimir == pres_parse(rep, "16*L1*L2*H - 16*L1*L2^2"));
  CHECK(sc(rep, "M1[1,1,0]") == GaussRat(-16));
  CHECK(sc(rep, "M1[1,0,1]") == GaussRat(8));
  CHECK(sc(rep, "M2[0,1,1]") == GaussRat(-8));
  CHECK(sc(rep, "M2[0,2,0]") == GaussRat(8));
}

TEST_CASE("free closure: null translation squared with p1*J") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  RatFn L1 = m->parse("(p1+i*p2)^2");
  RatFn L2 = m->parse("p1*J");
  ClosureReport rep = solve_nondeg_closure(*m, H, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(rep.gradient_ok);
  // single-root cubic; the doubled variant fails exact matching
  CHECK(rep.casimir == pres_parse(rep, "-L1^3 - 2*L1^2*H - L1*H^2"));
  CHECK_FALSE(rep.casimir == pres_parse(rep, "-8*L1^3 - 8*L1^2*H - 2*L1*H^2"));
}

TEST_CASE("free closure with a structural parameter in the generator") {
  auto m = PhaseModel::make(ModelId::FlatE2, {"b"});
  RatFn H = m->parse("p1^2+p2^2");
  RatFn L1 = m->parse("(p1+i*p2)^2");
  RatFn L2 = m->parse("J^2 + b/2*(p1-i*p2)^2");
  ClosureReport rep = solve_nondeg_closure(*m, H, L1, L2, /*param_weight=*/0);
  CHECK(rep.solvable);
  CHECK(rep.gradient_ok);
  CHECK(rep.casimir == pres_parse(rep, "-16*L1^2*L2 + 8*b*L1*H^2"));
}

TEST_CASE("free closure: two rotation-translation mixes") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  ClosureReport rep =
      solve_nondeg_closure(*m, H, m->parse("p2*J"), m->parse("p1*J"));
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(rep.gradient_ok);
  CHECK(rep.casimir == pres_parse(rep, "H*L1^2 + H*L2^2"));
}

TEST_CASE("closure with oscillator-type potential reproduces the full Casimir") {
  auto m = PhaseModel::make(ModelId::FlatE2, {"a1", "a2", "a3"});
  RatFn H = m->parse("p1^2+p2^2 + a1*(x^2+y^2) + a2/x^2 + a3/y^2");
  RatFn L1 = m->parse("J^2 + a2*y^2/x^2 + a3*x^2/y^2");
  RatFn L2 = m->parse("p1^2 + a1*x^2 + a2/x^2");
  CHECK(m->is_constant_of_motion(L1, H));
  CHECK(m->is_constant_of_motion(L2, H));
  ClosureReport rep = solve_nondeg_closure(*m, H, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(rep.gradient_ok);
  CHECK(rep.casimir ==
        pres_parse(rep,
                   "16*L1*L2*H - 16*L1*L2^2 - 16*(a2+a3)*L2^2 - 16*a2*H^2 "
                   "+ 32*a2*L2*H - 16*a1*L1^2 + 64*a1*a2*a3"));
}

TEST_CASE("free sphere closure: two rotation generators") {
  auto m = PhaseModel::make(ModelId::SphereO3);
  RatFn H = m->parse("J1^2+J2^2+J3^2");
  RatFn L1 = m->parse("J3^2");
  RatFn L2 = m->parse("J1^2");
  ClosureReport rep = solve_nondeg_closure(*m, H, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(rep.gradient_ok);
  CHECK(rep.casimir ==
        pres_parse(rep, "16*L1*L2*H - 16*L1^2*L2 - 16*L1*L2^2"));
}

TEST_CASE("sphere closure with inverse-square potential on all axes") {
  auto m = PhaseModel::make(ModelId::SphereO3, {"a1", "a2", "a3"});
  RatFn H = m->parse("J1^2+J2^2+J3^2 + a1/s1^2 + a2/s2^2 + a3/s3^2");
  RatFn L1 = m->parse("J3^2 + a1*s2^2/s1^2 + a2*s1^2/s2^2");
  RatFn L2 = m->parse("J1^2 + a2*s3^2/s2^2 + a3*s2^2/s3^2");
  CHECK(m->is_constant_of_motion(L1, H));
  CHECK(m->is_constant_of_motion(L2, H));
  ClosureReport rep = solve_nondeg_closure(*m, H, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(rep.gradient_ok);
  // third generator L3 = H - L1 - L2 - a1 - a2 - a3 gives the symmetric form
  CHECK(rep.casimir ==
        pres_parse(rep,
                   "16*L1*L2*(H-L1-L2-a1-a2-a3) - 16*a2*(H-L1-L2-a1-a2-a3)^2 "
                   "- 16*a3*L1^2 - 16*a1*L2^2 + 64*a1*a2*a3"));
}

TEST_CASE("degenerate closure: rotation with its two momentum products") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  RatFn X = m->parse("J");
  RatFn L1 = m->parse("J*p1");
  RatFn L2 = m->parse("J*p2");
  ClosureReport rep = solve_deg_closure(*m, H, X, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.casimir_nullity == 1);
  CHECK(rep.unique);
  CHECK(rep.casimir == pres_parse(rep, "H*X^2 - L1^2 - L2^2"));
  CHECK(rep.gradient_ok);
  CHECK(rep.K_constant);
  CHECK(rep.K == GaussRat(1) / GaussRat(2));
  // {X,L1} = -L2, {X,L2} = +L1, {L1,L2} = H X
  CHECK(sc(rep, "P1[0,1,0,0]") == GaussRat(-1));
  CHECK(sc(rep, "P2[1,0,0,0]") == GaussRat(1));
  CHECK(sc(rep, "Q[0,0,1,0]") == GaussRat(1));
}

TEST_CASE("degenerate closure: translation-centered pair") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  ClosureReport rep = solve_deg_closure(*m, H, m->parse("p1"), m->parse("J^2"),
                                        m->parse("J*p2"));
  CHECK(rep.solvable);
  CHECK(rep.casimir_nullity == 1);
  CHECK(rep.casimir == pres_parse(rep, "L2^2 + L1*X^2 - L1*H"));
  CHECK(rep.gradient_ok);
  CHECK(rep.K_constant);
  CHECK(rep.K == GaussRat(1));
}

TEST_CASE("degenerate closure with a rational multiplier") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  ClosureReport rep = solve_deg_closure(*m, H, m->parse("J"), m->parse("J*p1"),
                                        m->parse("p1^2"));
  // {X,L1} = -J p2 falls outside the linear display span, so the triplet does
  // not close as a quadratic algebra; the polynomial relation still exists but
  // its bracket multiplier is a nonconstant rational function.
  CHECK_FALSE(rep.solvable);
  CHECK(rep.casimir_nullity == 1);
  CHECK(rep.gradient_ok);
  CHECK_FALSE(rep.K_constant);
  REQUIRE(rep.K_fn.has_value());
  CHECK(*rep.K_fn == m->parse("-p2/J"));
}

TEST_CASE("degenerate sphere closure: axis rotation with null squares") {
  auto m = PhaseModel::make(ModelId::SphereO3);
  RatFn H = m->parse("J1^2+J2^2+J3^2");
  RatFn X = m->parse("J3");
  RatFn L1 = m->parse("(J1+i*J2)^2");
  RatFn L2 = m->parse("(J1-i*J2)^2");
  ClosureReport rep = solve_deg_closure(*m, H, X, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.casimir_nullity == 1);
  CHECK(rep.casimir == pres_parse(rep, "X^4 - 2*H*X^2 + H^2 - L1*L2"));
  CHECK(rep.gradient_ok);
  CHECK(rep.K_constant);
  CHECK(rep.K == GaussRat(mpq_class(0), mpq_class(-2)));
}

TEST_CASE("dependent generators are rejected") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  CHECK_THROWS_AS(solve_nondeg_closure(*m, H, m->parse("p1^2"), H),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      solve_deg_closure(*m, H, m->parse("p1"), m->parse("p1^2"), H),
      std::invalid_argument);
}

TEST_CASE("gradient check fails on a corrupted Casimir") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn H = m->parse("p1^2+p2^2");
  RatFn L1 = m->parse("J^2");
  RatFn L2 = m->parse("p1^2");
  ClosureReport rep = solve_nondeg_closure(*m, H, L1, L2);
  REQUIRE(rep.solvable);
  CHECK(casimir_gradient_check(*m, rep.pres, rep.casimir, H, L1, L2));
  Poly bad = rep.casimir + pres_parse(rep, "L1^3");
  CHECK_FALSE(casimir_gradient_check(*m, rep.pres, bad, H, L1, L2));
}

TEST_CASE("operator closure: flat free pair matches classical at top order") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn Hc = m->parse("p1^2+p2^2");
  ClosureReport cl = solve_nondeg_closure(*m, Hc, m->parse("J^2"), m->parse("p1^2"));
  REQUIRE(cl.solvable);

  OperatorAlgebra alg = flat_operator_algebra({});
  WeylOp J = alg.mul("x") * alg.d(1) - alg.mul("y") * alg.d(0);
  WeylOp H = alg.d(0, 2) + alg.d(1, 2);
  ClosureReport rep = solve_nondeg_closure_quantum(alg, H, J * J, alg.d(0, 2));
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(weighted_top(rep.casimir) == weighted_top(cl.casimir));
}

TEST_CASE("operator closure: oscillator-type potential solves exactly") {
  auto m = PhaseModel::make(ModelId::FlatE2, {"a1", "a2", "a3"});
  ClosureReport cl = solve_nondeg_closure(
      *m, m->parse("p1^2+p2^2 + a1*(x^2+y^2) + a2/x^2 + a3/y^2"),
      m->parse("J^2 + a2*y^2/x^2 + a3*x^2/y^2"),
      m->parse("p1^2 + a1*x^2 + a2/x^2"));
  REQUIRE(cl.solvable);

  OperatorAlgebra alg = flat_operator_algebra({"a1", "a2", "a3"});
  WeylOp J = alg.mul("x") * alg.d(1) - alg.mul("y") * alg.d(0);
  WeylOp H = alg.d(0, 2) + alg.d(1, 2) +
             alg.mul("a1*(x^2+y^2) + a2/x^2 + a3/y^2");
  WeylOp L1 = J * J + alg.mul("a2*y^2/x^2 + a3*x^2/y^2");
  WeylOp L2 = alg.d(0, 2) + alg.mul("a1*x^2 + a2/x^2");
  CHECK(commutator(H, L1).is_zero());
  CHECK(commutator(H, L2).is_zero());
  ClosureReport rep = solve_nondeg_closure_quantum(alg, H, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(weighted_top(rep.casimir) == weighted_top(cl.casimir));
  // order-reduction shifts only the lower structure constants
  CHECK(sc(rep, "N[1,1,1]") == GaussRat(16));
  CHECK(sc(rep, "N[1,2,0]") == GaussRat(-16));
}

TEST_CASE("operator closure: degenerate flat pair") {
  auto m = PhaseModel::make(ModelId::FlatE2);
  RatFn Hc = m->parse("p1^2+p2^2");
  ClosureReport cl =
      solve_deg_closure(*m, Hc, m->parse("J"), m->parse("J*p1"), m->parse("J*p2"));
  REQUIRE(cl.solvable);

  OperatorAlgebra alg = flat_operator_algebra({});
  GaussRat half = GaussRat(2).inverse();
  WeylOp J = alg.mul("x") * alg.d(1) - alg.mul("y") * alg.d(0);
  WeylOp H = alg.d(0, 2) + alg.d(1, 2);
  WeylOp L1 = half * sym2(J, alg.d(0));
  WeylOp L2 = half * sym2(J, alg.d(1));
  ClosureReport rep = solve_deg_closure_quantum(alg, H, J, L1, L2);
  CHECK(rep.solvable);
  CHECK(rep.casimir_nullity == 1);
  CHECK(weighted_top(rep.casimir) == weighted_top(cl.casimir));
}

TEST_CASE("operator closure: sphere free pair via the ambient algebra") {
  auto m = PhaseModel::make(ModelId::SphereO3);
  ClosureReport cl = solve_nondeg_closure(*m, m->parse("J1^2+J2^2+J3^2"),
                                          m->parse("J3^2"), m->parse("J1^2"));
  REQUIRE(cl.solvable);

  OperatorAlgebra alg = sphere_operator_algebra({});
  const WeylOp& J1 = alg.gen("J1");
  const WeylOp& J3 = alg.gen("J3");
  WeylOp H = alg.gen("J1") * alg.gen("J1") + alg.gen("J2") * alg.gen("J2") +
             alg.gen("J3") * alg.gen("J3");
  ClosureReport rep = solve_nondeg_closure_quantum(alg, H, J3 * J3, J1 * J1);
  CHECK(rep.solvable);
  CHECK(rep.unique);
  CHECK(weighted_top(rep.casimir) == weighted_top(cl.casimir));
}
