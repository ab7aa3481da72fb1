// Operator-algebra tests: Leibniz composition, commutators, adjoints,
// symmetrizers, the ambient sphere realization, and principal symbols.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qalg/phase.hpp"
#include "qalg/weyl.hpp"

using namespace qalg;

TEST_CASE("basic composition and commutators") {
  auto A = flat_operator_algebra({"a1", "a2"});
  WeylOp dx = A.d(0), dy = A.d(1);
  WeylOp X = A.mul("x"), Y = A.mul("y");
  CHECK(commutator(dx, X) == A.identity());
  CHECK(commutator(dx, Y).is_zero());
  CHECK(commutator(dx, dy).is_zero());
  // [dx^2, f] = 2 f_x dx + f_xx with f = x^3
  WeylOp f = A.mul("x^3");
  WeylOp c = commutator(dx * dx, f);
  WeylOp expect = GaussRat(6) * (A.mul("x^2") * dx) + A.mul("6*x");
  CHECK(c == expect);
  // associativity spot check
  WeylOp P = A.mul("x*y") * dx + dy * dy;
  WeylOp Q = dx * A.mul("y") + A.mul("x^2");
  WeylOp R = dy * A.mul("x");
  CHECK((P * Q) * R == P * (Q * R));
}

TEST_CASE("rational coefficients compose exactly") {
  auto A = flat_operator_algebra({"a2"});
  WeylOp dx = A.d(0);
  WeylOp inv2 = A.mul("a2/x^2");
  // [dx^2, a2/x^2] = -4 a2/x^3 dx + 6 a2/x^4
  WeylOp c = commutator(dx * dx, inv2);
  CHECK(c == A.mul("-4*a2/x^3") * dx + A.mul("6*a2/x^4"));
}

TEST_CASE("formal adjoint") {
  auto A = flat_operator_algebra({"a1", "a2"});
  WeylOp dx = A.d(0);
  CHECK(dx.adjoint() == -dx);
  // (x dx)^t = -dx x = -x dx - 1
  WeylOp xdx = A.mul("x") * dx;
  CHECK(xdx.adjoint() == -xdx - A.identity());
  // L2 = dx^2 + a1 x^2 + a2/x^2 is formally self-adjoint
  WeylOp L2 = dx * dx + A.mul("a1*x^2 + a2/x^2");
  CHECK(L2.adjoint() == L2);
  CHECK((L2 * L2).adjoint() == L2 * L2);
}

TEST_CASE("symmetrizers") {
  auto A = flat_operator_algebra({});
  WeylOp a = A.d(0) * A.mul("y"), b = A.mul("x") * A.d(1), c = A.d(0);
  CHECK(sym2(a, b) == a * b + b * a);
  CHECK(sym3(a, b, c) == a * b * c + a * c * b + b * a * c + b * c * a + c * a * b + c * b * a);
  // repeated-argument collapse: {A,A,B} = 2(AAB + ABA + BAA)
  CHECK(sym3(a, a, b) == GaussRat(2) * (a * a * b + a * b * a + b * a * a));
}

TEST_CASE("ambient sphere operator algebra") {
  auto S = sphere_operator_algebra({"a1"});
  const WeylOp &J1 = S.gen("J1"), &J2 = S.gen("J2"), &J3 = S.gen("J3");
  CHECK(commutator(J1, J2) == -J3);
  CHECK(commutator(J2, J3) == -J1);
  CHECK(commutator(J3, J1) == -J2);
  // sum s_i J_i vanishes identically in the ambient algebra
  WeylOp sJ = S.mul("s1") * J1 + S.mul("s2") * J2 + S.mul("s3") * J3;
  CHECK(sJ.is_zero());
  // H0 = sum J_i^2 commutes with each J_k
  WeylOp H0 = J1 * J1 + J2 * J2 + J3 * J3;
  CHECK(commutator(H0, J1).is_zero());
  CHECK(commutator(H0, J3).is_zero());
  // J3 preserves the constraint ideal: J3 applied to s1^2+s2^2+s3^2 gives 0
  RatFn ss = parse_ratfn("s1^2+s2^2+s3^2", S.ring);
  CHECK(J3.apply(ss).is_zero());
  // potential term: [H0 + a1/s1^2, J3] != 0 but commutes with nothing lost
  WeylOp H = H0 + S.mul("a1/s1^2");
  CHECK_FALSE(commutator(H, J3).is_zero());
}

TEST_CASE("principal symbol is a homomorphism onto the classical bracket") {
  auto A = flat_operator_algebra({});
  auto m = PhaseModel::make(ModelId::FlatE2);
  auto R = m->ring();
  std::vector<std::string> mom = {"p1", "p2"};
  WeylOp P = A.mul("x^2") * A.d(0) + A.mul("y") * A.d(1);
  WeylOp Q = A.mul("x") * A.d(1) * A.d(1);
  RatFn sp = P.principal_symbol(R, mom);
  RatFn sq = Q.principal_symbol(R, mom);
  CHECK(sp == m->parse("x^2*p1 + y*p2"));
  // top order of [P,Q] equals {symbol P, symbol Q}
  WeylOp C = commutator(P, Q);
  CHECK(C.principal_symbol(R, mom) == m->bracket(sp, sq));
}
