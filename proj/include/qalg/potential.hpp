#pragma once
// Canonical-equation machinery for second-order superintegrable systems on a
// conformally flat 2D chart: recover the canonical coefficient functions
// A^12, A^22, B^12, B^22 from a pair of second-order symmetries (three
//独立 derivations cross-check each other), build the first-order
// integrability systems for the potential, verify potentials exactly, and
// solve for the scalar parts W of symmetries by finite linear ansatz.
//
// Throughout, a symmetry L = a11 p1^2 + 2 a12 p1 p2 + a22 p2^2 + W lives on a
// chart with metric factor lambda and log-derivatives G_k = (d_k lambda)/lambda.
// A potential V extends the free system iff
//     V22 - V11 = A22 V1 + B22 V2,      V12 = A12 V1 + B12 V2,
// and the W-part of each symmetry satisfies W_i = lambda * sum_j a^{ij} V_j.

#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalg/linsolve.hpp"
#include "qalg/phase.hpp"
#include "qalg/ratfn.hpp"

namespace qalg {

struct CanonicalData {
  ModelPtr model;
  RatFn A12, A22, B12, B22;
  bool swapped = false;  // axes relabeled (x1 <-> x2) before computation
};

using Mat2 = std::array<std::array<RatFn, 2>, 2>;
using Mat3 = std::array<std::array<RatFn, 3>, 3>;

struct DegenerateCanonicalData {
  ModelPtr model;
  RatFn C2, C22, C12;
  KillingVector xi;
  bool swapped = false;
};

// Connection form of a free triplet: coefficient matrices of the first-order
// system d_j h = C^(j) h satisfied by every tensor h = (a11, a12, a22) in the
// span of the triplet.
struct FreeTripletConnection {
  ModelPtr model;
  Mat3 C1, C2;
};

namespace potential_detail {

struct TensorPair {
  RatFn l11, l12, l22;  // first symmetry
  RatFn b11, b12, b22;  // second symmetry
  RatFn G1, G2;
  std::string x1, x2;   // position names, possibly relabeled
  bool swapped = false;
};

// Extract the two momentum tensors; when `swap` is set, relabel the axes
// (x1 <-> x2, a11 <-> a22) so that downstream conventions assuming a
// distinguished second axis apply.
inline TensorPair tensor_pair(const ModelPtr& model, const RatFn& L1,
                              const RatFn& L2, bool swap = false) {
  MomentumTensor t1 = momentum_tensor(model, L1);
  MomentumTensor t2 = momentum_tensor(model, L2);
  TensorPair p;
  p.swapped = swap;
  if (!swap) {
    p.l11 = t1.a11; p.l12 = t1.a12; p.l22 = t1.a22;
    p.b11 = t2.a11; p.b12 = t2.a12; p.b22 = t2.a22;
    p.G1 = model->metric_G(0);
    p.G2 = model->metric_G(1);
    p.x1 = model->positions()[0];
    p.x2 = model->positions()[1];
  } else {
    p.l11 = t1.a22; p.l12 = t1.a12; p.l22 = t1.a11;
    p.b11 = t2.a22; p.b12 = t2.a12; p.b22 = t2.a11;
    p.G1 = model->metric_G(1);
    p.G2 = model->metric_G(0);
    p.x1 = model->positions()[1];
    p.x2 = model->positions()[0];
  }
  return p;
}

inline RatFn det2(const RatFn& a, const RatFn& b, const RatFn& c, const RatFn& d) {
  return a * d - b * c;
}

}  // namespace potential_detail

// --- canonical data, three independent derivations -------------------------

// Ground truth: substitute the canonical form of V into the compatibility
// condition d2 W1 = d1 W2 of the W-equations for each symmetry.  With the
// Killing equations eliminating d2 a11 and d1 a22, each symmetry tensor a
// yields one linear identity per derivative direction:
//   (a11 - a22) A12 + a12 A22 =  3 d1 a12 + 2 G1 a12 - G2 (a11 - a22)
//   (a11 - a22) B12 + a12 B22 = -3 d2 a12 - 2 G2 a12 - G1 (a11 - a22)
// Two symmetries give two 2x2 systems, solved here by Cramer's rule.
inline CanonicalData compute_AB_direct(const ModelPtr& model, const RatFn& L1,
                                       const RatFn& L2, bool swap = false) {
  using namespace potential_detail;
  TensorPair t = tensor_pair(model, L1, L2, swap);
  RatFn dl = t.l11 - t.l22, db = t.b11 - t.b22;
  RatFn D = det2(dl, t.l12, db, t.b12);
  if (D.is_zero())
    throw std::domain_error(
        "canonical data: symmetry tensors are linearly dependent modulo the "
        "metric tensor, so the coefficient system is singular");
  RatFn rA1 = GaussRat(3) * t.l12.diff(t.x1) + GaussRat(2) * t.G1 * t.l12 - t.G2 * dl;
  RatFn rA2 = GaussRat(3) * t.b12.diff(t.x1) + GaussRat(2) * t.G1 * t.b12 - t.G2 * db;
  RatFn rB1 = -(GaussRat(3) * t.l12.diff(t.x2) + GaussRat(2) * t.G2 * t.l12 + t.G1 * dl);
  RatFn rB2 = -(GaussRat(3) * t.b12.diff(t.x2) + GaussRat(2) * t.G2 * t.b12 + t.G1 * db);
  CanonicalData cd;
  cd.model = model;
  cd.swapped = swap;
  cd.A12 = det2(rA1, t.l12, rA2, t.b12) / D;
  cd.A22 = det2(dl, rA1, db, rA2) / D;
  cd.B12 = det2(rB1, t.l12, rB2, t.b12) / D;
  cd.B22 = det2(dl, rB1, db, rB2) / D;
  return cd;
}

// Determinant form of the same data.  The displayed determinants are
//   D     = | l11-l22  l12 |      D0 = | 3 d2 l12   -l12    |
//           | b11-b22  b12 |           | 3 d2 b12   -b12    |
//   D1 = | 3 d2 l12  l11-l22 |    D2 = | 3 d1 l12    l12    |
//        | 3 d2 b12  b11-b22 |         | 3 d1 b12    b12    |
//   D3 = | 3 d1 l12  l11-l22 |
//        | 3 d1 b12  b11-b22 |
// and the coefficients are
//   A12 = -G2 + D2/D,  A22 = 2 G1 - D3/D,  B12 = -G1 + D0/D,  B22 = -2 G2 + D1/D.
// (The signs on D3, D0 and D1 follow from expanding Cramer's rule on the
// direct system above; they are verified against the direct path on every
// catalog system.)
inline CanonicalData compute_AB_determinant(const ModelPtr& model, const RatFn& L1,
                                            const RatFn& L2, bool swap = false) {
  using namespace potential_detail;
  TensorPair t = tensor_pair(model, L1, L2, swap);
  RatFn dl = t.l11 - t.l22, db = t.b11 - t.b22;
  RatFn l12_1 = GaussRat(3) * t.l12.diff(t.x1), b12_1 = GaussRat(3) * t.b12.diff(t.x1);
  RatFn l12_2 = GaussRat(3) * t.l12.diff(t.x2), b12_2 = GaussRat(3) * t.b12.diff(t.x2);
  RatFn D = det2(dl, t.l12, db, t.b12);
  if (D.is_zero())
    throw std::domain_error(
        "canonical data: symmetry tensors are linearly dependent modulo the "
        "metric tensor, so the coefficient system is singular");
  RatFn D0 = det2(l12_2, -t.l12, b12_2, -t.b12);
  RatFn D1 = det2(l12_2, dl, b12_2, db);
  RatFn D2 = det2(l12_1, t.l12, b12_1, t.b12);
  RatFn D3 = det2(l12_1, dl, b12_1, db);
  CanonicalData cd;
  cd.model = model;
  cd.swapped = swap;
  cd.A12 = -t.G2 + D2 / D;
  cd.A22 = GaussRat(2) * t.G1 - D3 / D;
  cd.B12 = -t.G1 + D0 / D;
  cd.B22 = -GaussRat(2) * t.G2 + D1 / D;
  return cd;
}

// --- connection path --------------------------------------------------------

namespace potential_detail {

// Invert a 3x3 matrix of rational functions by the adjugate.
inline Mat3 inv3(const Mat3& M) {
  auto minor2 = [&](size_t r0, size_t r1, size_t c0, size_t c1) {
    return M[r0][c0] * M[r1][c1] - M[r0][c1] * M[r1][c0];
  };
  RatFn det = M[0][0] * minor2(1, 2, 1, 2) - M[0][1] * minor2(1, 2, 0, 2) +
              M[0][2] * minor2(1, 2, 0, 1);
  if (det.is_zero())
    throw std::domain_error("connection data: tensor vectors are linearly dependent");
  Mat3 adj;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      size_t c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // cofactor expansion with cyclic index choice keeps signs uniform
      adj[j][i] = (M[r0][c0] * M[r1][c1] - M[r0][c1] * M[r1][c0]) / det;
    }
  return adj;
}

inline Mat3 mul3(const Mat3& A, const Mat3& B) {
  Mat3 C;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      RatFn acc = A[i][0] * B[0][j];
      acc += A[i][1] * B[1][j];
      acc += A[i][2] * B[2][j];
      C[i][j] = acc;
    }
  return C;
}

}  // namespace potential_detail

// Solve for the connection matrices of the triplet (L1, L2, H_free): the
// tensor vectors h_s = (a11, a12, a22) of the three generators satisfy
// d_j h_s = C^(j) h_s, so C^(j) = [d_j h_1 | d_j h_2 | d_j h_3] * H^{-1}
// where H has the h_s as columns.  The free Hamiltonian contributes
// h_3 = (1/lambda, 0, 1/lambda).
inline FreeTripletConnection compute_connection(const ModelPtr& model,
                                                const RatFn& L1, const RatFn& L2,
                                                bool swap = false) {
  using namespace potential_detail;
  TensorPair t = tensor_pair(model, L1, L2, swap);
  RatFn inv_lambda = model->metric_lambda().inverse();
  RatFn zero = RatFn::zero(model->ring());
  Mat3 H = {{{t.l11, t.b11, inv_lambda},
             {t.l12, t.b12, zero},
             {t.l22, t.b22, inv_lambda}}};
  Mat3 Hinv = inv3(H);
  auto build = [&](const std::string& x) {
    Mat3 P = {{{t.l11.diff(x), t.b11.diff(x), inv_lambda.diff(x)},
               {t.l12.diff(x), t.b12.diff(x), zero},
               {t.l22.diff(x), t.b22.diff(x), inv_lambda.diff(x)}}};
    return mul3(P, Hinv);
  };
  FreeTripletConnection fc;
  fc.model = model;
  fc.C1 = build(t.x1);
  fc.C2 = build(t.x2);
  return fc;
}

// The connection matrices of a genuine free triplet satisfy two blocks of
// linear constraints: one inherited from the Killing equations and one from
// the requirement that the free Hamiltonian's own tensor solves the system.
// Returns a human-readable description of the first violated constraint, or
// an empty string when all hold.
inline std::string connection_constraint_violation(const FreeTripletConnection& fc,
                                                   bool swap = false) {
  const ModelPtr& m = fc.model;
  RatFn G1 = m->metric_G(swap ? 1 : 0), G2 = m->metric_G(swap ? 0 : 1);
  RatFn zero = RatFn::zero(m->ring());
  const Mat3 &C1 = fc.C1, &C2 = fc.C2;
  struct Check {
    const char* what;
    RatFn lhs, rhs;
  };
  const GaussRat two(2);
  std::vector<Check> checks = {
      {"C1[1][1] = -G1", C1[0][0], -G1},
      {"C1[1][2] = -G2", C1[0][1], -G2},
      {"C1[1][3] = 0", C1[0][2], zero},
      {"C2[3][1] = 0", C2[2][0], zero},
      {"C2[3][2] = -G1", C2[2][1], -G1},
      {"C2[3][3] = -G2", C2[2][2], -G2},
      {"2 C1[2][1] + C2[1][1] = 0", two * C1[1][0] + C2[0][0], zero},
      {"2 C1[2][2] + C2[1][2] = -G1", two * C1[1][1] + C2[0][1], -G1},
      {"2 C1[2][3] + C2[1][3] = -G2", two * C1[1][2] + C2[0][2], -G2},
      {"2 C2[2][1] + C1[3][1] = -G1", two * C2[1][0] + C1[2][0], -G1},
      {"2 C2[2][2] + C1[3][2] = -G2", two * C2[1][1] + C1[2][1], -G2},
      {"2 C2[2][3] + C1[3][3] = 0", two * C2[1][2] + C1[2][2], zero},
      {"C1 row sums against the metric tensor (row 1)", C1[0][0] + C1[0][2], -G1},
      {"C1 row sums against the metric tensor (row 2)", C1[1][0] + C1[1][2], zero},
      {"C1 row sums against the metric tensor (row 3)", C1[2][0] + C1[2][2], -G1},
      {"C2 row sums against the metric tensor (row 1)", C2[0][0] + C2[0][2], -G2},
      {"C2 row sums against the metric tensor (row 2)", C2[1][0] + C2[1][2], zero},
      {"C2 row sums against the metric tensor (row 3)", C2[2][0] + C2[2][2], -G2},
  };
  for (const Check& c : checks)
    if (!(c.lhs == c.rhs)) return c.what;
  return {};
}

// Recover the canonical coefficients from the four free entries of the
// second connection matrix:
//   C2[1][1] = -2/3 G2 - 2/3 A12        C2[1][2] = 1/3 G1 - 2/3 A22
//   C2[2][1] = -1/3 G1 - 1/3 B12        C2[2][2] = -2/3 G2 - 1/3 B22
inline CanonicalData compute_AB_connection(const ModelPtr& model, const RatFn& L1,
                                           const RatFn& L2, bool swap = false) {
  FreeTripletConnection fc = compute_connection(model, L1, L2, swap);
  std::string bad = connection_constraint_violation(fc, swap);
  if (!bad.empty())
    throw std::domain_error("connection data: constraint violated (" + bad +
                            "); not a free triplet over this metric");
  RatFn G1 = model->metric_G(swap ? 1 : 0), G2 = model->metric_G(swap ? 0 : 1);
  GaussRat half(1, 2), three(3), two(2);
  CanonicalData cd;
  cd.model = model;
  cd.swapped = swap;
  cd.A12 = -half * (three * fc.C2[0][0] + two * G2);
  cd.A22 = half * (G1 - three * fc.C2[0][1]);
  cd.B12 = -(three * fc.C2[1][0] + G1);
  cd.B22 = -(three * fc.C2[1][1] + two * G2);
  return cd;
}

// --- integrability ----------------------------------------------------------

// First-order system for w = (V1, V2, V11):  d_j w = A^(j) w with
//   A^(1) = [ 0    0    1  ]     A^(2) = [ A12  B12  0 ]
//           [ A12  B12  0  ]             [ A22  B22  1 ]
//           [ A13  B13  B12-A22 ]        [ A23  B23  A12 ]
// where the third rows come from differentiating the canonical equations.
struct IntegrabilityMatrices {
  Mat3 A1, A2;
  RatFn A13, B13, A23, B23;
};

inline IntegrabilityMatrices integrability_matrices(const CanonicalData& cd) {
  const ModelPtr& m = cd.model;
  const std::string& x1 = m->positions()[cd.swapped ? 1 : 0];
  const std::string& x2 = m->positions()[cd.swapped ? 0 : 1];
  RatFn zero = RatFn::zero(m->ring());
  RatFn one = RatFn::constant(m->ring(), GaussRat::one());
  IntegrabilityMatrices im;
  im.A13 = cd.A12.diff(x2) - cd.A22.diff(x1) + cd.B12 * cd.A22 + cd.A12 * cd.A12 -
           cd.B22 * cd.A12;
  im.B13 = cd.B12.diff(x2) - cd.B22.diff(x1) + cd.A12 * cd.B12;
  im.A23 = cd.A12.diff(x1) + cd.B12 * cd.A12;
  im.B23 = cd.B12.diff(x1) + cd.B12 * cd.B12;
  im.A1 = {{{zero, zero, one},
            {cd.A12, cd.B12, zero},
            {im.A13, im.B13, cd.B12 - cd.A22}}};
  im.A2 = {{{cd.A12, cd.B12, zero},
            {cd.A22, cd.B22, one},
            {im.A23, im.B23, cd.A12}}};
  return im;
}

// d1 A^(2) - d2 A^(1) = [A^(1), A^(2)]: holds identically iff the canonical
// system admits the full four-dimensional space of potentials.
inline bool integrability_check_nondeg(const CanonicalData& cd) {
  using namespace potential_detail;
  IntegrabilityMatrices im = integrability_matrices(cd);
  const ModelPtr& m = cd.model;
  const std::string& x1 = m->positions()[cd.swapped ? 1 : 0];
  const std::string& x2 = m->positions()[cd.swapped ? 0 : 1];
  Mat3 comm = mul3(im.A1, im.A2);
  Mat3 ba = mul3(im.A2, im.A1);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      RatFn lhs = im.A2[i][j].diff(x1) - im.A1[i][j].diff(x2);
      RatFn rhs = comm[i][j] - ba[i][j];
      if (!(lhs == rhs)) return false;
    }
  return true;
}

// --- degenerate (one-parameter) potentials ---------------------------------

// A first-order symmetry X = xi1 p1 + xi2 p2 adds the constraint
// xi1 V1 + xi2 V2 = 0 to the canonical equations.  With xi2 != 0 (relabel the
// axes otherwise) the potential system collapses to
//   V2 = C2 V1,   V22 = V11 + C22 V1,   V12 = C12 V1,
//   C2 = -xi1/xi2,  C22 = A22 - (xi1/xi2) B22,  C12 = A12 - (xi1/xi2) B12.
inline DegenerateCanonicalData degenerate_canonical(const CanonicalData& cd,
                                                    const KillingVector& xi_in) {
  DegenerateCanonicalData d;
  d.model = cd.model;
  d.swapped = cd.swapped;
  KillingVector xi = xi_in;
  if (cd.swapped) std::swap(xi.xi1, xi.xi2);
  if (xi.xi2.is_zero())
    throw std::domain_error(
        "degenerate canonical data: the distinguished axis component of the "
        "first-order symmetry vanishes; recompute with the axes relabeled");
  d.xi = xi;
  RatFn ratio = xi.xi1 / xi.xi2;
  d.C2 = -ratio;
  d.C22 = cd.A22 - ratio * cd.B22;
  d.C12 = cd.A12 - ratio * cd.B12;
  return d;
}

// Build degenerate data straight from a triplet and its first-order symmetry,
// relabeling the axes automatically when needed.
inline DegenerateCanonicalData degenerate_canonical(const ModelPtr& model,
                                                    const RatFn& L1, const RatFn& L2,
                                                    const KillingVector& xi) {
  bool swap = xi.xi2.is_zero();
  CanonicalData cd = compute_AB_direct(model, L1, L2, swap);
  return degenerate_canonical(cd, xi);
}

inline bool integrability_check_deg(const DegenerateCanonicalData& d) {
  const ModelPtr& m = d.model;
  const std::string& x1 = m->positions()[d.swapped ? 1 : 0];
  const std::string& x2 = m->positions()[d.swapped ? 0 : 1];
  RatFn zero = RatFn::zero(m->ring());
  RatFn one = RatFn::constant(m->ring(), GaussRat::one());
  // first-order system for v = (V, V1)
  Mat2 B1 = {{{zero, one}, {zero, d.C2.diff(x2) + d.C2 * d.C12 - d.C22}}};
  Mat2 B2 = {{{zero, d.C2}, {zero, d.C12}}};
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      RatFn lhs = B2[i][j].diff(x1) - B1[i][j].diff(x2);
      RatFn rhs = B1[i][0] * B2[0][j] + B1[i][1] * B2[1][j] -
                  (B2[i][0] * B1[0][j] + B2[i][1] * B1[1][j]);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

// --- potential verification -------------------------------------------------

inline bool verify_potential(const CanonicalData& cd, const RatFn& V) {
  const ModelPtr& m = cd.model;
  const std::string& x1 = m->positions()[cd.swapped ? 1 : 0];
  const std::string& x2 = m->positions()[cd.swapped ? 0 : 1];
  RatFn V1 = V.diff(x1), V2 = V.diff(x2);
  RatFn V11 = V1.diff(x1), V22 = V2.diff(x2), V12 = V1.diff(x2);
  return (V22 - V11 == cd.A22 * V1 + cd.B22 * V2) &&
         (V12 == cd.A12 * V1 + cd.B12 * V2);
}

inline bool verify_potential(const DegenerateCanonicalData& d, const RatFn& V) {
  const ModelPtr& m = d.model;
  const std::string& x1 = m->positions()[d.swapped ? 1 : 0];
  const std::string& x2 = m->positions()[d.swapped ? 0 : 1];
  RatFn V1 = V.diff(x1), V2 = V.diff(x2);
  RatFn V11 = V1.diff(x1), V22 = V2.diff(x2), V12 = V1.diff(x2);
  return (V2 == d.C2 * V1) && (V22 == V11 + d.C22 * V1) && (V12 == d.C12 * V1);
}

// --- scalar parts of symmetries ---------------------------------------------

// Right-hand sides of the W-equations W_i = lambda * sum_j a^{ij} V_j for the
// symmetry whose momentum tensor is a.
struct WGradient {
  RatFn w1, w2;
  bool compatible;  // d2 w1 == d1 w2
};

inline WGradient w_gradient(const ModelPtr& model, const MomentumTensor& a,
                            const RatFn& V) {
  const std::string& x1 = model->positions()[0];
  const std::string& x2 = model->positions()[1];
  RatFn V1 = V.diff(x1), V2 = V.diff(x2);
  const RatFn& lambda = model->metric_lambda();
  WGradient g;
  g.w1 = lambda * (a.a11 * V1 + a.a12 * V2);
  g.w2 = lambda * (a.a12 * V1 + a.a22 * V2);
  g.compatible = (g.w1.diff(x2) == g.w2.diff(x1));
  return g;
}

// Solve d1 W = w1, d2 W = w2 over a finite span of Laurent monomials in the
// chart ring variables times first powers of the potential parameters.  The
// additive constant is fixed to zero (the constant candidate is excluded).
// Returns nullopt when the span misses.
inline std::optional<RatFn> solve_W_ansatz(const ModelPtr& model, const WGradient& g,
                                           int max_power = 4) {
  const RingPtr& ring = model->ring();
  std::vector<std::string> params;
  for (size_t i = 0; i < ring->arity(); ++i)
    if (ring->kind(i) == VarKind::Parameter) params.push_back(ring->name(i));
  // position-like ring variables (chart functions included): everything that
  // is not a momentum and not a parameter
  std::vector<std::string> posvars;
  for (size_t i = 0; i < ring->arity(); ++i) {
    VarKind k = ring->kind(i);
    if (k == VarKind::Parameter) continue;
    std::string n = ring->name(i);
    bool is_mom = false;
    for (const auto& p : model->momenta()) is_mom |= (p == n);
    if (!is_mom) posvars.push_back(n);
  }
  // enumerate Laurent exponent vectors with per-variable bound and a total
  // absolute-degree cap to keep the span manageable on four-variable charts
  int total_cap = posvars.size() <= 2 ? 2 * max_power : max_power + 2;
  std::vector<RatFn> cands;
  std::vector<std::vector<int>> exps;
  std::vector<int> cur(posvars.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int used) {
    if (i == posvars.size()) {
      bool all_zero = true;
      for (int e : cur) all_zero &= (e == 0);
      if (!all_zero) exps.push_back(cur);
      return;
    }
    for (int e = -max_power; e <= max_power; ++e) {
      if (used + std::abs(e) > total_cap) continue;
      cur[i] = e;
      rec(i + 1, used + std::abs(e));
    }
    cur[i] = 0;
  };
  rec(0, 0);
  for (const auto& e : exps) {
    RatFn mono = RatFn::constant(ring, GaussRat::one());
    for (size_t i = 0; i < posvars.size(); ++i)
      if (e[i] != 0) mono *= RatFn::var(ring, posvars[i], e[i]);
    if (params.empty()) {
      cands.push_back(mono);
    } else {
      for (const auto& p : params) cands.push_back(mono * RatFn::var(ring, p));
    }
  }
  // On charts with algebraic relations the raw monomial list is redundant and
  // its span can contain nonzero constants (e.g. ch^2 - sh^2), which would
  // leave the additive constant of W unpinned.  Keep only candidates that are
  // linearly independent of the constant function and of all earlier kept
  // candidates; the gradient system then has a unique solution.
  {
    DenBasis cb(ring);
    for (const RatFn& c : cands) cb.add(c.den());
    cb.build();
    using Vec = std::map<Exp, GaussRat>;
    std::map<Exp, Vec> echelon;  // pivot exponent -> normalized row
    auto reduce_insert = [&](Poly p) {
      Vec v;
      for (const auto& [e, c] : p.terms()) v[e] = c;
      while (!v.empty()) {
        auto lead = std::prev(v.end());
        auto hit = echelon.find(lead->first);
        if (hit == echelon.end()) {
          GaussRat inv = lead->second.inverse();
          for (auto& [e, c] : v) c *= inv;
          Exp pivot = std::prev(v.end())->first;
          echelon.emplace(std::move(pivot), std::move(v));
          return true;  // independent
        }
        GaussRat f = lead->second;
        for (const auto& [e, c] : hit->second) {
          GaussRat& slot = v[e];
          slot -= f * c;
          if (slot.is_zero()) v.erase(e);
        }
      }
      return false;  // dependent
    };
    reduce_insert(cb.common_multiple());  // seed with the constant function
    std::vector<RatFn> kept;
    kept.reserve(cands.size());
    for (const RatFn& c : cands)
      if (reduce_insert(c.num() * cb.cofactor(cb.add(c.den())))) kept.push_back(c);
    cands = std::move(kept);
  }
  const std::string& x1 = model->positions()[0];
  const std::string& x2 = model->positions()[1];
  std::vector<std::vector<GaussRat>> A;
  std::vector<GaussRat> b;
  // two symbolic identities, cleared to a common denominator per identity
  auto add_rows = [&](const std::vector<RatFn>& dvals, const RatFn& target) {
    DenBasis basis(ring);
    basis.add(target.den());
    for (const RatFn& f : dvals)
      if (!f.is_zero()) basis.add(f.den());
    basis.build();
    std::map<Exp, size_t> row_of;
    auto row_for = [&](const Exp& e) {
      auto it = row_of.find(e);
      if (it != row_of.end()) return it->second;
      size_t r = A.size();
      A.emplace_back(cands.size(), GaussRat::zero());
      b.emplace_back(GaussRat::zero());
      row_of.emplace(e, r);
      return r;
    };
    for (size_t j = 0; j < dvals.size(); ++j) {
      if (dvals[j].is_zero()) continue;
      Poly p = dvals[j].num() * basis.cofactor(basis.add(dvals[j].den()));
      for (const auto& [e, c] : p.terms()) A[row_for(e)][j] += c;
    }
    Poly tp = target.num() * basis.cofactor(basis.add(target.den()));
    for (const auto& [e, c] : tp.terms()) b[row_for(e)] += c;
  };
  std::vector<RatFn> d1vals, d2vals;
  d1vals.reserve(cands.size());
  d2vals.reserve(cands.size());
  for (const RatFn& c : cands) {
    d1vals.push_back(c.diff(x1));
    d2vals.push_back(c.diff(x2));
  }
  add_rows(d1vals, g.w1);
  add_rows(d2vals, g.w2);
  LinearSolution sol = solve_linear(std::move(A), std::move(b));
  if (!sol.consistent) return std::nullopt;
  RatFn W = RatFn::zero(ring);
  for (size_t j = 0; j < cands.size(); ++j)
    if (!sol.x[j].is_zero()) W += sol.x[j] * cands[j];
  if (!(W.diff(x1) == g.w1) || !(W.diff(x2) == g.w2))
    throw std::logic_error("solve_W_ansatz: candidate solution fails back-substitution");
  return W;
}

inline std::optional<RatFn> solve_W(const ModelPtr& model, const RatFn& L_free,
                                    const RatFn& V, int max_power = 4) {
  MomentumTensor a = momentum_tensor(model, L_free);
  WGradient g = w_gradient(model, a, V);
  if (!g.compatible) return std::nullopt;
  return solve_W_ansatz(model, g, max_power);
}

// Exact rank of a family of potentials, via evaluation at deterministic
// pole-free rational sample points.
inline size_t potential_family_rank(const ModelPtr& model,
                                    const std::vector<RatFn>& family,
                                    unsigned long long seed = 0x9e3779b97f4a7c15ULL) {
  if (family.empty()) return 0;
  const RingPtr& ring = model->ring();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(2, 23);
  size_t npts = 2 * family.size() + 4;
  std::vector<std::vector<GaussRat>> M;
  for (size_t p = 0; p < npts; ++p) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<GaussRat> pt(ring->arity());
      for (size_t i = 0; i < ring->arity(); ++i)
        pt[i] = GaussRat(pick(rng), pick(rng));
      bool ok = true;
      std::vector<GaussRat> row;
      row.reserve(family.size());
      for (const RatFn& f : family) {
        if (f.den().eval(pt).is_zero()) { ok = false; break; }
        row.push_back(f.eval(pt));
      }
      if (ok) { M.push_back(std::move(row)); break; }
    }
  }
  // rank via elimination: reuse the linear solver on the transpose
  std::vector<std::vector<GaussRat>> At(family.size(),
                                        std::vector<GaussRat>(M.size()));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < family.size(); ++j) At[j][i] = M[i][j];
  LinearSolution s = solve_linear(std::move(At), std::vector<GaussRat>(family.size(), GaussRat::zero()));
  return s.rank;
}

}  // namespace qalg
