#pragma once
// Catalog of the two-dimensional second-order superintegrable systems on
// complex flat space and the complex 2-sphere: for every system the free
// second-order generators, the structure relation of the quadratic algebra
// they generate, the potential family of the full system, and a verification
// driver that re-derives all of it (classically and at the operator level)
// from the engine primitives.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qalg/closure.hpp"
#include "qalg/exprio.hpp"
#include "qalg/phase.hpp"
#include "qalg/potential.hpp"
#include "qalg/weyl.hpp"

namespace qalg {

enum class Space { Flat, Sphere };
enum class SystemKind { Nondegenerate, Degenerate, Exceptional };

// One member of a potential family.  `printed` is the display form (it may
// contain radicals); `chart` is the same member rewritten as a rational
// expression in the chart variables when such a form exists.  An empty
// `chart` marks the member as outside the rational chart: it is carried for
// display and excluded from exact verification.
struct PotentialTerm {
  std::string printed;
  std::string chart;
};

// Full (with-potential) companion data for the records that carry it:
// generators including their scalar parts, the potential, and the structure
// relation of the full system, all as parseable strings.
struct WithPotential {
  std::vector<std::string> params;
  std::string V;
  std::string H, L1, L2, X;      // X empty for nondegenerate systems
  std::string casimir;           // relation in L1, L2, H [, X] and parameters
  std::string quantum_casimir;   // operator counterpart of the relation
};

struct SystemRecord {
  std::string name;              // e.g. "E1~", "E3'~", "S9~"
  Space space = Space::Flat;
  SystemKind kind = SystemKind::Nondegenerate;
  ModelId chart = ModelId::FlatE2;  // chart used for canonical-equation work
  std::string L1, L2;            // second-order generators
  std::string X;                 // first-order generator (degenerate only)
  std::string casimir;           // nondegenerate: the polynomial equal to R^2;
                                 // degenerate: the relation that vanishes
  bool free_dependent = false;   // generators satisfy the relation identically
                                 // as functions (no closure solve possible)
  std::string structural_param;  // symbolic parameter inside the generators
  std::vector<PotentialTerm> potential;
  bool potential_family = false;  // potential is an arbitrary-function family;
                                  // `chart` holds a representative member
  std::optional<GaussRat> expected_K;  // degenerate bracket multiplier
  bool operator_chart_ok = true;  // operator-level verification supported
  std::optional<WithPotential> with_potential;
  std::string group;             // catalog group
  int group_index = 0;           // 1-based position within the group
  std::string notes;
};

// --- the records ------------------------------------------------------------

inline const std::vector<SystemRecord>& catalog_systems() {
  static const std::vector<SystemRecord> table = [] {
    std::vector<SystemRecord> t;
    auto add = [&t](SystemRecord r) { t.push_back(std::move(r)); };

    // ---- flat space, degenerate (one-parameter) systems ----
    {
      SystemRecord r;
      r.name = "E18~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.chart = ModelId::FlatPolarLike;
      r.X = "J";
      r.L1 = "J*p1";
      r.L2 = "J*p2";
      r.casimir = "-(1/2)*(L1^2 + L2^2 - H*X^2)";
      r.potential = {{"a1/sqrt(x^2+y^2)", "a1/r"}};
      r.expected_K = GaussRat(1, 2);
      r.group = "flat degenerate";
      r.group_index = 1;
      r.notes = "central inverse-distance potential";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E3~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.X = "J";
      r.L1 = "p1^2";
      r.L2 = "p1*p2";
      r.casimir = "-L2^2 - L1*(L1 - H)";
      r.free_dependent = true;
      r.potential = {{"a1*(x^2+y^2)", "a1*(x^2+y^2)"}};
      r.group = "flat degenerate";
      r.group_index = 2;
      r.notes =
          "isotropic oscillator; the momentum-only generators satisfy the "
          "relation identically, so the bracket structure is checked by "
          "direct linear-span decomposition instead of a closure solve";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E6~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.X = "p1";
      r.L1 = "J^2";
      r.L2 = "J*p2";
      r.casimir = "L1*X^2 + L2^2 - H*L1";
      r.potential = {{"a1/y^2", "a1/y^2"}};
      r.expected_K = GaussRat(1);
      r.group = "flat degenerate";
      r.group_index = 3;
      r.notes =
          "the potential axis is fixed by the translation symmetry X = p1: "
          "the admissible member is a1/y^2";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E5~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.X = "p1";
      r.L1 = "J*p1";
      r.L2 = "p2*p1";
      r.casimir = "(1/2)*(L2^2 + X^4 - H*X^2)";
      r.potential = {{"a1*y", "a1*y"}};
      r.expected_K = GaussRat(1, 2);
      r.group = "flat degenerate";
      r.group_index = 4;
      r.notes =
          "linear potential transverse to the translation symmetry X = p1";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E12~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.X = "p1+i*p2";
      r.L1 = "J^2 + (p1-i*p2)^2";
      r.L2 = "J*(p1+i*p2)";
      r.casimir = "i*(L1*X^2 - L2^2 - H^2)";
      r.potential = {{"a1*(x+i*y)/sqrt((x+i*y)^2+c^2)", ""}};
      r.expected_K = GaussRat(mpq_class(0), mpq_class(-1));
      r.group = "flat degenerate";
      r.group_index = 5;
      r.notes = "the potential carries a free constant c; not chart-rational";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E14~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.X = "p1+i*p2";
      r.L1 = "J^2";
      r.L2 = "J*(p1+i*p2)";
      r.casimir = "i*(L1*X^2 - L2^2)";
      r.potential = {{"a1/(x+i*y)^2", "a1/(x+i*y)^2"}};
      r.expected_K = GaussRat(mpq_class(0), mpq_class(-1));
      r.group = "flat degenerate";
      r.group_index = 6;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E4~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.X = "p1+i*p2";
      r.L1 = "J*(p1+i*p2)";
      r.L2 = "(p1-i*p2)^2";
      r.casimir = "-i*(L2*X^2 - H^2)";
      r.potential = {{"a1*(x+i*y)", "a1*(x+i*y)"}};
      r.expected_K = GaussRat(mpq_class(0), mpq_class(1));
      r.group = "flat degenerate";
      r.group_index = 7;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E13~";
      r.space = Space::Flat;
      r.kind = SystemKind::Degenerate;
      r.X = "p1+i*p2";
      r.L1 = "J*(p1+i*p2)";
      r.L2 = "(p1-i*p2)*J";
      r.casimir = "i*(L1*H - L2*X^2)";
      r.potential = {{"a1/sqrt(x+i*y)", ""}};
      r.expected_K = GaussRat(mpq_class(0), mpq_class(-1));
      r.group = "flat degenerate";
      r.group_index = 8;
      add(std::move(r));
    }

    // ---- 2-sphere, degenerate systems ----
    {
      SystemRecord r;
      r.name = "S6~";
      r.space = Space::Sphere;
      r.kind = SystemKind::Degenerate;
      r.chart = ModelId::SphereO3;
      r.X = "J3";
      r.L1 = "J3*J1";
      r.L2 = "J3*J2";
      r.casimir = "-(1/2)*(L1^2 + L2^2 + X^2*(X^2 - H))";
      r.potential = {{"a1*s3/sqrt(s1^2+s2^2)", "a1*sh"}};
      r.expected_K = GaussRat(-1, 2);
      r.group = "sphere degenerate";
      r.group_index = 1;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "S3~";
      r.space = Space::Sphere;
      r.kind = SystemKind::Degenerate;
      r.chart = ModelId::SphereO3;
      r.X = "J3";
      r.L1 = "(J1+i*J2)^2";
      r.L2 = "(J1-i*J2)^2";
      r.casimir = "-2*i*((H - X^2)^2 - L1*L2)";
      r.potential = {{"a1/s3^2", "a1*ch^2/sh^2"}};
      r.expected_K = GaussRat(mpq_class(0), mpq_class(-2));
      r.group = "sphere degenerate";
      r.group_index = 2;
      WithPotential wp;
      wp.params = {"a3"};
      wp.V = "a3/s3^2";
      wp.H = "J1^2+J2^2+J3^2 + a3/s3^2";
      wp.X = "J3";
      wp.L1 = "J1^2 + a3*s2^2/s3^2";
      wp.L2 = "J1*J2 - a3*s1*s2/s3^2";
      wp.casimir = "L1^2 + L2^2 - L1*H + L1*X^2 + a3*X^2 + a3*L1";
      r.with_potential = std::move(wp);
      r.notes =
          "the full system uses the symmetric generator basis J1^2, J1*J2 "
          "(same span as the null squares modulo H and X^2)";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "S5~";
      r.space = Space::Sphere;
      r.kind = SystemKind::Degenerate;
      r.chart = ModelId::SphereO3;
      r.X = "J1+i*J2";
      r.L1 = "J3^2";
      r.L2 = "(J1+i*J2)*J3";
      r.casimir = "-i*(L2^2 - X^2*L1)";
      r.potential = {{"a1/(s1+i*s2)^2", "a1*ch^2/(cphi+i*sphi)^2"}};
      r.expected_K = GaussRat(mpq_class(0), mpq_class(-1));
      r.group = "sphere degenerate";
      r.group_index = 3;
      add(std::move(r));
    }

    // ---- flat space, nondegenerate (three-parameter) systems ----
    {
      SystemRecord r;
      r.name = "E16~";
      r.space = Space::Flat;
      r.chart = ModelId::FlatPolarLike;
      r.L1 = "J^2";
      r.L2 = "p1*J";
      r.casimir = "4*L1*(L1*H - L2^2)";
      r.potential = {
          {"a1/sqrt(x^2+y^2)", "a1/r"},
          {"a2/(sqrt(x^2+y^2)*(y+sqrt(x^2+y^2)))", "a2/(r*(y+r))"},
          {"a3/(sqrt(x^2+y^2)*(y-sqrt(x^2+y^2)))", "a3/(r*(y-r))"}};
      r.group = "flat nondegenerate";
      r.group_index = 1;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E17~";
      r.space = Space::Flat;
      r.chart = ModelId::FlatPolarLike;
      r.L1 = "J^2";
      r.L2 = "(p1+i*p2)*J";
      r.casimir = "-4*L1*L2^2";
      r.potential = {{"a1/sqrt(x^2+y^2)", "a1/r"},
                     {"a2/(x+i*y)^2", "a2/(x+i*y)^2"},
                     {"a3/((x+i*y)*sqrt(x^2+y^2))", "a3/((x+i*y)*r)"}};
      r.group = "flat nondegenerate";
      r.group_index = 2;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E1~";
      r.space = Space::Flat;
      r.L1 = "J^2";
      r.L2 = "p1^2";
      r.casimir = "16*L1*L2*(H - L2)";
      r.potential = {{"a1*(x^2+y^2)", "a1*(x^2+y^2)"},
                     {"a2/x^2", "a2/x^2"},
                     {"a3/y^2", "a3/y^2"}};
      r.group = "flat nondegenerate";
      r.group_index = 3;
      WithPotential wp;
      wp.params = {"a1", "a2", "a3"};
      wp.V = "a1*(x^2+y^2) + a2/x^2 + a3/y^2";
      wp.H = "p1^2+p2^2 + a1*(x^2+y^2) + a2/x^2 + a3/y^2";
      wp.L1 = "J^2 + a2*y^2/x^2 + a3*x^2/y^2";
      wp.L2 = "p1^2 + a1*x^2 + a2/x^2";
      wp.casimir =
          "16*L1*L2*H - 16*L1*L2^2 - 16*(a2+a3)*L2^2 - 16*a2*H^2 "
          "+ 32*a2*L2*H - 16*a1*L1^2 + 64*a1*a2*a3";
      r.with_potential = std::move(wp);
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E8~";
      r.space = Space::Flat;
      r.L1 = "J^2";
      r.L2 = "(p1+i*p2)^2";
      r.casimir = "-16*L1*L2^2";
      r.potential = {{"a1*(x-i*y)/(x+i*y)^3", "a1*(x-i*y)/(x+i*y)^3"},
                     {"a2/(x+i*y)^2", "a2/(x+i*y)^2"},
                     {"a3*(x^2+y^2)", "a3*(x^2+y^2)"}};
      r.group = "flat nondegenerate";
      r.group_index = 4;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E3'~";
      r.space = Space::Flat;
      r.L1 = "p1^2";
      r.L2 = "p1*p2";
      r.casimir = "-L2^2 - L1*(L1 - H)";
      r.free_dependent = true;
      r.potential = {{"a1*(x^2+y^2)", "a1*(x^2+y^2)"},
                     {"a2*x", "a2*x"},
                     {"a3*y", "a3*y"}};
      r.group = "flat nondegenerate";
      r.group_index = 5;
      r.notes =
          "the free generators satisfy the relation identically, so the "
          "bracket R vanishes and no closure solve is possible; the "
          "anisotropic-oscillator potential still extends the triplet";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E2~";
      r.space = Space::Flat;
      r.L1 = "p2^2";
      r.L2 = "p2*J";
      r.casimir = "4*L1^2*(H - L1)";
      r.potential = {{"a1*(4*x^2+y^2)", "a1*(4*x^2+y^2)"},
                     {"a2*x", "a2*x"},
                     {"a3/y^2", "a3/y^2"}};
      r.group = "flat nondegenerate";
      r.group_index = 6;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E7~";
      r.space = Space::Flat;
      r.structural_param = "b";
      r.L1 = "(p1+i*p2)^2";
      r.L2 = "J^2 + (b/2)*(p1-i*p2)^2";
      r.casimir = "-16*L1^2*L2 + 8*b*L1*H^2";
      r.potential = {
          {"a1*(x+i*y)/sqrt((x+i*y)^2-b)", ""},
          {"a2*(x-i*y)/(sqrt((x+i*y)^2-b)*(x+i*y+sqrt((x+i*y)^2-b))^2)", ""},
          {"a3*(x^2+y^2)", "a3*(x^2+y^2)"}};
      r.group = "flat nondegenerate";
      r.group_index = 7;
      r.notes =
          "b != 0 is a structural parameter; the H^2 coefficient of the "
          "relation is 8b (equivalently 16a for the half-normalized "
          "parameter a = b/2)";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E9~";
      r.space = Space::Flat;
      r.L1 = "(p1+i*p2)^2";
      r.L2 = "p1*J";
      r.casimir = "-L1*(L1 + H)^2";
      r.potential = {{"a1/sqrt(x+i*y)", ""},
                     {"a2*y", "a2*y"},
                     {"a3*(x+2*i*y)/sqrt(x+i*y)", ""}};
      r.group = "flat nondegenerate";
      r.group_index = 8;
      r.notes =
          "relation confirmed by direct substitution; the variant with both "
          "coefficients doubled fails the identity";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E11~";
      r.space = Space::Flat;
      r.L1 = "(p1+i*p2)^2";
      r.L2 = "(p1-i*p2)*J";
      r.casimir = "-4*L1*H^2";
      r.potential = {{"a1*(x-i*y)", "a1*(x-i*y)"},
                     {"a2*(x-i*y)/sqrt(x+i*y)", ""},
                     {"a3/sqrt(x+i*y)", ""}};
      r.group = "flat nondegenerate";
      r.group_index = 9;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E10~";
      r.space = Space::Flat;
      r.L1 = "(p1-i*p2)^2";
      r.L2 = "4*i*(p1-i*p2)*J + (p1+i*p2)^2";
      r.casimir = "64*L1^3";
      r.potential = {
          {"a1*(x-i*y)", "a1*(x-i*y)"},
          {"a2*(x+i*y-(3/2)*(x-i*y)^2)", "a2*(x+i*y-(3/2)*(x-i*y)^2)"},
          {"a3*(x^2+y^2-(1/2)*(x-i*y)^3)", "a3*(x^2+y^2-(1/2)*(x-i*y)^3)"}};
      r.group = "flat nondegenerate";
      r.group_index = 10;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E15~";
      r.space = Space::Flat;
      r.kind = SystemKind::Exceptional;
      r.L1 = "(p1-i*p2)^2";
      r.L2 = "i*(p1-i*p2)*J";
      r.casimir = "4*L1^3";
      r.potential_family = true;
      r.potential = {{"f(x-i*y), f arbitrary", "a1*(x-i*y)^2 + a2/(x-i*y)"}};
      r.group = "flat nondegenerate";
      r.group_index = 11;
      r.notes =
          "exceptional: H, L1, L2 are functionally linearly dependent, the "
          "canonical-equation pencil is singular, and the potential is an "
          "arbitrary function of x-i*y (a Laurent representative is stored)";
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E20~";
      r.space = Space::Flat;
      r.chart = ModelId::FlatPolarLike;
      r.L1 = "p2*J";
      r.L2 = "p1*J";
      r.casimir = "H*(L1^2 + L2^2)";
      r.potential = {
          {"a1/sqrt(x^2+y^2)", "a1/r"},
          {"a2*sqrt(x+sqrt(x^2+y^2))/sqrt(x^2+y^2)", ""},
          {"a3*sqrt(x-sqrt(x^2+y^2))/sqrt(x^2+y^2)", ""}};
      r.group = "flat nondegenerate";
      r.group_index = 12;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "E19~";
      r.space = Space::Flat;
      r.L1 = "(p1+i*p2)*J";
      r.L2 = "J^2 + (p1-i*p2)^2";
      r.casimir = "-4*L2*(L1^2 + H^2)";
      r.potential = {{"a1*(x+i*y)/sqrt((x+i*y)^2-4)", ""},
                     {"a2/sqrt((x-i*y)*(x+i*y+2))", ""},
                     {"a3/sqrt((x-i*y)*(x+i*y-2))", ""}};
      r.group = "flat nondegenerate";
      r.group_index = 13;
      add(std::move(r));
    }

    // ---- 2-sphere, nondegenerate systems ----
    {
      SystemRecord r;
      r.name = "S9~";
      r.space = Space::Sphere;
      r.chart = ModelId::SphereO3;
      r.L1 = "J3^2";
      r.L2 = "J1^2";
      r.casimir = "-16*L1^2*L2 - 16*L1*L2^2 + 16*L1*L2*H";
      r.potential = {{"a1/s1^2", "a1*ch^2/cphi^2"},
                     {"a2/s2^2", "a2*ch^2/sphi^2"},
                     {"a3/s3^2", "a3*ch^2/sh^2"}};
      r.group = "sphere nondegenerate";
      r.group_index = 1;
      WithPotential wp;
      wp.params = {"a1", "a2", "a3"};
      wp.V = "a1/s1^2 + a2/s2^2 + a3/s3^2";
      wp.H = "J1^2+J2^2+J3^2 + a1/s1^2 + a2/s2^2 + a3/s3^2";
      wp.L1 = "J3^2 + a1*s2^2/s1^2 + a2*s1^2/s2^2";
      wp.L2 = "J1^2 + a2*s3^2/s2^2 + a3*s2^2/s3^2";
      wp.casimir =
          "16*L1*L2*(H-L1-L2-a1-a2-a3) - 16*a2*(H-L1-L2-a1-a2-a3)^2 "
          "- 16*a3*L1^2 - 16*a1*L2^2 + 64*a1*a2*a3";
      r.with_potential = std::move(wp);
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "S4~";
      r.space = Space::Sphere;
      r.chart = ModelId::SphereO3;
      r.L1 = "J3^2";
      r.L2 = "(J1+i*J2)*J3";
      r.casimir = "-4*L1*L2^2";
      r.potential = {
          {"a1/(s1+i*s2)^2", "a1*ch^2/(cphi+i*sphi)^2"},
          {"a2*s3/sqrt(s1^2+s2^2)", "a2*sh"},
          {"a3/((s1+i*s2)*sqrt(s1^2+s2^2))", "a3*ch^2/(cphi+i*sphi)"}};
      r.group = "sphere nondegenerate";
      r.group_index = 2;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "S7~";
      r.space = Space::Sphere;
      r.chart = ModelId::SphereO3;
      r.L1 = "J3^2";
      r.L2 = "J1*J3";
      r.casimir = "-4*L1^3 - 4*L2^2*L1 + 4*L1^2*H";
      r.potential = {
          {"a1*s3/sqrt(s1^2+s2^2)", "a1*sh"},
          {"a2*s1/(s2^2*sqrt(s1^2+s2^2))", "a2*cphi*ch^2/sphi^2"},
          {"a3/s2^2", "a3*ch^2/sphi^2"}};
      r.group = "sphere nondegenerate";
      r.group_index = 3;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "S8~";
      r.space = Space::Sphere;
      r.chart = ModelId::SphereO3;
      r.L1 = "J2*(J2+i*J1)";
      r.L2 = "J2*J3";
      r.casimir = "-2*L1^3 + 2*L1*L2^2 + L1^2*H - L2^2*H";
      r.potential = {
          {"a1*s2/sqrt(s1^2+s3^2)", ""},
          {"a2*(s2+i*s1+s3)/sqrt((s2+i*s1)*(s3+i*s1))", ""},
          {"a3*(s2+i*s1-s3)/sqrt((s2+i*s1)*(s3-i*s1))", ""}};
      r.group = "sphere nondegenerate";
      r.group_index = 4;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "S2~";
      r.space = Space::Sphere;
      r.chart = ModelId::SphereO3;
      r.L1 = "(J1+i*J2)^2";
      r.L2 = "J3^2";
      r.casimir = "-16*L1^2*L2";
      r.potential = {
          {"a1/s3^2", "a1*ch^2/sh^2"},
          {"a2/(s1+i*s2)^2", "a2*ch^2/(cphi+i*sphi)^2"},
          {"a3*(s1-i*s2)/(s1+i*s2)^3",
           "a3*ch^2*(cphi-i*sphi)/(cphi+i*sphi)^3"}};
      r.group = "sphere nondegenerate";
      r.group_index = 5;
      add(std::move(r));
    }
    {
      SystemRecord r;
      r.name = "S1~";
      r.space = Space::Sphere;
      r.chart = ModelId::SphereO3;
      r.L1 = "(J1+i*J2)*J3";
      r.L2 = "(J1+i*J2)^2";
      r.casimir = "-4*L2^3";
      r.potential = {
          {"a1/(s1+i*s2)^2", "a1*ch^2/(cphi+i*sphi)^2"},
          {"a2*s3/(s1+i*s2)^3", "a2*sh*ch^2/(cphi+i*sphi)^3"},
          {"a3*(1-4*s3^2)/(s1+i*s2)^4",
           "a3*(ch^2-4*sh^2)*ch^2/(cphi+i*sphi)^4"}};
      r.group = "sphere nondegenerate";
      r.group_index = 6;
      r.notes =
          "middle member carries (s1+i*s2)^-3: the -2 power fails the "
          "canonical equations, and a Laurent scan confirms -3 as the unique "
          "one-parameter completion";
      add(std::move(r));
    }

    return t;
  }();
  return table;
}

// --- lookup -----------------------------------------------------------------

namespace catalog_detail {

// ASCII-normalized key: uppercase letters/digits/apostrophe, tildes and
// whitespace dropped, with the two common non-ASCII spellings (precomposed
// E-with-tilde, prime) folded in.
inline std::string normalize_name(std::string_view in) {
  std::string out;
  for (size_t i = 0; i < in.size();) {
    unsigned char c = static_cast<unsigned char>(in[i]);
    if (c == 0xE1 && i + 2 < in.size() &&
        static_cast<unsigned char>(in[i + 1]) == 0xBA &&
        (static_cast<unsigned char>(in[i + 2]) == 0xBC ||
         static_cast<unsigned char>(in[i + 2]) == 0xBD)) {
      out.push_back('E');  // precomposed E with tilde
      i += 3;
      continue;
    }
    if (c == 0xE2 && i + 2 < in.size() &&
        static_cast<unsigned char>(in[i + 1]) == 0x80 &&
        static_cast<unsigned char>(in[i + 2]) == 0xB2) {
      out.push_back('\'');  // prime
      i += 3;
      continue;
    }
    if (c < 0x80) {
      if (std::isalpha(c)) out.push_back(static_cast<char>(std::toupper(c)));
      else if (std::isdigit(c) || c == '\'') out.push_back(static_cast<char>(c));
      // '~', spaces and other punctuation are dropped
    }
    ++i;
  }
  return out;
}

inline size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t prev = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t cur = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
      prev = cur;
    }
  }
  return row[b.size()];
}

}  // namespace catalog_detail

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& r : catalog_systems()) out.push_back(r.name);
  return out;
}

inline const SystemRecord& get_system(std::string_view name) {
  const std::string key = catalog_detail::normalize_name(name);
  const SystemRecord* best = nullptr;
  size_t best_dist = SIZE_MAX;
  for (const auto& r : catalog_systems()) {
    std::string rkey = catalog_detail::normalize_name(r.name);
    if (rkey == key) return r;
    size_t d = catalog_detail::edit_distance(key, rkey);
    if (d < best_dist) {
      best_dist = d;
      best = &r;
    }
  }
  std::string msg = "unknown system '" + std::string(name) + "'";
  if (best) msg += "; nearest match is '" + best->name + "'";
  throw std::invalid_argument(msg);
}

// --- quantization -----------------------------------------------------------

namespace catalog_detail {

inline RatFn lift(const RatFn& f, const RingPtr& target) {
  return subst(f, {}, target);
}

}  // namespace catalog_detail

// Divergence-form operator of a flat-space observable
// L = sum_jk a^{jk} p_j p_k + W:  op = sum_jk d_j a^{jk} d_k + W.
// For a Killing tensor this agrees with the symmetrized momentum replacement.
inline WeylOp quantize_flat_second_order(const ModelPtr& model,
                                         const OperatorAlgebra& alg,
                                         const RatFn& L) {
  MomentumTensor t = momentum_tensor(model, L);
  auto lf = [&](const RatFn& f) { return catalog_detail::lift(f, alg.ring); };
  WeylOp op = alg.d(0) * alg.mul(lf(t.a11)) * alg.d(0) +
              alg.d(0) * alg.mul(lf(t.a12)) * alg.d(1) +
              alg.d(1) * alg.mul(lf(t.a12)) * alg.d(0) +
              alg.d(1) * alg.mul(lf(t.a22)) * alg.d(1);
  if (!t.w.is_zero()) op += alg.mul(lf(t.w));
  return op;
}

// Operator form of a first-order flat-space observable X = c1 p1 + c2 p2 with
// divergence-free coefficient field (every flat Killing vector qualifies).
inline WeylOp quantize_flat_first_order(const ModelPtr& model,
                                        const OperatorAlgebra& alg,
                                        const RatFn& X) {
  const auto& mom = model->momenta();
  const auto& pos = model->positions();
  RatFn c1 = X.diff(mom[0]), c2 = X.diff(mom[1]);
  RatFn rebuilt = c1 * model->parse(mom[0]) + c2 * model->parse(mom[1]);
  if (!(rebuilt == X))
    throw std::invalid_argument(
        "quantize_flat_first_order: observable is not homogeneous linear in "
        "the momenta");
  if (!(c1.diff(pos[0]) + c2.diff(pos[1])).is_zero())
    throw std::invalid_argument(
        "quantize_flat_first_order: coefficient field has nonzero divergence");
  auto lf = [&](const RatFn& f) { return catalog_detail::lift(f, alg.ring); };
  return alg.mul(lf(c1)) * alg.d(0) + alg.mul(lf(c2)) * alg.d(1);
}

// Operator form of a sphere observable that is a constant-coefficient
// polynomial of degree <= 2 in the rotation generators plus a multiplicative
// part: quadratic terms map to symmetrized products of the rotation operators.
inline WeylOp quantize_sphere_observable(const ModelPtr& model,
                                         const OperatorAlgebra& alg,
                                         const RatFn& L) {
  const RingPtr& r = model->ring();
  std::map<std::string, RatFn> tozero;
  for (const char* j : {"J1", "J2", "J3"}) tozero.emplace(j, RatFn::zero(r));
  RatFn W = subst(L, tozero, r);
  RatFn jpart = L - W;
  Poly q = jpart.as_poly();
  int ji[3] = {r->index_of("J1"), r->index_of("J2"), r->index_of("J3")};
  WeylOp jop[3] = {alg.gen("J1"), alg.gen("J2"), alg.gen("J3")};
  WeylOp op = alg.zero();
  const GaussRat half(1, 2);
  for (const auto& [e, c] : q.terms()) {
    int deg[3] = {0, 0, 0}, total = 0;
    for (int k = 0; k < 3; ++k) {
      deg[k] = static_cast<int>(e[static_cast<size_t>(ji[k])]);
      total += deg[k];
    }
    long other = 0;
    for (size_t v = 0; v < e.size(); ++v) {
      if (static_cast<int>(v) == ji[0] || static_cast<int>(v) == ji[1] ||
          static_cast<int>(v) == ji[2])
        continue;
      other += e[v];
    }
    if (other != 0 || total == 0 || total > 2)
      throw std::invalid_argument(
          "quantize_sphere_observable: rotation part is not a "
          "constant-coefficient polynomial of degree <= 2");
    if (total == 1) {
      for (int k = 0; k < 3; ++k)
        if (deg[k] == 1) op += c * jop[k];
    } else if (deg[0] == 2 || deg[1] == 2 || deg[2] == 2) {
      for (int k = 0; k < 3; ++k)
        if (deg[k] == 2) op += c * (jop[k] * jop[k]);
    } else {
      for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l)
          if (deg[k] == 1 && deg[l] == 1)
            op += (c * half) * sym2(jop[k], jop[l]);
    }
  }
  if (!W.is_zero()) op += alg.mul(catalog_detail::lift(W, alg.ring));
  return op;
}

// --- verification driver ----------------------------------------------------

enum class VerifyMode { Classical, Quantum, Both };

struct VerificationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string system;
  bool ok = true;
  std::vector<VerificationCheck> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    ok = ok && pass;
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  size_t passed() const {
    size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
  }
  std::string summary() const {
    std::ostringstream os;
    os << system << ": " << (ok ? "PASS" : "FAIL") << " (" << passed() << "/"
       << checks.size() << " checks)";
    return os.str();
  }
};

// Highest part of a presentation polynomial under the grading that weights
// every generator and parameter 2 but X only 1 (X is first order).  Used to
// compare an operator relation against its classical counterpart.
inline std::string weighted_top_part(const Poly& p) {
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

namespace catalog_detail {

inline bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& [ea, ca] = *a.terms().rbegin();
  const auto& [eb, cb] = *b.terms().rbegin();
  if (ea != eb) return false;
  GaussRat s = ca / cb;
  return a == Poly::constant(a.ring(), s) * b;
}

// Parse the record's relation in an abstract presentation ring and substitute
// the phase-space generators.
inline RatFn eval_relation(const ModelPtr& m, const std::string& rhs,
                           bool with_x, const std::vector<std::string>& params,
                           const RatFn& H, const RatFn& L1, const RatFn& L2,
                           const RatFn* X) {
  RingPtr pres = closure_detail::make_presentation_ring(with_x, params);
  RatFn rel = parse_ratfn(rhs, pres, {});
  std::map<std::string, RatFn> img;
  img.emplace("L1", L1);
  img.emplace("L2", L2);
  img.emplace("H", H);
  if (X) img.emplace("X", *X);
  return subst(rel, img, m->ring());
}

inline RatFn set_params_to_one(const ModelPtr& m, const RatFn& f,
                               const std::vector<std::string>& params) {
  std::map<std::string, RatFn> img;
  RatFn one = m->parse("1");
  for (const auto& p : params) img.emplace(p, one);
  return subst(f, img, m->ring());
}

// Parameters of the free generators (weight 0 in the closure grading).
inline std::vector<std::string> structural_params(const SystemRecord& rec) {
  if (rec.structural_param.empty()) return {};
  return {rec.structural_param};
}

// Parameters of the potential family (plus any structural ones), for the
// chart model the canonical-equation work runs in.
inline std::vector<std::string> potential_params(const SystemRecord& rec) {
  std::vector<std::string> params;
  if (rec.potential_family) params = {"a1", "a2"};
  else if (rec.kind == SystemKind::Degenerate) params = {"a1"};
  else params = {"a1", "a2", "a3"};
  if (!rec.structural_param.empty()) params.push_back(rec.structural_param);
  return params;
}

// Membership of f in the constant-coefficient linear span of polynomial
// observables: exact coefficient matching over the shared monomial support.
inline bool in_linear_span(const std::vector<RatFn>& basis, const RatFn& f) {
  std::map<Exp, size_t> rows;
  std::vector<Poly> cols;
  cols.reserve(basis.size());
  for (const auto& g : basis) cols.push_back(g.as_poly());
  Poly target = f.as_poly();
  auto index_terms = [&rows](const Poly& p) {
    for (const auto& [e, c] : p.terms())
      rows.emplace(e, rows.size());
  };
  for (const auto& p : cols) index_terms(p);
  index_terms(target);
  std::vector<std::vector<GaussRat>> A(
      rows.size(), std::vector<GaussRat>(cols.size(), GaussRat(0)));
  std::vector<GaussRat> b(rows.size(), GaussRat(0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (const auto& [e, c] : cols[j].terms()) A[rows.at(e)][j] = c;
  for (const auto& [e, c] : target.terms()) b[rows.at(e)] = c;
  return solve_linear(std::move(A), std::move(b)).consistent;
}

inline std::string free_hamiltonian(Space s) {
  return s == Space::Flat ? "p1^2+p2^2" : "J1^2+J2^2+J3^2";
}

inline KillingVector first_order_vector(const ModelPtr& m, const RatFn& X) {
  const auto& mom = m->momenta();
  return KillingVector{X.diff(mom[0]), X.diff(mom[1])};
}

inline bool canonical_equal(const CanonicalData& a, const CanonicalData& b) {
  return a.swapped == b.swapped && a.A12 == b.A12 && a.A22 == b.A22 &&
         a.B12 == b.B12 && a.B22 == b.B22;
}

}  // namespace catalog_detail

inline VerificationReport verify_system(const SystemRecord& rec,
                                        VerifyMode mode = VerifyMode::Both) {
  using namespace catalog_detail;
  VerificationReport out;
  out.system = rec.name;
  const bool run_classical = mode != VerifyMode::Quantum;
  const bool run_quantum = mode != VerifyMode::Classical;
  const bool deg = rec.kind == SystemKind::Degenerate;
  const std::vector<std::string> sparams = structural_params(rec);
  const std::vector<std::string> pparams = potential_params(rec);

  // Ambient model for the free generators; potential parameters live only in
  // the chart model used for canonical-equation work further down.
  ModelPtr m = PhaseModel::make(rec.chart, sparams);
  RatFn H = m->parse(free_hamiltonian(rec.space));
  RatFn L1 = m->parse(rec.L1);
  RatFn L2 = m->parse(rec.L2);
  std::optional<RatFn> X;
  if (!rec.X.empty()) X = m->parse(rec.X);

  // Classical closure: solver casimir (up to scale) for solvable records,
  // direct substitution of the printed relation for every record.
  ClosureReport crep;  // classical closure result, reused by the quantum step
  if (run_classical || run_quantum) {
    out.add("generators conserved", m->is_constant_of_motion(L1, H) &&
                                        m->is_constant_of_motion(L2, H) &&
                                        (!X || m->is_constant_of_motion(*X, H)));
    RatFn relation;
    if (deg) {
      relation = eval_relation(m, rec.casimir, true, sparams, H, L1, L2,
                               &X.value());
    } else {
      RatFn R = m->bracket(L1, L2);
      relation = R * R - eval_relation(m, rec.casimir, false, sparams, H, L1,
                                       L2, nullptr);
    }
    out.add("relation holds identically", relation.is_zero());

    if (rec.free_dependent) {
      // No closure solve is possible (the generators are functionally
      // dependent), but the bracket structure still closes: {L1,L2} vanishes
      // and, with a first-order X, {X,Li} stays in the linear display span.
      bool closes = m->bracket(L1, L2).is_zero();
      if (deg) {
        std::vector<RatFn> span = {L1, L2, H, (*X) * (*X), m->parse("1")};
        closes = closes && in_linear_span(span, m->bracket(*X, L1)) &&
                 in_linear_span(span, m->bracket(*X, L2));
      }
      out.add("bracket structure closes linearly", closes);
    } else {
      bool threw = false;
      try {
        if (deg) crep = solve_deg_closure(*m, H, *X, L1, L2, /*param_weight=*/0);
        else crep = solve_nondeg_closure(*m, H, L1, L2, /*param_weight=*/0);
      } catch (const std::invalid_argument& e) {
        threw = true;
        out.add("closure solve", false, e.what());
      }
      if (!threw) {
        out.add("closure solve",
                crep.solvable && crep.unique && crep.gradient_ok,
                crep.residual.empty() ? "" : crep.residual);
        if (crep.solvable) {
          Poly printed = parse_ratfn(rec.casimir, crep.pres, {}).as_poly();
          out.add("casimir matches up to scale",
                  proportional(crep.casimir, printed));
        }
        if (deg) {
          bool kok = crep.K_constant && rec.expected_K.has_value() &&
                     crep.K == *rec.expected_K;
          out.add("bracket multiplier", kok,
                  crep.K_constant ? "" : "nonconstant multiplier");
        }
      }
    }
  }

  // Canonical potential equations and potential verification on the chart.
  if (run_classical) {
    ModelPtr cm;
    RatFn cL1, cL2;
    std::optional<RatFn> cX;
    if (rec.space == Space::Sphere) {
      cm = PhaseModel::make(ModelId::TrigChartSphere, pparams);
      cL1 = to_trig_chart(L1, cm);
      cL2 = to_trig_chart(L2, cm);
      if (X) cX = to_trig_chart(*X, cm);
    } else {
      cm = PhaseModel::make(rec.chart, pparams);
      cL1 = cm->parse(rec.L1);
      cL2 = cm->parse(rec.L2);
      if (X) cX = cm->parse(rec.X);
    }
    if (rec.kind == SystemKind::Exceptional) {
      bool threw = false;
      std::string what;
      try {
        compute_AB_direct(cm, cL1, cL2);
      } catch (const std::domain_error& e) {
        threw = true;
        what = e.what();
      }
      out.add("singular pencil detected", threw, what);
      // The family potential admits scalar parts for both generators even
      // though the canonical equations collapse.
      RatFn famV = cm->parse(rec.potential.at(0).chart);
      WGradient g1 = w_gradient(cm, momentum_tensor(cm, cL1), famV);
      WGradient g2 = w_gradient(cm, momentum_tensor(cm, cL2), famV);
      out.add("family potential compatible", g1.compatible && g2.compatible);
    } else {
      CanonicalData cd = compute_AB_direct(cm, cL1, cL2);
      CanonicalData cdet = compute_AB_determinant(cm, cL1, cL2);
      bool conn_ok = true;
      std::string conn_what;
      CanonicalData ccon;
      try {
        ccon = compute_AB_connection(cm, cL1, cL2);
      } catch (const std::exception& e) {
        conn_ok = false;
        conn_what = e.what();
      }
      out.add("canonical data consistent",
              canonical_equal(cd, cdet) && conn_ok && canonical_equal(cd, ccon),
              conn_what);
      std::optional<DegenerateCanonicalData> dcd;
      if (deg) {
        dcd = degenerate_canonical(cm, cL1, cL2, first_order_vector(cm, *cX));
        out.add("integrability", integrability_check_deg(*dcd));
      } else {
        out.add("integrability", integrability_check_nondeg(cd));
      }
      std::vector<RatFn> family;
      RatFn fullV = cm->parse("0");
      size_t exact = 0;
      bool terms_ok = true;
      for (const auto& term : rec.potential) {
        if (term.chart.empty()) continue;
        RatFn V = cm->parse(term.chart);
        ++exact;
        fullV = fullV + V;
        family.push_back(set_params_to_one(cm, V, pparams));
        terms_ok = terms_ok && (deg ? verify_potential(*dcd, V)
                                    : verify_potential(cd, V));
      }
      if (exact) {
        out.add("potential members verified", terms_ok);
        out.add("potential sum verified", deg ? verify_potential(*dcd, fullV)
                                              : verify_potential(cd, fullV));
        family.push_back(cm->parse("1"));
        out.add("potential family independent",
                potential_family_rank(cm, family) == family.size());
      }
    }
  }

  // Operator-level verification.
  if (run_quantum && rec.operator_chart_ok) {
    OperatorAlgebra alg = rec.space == Space::Flat
                              ? flat_operator_algebra(sparams)
                              : sphere_operator_algebra(sparams);
    auto second = [&](const RatFn& f) {
      return rec.space == Space::Flat ? quantize_flat_second_order(m, alg, f)
                                      : quantize_sphere_observable(m, alg, f);
    };
    auto first = [&](const RatFn& f) {
      return rec.space == Space::Flat ? quantize_flat_first_order(m, alg, f)
                                      : quantize_sphere_observable(m, alg, f);
    };
    WeylOp Ho = second(H), L1o = second(L1), L2o = second(L2);
    std::optional<WeylOp> Xo;
    if (X) Xo = first(*X);
    out.add("operators commute with the Hamiltonian",
            commutator(Ho, L1o).is_zero() && commutator(Ho, L2o).is_zero() &&
                (!Xo || commutator(Ho, *Xo).is_zero()));
    if (rec.free_dependent) {
      // All generators are momentum-only: the classical relation lifts
      // verbatim to commuting operators.
      WeylOp rel = L1o * Ho - L1o * L1o - L2o * L2o;
      out.add("operator relation holds", rel.is_zero() &&
                                             commutator(L1o, L2o).is_zero());
    } else {
      ClosureReport qrep;
      bool threw = false;
      try {
        if (deg)
          qrep = solve_deg_closure_quantum(alg, Ho, *Xo, L1o, L2o,
                                           /*param_weight=*/0);
        else
          qrep = solve_nondeg_closure_quantum(alg, Ho, L1o, L2o,
                                              /*param_weight=*/0);
      } catch (const std::invalid_argument& e) {
        threw = true;
        out.add("operator closure solve", false, e.what());
      }
      if (!threw) {
        out.add("operator closure solve",
                qrep.solvable && qrep.unique && qrep.gradient_ok,
                qrep.residual.empty() ? "" : qrep.residual);
        if (qrep.solvable && crep.solvable) {
          out.add("operator casimir matches classical top part",
                  weighted_top_part(qrep.casimir) ==
                      weighted_top_part(crep.casimir));
        }
      }
    }
  } else if (run_quantum && !rec.operator_chart_ok) {
    out.add("operator verification skipped (chart-incompatible)", true);
  }

  // Full with-potential companion system.
  if (rec.with_potential) {
    const WithPotential& wp = *rec.with_potential;
    ModelPtr fm = PhaseModel::make(
        rec.space == Space::Flat ? ModelId::FlatE2 : ModelId::SphereO3,
        wp.params);
    RatFn fH = fm->parse(wp.H);
    RatFn fL1 = fm->parse(wp.L1);
    RatFn fL2 = fm->parse(wp.L2);
    std::optional<RatFn> fX;
    if (!wp.X.empty()) fX = fm->parse(wp.X);
    ClosureReport frep;
    if (run_classical) {
      out.add("full system conserved",
              fm->is_constant_of_motion(fL1, fH) &&
                  fm->is_constant_of_motion(fL2, fH) &&
                  (!fX || fm->is_constant_of_motion(*fX, fH)));
      RatFn relation;
      if (fX) {
        relation =
            eval_relation(fm, wp.casimir, true, wp.params, fH, fL1, fL2,
                          &fX.value());
      } else {
        RatFn R = fm->bracket(fL1, fL2);
        relation = R * R - eval_relation(fm, wp.casimir, false, wp.params, fH,
                                         fL1, fL2, nullptr);
      }
      out.add("full relation holds identically", relation.is_zero());
      if (fX) frep = solve_deg_closure(*fm, fH, *fX, fL1, fL2);
      else frep = solve_nondeg_closure(*fm, fH, fL1, fL2);
      out.add("full closure solve",
              frep.solvable && frep.unique && frep.gradient_ok);
      if (frep.solvable) {
        Poly printed = parse_ratfn(wp.casimir, frep.pres, {}).as_poly();
        out.add("full casimir matches up to scale",
                proportional(frep.casimir, printed));
      }
    }
    if (run_quantum && rec.operator_chart_ok) {
      OperatorAlgebra alg = rec.space == Space::Flat
                                ? flat_operator_algebra(wp.params)
                                : sphere_operator_algebra(wp.params);
      WeylOp Ho, L1o, L2o;
      std::optional<WeylOp> Xo;
      if (rec.space == Space::Flat) {
        Ho = quantize_flat_second_order(fm, alg, fH);
        L1o = quantize_flat_second_order(fm, alg, fL1);
        L2o = quantize_flat_second_order(fm, alg, fL2);
        if (fX) Xo = quantize_flat_first_order(fm, alg, *fX);
      } else {
        Ho = quantize_sphere_observable(fm, alg, fH);
        L1o = quantize_sphere_observable(fm, alg, fL1);
        L2o = quantize_sphere_observable(fm, alg, fL2);
        if (fX) Xo = quantize_sphere_observable(fm, alg, *fX);
      }
      out.add("full operators commute with the Hamiltonian",
              commutator(Ho, L1o).is_zero() && commutator(Ho, L2o).is_zero() &&
                  (!Xo || commutator(Ho, *Xo).is_zero()));
      ClosureReport qrep;
      if (Xo) qrep = solve_deg_closure_quantum(alg, Ho, *Xo, L1o, L2o);
      else qrep = solve_nondeg_closure_quantum(alg, Ho, L1o, L2o);
      out.add("full operator closure solve",
              qrep.solvable && qrep.unique && qrep.gradient_ok);
      if (qrep.solvable) {
        if (!wp.quantum_casimir.empty()) {
          Poly printed =
              parse_ratfn(wp.quantum_casimir, qrep.pres, {}).as_poly();
          out.add("full operator casimir matches", qrep.casimir == printed);
        }
        if (run_classical && frep.solvable) {
          out.add("full operator casimir matches classical top part",
                  weighted_top_part(qrep.casimir) ==
                      weighted_top_part(frep.casimir));
        }
      }
    }
  }

  return out;
}

inline VerificationReport verify_system(std::string_view name,
                                        VerifyMode mode = VerifyMode::Both) {
  return verify_system(get_system(name), mode);
}

}  // namespace qalg
