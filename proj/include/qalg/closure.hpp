#pragma once
// Quadratic-algebra closure solver.
//
// Given a Hamiltonian H and two (or, in the degenerate case, three) extra
// constants of the motion, this module expands the relevant brackets or
// commutators in the span of generator monomials -- symmetrized in the
// operator case -- with coefficients polynomial in the potential parameters,
// and solves for the structure constants and the Casimir relation by exact
// linear algebra over Q(i).
//
// Nondegenerate shape (R = {L1,L2} resp. [L1,L2]):
//   {Lj,R} = sum_{|e|<=2} M^(j)_e  L1^e1 L2^e2 H^e3,   deg_a M <= 2-|e|
//   R^2    = sum_{|e|<=3} N_e      L1^e1 L2^e2 H^e3,   deg_a N <= 3-|e|
// Degenerate shape (first-order X in involution-closing position):
//   {X,Lj}  = sum_{|e|<=1} P^(j)_e L1^e1 L2^e2 H^e3 X^e4,        deg_a <= 1-|e|
//   {L1,L2} = sum_{|e|<=1} Q_e     L1^e1 L2^e2 X H^e3 X^(2 e4),  deg_a <= 1-|e|
//   0 = G   = sum_{|e|<=2} S_e     L1^e1 L2^e2 H^e3 X^(2 e4),    deg_a <= 2-|e|
// In the operator case each monomial is replaced by its averaged symmetrizer,
// whose principal symbol is exactly the commutative monomial, so classical and
// operator structure constants are directly comparable.
//
// Pre-condition (checked for phase-space generators, via Jacobian rank at
// randomized on-variety points): H, L1, L2 functionally independent.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qalg/exprio.hpp"
#include "qalg/linsolve.hpp"
#include "qalg/phase.hpp"
#include "qalg/poly.hpp"
#include "qalg/ratfn.hpp"
#include "qalg/ring.hpp"
#include "qalg/weyl.hpp"

namespace qalg {

enum class ClosureKind { Nondegenerate, Degenerate };
enum class AlgebraMode { Classical, Quantum };

struct StructureEntry {
  std::string name;  // e.g. "N[1,1,1]" or "P1[0,0,0,1]"
  Poly coeff;        // polynomial in the parameters (presentation ring)
};

struct ClosureReport {
  ClosureKind kind{};
  AlgebraMode mode{};
  bool solvable = false;
  bool unique = false;        // rank condition: no leftover freedom
  RingPtr pres;               // ring in L1,L2,H[,X] and the parameters
  Poly casimir;               // F with R^2 = F, or G with G = 0 (normalized)
  std::vector<StructureEntry> structure;
  std::string residual;       // witness when some expansion is inconsistent
  size_t casimir_nullity = 0; // 0 expected nondegenerate, 1 degenerate
  bool gradient_ok = false;   // classical: Casimir gradient relations hold
  std::optional<GaussRat> K;  // degenerate classical, when constant
  std::optional<RatFn> K_fn;  // the multiplier as a rational function
  std::string K_value;        // printed K (constant or rational function)
  bool K_constant = false;
  std::string K_error;

  std::string casimir_str() const { return casimir.str(); }
};

// --- functional independence ----------------------------------------------

namespace closure_detail {

inline GaussRat rnd_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 3);
  return GaussRat(num(rng)) / GaussRat(den(rng));
}

inline GaussRat rnd_nonzero(std::mt19937_64& rng) {
  GaussRat v = rnd_rat(rng);
  while (v.is_zero()) v = rnd_rat(rng);
  return v;
}

// A full-arity sample point lying exactly on the model's constraint variety.
inline std::vector<GaussRat> random_model_point(const PhaseModel& m,
                                                std::mt19937_64& rng) {
  const RingPtr& R = m.ring();
  std::vector<GaussRat> pt(R->arity(), GaussRat::zero());
  auto set = [&](std::string_view n, GaussRat v) {
    int i = R->index_of(n);
    if (i >= 0) pt[static_cast<size_t>(i)] = std::move(v);
  };
  // default: everything random (parameters, momenta, auxiliary vars)
  for (size_t i = 0; i < R->arity(); ++i) pt[i] = rnd_nonzero(rng);
  switch (m.id()) {
    case ModelId::FlatE2:
      break;
    case ModelId::FlatPolarLike: {
      // rational point on r^2 = x^2 + y^2 via a Pythagorean pair
      GaussRat t = rnd_nonzero(rng), u = rnd_nonzero(rng);
      set("x", t * t - u * u);
      set("y", GaussRat(2) * t * u);
      set("r", t * t + u * u);
      break;
    }
    case ModelId::SphereO3: {
      GaussRat t = rnd_rat(rng), u = rnd_rat(rng);
      GaussRat N = GaussRat(1) + t * t + u * u;
      GaussRat s1 = GaussRat(2) * t / N;
      GaussRat s2 = GaussRat(2) * u / N;
      GaussRat s3 = (GaussRat(1) - t * t - u * u) / N;
      GaussRat v1 = rnd_rat(rng), v2 = rnd_rat(rng), v3 = rnd_rat(rng);
      GaussRat vs = v1 * s1 + v2 * s2 + v3 * s3;
      set("s1", s1), set("s2", s2), set("s3", s3);
      set("J1", v1 - vs * s1);
      set("J2", v2 - vs * s2);
      set("J3", v3 - vs * s3);
      break;
    }
    case ModelId::TrigChartSphere: {
      GaussRat t = rnd_rat(rng);
      while ((GaussRat(1) - t * t).is_zero()) t = rnd_rat(rng);
      GaussRat u = rnd_rat(rng);
      GaussRat dt = GaussRat(1) - t * t, du = GaussRat(1) + u * u;
      set("ch", (GaussRat(1) + t * t) / dt);
      set("sh", GaussRat(2) * t / dt);
      set("cphi", (GaussRat(1) - u * u) / du);
      set("sphi", GaussRat(2) * u / du);
      break;
    }
  }
  return pt;
}

// Gradient rows of the defining constraints at a sample point; functions on
// the variety are independent iff their gradients together with these rows
// have full rank.
inline std::vector<std::vector<GaussRat>> constraint_rows(
    const PhaseModel& m, const std::vector<GaussRat>& pt,
    const std::vector<size_t>& dirs) {
  const RingPtr& R = m.ring();
  auto at = [&](std::string_view n) {
    return pt[static_cast<size_t>(R->index_of(n))];
  };
  auto row_from = [&](const std::map<std::string, GaussRat>& g) {
    std::vector<GaussRat> row(dirs.size(), GaussRat::zero());
    for (size_t k = 0; k < dirs.size(); ++k) {
      auto it = g.find(R->name(dirs[k]));
      if (it != g.end()) row[k] = it->second;
    }
    return row;
  };
  std::vector<std::vector<GaussRat>> rows;
  GaussRat two(2);
  switch (m.id()) {
    case ModelId::FlatE2:
      break;
    case ModelId::FlatPolarLike:
      rows.push_back(row_from({{"x", -two * at("x")},
                               {"y", -two * at("y")},
                               {"r", two * at("r")}}));
      break;
    case ModelId::SphereO3:
      rows.push_back(row_from({{"s1", two * at("s1")},
                               {"s2", two * at("s2")},
                               {"s3", two * at("s3")}}));
      rows.push_back(row_from({{"s1", at("J1")},
                               {"s2", at("J2")},
                               {"s3", at("J3")},
                               {"J1", at("s1")},
                               {"J2", at("s2")},
                               {"J3", at("s3")}}));
      break;
    case ModelId::TrigChartSphere:
      rows.push_back(row_from({{"ch", two * at("ch")}, {"sh", -two * at("sh")}}));
      rows.push_back(
          row_from({{"cphi", two * at("cphi")}, {"sphi", two * at("sphi")}}));
      break;
  }
  return rows;
}

inline std::vector<size_t> phase_directions(const PhaseModel& m) {
  std::vector<size_t> dirs;
  for (size_t i = 0; i < m.ring()->arity(); ++i) {
    VarKind k = m.ring()->kind(i);
    if (k == VarKind::Position || k == VarKind::Momentum ||
        k == VarKind::Extension || k == VarKind::Chart)
      dirs.push_back(i);
  }
  return dirs;
}

// Gradient row of f = n/d at pt (throws on a pole; caller resamples).
inline std::vector<GaussRat> gradient_row(const RatFn& f,
                                          const std::vector<GaussRat>& pt,
                                          const std::vector<size_t>& dirs) {
  GaussRat dv = f.den().eval(pt);
  if (dv.is_zero()) throw std::domain_error("gradient: pole at sample point");
  GaussRat nv = f.num().eval(pt);
  std::vector<GaussRat> row(dirs.size(), GaussRat::zero());
  GaussRat d2 = dv * dv;
  for (size_t k = 0; k < dirs.size(); ++k) {
    GaussRat ni = f.num().diff_formal(dirs[k]).eval(pt);
    GaussRat di = f.den().diff_formal(dirs[k]).eval(pt);
    row[k] = (ni * dv - nv * di) / d2;
  }
  return row;
}

inline size_t rank_of(std::vector<std::vector<GaussRat>> rows) {
  if (rows.empty()) return 0;
  std::vector<GaussRat> zero(rows.size(), GaussRat::zero());
  return solve_linear(std::move(rows), std::move(zero)).rank;
}

}  // namespace closure_detail

// True iff the given phase-space functions are functionally independent on
// the model's (constraint) variety; decided by exact Jacobian rank at up to
// three randomized on-variety sample points.
inline bool functionally_independent(const PhaseModel& m,
                                     const std::vector<RatFn>& gens,
                                     uint64_t seed = 0x5eed2026ULL) {
  using namespace closure_detail;
  std::mt19937_64 rng(seed);
  std::vector<size_t> dirs = phase_directions(m);
  std::vector<GaussRat> probe_pt = random_model_point(m, rng);
  size_t ncons = constraint_rows(m, probe_pt, dirs).size();
  size_t need = gens.size() + ncons;
  if (need > dirs.size()) return false;
  int sampled = 0;
  for (int attempt = 0; attempt < 64 && sampled < 3; ++attempt) {
    std::vector<GaussRat> pt = random_model_point(m, rng);
    try {
      std::vector<std::vector<GaussRat>> rows;
      for (const RatFn& g : gens) rows.push_back(gradient_row(g, pt, dirs));
      for (auto& r : constraint_rows(m, pt, dirs)) rows.push_back(std::move(r));
      if (rank_of(std::move(rows)) == need) return true;
      ++sampled;  // genuine sample with deficient rank
    } catch (const std::domain_error&) {
      continue;  // pole; resample
    }
  }
  return false;
}

// --- candidate bases -------------------------------------------------------

namespace closure_detail {

// Which expansion a basis serves; fixes the X power and the symmetrization.
enum class DisplayKind {
  PlainProduct,  // L1^e1 L2^e2 H^e3 X^e4            ({X,Lj} right-hand sides)
  PairSym,       // {L1^e1,L2^e2}/2 H^e3             (R expansions, no X)
  XPairSym,      // {L1^e1 L2^e2, X}/2 H^e3 X^(2e4)  ({L1,L2} degenerate)
  TripleSym      // {L1^e1,L2^e2,X^(2e4)}/6 H^e3     (degenerate Casimir)
};

struct BasisSpec {
  int bound;         // |e| <= bound, parameter degree <= bound - |e|
  DisplayKind kind;
  bool with_x;       // enumerate e4 at all
};

struct Column {
  std::array<int, 4> e{};  // (e1,e2,e3,e4)
  std::vector<int> pexp;   // exponents of the parameters
};

inline int x_power(const BasisSpec& spec, const std::array<int, 4>& e) {
  switch (spec.kind) {
    // The first-order generator has odd momentum parity, so it can only enter
    // an even-parity expansion through its square.
    case DisplayKind::PlainProduct: return 2 * e[3];
    case DisplayKind::PairSym: return 0;
    case DisplayKind::XPairSym: return 2 * e[3] + 1;
    case DisplayKind::TripleSym: return 2 * e[3];
  }
  return 0;
}

inline std::vector<std::array<int, 4>> sym_monos(int bound, bool with_x) {
  std::vector<std::array<int, 4>> out;
  for (int total = 0; total <= bound; ++total)
    for (int e1 = 0; e1 <= total; ++e1)
      for (int e2 = 0; e2 + e1 <= total; ++e2)
        for (int e3 = 0; e3 + e2 + e1 <= total; ++e3) {
          int e4 = total - e1 - e2 - e3;
          if (!with_x && e4 != 0) continue;
          out.push_back({e1, e2, e3, e4});
        }
  // |e| ascending, then lexicographic on (e1,e2,e3,e4) ascending
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = a[0] + a[1] + a[2] + a[3], sb = b[0] + b[1] + b[2] + b[3];
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

inline void enum_param_monos(size_t np, int maxdeg, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(np, 0);
  // all exponent vectors with sum <= maxdeg, total-degree ascending then lex
  std::vector<std::vector<int>> flat;
  std::function<void(size_t, int)> rec = [&](size_t i, int left) {
    if (i == np) {
      flat.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(0, maxdeg);
  std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int v : a) sa += v;
    for (int v : b) sb += v;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  out = std::move(flat);
}

// param_weight 2: potential parameters scale like squared momenta, so the
// coefficient degree cap shrinks with |e| (cap = bound - |e|).  param_weight
// 0: structural parameters deforming the generators themselves carry no
// weight and are capped at the overall bound.
inline std::vector<Column> make_columns(const BasisSpec& spec, size_t nparams,
                                        int param_weight) {
  std::vector<Column> cols;
  for (const auto& e : sym_monos(spec.bound, spec.with_x)) {
    int pdeg = param_weight == 0 ? spec.bound
                                 : spec.bound - (e[0] + e[1] + e[2] + e[3]);
    std::vector<std::vector<int>> pmonos;
    enum_param_monos(nparams, pdeg, pmonos);
    for (auto& p : pmonos) cols.push_back(Column{e, std::move(p)});
  }
  return cols;
}

inline std::string column_group_name(const char* prefix,
                                     const std::array<int, 4>& e, bool with_x) {
  std::string s(prefix);
  s += '[';
  int n = with_x ? 4 : 3;
  for (int i = 0; i < n; ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  s += ']';
  return s;
}

inline RatFn rat_pow(const RatFn& f, int n) {
  RatFn r = RatFn::constant(f.num().ring(), GaussRat::one());
  for (int k = 0; k < n; ++k) r *= f;
  return r;
}

inline WeylOp op_pow(const WeylOp& A, int n) {
  WeylOp r = WeylOp::identity(A.ring(), A.base());
  for (int k = 0; k < n; ++k) r = r * A;
  return r;
}

struct ClassicalGens {
  RatFn H, L1, L2, X;
  bool has_x = false;
};

struct QuantumGens {
  WeylOp H, L1, L2, X;
  bool has_x = false;
};

inline Poly param_mono(const RingPtr& ring, const std::vector<std::string>& params,
                       const std::vector<int>& pexp) {
  Poly m = Poly::constant(ring, GaussRat::one());
  for (size_t i = 0; i < params.size(); ++i)
    if (pexp[i] > 0) m = m * Poly::var(ring, params[i], pexp[i]);
  return m;
}

inline std::vector<RatFn> classical_values(const std::vector<Column>& cols,
                                           const BasisSpec& spec,
                                           const ClassicalGens& g,
                                           const std::vector<std::string>& params) {
  const RingPtr& ring = g.H.num().ring();
  std::vector<RatFn> vals;
  vals.reserve(cols.size());
  for (const auto& c : cols) {
    RatFn v = rat_pow(g.L1, c.e[0]) * rat_pow(g.L2, c.e[1]) *
              rat_pow(g.H, c.e[2]);
    int xp = x_power(spec, c.e);
    if (xp) v *= rat_pow(g.X, xp);
    v *= RatFn(param_mono(ring, params, c.pexp));
    vals.push_back(std::move(v));
  }
  return vals;
}

inline std::vector<WeylOp> quantum_values(const std::vector<Column>& cols,
                                          const BasisSpec& spec,
                                          const QuantumGens& g,
                                          const std::vector<std::string>& params) {
  const RingPtr& ring = g.H.ring();
  const auto& base = g.H.base();
  GaussRat half = GaussRat(2).inverse();
  GaussRat sixth = GaussRat(6).inverse();
  std::vector<WeylOp> vals;
  vals.reserve(cols.size());
  for (const auto& c : cols) {
    WeylOp A1 = op_pow(g.L1, c.e[0]);
    WeylOp A2 = op_pow(g.L2, c.e[1]);
    WeylOp core = WeylOp::identity(ring, base);
    switch (spec.kind) {
      case DisplayKind::PlainProduct:
        core = A1 * A2;
        if (c.e[3]) core = core * op_pow(g.X, 2 * c.e[3]);
        break;
      case DisplayKind::PairSym:
        if (c.e[0] > 0 && c.e[1] > 0)
          core = half * sym2(A1, A2);
        else
          core = A1 * A2;
        break;
      case DisplayKind::XPairSym:
        core = half * sym2(A1 * A2, g.X);
        if (c.e[3]) core = core * op_pow(g.X, 2 * c.e[3]);
        break;
      case DisplayKind::TripleSym:
        core = sixth * sym3(A1, A2, op_pow(g.X, 2 * c.e[3]));
        break;
    }
    if (c.e[2]) core = core * op_pow(g.H, c.e[2]);
    RatFn pm(param_mono(ring, params, c.pexp));
    vals.push_back(pm * core);
  }
  return vals;
}

// --- exact coefficient matching -------------------------------------------

class CoeffMatcher {
 public:
  explicit CoeffMatcher(size_t ncols) : ncols_(ncols) {}

  void add_equation(const std::vector<RatFn>& cands, const RatFn& target) {
    // Clear denominators against a factored least common multiple so the
    // scaled numerators stay small even when many inverse-square terms pile
    // up; a plain product over the distinct denominators grows much faster.
    DenBasis basis(target.ring());
    basis.add(target.den());
    for (const RatFn& f : cands)
      if (!f.is_zero()) basis.add(f.den());
    basis.build();
    auto scaled_num = [&](const RatFn& f) {
      return f.num() * basis.cofactor(basis.add(f.den()));
    };
    std::map<Exp, size_t> row_of;
    auto row_for = [&](const Exp& e) {
      auto it = row_of.find(e);
      if (it != row_of.end()) return it->second;
      size_t r = A_.size();
      A_.emplace_back(ncols_, GaussRat::zero());
      b_.emplace_back(GaussRat::zero());
      row_of.emplace(e, r);
      return r;
    };
    for (size_t j = 0; j < cands.size(); ++j) {
      if (cands[j].is_zero()) continue;
      Poly p = scaled_num(cands[j]);
      for (const auto& [e, cc] : p.terms()) A_[row_for(e)][j] += cc;
    }
    Poly t = scaled_num(target);
    for (const auto& [e, cc] : t.terms()) b_[row_for(e)] += cc;
  }

  void add_weyl_equation(const std::vector<WeylOp>& cands, const WeylOp& target) {
    std::vector<WeylOp::DExp> slots;
    auto note = [&](const WeylOp::DExp& d) {
      for (const auto& s : slots)
        if (s == d) return;
      slots.push_back(d);
    };
    for (const auto& [d, c] : target.terms()) note(d);
    for (const WeylOp& op : cands)
      for (const auto& [d, c] : op.terms()) note(d);
    if (slots.empty()) return;
    const RingPtr& ring = target.ring();
    RatFn zero = RatFn::zero(ring);
    for (const auto& slot : slots) {
      std::vector<RatFn> cvals;
      cvals.reserve(cands.size());
      for (const WeylOp& op : cands) {
        auto it = op.terms().find(slot);
        cvals.push_back(it == op.terms().end() ? zero : it->second);
      }
      auto it = target.terms().find(slot);
      add_equation(cvals, it == target.terms().end() ? zero : it->second);
    }
  }

  LinearSolution solve() { return solve_linear(std::move(A_), std::move(b_)); }

 private:
  size_t ncols_;
  std::vector<std::vector<GaussRat>> A_;
  std::vector<GaussRat> b_;
};

inline std::string clipped(std::string s) {
  if (s.size() > 400) {
    s.resize(400);
    s += " ...";
  }
  return s;
}

// Presentation ring in the abstract generators plus the parameters.
inline RingPtr make_presentation_ring(bool with_x,
                                      const std::vector<std::string>& params) {
  std::vector<RingCtx::VarDecl> vars;
  vars.push_back({"L1", VarKind::Position});
  vars.push_back({"L2", VarKind::Position});
  vars.push_back({"H", VarKind::Position});
  if (with_x) vars.push_back({"X", VarKind::Position});
  for (const auto& p : params) vars.push_back({p, VarKind::Parameter});
  return RingCtx::make(std::move(vars));
}

inline Poly pres_monomial(const RingPtr& pres, const BasisSpec& spec,
                          const Column& c, const std::vector<std::string>& params) {
  Poly m = Poly::constant(pres, GaussRat::one());
  if (c.e[0]) m = m * Poly::var(pres, "L1", c.e[0]);
  if (c.e[1]) m = m * Poly::var(pres, "L2", c.e[1]);
  if (c.e[2]) m = m * Poly::var(pres, "H", c.e[2]);
  int xp = x_power(spec, c.e);
  if (xp) m = m * Poly::var(pres, "X", xp);
  m = m * param_mono(pres, params, c.pexp);
  return m;
}

// Append the grouped structure constants for one solved expansion.
inline void append_structure(std::vector<StructureEntry>& out, const char* prefix,
                             const std::vector<Column>& cols,
                             const std::vector<GaussRat>& x, const RingPtr& pres,
                             const std::vector<std::string>& params, bool with_x) {
  size_t i = 0;
  while (i < cols.size()) {
    size_t j = i;
    Poly coeff = Poly::zero(pres);
    while (j < cols.size() && cols[j].e == cols[i].e) {
      if (!x[j].is_zero())
        coeff = coeff + Poly::constant(pres, x[j]) *
                            param_mono(pres, params, cols[j].pexp);
      ++j;
    }
    if (!coeff.is_zero())
      out.push_back({column_group_name(prefix, cols[i].e, with_x), coeff});
    i = j;
  }
}

inline Poly assemble_pres_poly(const std::vector<Column>& cols,
                               const std::vector<GaussRat>& x, const RingPtr& pres,
                               const BasisSpec& spec,
                               const std::vector<std::string>& params) {
  Poly F = Poly::zero(pres);
  for (size_t j = 0; j < cols.size(); ++j)
    if (!x[j].is_zero())
      F = F + Poly::constant(pres, x[j]) * pres_monomial(pres, spec, cols[j], params);
  return F;
}

// Normalize a relation-kernel vector: among the columns of highest weighted
// degree (generators weigh two, the first-order generator one, parameters per
// their declared weight), scale the first nonzero entry to one.  A classical
// polynomial relation is weighted-homogeneous, so this pins its overall scale;
// operator relations gain lower-weight correction terms, and anchoring at the
// top keeps their leading parts directly comparable with the classical ones.
inline void normalize_top(std::vector<GaussRat>& v,
                          const std::vector<Column>& cols, int param_weight) {
  int best = -1;
  size_t anchor = v.size();
  for (size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    int pdeg = 0;
    for (int p : cols[j].pexp) pdeg += p;
    int w = 2 * (cols[j].e[0] + cols[j].e[1] + cols[j].e[2] + cols[j].e[3]) +
            param_weight * pdeg;
    if (w > best) { best = w; anchor = j; }
  }
  if (anchor == v.size()) return;
  GaussRat inv = v[anchor].inverse();
  for (GaussRat& w : v) w *= inv;
}

}  // namespace closure_detail

// --- classical solvers -----------------------------------------------------

// Gradient relations tying the Casimir to the brackets: with R = {L1,L2} and
// R^2 = F(L1,L2,H) one must have {L1,R} = 1/2 dF/dL2 and {L2,R} = -1/2 dF/dL1.
// F lives in the presentation ring `pres`; parameters substitute by name.
inline bool casimir_gradient_check(const PhaseModel& model, const RingPtr& pres,
                                   const Poly& F, const RatFn& H, const RatFn& L1,
                                   const RatFn& L2) {
  std::map<std::string, RatFn> img = {{"L1", L1}, {"L2", L2}, {"H", H}};
  GaussRat half = GaussRat(2).inverse();
  size_t iL1 = static_cast<size_t>(pres->index_of("L1"));
  size_t iL2 = static_cast<size_t>(pres->index_of("L2"));
  RatFn R = model.bracket(L1, L2);
  RatFn dF2 = subst(F.diff_formal(iL2), img, model.ring());
  RatFn dF1 = subst(F.diff_formal(iL1), img, model.ring());
  return model.bracket(L1, R) == dF2 * half &&
         model.bracket(L2, R) == -(dF1 * half);
}

inline ClosureReport solve_nondeg_closure(const PhaseModel& model, const RatFn& H,
                                          const RatFn& L1, const RatFn& L2,
                                          int param_weight = 2) {
  using namespace closure_detail;
  if (!functionally_independent(model, {H, L1, L2}))
    throw std::invalid_argument("closure: generators are functionally dependent");
  const std::vector<std::string>& params = model.parameters();
  ClosureReport rep;
  rep.kind = ClosureKind::Nondegenerate;
  rep.mode = AlgebraMode::Classical;
  rep.pres = make_presentation_ring(false, params);
  rep.solvable = true;
  rep.unique = true;

  RatFn R = model.bracket(L1, L2);
  ClassicalGens g{H, L1, L2, RatFn::zero(model.ring()), false};

  BasisSpec nspec{3, DisplayKind::PairSym, false};
  BasisSpec mspec{2, DisplayKind::PairSym, false};
  auto ncols = make_columns(nspec, params.size(), param_weight);
  auto mcols = make_columns(mspec, params.size(), param_weight);
  auto nvals = classical_values(ncols, nspec, g, params);
  auto mvals = classical_values(mcols, mspec, g, params);

  struct Job {
    const char* prefix;
    const std::vector<Column>* cols;
    const std::vector<RatFn>* vals;
    const BasisSpec* spec;
    RatFn target;
    bool is_casimir;
  };
  std::vector<Job> jobs = {
      {"N", &ncols, &nvals, &nspec, R * R, true},
      {"M1", &mcols, &mvals, &mspec, model.bracket(L1, R), false},
      {"M2", &mcols, &mvals, &mspec, model.bracket(L2, R), false},
  };
  for (auto& job : jobs) {
    CoeffMatcher mat(job.cols->size());
    mat.add_equation(*job.vals, job.target);
    LinearSolution sol = mat.solve();
    if (!sol.consistent) {
      rep.solvable = false;
      RatFn resid = job.target;
      for (size_t j = 0; j < job.vals->size(); ++j)
        if (!sol.x[j].is_zero()) resid -= sol.x[j] * (*job.vals)[j];
      rep.residual = std::string(job.prefix) + ": " + clipped(resid.str());
      continue;
    }
    if (sol.nullity != 0) rep.unique = false;
    // exact back-substitution: the solved expansion must reproduce the target
    RatFn acc = RatFn::zero(model.ring());
    for (size_t j = 0; j < job.vals->size(); ++j)
      if (!sol.x[j].is_zero()) acc += sol.x[j] * (*job.vals)[j];
    if (!(acc == job.target))
      throw std::logic_error("closure: back-substitution residual nonzero");
    append_structure(rep.structure, job.prefix, *job.cols, sol.x, rep.pres,
                     params, false);
    if (job.is_casimir)
      rep.casimir = assemble_pres_poly(*job.cols, sol.x, rep.pres, *job.spec, params);
  }

  if (rep.solvable)
    rep.gradient_ok = casimir_gradient_check(model, rep.pres, rep.casimir, H, L1, L2);
  return rep;
}

namespace closure_detail {

inline void attach_K(ClosureReport& rep, const PhaseModel& model, const RatFn& H,
                     const RatFn& X, const RatFn& L1, const RatFn& L2) {
  std::map<std::string, RatFn> img = {{"L1", L1}, {"L2", L2}, {"H", H}, {"X", X}};
  auto grad = [&](const char* v) {
    int i = rep.pres->index_of(v);
    return subst(rep.casimir.diff_formal(static_cast<size_t>(i)), img, model.ring());
  };
  RatFn gL1 = grad("L1"), gL2 = grad("L2"), gX = grad("X");
  RatFn b1 = model.bracket(X, L1);
  RatFn b2 = model.bracket(X, L2);
  RatFn b12 = model.bracket(L1, L2);
  RatFn K;
  if (!gL2.is_zero())
    K = b1 / gL2;
  else if (!gL1.is_zero())
    K = -(b2 / gL1);
  else if (!gX.is_zero())
    K = b12 / gX;
  else {
    rep.K_error = "casimir gradient vanishes identically";
    return;
  }
  if (!(b1 == K * gL2) || !(b2 == -(K * gL1)) || !(b12 == K * gX)) {
    rep.K_error = "gradient relations do not share a common factor";
    return;
  }
  rep.gradient_ok = true;
  rep.K_constant = K.is_constant();
  if (rep.K_constant) rep.K = K.constant_value();
  rep.K_fn = K;
  rep.K_value = K.str();
}

}  // namespace closure_detail

inline ClosureReport solve_deg_closure(const PhaseModel& model, const RatFn& H,
                                       const RatFn& X, const RatFn& L1,
                                       const RatFn& L2, int param_weight = 2) {
  using namespace closure_detail;
  if (!functionally_independent(model, {H, L1, L2}))
    throw std::invalid_argument("closure: generators are functionally dependent");
  const std::vector<std::string>& params = model.parameters();
  ClosureReport rep;
  rep.kind = ClosureKind::Degenerate;
  rep.mode = AlgebraMode::Classical;
  rep.pres = make_presentation_ring(true, params);
  rep.solvable = true;
  rep.unique = true;

  ClassicalGens g{H, L1, L2, X, true};
  BasisSpec pspec{1, DisplayKind::PlainProduct, true};
  BasisSpec qspec{1, DisplayKind::XPairSym, true};
  BasisSpec sspec{2, DisplayKind::TripleSym, true};
  auto pcols = make_columns(pspec, params.size(), param_weight);
  auto qcols = make_columns(qspec, params.size(), param_weight);
  auto scols = make_columns(sspec, params.size(), param_weight);
  auto pvals = classical_values(pcols, pspec, g, params);
  auto qvals = classical_values(qcols, qspec, g, params);
  auto svals = classical_values(scols, sspec, g, params);

  struct Job {
    const char* prefix;
    const std::vector<Column>* cols;
    const std::vector<RatFn>* vals;
    RatFn target;
  };
  std::vector<Job> jobs = {
      {"P1", &pcols, &pvals, model.bracket(X, L1)},
      {"P2", &pcols, &pvals, model.bracket(X, L2)},
      {"Q", &qcols, &qvals, model.bracket(L1, L2)},
  };
  for (auto& job : jobs) {
    CoeffMatcher mat(job.cols->size());
    mat.add_equation(*job.vals, job.target);
    LinearSolution sol = mat.solve();
    if (!sol.consistent) {
      rep.solvable = false;
      RatFn resid = job.target;
      for (size_t j = 0; j < job.vals->size(); ++j)
        if (!sol.x[j].is_zero()) resid -= sol.x[j] * (*job.vals)[j];
      rep.residual = std::string(job.prefix) + ": " + clipped(resid.str());
      continue;
    }
    if (sol.nullity != 0) rep.unique = false;
    RatFn acc = RatFn::zero(model.ring());
    for (size_t j = 0; j < job.vals->size(); ++j)
      if (!sol.x[j].is_zero()) acc += sol.x[j] * (*job.vals)[j];
    if (!(acc == job.target))
      throw std::logic_error("closure: back-substitution residual nonzero");
    append_structure(rep.structure, job.prefix, *job.cols, sol.x, rep.pres,
                     params, true);
  }

  // Casimir relation: nontrivial kernel of the evaluation map
  {
    CoeffMatcher mat(scols.size());
    mat.add_equation(svals, RatFn::zero(model.ring()));
    LinearSolution sol = mat.solve();
    rep.casimir_nullity = sol.nullity;
    if (sol.nullity == 0) {
      rep.solvable = false;
      rep.residual = "S: no polynomial relation among H, L1, L2, X^2";
    } else {
      if (sol.nullity != 1) rep.unique = false;
      std::vector<GaussRat> v = sol.nullspace.front();
      normalize_top(v, scols, param_weight);
      RatFn acc = RatFn::zero(model.ring());
      for (size_t j = 0; j < svals.size(); ++j)
        if (!v[j].is_zero()) acc += v[j] * svals[j];
      if (!acc.is_zero())
        throw std::logic_error("closure: casimir kernel vector fails back-substitution");
      append_structure(rep.structure, "S", scols, v, rep.pres, params, true);
      rep.casimir = assemble_pres_poly(scols, v, rep.pres, sspec, params);
      attach_K(rep, model, H, X, L1, L2);
    }
  }
  return rep;
}

// --- operator solvers ------------------------------------------------------

namespace closure_detail {

inline std::vector<std::string> algebra_params(const OperatorAlgebra& alg) {
  std::vector<std::string> params;
  for (size_t i = 0; i < alg.ring->arity(); ++i)
    if (alg.ring->kind(i) == VarKind::Parameter) params.push_back(alg.ring->name(i));
  return params;
}

}  // namespace closure_detail

// Operator analogue of solve_nondeg_closure.  Functional independence of the
// principal symbols is the caller's contract (checked on the classical side).
inline ClosureReport solve_nondeg_closure_quantum(const OperatorAlgebra& alg,
                                                  const WeylOp& H, const WeylOp& L1,
                                                  const WeylOp& L2,
                                                  int param_weight = 2) {
  using namespace closure_detail;
  std::vector<std::string> params = algebra_params(alg);
  ClosureReport rep;
  rep.kind = ClosureKind::Nondegenerate;
  rep.mode = AlgebraMode::Quantum;
  rep.pres = make_presentation_ring(false, params);
  rep.solvable = true;
  rep.unique = true;

  WeylOp R = commutator(L1, L2);
  QuantumGens g{H, L1, L2, alg.zero(), false};

  BasisSpec nspec{3, DisplayKind::PairSym, false};
  BasisSpec mspec{2, DisplayKind::PairSym, false};
  auto ncols = make_columns(nspec, params.size(), param_weight);
  auto mcols = make_columns(mspec, params.size(), param_weight);
  auto nvals = quantum_values(ncols, nspec, g, params);
  auto mvals = quantum_values(mcols, mspec, g, params);

  struct Job {
    const char* prefix;
    const std::vector<Column>* cols;
    const std::vector<WeylOp>* vals;
    const BasisSpec* spec;
    WeylOp target;
    bool is_casimir;
  };
  std::vector<Job> jobs = {
      {"N", &ncols, &nvals, &nspec, R * R, true},
      {"M1", &mcols, &mvals, &mspec, commutator(L1, R), false},
      {"M2", &mcols, &mvals, &mspec, commutator(L2, R), false},
  };
  for (auto& job : jobs) {
    CoeffMatcher mat(job.cols->size());
    mat.add_weyl_equation(*job.vals, job.target);
    LinearSolution sol = mat.solve();
    if (!sol.consistent) {
      rep.solvable = false;
      WeylOp resid = job.target;
      for (size_t j = 0; j < job.vals->size(); ++j)
        if (!sol.x[j].is_zero()) resid -= sol.x[j] * (*job.vals)[j];
      rep.residual = std::string(job.prefix) + ": operator expansion inconsistent";
      continue;
    }
    if (sol.nullity != 0) rep.unique = false;
    WeylOp acc = alg.zero();
    for (size_t j = 0; j < job.vals->size(); ++j)
      if (!sol.x[j].is_zero()) acc += sol.x[j] * (*job.vals)[j];
    if (!(acc == job.target))
      throw std::logic_error("closure: operator back-substitution residual nonzero");
    append_structure(rep.structure, job.prefix, *job.cols, sol.x, rep.pres,
                     params, false);
    if (job.is_casimir)
      rep.casimir = assemble_pres_poly(*job.cols, sol.x, rep.pres, *job.spec, params);
  }
  return rep;
}

inline ClosureReport solve_deg_closure_quantum(const OperatorAlgebra& alg,
                                               const WeylOp& H, const WeylOp& X,
                                               const WeylOp& L1, const WeylOp& L2,
                                               int param_weight = 2) {
  using namespace closure_detail;
  std::vector<std::string> params = algebra_params(alg);
  ClosureReport rep;
  rep.kind = ClosureKind::Degenerate;
  rep.mode = AlgebraMode::Quantum;
  rep.pres = make_presentation_ring(true, params);
  rep.solvable = true;
  rep.unique = true;

  QuantumGens g{H, L1, L2, X, true};
  BasisSpec pspec{1, DisplayKind::PlainProduct, true};
  BasisSpec qspec{1, DisplayKind::XPairSym, true};
  BasisSpec sspec{2, DisplayKind::TripleSym, true};
  auto pcols = make_columns(pspec, params.size(), param_weight);
  auto qcols = make_columns(qspec, params.size(), param_weight);
  auto scols = make_columns(sspec, params.size(), param_weight);
  auto pvals = quantum_values(pcols, pspec, g, params);
  auto qvals = quantum_values(qcols, qspec, g, params);
  auto svals = quantum_values(scols, sspec, g, params);

  struct Job {
    const char* prefix;
    const std::vector<Column>* cols;
    const std::vector<WeylOp>* vals;
    WeylOp target;
  };
  std::vector<Job> jobs = {
      {"P1", &pcols, &pvals, commutator(X, L1)},
      {"P2", &pcols, &pvals, commutator(X, L2)},
      {"Q", &qcols, &qvals, commutator(L1, L2)},
  };
  for (auto& job : jobs) {
    CoeffMatcher mat(job.cols->size());
    mat.add_weyl_equation(*job.vals, job.target);
    LinearSolution sol = mat.solve();
    if (!sol.consistent) {
      rep.solvable = false;
      rep.residual = std::string(job.prefix) + ": operator expansion inconsistent";
      continue;
    }
    if (sol.nullity != 0) rep.unique = false;
    WeylOp acc = alg.zero();
    for (size_t j = 0; j < job.vals->size(); ++j)
      if (!sol.x[j].is_zero()) acc += sol.x[j] * (*job.vals)[j];
    if (!(acc == job.target))
      throw std::logic_error("closure: operator back-substitution residual nonzero");
    append_structure(rep.structure, job.prefix, *job.cols, sol.x, rep.pres,
                     params, true);
  }

  {
    CoeffMatcher mat(scols.size());
    mat.add_weyl_equation(svals, alg.zero());
    LinearSolution sol = mat.solve();
    rep.casimir_nullity = sol.nullity;
    if (sol.nullity == 0) {
      rep.solvable = false;
      rep.residual = "S: no operator relation among H, L1, L2, X^2";
    } else {
      if (sol.nullity != 1) rep.unique = false;
      std::vector<GaussRat> v = sol.nullspace.front();
      normalize_top(v, scols, param_weight);
      WeylOp acc = alg.zero();
      for (size_t j = 0; j < svals.size(); ++j)
        if (!v[j].is_zero()) acc += v[j] * svals[j];
      if (!acc.is_zero())
        throw std::logic_error("closure: casimir kernel vector fails back-substitution");
      append_structure(rep.structure, "S", scols, v, rep.pres, params, true);
      rep.casimir = assemble_pres_poly(scols, v, rep.pres, sspec, params);
    }
  }
  return rep;
}

}  // namespace qalg
