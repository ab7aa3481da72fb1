#pragma once
// Phase-space models: flat Cartesian, the 2-sphere in its (s, J) generator
// presentation, the trigonometric chart of the sphere, and a flat chart with
// a registered radial extension.  Each model carries its quotient ring, its
// Poisson structure, and the conformal metric factor lambda.
//
// Sphere structure data (rewrite rules for the constraint ideal
// <s1^2+s2^2+s3^2-1, s.J> and the pairwise bracket table) was derived once
// from the ambient embedding J1 = s2 p3 - s3 p2 (cyclic) and is frozen here;
// construction re-verifies antisymmetry, the Jacobi identity on all generator
// triples, and that both constraints are Casimirs.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalg/exprio.hpp"
#include "qalg/poly.hpp"
#include "qalg/ratfn.hpp"

namespace qalg {

enum class ModelId { FlatE2, SphereO3, TrigChartSphere, FlatPolarLike };

inline std::string model_name(ModelId id) {
  switch (id) {
    case ModelId::FlatE2: return "FlatE2";
    case ModelId::SphereO3: return "SphereO3";
    case ModelId::TrigChartSphere: return "TrigChartSphere";
    case ModelId::FlatPolarLike: return "FlatPolarLike";
  }
  return "?";
}

inline std::optional<ModelId> model_from_flag(std::string_view flag) {
  if (flag == "flat" || flag == "FlatE2") return ModelId::FlatE2;
  if (flag == "sphere" || flag == "SphereO3") return ModelId::SphereO3;
  if (flag == "trig-sphere" || flag == "TrigChartSphere") return ModelId::TrigChartSphere;
  if (flag == "flat-polar" || flag == "FlatPolarLike") return ModelId::FlatPolarLike;
  return std::nullopt;
}

class PhaseModel;
using ModelPtr = std::shared_ptr<const PhaseModel>;

class PhaseModel : public std::enable_shared_from_this<PhaseModel> {
 public:
  static ModelPtr make(ModelId id, const std::vector<std::string>& params = {});

  ModelId id() const { return id_; }
  const RingPtr& ring() const { return ring_; }
  const std::vector<std::string>& positions() const { return positions_; }
  const std::vector<std::string>& momenta() const { return momenta_; }
  const RatFn& metric_lambda() const { return lambda_; }
  const std::vector<std::string>& parameters() const { return params_; }

  // G_k = (d lambda / d x_k) / lambda, the log-derivatives of the metric.
  RatFn metric_G(size_t k) const { return lambda_.diff(positions_[k]) / lambda_; }

  RatFn free_hamiltonian() const {
    RatFn h = RatFn::zero(ring_);
    for (const auto& m : momenta_) {
      RatFn p = RatFn::var(ring_, m);
      h += p * p;
    }
    if (id_ == ModelId::TrigChartSphere) h = h / lambda_;
    return h;
  }

  // Model-bound shorthand names usable in expressions (J on flat charts).
  std::map<std::string, RatFn> bindings() const {
    std::map<std::string, RatFn> b;
    if (id_ == ModelId::FlatE2 || id_ == ModelId::FlatPolarLike) {
      b.emplace("J", RatFn(Poly::var(ring_, "x") * Poly::var(ring_, "p2") -
                           Poly::var(ring_, "y") * Poly::var(ring_, "p1")));
    }
    return b;
  }

  RatFn parse(std::string_view src) const { return parse_ratfn(src, ring_, bindings()); }

  bool uses_table() const { return !table_.empty(); }

  // Pairwise bracket of ring variables (table models only).
  const Poly& table_bracket(size_t i, size_t j) const { return table_[i * ring_->arity() + j]; }

  // --- Poisson bracket ---

  Poly bracket_poly(const Poly& f, const Poly& g) const {
    if (uses_table()) {
      Poly acc = Poly::zero(ring_);
      size_t n = ring_->arity();
      for (size_t i = 0; i < n; ++i) {
        Poly fi = f.diff_formal(i);
        if (fi.is_zero()) continue;
        for (size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const Poly& tij = table_bracket(i, j);
          if (tij.is_zero()) continue;
          Poly gj = g.diff_formal(j);
          if (gj.is_zero()) continue;
          acc += fi * gj * tij;
        }
      }
      return acc;
    }
    RatFn r = bracket(RatFn(f), RatFn(g));
    return r.as_poly();
  }

  RatFn bracket(const RatFn& f, const RatFn& g) const {
    if (f.ring().get() != ring_.get() || g.ring().get() != ring_.get())
      throw std::invalid_argument("bracket: observable from a different model");
    if (uses_table()) {
      // {n_f/d_f, n_g/d_g} expanded by the derivation property.
      const Poly &nf = f.num(), &df = f.den(), &ng = g.num(), &dg = g.den();
      Poly t1 = bracket_poly(nf, ng);
      Poly t2 = bracket_poly(nf, dg);
      Poly t3 = bracket_poly(df, ng);
      Poly t4 = bracket_poly(df, dg);
      // {f,g} = t1/(df dg) - t2 ng/(df dg^2) - t3 nf/(df^2 dg) + t4 nf ng/(df^2 dg^2)
      Poly dfdg = df * dg;
      Poly numer = t1 * dfdg - t2 * ng * df - t3 * nf * dg + t4 * nf * ng;
      return RatFn(numer, dfdg * dfdg);
    }
    // Canonical chart: {F,G} = sum_j (dF/dp_j dG/dx_j - dG/dp_j dF/dx_j).
    RatFn acc = RatFn::zero(ring_);
    for (size_t j = 0; j < momenta_.size(); ++j) {
      RatFn fp = f.diff(momenta_[j]);
      RatFn gp = g.diff(momenta_[j]);
      RatFn fx = f.diff(positions_[j]);
      RatFn gx = g.diff(positions_[j]);
      acc += fp * gx - gp * fx;
    }
    return acc;
  }

  bool is_constant_of_motion(const RatFn& L, const RatFn& H) const {
    return bracket(H, L).is_zero();
  }

 private:
  PhaseModel() = default;

  void build_flat(bool radial, const std::vector<std::string>& params);
  void build_sphere(const std::vector<std::string>& params);
  void build_trig_sphere(const std::vector<std::string>& params);
  void freeze_table(const std::vector<std::tuple<std::string, std::string, std::string>>& entries);
  void validate_table_model() const;

  ModelId id_{};
  RingPtr ring_;
  std::vector<std::string> positions_;
  std::vector<std::string> momenta_;
  std::vector<std::string> params_;
  RatFn lambda_;
  std::vector<Poly> table_;  // arity x arity pairwise brackets (table models)
};

// --- construction ----------------------------------------------------------

inline void PhaseModel::build_flat(bool radial, const std::vector<std::string>& params) {
  std::vector<RingCtx::VarDecl> vars;
  std::vector<RewriteRule> rules;
  std::vector<RingCtx::DerivEntry> derivs;
  if (radial) {
    vars.push_back({"r", VarKind::Extension});
  }
  vars.push_back({"x", VarKind::Position});
  vars.push_back({"y", VarKind::Position});
  vars.push_back({"p1", VarKind::Momentum});
  vars.push_back({"p2", VarKind::Momentum});
  for (const auto& p : params) vars.push_back({p, VarKind::Parameter});
  if (radial) {
    size_t n = vars.size();
    auto mono = [n](size_t i, int e, GaussRat c) {
      Exp ex(n, 0);
      ex[i] = e;
      return RawTerm{std::move(ex), std::move(c)};
    };
    // r^2 -> x^2 + y^2 (r is variable 0, x is 1, y is 2)
    Exp lhs(n, 0);
    lhs[0] = 2;
    rules.push_back({lhs, {mono(1, 2, GaussRat(1)), mono(2, 2, GaussRat(1))}});
    derivs.push_back({"r", "x", RatRaw{{mono(1, 1, GaussRat(1))}, {mono(0, 1, GaussRat(1))}}});
    derivs.push_back({"r", "y", RatRaw{{mono(2, 1, GaussRat(1))}, {mono(0, 1, GaussRat(1))}}});
  }
  ring_ = RingCtx::make(std::move(vars), std::move(rules), std::move(derivs));
  if (radial) validate_ring(ring_);
  positions_ = {"x", "y"};
  momenta_ = {"p1", "p2"};
  lambda_ = RatFn::constant(ring_, GaussRat(1));
}

inline void PhaseModel::freeze_table(
    const std::vector<std::tuple<std::string, std::string, std::string>>& entries) {
  size_t n = ring_->arity();
  table_.assign(n * n, Poly::zero(ring_));
  for (const auto& [a, b, rhs] : entries) {
    size_t i = static_cast<size_t>(ring_->index_of(a));
    size_t j = static_cast<size_t>(ring_->index_of(b));
    Poly v = parse_ratfn(rhs, ring_).as_poly();
    table_[i * n + j] = v;
    table_[j * n + i] = -v;
  }
}

inline void PhaseModel::validate_table_model() const {
  size_t n = ring_->arity();
  // Jacobi identity on all generator triples.
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      for (size_t c = b + 1; c < n; ++c) {
        Poly pa = Poly::var(ring_, ring_->name(a));
        Poly pb = Poly::var(ring_, ring_->name(b));
        Poly pc = Poly::var(ring_, ring_->name(c));
        Poly jac = bracket_poly(pa, bracket_poly(pb, pc)) +
                   bracket_poly(pb, bracket_poly(pc, pa)) +
                   bracket_poly(pc, bracket_poly(pa, pb));
        if (!jac.is_zero())
          throw std::logic_error("phase model: Jacobi identity fails on generators");
      }
  // Both defining constraints are Casimirs: expand {f, s.s - 1} and {f, s.J}
  // through the derivation property so the unreduced constraints are probed.
  for (size_t a = 0; a < n; ++a) {
    Poly f = Poly::var(ring_, ring_->name(a));
    Poly c1 = Poly::zero(ring_), c2 = Poly::zero(ring_);
    for (int k = 1; k <= 3; ++k) {
      std::string sk = "s" + std::to_string(k);
      std::string jk = "J" + std::to_string(k);
      Poly s = Poly::var(ring_, sk);
      Poly J = Poly::var(ring_, jk);
      c1 += GaussRat(2) * s * bracket_poly(f, s);
      c2 += s * bracket_poly(f, J) + J * bracket_poly(f, s);
    }
    if (!c1.is_zero() || !c2.is_zero())
      throw std::logic_error("phase model: constraint is not a Casimir");
  }
}

inline void PhaseModel::build_sphere(const std::vector<std::string>& params) {
  // Declaration order fixes graded-lex significance: s3 > J3 > s1 > s2 > J1 > J2.
  std::vector<RingCtx::VarDecl> vars = {
      {"s3", VarKind::Position}, {"J3", VarKind::Momentum}, {"s1", VarKind::Position},
      {"s2", VarKind::Position}, {"J1", VarKind::Momentum}, {"J2", VarKind::Momentum}};
  for (const auto& p : params) vars.push_back({p, VarKind::Parameter});
  size_t n = vars.size();
  auto E = [n](int s3, int J3, int s1, int s2, int J1, int J2) {
    Exp e(n, 0);
    e[0] = s3; e[1] = J3; e[2] = s1; e[3] = s2; e[4] = J1; e[5] = J2;
    return e;
  };
  auto T = [&](int s3, int J3, int s1, int s2, int J1, int J2, long c) {
    return RawTerm{E(s3, J3, s1, s2, J1, J2), GaussRat(c)};
  };
  // Reduced rewrite system for the ideal <s1^2+s2^2+s3^2-1, s1J1+s2J2+s3J3>.
  std::vector<RewriteRule> rules = {
      // s3^2 -> 1 - s1^2 - s2^2
      {E(2, 0, 0, 0, 0, 0), {T(0, 0, 0, 0, 0, 0, 1), T(0, 0, 2, 0, 0, 0, -1), T(0, 0, 0, 2, 0, 0, -1)}},
      // s3 J3 -> -s1 J1 - s2 J2
      {E(1, 1, 0, 0, 0, 0), {T(0, 0, 1, 0, 1, 0, -1), T(0, 0, 0, 1, 0, 1, -1)}},
      // s3 s1 J1 -> -s3 s2 J2 + s1^2 J3 + s2^2 J3 - J3
      {E(1, 0, 1, 0, 1, 0),
       {T(1, 0, 0, 1, 0, 1, -1), T(0, 1, 2, 0, 0, 0, 1), T(0, 1, 0, 2, 0, 0, 1), T(0, 1, 0, 0, 0, 0, -1)}},
      // s1^2 J3^2 -> -s2^2 J3^2 + J3^2 - s1^2 J1^2 - 2 s1 s2 J1 J2 - s2^2 J2^2
      {E(0, 2, 2, 0, 0, 0),
       {T(0, 2, 0, 2, 0, 0, -1), T(0, 2, 0, 0, 0, 0, 1), T(0, 0, 2, 0, 2, 0, -1),
        T(0, 0, 1, 1, 1, 1, -2), T(0, 0, 0, 2, 0, 2, -1)}}};
  ring_ = RingCtx::make(std::move(vars), std::move(rules));
  validate_ring(ring_);
  positions_ = {"s1", "s2", "s3"};
  momenta_ = {"J1", "J2", "J3"};
  lambda_ = RatFn::constant(ring_, GaussRat(1));
  // Pairwise brackets derived from {F,G} = sum_j (d_{p_j}F d_{x_j}G - d_{p_j}G d_{x_j}F)
  // applied to the ambient realization, then frozen.
  freeze_table({
      {"J3", "J1", "-J2"}, {"J3", "J2", "J1"}, {"J1", "J2", "-J3"},
      {"J1", "s2", "-s3"}, {"J1", "s3", "s2"},
      {"J2", "s1", "s3"}, {"J2", "s3", "-s1"},
      {"J3", "s1", "-s2"}, {"J3", "s2", "s1"},
  });
  validate_table_model();
}

inline void PhaseModel::build_trig_sphere(const std::vector<std::string>& params) {
  // Chart functions: ch = cosh(psi), sh = sinh(psi), cphi = cos(phi),
  // sphi = sin(phi); relations ch^2 = 1 + sh^2, cphi^2 = 1 - sphi^2.
  std::vector<RingCtx::VarDecl> vars = {
      {"ch", VarKind::Chart},   {"sh", VarKind::Chart},   {"cphi", VarKind::Chart},
      {"sphi", VarKind::Chart}, {"ppsi", VarKind::Momentum}, {"pphi", VarKind::Momentum}};
  for (const auto& p : params) vars.push_back({p, VarKind::Parameter});
  size_t n = vars.size();
  auto mono = [n](size_t i, int e, long c) {
    Exp ex(n, 0);
    ex[i] = e;
    return RawTerm{std::move(ex), GaussRat(c)};
  };
  auto constant = [n](long c) { return RawTerm{Exp(n, 0), GaussRat(c)}; };
  Exp ch2(n, 0), cphi2(n, 0);
  ch2[0] = 2;
  cphi2[2] = 2;
  std::vector<RewriteRule> rules = {
      {ch2, {mono(1, 2, 1), constant(1)}},
      {cphi2, {constant(1), mono(3, 2, -1)}},
  };
  std::vector<RingCtx::DerivEntry> derivs = {
      {"ch", "psi", RatRaw{{mono(1, 1, 1)}, {}}},
      {"sh", "psi", RatRaw{{mono(0, 1, 1)}, {}}},
      {"cphi", "phi", RatRaw{{mono(3, 1, -1)}, {}}},
      {"sphi", "phi", RatRaw{{mono(2, 1, 1)}, {}}},
  };
  ring_ = RingCtx::make(std::move(vars), std::move(rules), std::move(derivs));
  validate_ring(ring_);
  positions_ = {"psi", "phi"};
  momenta_ = {"ppsi", "pphi"};
  // Metric factor: lambda = 1/ch^2, so H_free = ch^2 (ppsi^2 + pphi^2).
  lambda_ = RatFn(Poly::constant(ring_, GaussRat(1)), Poly::var(ring_, "ch", 2));
}

inline ModelPtr PhaseModel::make(ModelId id, const std::vector<std::string>& params) {
  auto m = std::shared_ptr<PhaseModel>(new PhaseModel());
  m->id_ = id;
  m->params_ = params;
  switch (id) {
    case ModelId::FlatE2: m->build_flat(false, params); break;
    case ModelId::FlatPolarLike: m->build_flat(true, params); break;
    case ModelId::SphereO3: m->build_sphere(params); break;
    case ModelId::TrigChartSphere: m->build_trig_sphere(params); break;
  }
  if (m->lambda_.is_zero()) throw std::logic_error("phase model: lambda must be nonzero");
  return m;
}

// --- symmetric tensor helpers ---------------------------------------------

// Quadratic-in-momenta decomposition of an observable on a 2-momentum chart:
// L = a11 p1^2 + 2 a12 p1 p2 + a22 p2^2 + W.
struct MomentumTensor {
  RatFn a11, a12, a22, w;
};

inline MomentumTensor momentum_tensor(const ModelPtr& model, const RatFn& L) {
  if (model->momenta().size() != 2)
    throw std::invalid_argument("momentum_tensor: needs a 2-momentum chart");
  const RingPtr& ring = model->ring();
  size_t i1 = static_cast<size_t>(ring->index_of(model->momenta()[0]));
  size_t i2 = static_cast<size_t>(ring->index_of(model->momenta()[1]));
  const Poly& num = L.num();
  if (L.den().degree_in(i1) != 0 || L.den().degree_in(i2) != 0)
    throw std::invalid_argument("momentum_tensor: momenta in denominator");
  Poly c20(ring), c11(ring), c02(ring), c00(ring);
  for (const auto& [e, c] : num.terms()) {
    int d1 = e[i1], d2 = e[i2];
    Exp stripped = e;
    stripped[i1] = 0;
    stripped[i2] = 0;
    Poly mono = Poly::from_raw(ring, {RawTerm{stripped, c}});
    if (d1 == 2 && d2 == 0) c20 += mono;
    else if (d1 == 1 && d2 == 1) c11 += mono;
    else if (d1 == 0 && d2 == 2) c02 += mono;
    else if (d1 == 0 && d2 == 0) c00 += mono;
    else throw std::invalid_argument("momentum_tensor: not 2nd order in momenta");
  }
  MomentumTensor t;
  t.a11 = RatFn(c20, L.den());
  t.a12 = RatFn(c11, L.den()) * GaussRat(1, 2);
  t.a22 = RatFn(c02, L.den());
  t.w = RatFn(c00, L.den());
  return t;
}

// The four Killing equations for a 2nd order symmetry a^{ij} p_i p_j on the
// conformally flat metric lambda (dx^2 + dy^2):
//   d1 a11 = -G1 a11 - G2 a12          d2 a22 = -G1 a12 - G2 a22
//   2 d1 a12 + d2 a11 = -G1 a12 - G2 a22   (j = 2)
//   2 d2 a12 + d1 a22 = -G1 a11 - G2 a12   (j = 1)
inline bool killing_check(const ModelPtr& model, const RatFn& a11, const RatFn& a12,
                          const RatFn& a22) {
  const auto& X = model->positions();
  if (X.size() != 2) throw std::invalid_argument("killing_check: needs a 2D chart");
  RatFn G1 = model->metric_G(0), G2 = model->metric_G(1);
  RatFn e1 = a11.diff(X[0]) + G1 * a11 + G2 * a12;
  RatFn e2 = a22.diff(X[1]) + G1 * a12 + G2 * a22;
  RatFn e3 = GaussRat(2) * a12.diff(X[0]) + a11.diff(X[1]) + G1 * a12 + G2 * a22;
  RatFn e4 = GaussRat(2) * a12.diff(X[1]) + a22.diff(X[0]) + G1 * a11 + G2 * a12;
  return e1.is_zero() && e2.is_zero() && e3.is_zero() && e4.is_zero();
}

inline bool killing_check_observable(const ModelPtr& model, const RatFn& L) {
  MomentumTensor t = momentum_tensor(model, L);
  return killing_check(model, t.a11, t.a12, t.a22);
}

// --- perfect squares -------------------------------------------------------

// Exact square root of a rational number, if it exists.
inline std::optional<mpq_class> sqrt_rat(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return mpq_class(0);
  const mpz_class &num = q.get_num(), &den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn) / mpq_class(rd);
}

// Exact square root in Q(i): solve (c + d i)^2 = a + b i.
inline std::optional<GaussRat> sqrt_gauss(const GaussRat& z) {
  if (z.is_zero()) return GaussRat::zero();
  const mpq_class &a = z.re(), &b = z.im();
  if (b == 0) {
    if (auto c = sqrt_rat(a)) return GaussRat(*c);
    if (auto d = sqrt_rat(mpq_class(-a))) return GaussRat(mpq_class(0), *d);
    return std::nullopt;
  }
  mpq_class n2 = a * a + b * b;
  auto N = sqrt_rat(n2);
  if (!N) return std::nullopt;
  auto c = sqrt_rat((a + *N) / 2);
  if (!c) return std::nullopt;
  if (*c == 0) return std::nullopt;
  mpq_class d = b / (2 * (*c));
  return GaussRat(*c, d);
}

// Exact polynomial square root by leading-term recursion; returns nullopt
// when p is not a perfect square in the ring.
inline std::optional<Poly> sqrt_poly(const Poly& p) {
  if (p.is_zero()) return Poly::zero(p.ring());
  const RingPtr& ring = p.ring();
  Exp le = p.leading_exp();
  Exp half(le.size());
  for (size_t i = 0; i < le.size(); ++i) {
    if (le[i] % 2 != 0) return std::nullopt;
    half[i] = le[i] / 2;
  }
  auto lc = sqrt_gauss(p.leading_coeff());
  if (!lc) {
    // Either root of -p may be the perfect square when the leading
    // coefficient is a negative-type value; handled by callers via i factor.
    return std::nullopt;
  }
  Poly root = Poly::from_raw(ring, {RawTerm{half, *lc}});
  Poly two_root_lead = Poly::from_raw(ring, {RawTerm{half, GaussRat(2) * (*lc)}});
  for (int guard = 0; guard < 4096; ++guard) {
    Poly rem = p - root * root;
    if (rem.is_zero()) return root;
    Exp re = rem.leading_exp();
    Exp me(re.size());
    for (size_t i = 0; i < re.size(); ++i) {
      me[i] = re[i] - half[i];
      if (me[i] < 0) return std::nullopt;
    }
    GaussRat mc = rem.leading_coeff() / (GaussRat(2) * (*lc));
    Poly inc = Poly::from_raw(ring, {RawTerm{me, mc}});
    Poly next = root + inc;
    Poly next_rem = p - next * next;
    if (!next_rem.is_zero() && !ring->grlex_less(next_rem.leading_exp(), re))
      return std::nullopt;
    root = next;
  }
  return std::nullopt;
}

inline std::optional<RatFn> sqrt_ratfn(const RatFn& f) {
  auto n = sqrt_poly(f.num());
  if (!n) {
    // allow i^2 * square
    n = sqrt_poly(-f.num());
    if (!n) return std::nullopt;
    *n = *n * GaussRat::i();
  }
  auto d = sqrt_poly(f.den());
  if (!d) return std::nullopt;
  return RatFn(*n, *d);
}

struct KillingVector {
  RatFn xi1, xi2;
};

// Factor a momentum-homogeneous 2nd order observable as (xi1 p1 + xi2 p2)^2.
// Sign convention: the leading coefficient of xi1 (or xi2 when xi1 = 0) has
// positive real part, else positive imaginary part.
inline std::optional<KillingVector> perfect_square_factor(const ModelPtr& model,
                                                          const RatFn& L) {
  MomentumTensor t = momentum_tensor(model, L);
  if (!t.w.is_zero())
    throw std::invalid_argument("perfect_square_factor: potential part present");
  if (!(t.a11 * t.a22 - t.a12 * t.a12).is_zero()) return std::nullopt;  // rank 2
  RatFn xi1 = RatFn::zero(model->ring()), xi2 = xi1;
  if (t.a11.is_zero()) {
    if (!t.a12.is_zero()) return std::nullopt;
    if (t.a22.is_zero()) return std::nullopt;  // L = 0 carries no direction
    auto s = sqrt_ratfn(t.a22);
    if (!s) return std::nullopt;
    xi2 = *s;
  } else {
    auto s = sqrt_ratfn(t.a11);
    if (!s) return std::nullopt;
    xi1 = *s;
    xi2 = t.a12 / xi1;
    if (!(xi2 * xi2 == t.a22)) return std::nullopt;
  }
  // Normalize sign by the leading coefficient of the first nonzero component.
  const RatFn& lead_fn = xi1.is_zero() ? xi2 : xi1;
  GaussRat lc = lead_fn.num().leading_coeff();
  bool flip = false;
  if (lc.re() != 0) flip = lc.re() < 0;
  else flip = lc.im() < 0;
  if (flip) {
    xi1 = -xi1;
    xi2 = -xi2;
  }
  return KillingVector{xi1, xi2};
}

// --- chart transfer ---------------------------------------------------------

// Push an observable on the embedded 2-sphere model into the trigonometric
// chart model.  The embedding is
//   s1 = cphi/ch,  s2 = sphi/ch,  s3 = sh/ch,
//   J3 = pphi,
//   J1 =  ch*sphi*ppsi - sh*cphi*pphi,
//   J2 = -ch*cphi*ppsi - sh*sphi*pphi,
// which preserves the sphere relations and all pairwise brackets; parameters
// pass through by name (the chart model must declare the same parameters).
inline RatFn to_trig_chart(const RatFn& f, const ModelPtr& trig) {
  const RingPtr& r = trig->ring();
  auto v = [&](std::string_view n) { return RatFn::var(r, n); };
  RatFn ch = v("ch"), sh = v("sh"), cphi = v("cphi"), sphi = v("sphi");
  RatFn ppsi = v("ppsi"), pphi = v("pphi");
  std::map<std::string, RatFn> repl = {
      {"s1", cphi / ch},
      {"s2", sphi / ch},
      {"s3", sh / ch},
      {"J3", pphi},
      {"J1", ch * sphi * ppsi - sh * cphi * pphi},
      {"J2", -(ch * cphi * ppsi) - sh * sphi * pphi},
  };
  return subst(f, repl, r);
}

}  // namespace qalg
