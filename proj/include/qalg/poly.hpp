#pragma once
// Sparse multivariate polynomials over Q(i), kept in normal form with respect
// to their ring's rewrite relations.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalg/rational.hpp"
#include "qalg/ring.hpp"

namespace qalg {

class Poly {
 public:
  using TermMap = std::map<Exp, GaussRat>;

  Poly() = default;  // ring-less zero; only assignable
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }

  static Poly constant(RingPtr ring, GaussRat c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(Exp(p.ring_->arity(), 0), std::move(c));
    return p;
  }

  static Poly var(const RingPtr& ring, std::string_view name, int power = 1) {
    int idx = ring->index_of(name);
    if (idx < 0) throw std::invalid_argument("poly: unknown variable " + std::string(name));
    if (power < 0) throw std::invalid_argument("poly: negative power");
    Poly p(ring);
    Exp e(ring->arity(), 0);
    e[static_cast<size_t>(idx)] = power;
    p.terms_.emplace(std::move(e), GaussRat::one());
    p.reduce();
    return p;
  }

  static Poly from_raw(const RingPtr& ring, const RawPoly& raw) {
    Poly p(ring);
    for (const auto& t : raw) {
      if (t.exp.size() != ring->arity()) throw std::invalid_argument("poly: raw arity");
      p.add_term(t.exp, t.coeff);
    }
    p.reduce();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (auto e : terms_.begin()->first)
      if (e != 0) return false;
    return true;
  }

  GaussRat constant_value() const {
    if (terms_.empty()) return GaussRat::zero();
    if (!is_constant()) throw std::domain_error("poly: not a constant");
    return terms_.begin()->second;
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    reduce();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    reduce();
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    Poly r(a.ring_);
    Exp e(a.ring_ ? a.ring_->arity() : 0, 0);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    r.reduce();
    return r;
  }

  Poly& operator*=(const GaussRat& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v = v * c;
    return *this;
  }
  friend Poly operator*(Poly a, const GaussRat& c) { return a *= c; }
  friend Poly operator*(const GaussRat& c, Poly a) { return a *= c; }

  Poly pow(unsigned n) const {
    Poly acc = Poly::constant(ring_, GaussRat::one());
    Poly base(*this);
    while (n) {
      if (n & 1u) acc = acc * base;
      base = (n >>= 1) ? base * base : base;
    }
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.ring_.get() != b.ring_.get()) return false;
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  int degree_in(size_t var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  int min_degree_in(size_t var) const {
    if (terms_.empty()) return 0;
    int d = INT32_MAX;
    for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
    return d;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_of_kind(VarKind k) const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (size_t i = 0; i < e.size(); ++i)
        if (ring_->kind(i) == k) s += e[i];
      d = std::max(d, s);
    }
    return d;
  }
  int momentum_degree() const { return degree_of_kind(VarKind::Momentum); }

  const Exp& leading_exp() const {
    if (terms_.empty()) throw std::domain_error("poly: leading term of zero");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (ring_->grlex_less(best->first, it->first)) best = it;
    return best->first;
  }

  const GaussRat& leading_coeff() const { return terms_.at(leading_exp()); }

  // Multiply by var^k; k < 0 requires every term to carry at least -k powers.
  Poly shift_var(size_t var, int k) const {
    if (k == 0) return *this;
    Poly r(ring_);
    for (const auto& [e, c] : terms_) {
      Exp f = e;
      f[var] += k;
      if (f[var] < 0) throw std::domain_error("poly: negative exponent in shift");
      r.terms_.emplace(std::move(f), c);
    }
    r.reduce();
    return r;
  }

  // Formal partial derivative (no chain rule for chart/extension variables;
  // the chain-rule version lives with rational functions).
  Poly diff_formal(size_t var) const {
    Poly r(ring_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exp f = e;
      f[var] -= 1;
      r.add_term(f, c * GaussRat(e[var]));
    }
    r.reduce();
    return r;
  }

  GaussRat eval(const std::vector<GaussRat>& point) const {
    if (point.size() != ring_->arity()) throw std::invalid_argument("poly: eval arity");
    GaussRat acc;
    for (const auto& [e, c] : terms_) {
      GaussRat m = c;
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) m *= point[i];
      acc += m;
    }
    return acc;
  }

  double eval_double(const std::vector<double>& point) const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
      double m = c.re_double();  // numeric path is used on real data only
      for (size_t i = 0; i < e.size(); ++i) m *= std::pow(point[i], e[i]);
      acc += m;
    }
    return acc;
  }

  // Exact multivariate division attempt: returns true and sets q when
  // *this == q * d in the ring. Sound in quotient rings because every
  // intermediate product is reduced.  Divisions that cannot succeed are cut
  // short once the remainder balloons or the step count runs away, so a
  // failed attempt costs bounded time instead of grinding through huge
  // intermediate remainders.
  bool try_divide(const Poly& d, Poly& q) const {
    check_ring(d);
    if (d.is_zero()) return false;
    Poly rem(*this), quot(ring_);
    const Exp& dl = d.leading_exp();
    GaussRat dc = d.leading_coeff();
    const size_t size_cap = 8 * (term_count() + d.term_count()) + 64;
    size_t steps = 0;
    while (!rem.is_zero()) {
      if (rem.term_count() > size_cap || ++steps > 4096) return false;
      const Exp& rl = rem.leading_exp();
      Exp m(rl.size());
      for (size_t i = 0; i < rl.size(); ++i) {
        m[i] = rl[i] - dl[i];
        if (m[i] < 0) return false;
      }
      GaussRat c = rem.terms().at(rl) / dc;
      Poly mono(ring_);
      mono.terms_.emplace(std::move(m), c);
      mono.reduce();
      if (mono.is_zero()) return false;
      quot += mono;
      rem -= mono * d;
      // Guard: reduction in a quotient ring can in principle fail to shrink
      // the leading monomial; bail out rather than loop.
      if (!rem.is_zero() && !ring_->grlex_less(rem.leading_exp(), rl) && rem.leading_exp() == rl)
        return false;
    }
    q = std::move(quot);
    return true;
  }

  std::string str() const;  // defined in exprio

 private:
  friend class RatFn;
  friend struct PolyBuilder;

  void check_ring(const Poly& o) const {
    if (ring_.get() != o.ring_.get())
      throw std::invalid_argument("poly: ring mismatch");
  }

  void add_term(const Exp& e, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void reduce() {
    if (!ring_ || ring_->rules().empty()) return;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        const RewriteRule* rule = ring_->matching_rule(it->first);
        if (!rule) continue;
        Exp quotient(it->first.size());
        for (size_t i = 0; i < quotient.size(); ++i)
          quotient[i] = it->first[i] - rule->lhs[i];
        GaussRat coeff = it->second;
        terms_.erase(it);
        Exp e(quotient.size());
        for (const auto& t : rule->rhs) {
          for (size_t i = 0; i < e.size(); ++i) e[i] = quotient[i] + t.exp[i];
          add_term(e, coeff * t.coeff);
        }
        changed = true;
        break;
      }
    }
  }

  RingPtr ring_;
  TermMap terms_;
};

// --- factored denominator bases --------------------------------------------
// Given a family of monic denominators, split each into its monomial content
// and a monic primitive part, then refine the primitive parts against each
// other by exact division until none divides another.  The refined base
// usually exposes the shared factors, so a least common multiple of the
// family assembles from small cofactors instead of a product over all the
// distinct denominators.  Refinement is best-effort: factors it cannot split
// stay whole, which only makes the common multiple larger, never wrong.
class DenBasis {
 public:
  explicit DenBasis(RingPtr ring) : ring_(std::move(ring)) {}

  // Register a denominator; duplicates collapse onto one index.
  size_t add(const Poly& den) {
    for (size_t i = 0; i < dens_.size(); ++i)
      if (dens_[i] == den) return i;
    dens_.push_back(den);
    return dens_.size() - 1;
  }

  // Refine the base and factor every registered denominator.
  void build() {
    const size_t arity = ring_->arity();
    const size_t n = dens_.size();
    monos_.assign(n, Exp(arity, 0));
    std::vector<Poly> prims;
    prims.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      monos_[i] = monomial_content(dens_[i]);
      prims.push_back(strip_monomial(dens_[i], monos_[i]));
    }
    base_.clear();
    for (const Poly& p : prims)
      if (!p.is_constant()) note_base(p);
    refine();
    bexp_.assign(n, {});
    for (size_t i = 0; i < n; ++i) bexp_[i] = factor(prims[i]);
    for (auto& v : bexp_) v.resize(base_.size(), 0);
    mono_max_.assign(arity, 0);
    bmax_.assign(base_.size(), 0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t v = 0; v < arity; ++v)
        mono_max_[v] = std::max(mono_max_[v], monos_[i][v]);
      for (size_t b = 0; b < base_.size(); ++b)
        bmax_[b] = std::max(bmax_[b], bexp_[i][b]);
    }
    built_ = true;
  }

  // The common multiple divided by the i-th denominator, assembled from the
  // factors the i-th entry is missing.
  Poly cofactor(size_t i) const {
    require_built();
    Exp m(mono_max_.size());
    for (size_t v = 0; v < m.size(); ++v) m[v] = mono_max_[v] - monos_[i][v];
    Poly p = monomial(m);
    for (size_t b = 0; b < base_.size(); ++b)
      for (int k = bexp_[i][b]; k < bmax_[b]; ++k) p = p * base_[b];
    return p;
  }

  Poly common_multiple() const {
    require_built();
    Poly p = monomial(Exp(mono_max_.begin(), mono_max_.end()));
    for (size_t b = 0; b < base_.size(); ++b)
      for (int k = 0; k < bmax_[b]; ++k) p = p * base_[b];
    return p;
  }

 private:
  Poly monomial(const Exp& e) const {
    RawPoly raw;
    raw.push_back(RawTerm{e, GaussRat::one()});
    return Poly::from_raw(ring_, raw);
  }

  Exp monomial_content(const Poly& p) const {
    Exp m(ring_->arity(), 0);
    if (p.is_constant()) return m;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
      (void)c;
      for (size_t i = 0; i < m.size(); ++i)
        m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }

  // Quotient by a pure monomial.  Lowering exponents cannot enable a rewrite
  // rule that was not already enabled, so the result stays reduced.
  Poly strip_monomial(const Poly& p, const Exp& m) const {
    RawPoly raw;
    for (const auto& [e, c] : p.terms()) {
      Exp r(e.size());
      for (size_t i = 0; i < e.size(); ++i) r[i] = e[i] - m[i];
      raw.push_back(RawTerm{std::move(r), c});
    }
    return Poly::from_raw(ring_, raw);
  }

  void note_base(const Poly& p) {
    for (const Poly& q : base_)
      if (q == p) return;
    base_.push_back(p);
  }

  // Whenever one base element exactly divides another, replace the larger by
  // the cofactor.  Total degree strictly drops on every replacement, so the
  // loop terminates with a set where no element divides any other.
  void refine() {
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t i = 0; i < base_.size() && !changed; ++i)
        for (size_t j = 0; j < base_.size() && !changed; ++j) {
          if (i == j) continue;
          Poly q(ring_);
          if (base_[i].try_divide(base_[j], q) && !q.is_constant()) {
            base_[i] = std::move(q);
            changed = true;
          }
        }
      for (size_t i = 0; i < base_.size(); ++i)
        for (size_t j = base_.size(); j-- > i + 1;)
          if (base_[i] == base_[j]) {
            base_.erase(base_.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
          }
    }
  }

  // Exponents of a primitive part over the base; an unfactorable leftover
  // joins the base as a new element rather than failing.
  std::vector<int> factor(const Poly& prim) {
    std::vector<int> exps(base_.size(), 0);
    Poly rem = prim;
    for (size_t b = 0; b < base_.size() && !rem.is_constant(); ++b) {
      Poly q(ring_);
      while (rem.try_divide(base_[b], q)) {
        rem = std::move(q);
        ++exps[b];
        if (rem.is_constant()) break;
      }
    }
    if (!rem.is_constant()) {
      base_.push_back(rem);
      exps.push_back(1);
    }
    return exps;
  }

  void require_built() const {
    if (!built_) throw std::logic_error("den basis: build() not called");
  }

  RingPtr ring_;
  std::vector<Poly> dens_;
  std::vector<Exp> monos_;
  std::vector<Poly> base_;
  std::vector<std::vector<int>> bexp_;
  Exp mono_max_;
  std::vector<int> bmax_;
  bool built_ = false;
};

}  // namespace qalg
