#pragma once
// Rational functions over the polynomial layer, plus chain-rule
// differentiation and ring-consistency validation.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalg/poly.hpp"

namespace qalg {

class RatFn {
 public:
  RatFn() = default;
  explicit RatFn(Poly num) : num_(std::move(num)), den_(one_poly(num_.ring())) {}
  RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("ratfn: zero denominator");
    normalize();
  }

  static RatFn zero(const RingPtr& ring) { return RatFn(Poly::zero(ring)); }
  static RatFn constant(const RingPtr& ring, GaussRat c) {
    return RatFn(Poly::constant(ring, std::move(c)));
  }
  static RatFn var(const RingPtr& ring, std::string_view name, int power = 1) {
    if (power >= 0) return RatFn(Poly::var(ring, name, power));
    return RatFn(Poly::constant(ring, GaussRat::one()), Poly::var(ring, name, -power));
  }
  static RatFn from_raw(const RingPtr& ring, const RatRaw& raw) {
    Poly n = Poly::from_raw(ring, raw.num);
    Poly d = raw.den.empty() ? one_poly(ring) : Poly::from_raw(ring, raw.den);
    return RatFn(std::move(n), std::move(d));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_constant(); }

  Poly as_poly() const {
    if (!is_poly()) throw std::domain_error("ratfn: not polynomial");
    GaussRat c = den_.constant_value();
    return num_ * c.inverse();
  }

  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  GaussRat constant_value() const {
    return num_.constant_value() / den_.constant_value();
  }

  RatFn operator-() const {
    RatFn r(*this);
    r.num_ = -r.num_;
    return r;
  }

  // Addition works over a least common multiple of the two denominators
  // (factored via DenBasis) rather than their product; long chains of sums
  // would otherwise pile up denominator factors that plain reduction cannot
  // cancel again.
  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
    if (a.den_.is_constant() || b.den_.is_constant())
      return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    DenBasis basis(a.ring());
    basis.add(a.den_);
    basis.add(b.den_);
    basis.build();
    return RatFn(a.num_ * basis.cofactor(0) + b.num_ * basis.cofactor(1),
                 basis.common_multiple());
  }
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw std::domain_error("ratfn: division by zero");
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

  friend RatFn operator*(const RatFn& a, const GaussRat& c) {
    RatFn r(a);
    r.num_ *= c;
    if (r.num_.is_zero()) r.den_ = one_poly(a.ring());
    return r;
  }
  friend RatFn operator*(const GaussRat& c, const RatFn& a) { return a * c; }

  RatFn inverse() const {
    if (is_zero()) throw std::domain_error("ratfn: inverse of zero");
    return RatFn(den_, num_);
  }

  // Equality in the field of fractions of the (reduced) coordinate ring.
  friend bool operator==(const RatFn& a, const RatFn& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
  }
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

  // Chain-rule derivative with respect to a named symbol.  The symbol may be
  // a ring variable or an external chart parameter; per-variable derivatives
  // come from the ring's derivation table, with d(v)/d(v) = 1 fallback.
  RatFn diff(std::string_view symbol) const {
    RatFn dn = diff_poly(num_, symbol);
    RatFn dd = diff_poly(den_, symbol);
    // (n/d)' = (n' d - n d') / d^2
    return RatFn(dn.num_ * den_ * dd.den_ - dd.num_ * num_ * dn.den_,
                 dn.den_ * dd.den_ * den_ * den_);
  }

  static RatFn diff_poly(const Poly& p, std::string_view symbol) {
    const RingPtr& ring = p.ring();
    RatFn acc = RatFn::zero(ring);
    for (size_t i = 0; i < ring->arity(); ++i) {
      Poly partial = p.diff_formal(i);
      if (partial.is_zero()) continue;
      RatFn dv = var_derivative(ring, i, symbol);
      if (dv.is_zero()) continue;
      acc += RatFn(std::move(partial)) * dv;
    }
    return acc;
  }

  static RatFn var_derivative(const RingPtr& ring, size_t var, std::string_view symbol) {
    if (const RatRaw* entry = ring->derivation(var, symbol))
      return from_raw(ring, *entry);
    if (ring->name(var) == symbol) return constant(ring, GaussRat::one());
    return zero(ring);
  }

  GaussRat eval(const std::vector<GaussRat>& point) const {
    GaussRat d = den_.eval(point);
    if (d.is_zero()) throw std::domain_error("ratfn: pole at sample point");
    return num_.eval(point) / d;
  }

  double eval_double(const std::vector<double>& point) const {
    double d = den_.eval_double(point);
    return num_.eval_double(point) / d;
  }

  std::string str() const;  // defined in exprio

 private:
  static Poly one_poly(const RingPtr& ring) {
    return Poly::constant(ring, GaussRat::one());
  }

  void normalize() {
    const RingPtr& ring = num_.ring();
    if (num_.is_zero()) {
      den_ = one_poly(ring);
      return;
    }
    // Cancel shared monomial content in plain (relation-free) variables.
    for (size_t i = 0; i < ring->arity(); ++i) {
      if (!ring->content_cancellable(i)) continue;
      int k = std::min(num_.min_degree_in(i), den_.min_degree_in(i));
      if (k > 0) {
        num_ = num_.shift_var(i, -k);
        den_ = den_.shift_var(i, -k);
      }
    }
    // Collapse when the denominator divides the numerator exactly.
    if (!den_.is_constant()) {
      Poly q(ring);
      if (num_.try_divide(den_, q)) {
        num_ = std::move(q);
        den_ = one_poly(ring);
      }
    }
    // Scale so the denominator's leading coefficient is 1.
    GaussRat lc = den_.leading_coeff();
    if (!lc.is_one()) {
      GaussRat inv = lc.inverse();
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

// --- substitution ----------------------------------------------------------

// Substitute variables by rational functions in a target ring.  Variables not
// named in the map must exist in the target ring under the same name.
inline RatFn subst(const Poly& p, const std::map<std::string, RatFn>& repl,
                   const RingPtr& target) {
  const RingPtr& src = p.ring();
  std::vector<bool> used(src->arity(), false);
  for (const auto& [e, c] : p.terms())
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) used[i] = true;
  std::vector<RatFn> images(src->arity());
  for (size_t i = 0; i < src->arity(); ++i) {
    if (!used[i]) continue;
    std::string name(src->name(i));
    auto it = repl.find(name);
    if (it != repl.end()) {
      if (it->second.ring().get() != target.get())
        throw std::invalid_argument("subst: image not in target ring");
      images[i] = it->second;
    } else {
      if (target->index_of(name) < 0)
        throw std::invalid_argument("subst: no image for variable " + name);
      images[i] = RatFn::var(target, name);
    }
  }
  RatFn acc = RatFn::zero(target);
  for (const auto& [e, c] : p.terms()) {
    RatFn term = RatFn::constant(target, c);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term *= images[i];
    acc += term;
  }
  return acc;
}

inline RatFn subst(const RatFn& f, const std::map<std::string, RatFn>& repl,
                   const RingPtr& target) {
  RatFn d = subst(f.den(), repl, target);
  if (d.is_zero()) throw std::domain_error("subst: denominator vanishes");
  return subst(f.num(), repl, target) / d;
}

// --- ring validation -------------------------------------------------------

// Derivative of a single monomial without first reducing it, for checking
// that derivations are well defined on the quotient.
inline RatFn monomial_diff(const RingPtr& ring, const Exp& exp, std::string_view symbol) {
  RatFn acc = RatFn::zero(ring);
  for (size_t i = 0; i < exp.size(); ++i) {
    if (exp[i] == 0) continue;
    RatFn dv = RatFn::var_derivative(ring, i, symbol);
    if (dv.is_zero()) continue;
    Exp e = exp;
    e[i] -= 1;
    RawPoly mono{RawTerm{e, GaussRat(exp[i])}};
    acc += RatFn(Poly::from_raw(ring, mono)) * dv;
  }
  return acc;
}

// Checks that (a) the rewrite system is confluent (all critical pairs join)
// and (b) every tabulated derivation maps each relation into the ideal.
// Throws std::logic_error on failure.
inline void validate_ring(const RingPtr& ring) {
  const auto& rules = ring->rules();
  // (a) critical pairs: for each pair of rules, reduce the lcm monomial both
  // ways and demand equal normal forms.
  for (size_t a = 0; a < rules.size(); ++a) {
    for (size_t b = a + 1; b < rules.size(); ++b) {
      const Exp& la = rules[a].lhs;
      const Exp& lb = rules[b].lhs;
      bool overlap = false;
      Exp lcm(la.size());
      for (size_t i = 0; i < la.size(); ++i) {
        lcm[i] = std::max(la[i], lb[i]);
        if (la[i] > 0 && lb[i] > 0) overlap = true;
      }
      if (!overlap) continue;  // disjoint supports commute trivially
      auto route = [&](const RewriteRule& r) {
        Poly p = Poly::zero(ring);
        RawPoly shifted;
        for (const auto& t : r.rhs) {
          Exp e(lcm.size());
          for (size_t i = 0; i < e.size(); ++i) e[i] = lcm[i] - r.lhs[i] + t.exp[i];
          shifted.push_back(RawTerm{std::move(e), t.coeff});
        }
        return Poly::from_raw(ring, shifted);
      };
      if (!(route(rules[a]) == route(rules[b])))
        throw std::logic_error("ring validation: rewrite rules are not confluent");
    }
  }
  // (b) derivations: d(lhs) - d(rhs) must vanish in the quotient for every
  // independent direction.  Directions exist only when the ring registers a
  // derivation table (chart rings); rings whose relations are handled purely
  // through a bracket table (the sphere presentation) have none.  Extension
  // and chart variables are dependent functions, never directions.
  if (ring->derivations().empty()) return;
  std::vector<std::string> symbols = ring->derivation_symbols();
  for (size_t i = 0; i < ring->arity(); ++i) {
    VarKind k = ring->kind(i);
    if (k != VarKind::Position) continue;
    std::string n = ring->name(i);
    if (std::find(symbols.begin(), symbols.end(), n) == symbols.end())
      symbols.push_back(n);
  }
  for (const auto& r : rules) {
    Poly rhs = Poly::from_raw(ring, r.rhs);
    for (const auto& s : symbols) {
      RatFn dl = monomial_diff(ring, r.lhs, s);
      RatFn dr = RatFn::diff_poly(rhs, s);
      if (!(dl == dr))
        throw std::logic_error("ring validation: derivation breaks relation (symbol " + s + ")");
    }
  }
}

}  // namespace qalg
