#pragma once
// Variable rings with optional rewrite relations (quotient rings), registered
// derivations for chart/extension variables, and a graded-lex monomial order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qalg/rational.hpp"

namespace qalg {

enum class VarKind : uint8_t {
  Position,   // chart coordinates appearing in catalog expressions (x, y, s1...)
  Momentum,   // p1, p2, J, J1..J3, p_psi, ...
  Parameter,  // a1..a4, b, c1, c2, alpha...
  Chart,      // transcendental chart functions: ch, sh, cphi, sphi
  Extension,  // quadratic extension variables (r with r^2 = x^2+y^2, ...)
  Delta,      // the contraction parameter
};

using Exp = std::vector<int32_t>;

struct RawTerm {
  Exp exp;
  GaussRat coeff;
};
using RawPoly = std::vector<RawTerm>;

// Rational expression in raw form (used in rule/derivation tables before the
// ring object exists). Empty den means 1.
struct RatRaw {
  RawPoly num;
  RawPoly den;
};

// Monomial rewrite rule: any term divisible by `lhs` is rewritten through
// `rhs`. Validity (strict monomial decrease, confluence) is checked when the
// ring is built.
struct RewriteRule {
  Exp lhs;
  RawPoly rhs;
};

class RingCtx;
using RingPtr = std::shared_ptr<const RingCtx>;

class RingCtx : public std::enable_shared_from_this<RingCtx> {
 public:
  struct VarDecl {
    std::string name;
    VarKind kind;
  };

  // Derivation table entry: d(ring variable)/d(symbol). Symbols may be ring
  // variables (extension case: d r / d x) or external chart parameters
  // (d ch / d psi). Untabulated pairs fall back to the Kronecker rule.
  struct DerivEntry {
    std::string var;     // ring variable being differentiated
    std::string symbol;  // differentiation symbol
    RatRaw value;
  };

  static RingPtr make(std::vector<VarDecl> vars, std::vector<RewriteRule> rules = {},
                      std::vector<DerivEntry> derivs = {});

  size_t arity() const { return vars_.size(); }
  const std::string& name(size_t i) const { return vars_[i].name; }
  VarKind kind(size_t i) const { return vars_[i].kind; }
  int index_of(std::string_view n) const {
    auto it = index_.find(std::string(n));
    return it == index_.end() ? -1 : static_cast<int>(it->second);
  }
  bool has_var(std::string_view n) const { return index_of(n) >= 0; }

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const std::vector<DerivEntry>& derivations() const { return derivs_; }

  // Distinct differentiation symbols appearing in the table.
  std::vector<std::string> derivation_symbols() const {
    std::vector<std::string> out;
    for (const auto& d : derivs_)
      if (std::find(out.begin(), out.end(), d.symbol) == out.end())
        out.push_back(d.symbol);
    return out;
  }

  // Graded lexicographic: total degree first, then lexicographic with the
  // ring's variable 0 most significant. Constrained variables are declared
  // first so every rewrite strictly decreases.
  bool grlex_less(const Exp& a, const Exp& b) const {
    int64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }

  const RewriteRule* matching_rule(const Exp& e) const {
    for (const auto& r : rules_) {
      bool div = true;
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] < r.lhs[i]) {
          div = false;
          break;
        }
      if (div) return &r;
    }
    return nullptr;
  }

  const RatRaw* derivation(size_t var_index, std::string_view symbol) const {
    for (const auto& d : deriv_compiled_)
      if (d.first == var_index && derivs_[d.second].symbol == symbol)
        return &derivs_[d.second].value;
    return nullptr;
  }

  // True when the variable may be cancelled as common monomial content of a
  // fraction: unconstrained kinds never divide zero in our quotient domains.
  bool content_cancellable(size_t i) const { return cancellable_[i]; }

  // Structural identity; all cross-ring operations require pointer equality.
  bool same(const RingCtx& o) const { return this == &o; }

 private:
  RingCtx() = default;
  friend void validate_ring(const RingPtr&);  // defined with Poly available

  std::vector<VarDecl> vars_;
  std::map<std::string, size_t> index_;
  std::vector<RewriteRule> rules_;
  std::vector<DerivEntry> derivs_;
  std::vector<std::pair<size_t, size_t>> deriv_compiled_;  // (var index, table index)
  std::vector<bool> cancellable_;
};

inline RingPtr RingCtx::make(std::vector<VarDecl> vars, std::vector<RewriteRule> rules,
                             std::vector<DerivEntry> derivs) {
  auto ring = std::shared_ptr<RingCtx>(new RingCtx());
  ring->vars_ = std::move(vars);
  for (size_t i = 0; i < ring->vars_.size(); ++i) {
    if (!ring->index_.emplace(ring->vars_[i].name, i).second)
      throw std::invalid_argument("ring: duplicate variable " + ring->vars_[i].name);
  }
  ring->rules_ = std::move(rules);
  ring->derivs_ = std::move(derivs);
  for (const auto& r : ring->rules_) {
    if (r.lhs.size() != ring->arity())
      throw std::invalid_argument("ring: rule arity mismatch");
    for (const auto& t : r.rhs)
      if (t.exp.size() != ring->arity())
        throw std::invalid_argument("ring: rule replacement arity mismatch");
    for (const auto& t : r.rhs)
      if (!ring->grlex_less(t.exp, r.lhs))
        throw std::invalid_argument("ring: rewrite rule does not decrease");
  }
  for (size_t di = 0; di < ring->derivs_.size(); ++di) {
    int vi = ring->index_of(ring->derivs_[di].var);
    if (vi < 0) throw std::invalid_argument("ring: derivation of unknown variable");
    ring->deriv_compiled_.emplace_back(static_cast<size_t>(vi), di);
  }
  ring->cancellable_.assign(ring->arity(), false);
  for (size_t i = 0; i < ring->arity(); ++i) {
    VarKind k = ring->kind(i);
    bool plain = k == VarKind::Position || k == VarKind::Momentum ||
                 k == VarKind::Parameter || k == VarKind::Delta;
    bool in_lhs = false;
    for (const auto& r : ring->rules_)
      if (r.lhs[i] > 0) in_lhs = true;
    ring->cancellable_[i] = plain && !in_lhs;
  }
  return ring;
}

}  // namespace qalg
