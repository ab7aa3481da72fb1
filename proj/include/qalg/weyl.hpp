#pragma once
// Noncommutative algebra of linear differential operators with rational
// function coefficients: composition by the Leibniz rule, commutators,
// symmetrizers, formal adjoints, and principal symbols.
//
// An operator is a finite sum  sum_alpha  f_alpha(q) * d^alpha  over a fixed
// list of base symbols q (2 for planar charts, 3 for the ambient sphere
// algebra).  On the sphere the coefficient ring reduces mod s.s - 1; this is
// consistent exactly because every operator we form is generated by the
// tangent vector fields J_i and multiplications, which preserve that ideal.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalg/ratfn.hpp"

namespace qalg {

class WeylOp {
 public:
  using DExp = std::vector<int32_t>;

  WeylOp() = default;
  WeylOp(RingPtr ring, std::vector<std::string> base)
      : ring_(std::move(ring)), base_(std::move(base)) {}

  static WeylOp zero(const RingPtr& ring, const std::vector<std::string>& base) {
    return WeylOp(ring, base);
  }
  static WeylOp identity(const RingPtr& ring, const std::vector<std::string>& base) {
    WeylOp w(ring, base);
    w.add(DExp(base.size(), 0), RatFn::constant(ring, GaussRat(1)));
    return w;
  }
  static WeylOp mult(const RingPtr& ring, const std::vector<std::string>& base, RatFn f) {
    WeylOp w(ring, base);
    w.add(DExp(base.size(), 0), std::move(f));
    return w;
  }
  // d / d base[i]
  static WeylOp deriv(const RingPtr& ring, const std::vector<std::string>& base, size_t i,
                      int power = 1) {
    WeylOp w(ring, base);
    DExp e(base.size(), 0);
    e[i] = power;
    w.add(std::move(e), RatFn::constant(ring, GaussRat(1)));
    return w;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<std::string>& base() const { return base_; }
  const std::map<DExp, RatFn>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int order() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  WeylOp operator-() const {
    WeylOp r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  WeylOp& operator+=(const WeylOp& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  WeylOp& operator-=(const WeylOp& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }

  friend WeylOp operator*(const GaussRat& c, const WeylOp& a) {
    WeylOp r(a);
    for (auto& [e, v] : r.terms_) v = v * c;
    if (c.is_zero()) r.terms_.clear();
    return r;
  }
  friend WeylOp operator*(const RatFn& c, const WeylOp& a) {
    WeylOp r(a.ring_, a.base_);
    for (const auto& [e, v] : a.terms_) r.add(e, c * v);
    return r;
  }

  // Composition by the Leibniz rule:
  //   (f d^a)(g d^b) = sum_{c<=a} prod_i C(a_i,c_i) * f * d^c(g) * d^{a-c+b}.
  friend WeylOp operator*(const WeylOp& A, const WeylOp& B) {
    A.check(B);
    WeylOp r(A.ring_, A.base_);
    for (const auto& [ea, fa] : A.terms_) {
      for (const auto& [eb, gb] : B.terms_) {
        DExp c(ea.size(), 0);
        A.leibniz(r, ea, fa, eb, gb, c, 0, GaussRat(1));
      }
    }
    return r;
  }
  WeylOp& operator*=(const WeylOp& o) { return *this = *this * o; }

  friend bool operator==(const WeylOp& a, const WeylOp& b) {
    if (a.ring_.get() != b.ring_.get()) return false;
    return (a - b).is_zero();
  }
  friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a == b); }

  // Apply to a function of the base variables.
  RatFn apply(const RatFn& f) const {
    RatFn acc = RatFn::zero(ring_);
    for (const auto& [e, c] : terms_) {
      RatFn g = f;
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) g = g.diff(base_[i]);
      acc += c * g;
    }
    return acc;
  }

  // Formal adjoint: (f d^alpha)^t = (-1)^{|alpha|} d^alpha o (f .).
  WeylOp adjoint() const {
    WeylOp acc(ring_, base_);
    for (const auto& [e, c] : terms_) {
      WeylOp piece = mult(ring_, base_, c);
      int total = 0;
      for (size_t i = 0; i < e.size(); ++i) {
        total += e[i];
        if (e[i] > 0) piece = deriv(ring_, base_, i, e[i]) * piece;
      }
      acc += (total % 2 == 0) ? piece : -piece;
    }
    return acc;
  }

  // Principal symbol: top-order terms with d^alpha replaced by the named
  // momentum monomials in a target ring containing the coefficients.
  RatFn principal_symbol(const RingPtr& target, const std::vector<std::string>& momenta,
                         const std::map<std::string, RatFn>& coeff_map = {}) const {
    if (momenta.size() != base_.size())
      throw std::invalid_argument("symbol: momentum list size mismatch");
    int top = order();
    RatFn acc = RatFn::zero(target);
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto k : e) s += k;
      if (s != top) continue;
      RatFn term = subst(c, coeff_map, target);
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term *= RatFn::var(target, momenta[i]);
      acc += term;
    }
    return acc;
  }

 private:
  void check(const WeylOp& o) const {
    if (ring_.get() != o.ring_.get() || base_ != o.base_)
      throw std::invalid_argument("weyl: operator algebra mismatch");
  }

  void add(DExp e, RatFn c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void leibniz(WeylOp& out, const DExp& ea, const RatFn& fa, const DExp& eb,
               const RatFn& gb, DExp& c, size_t i, GaussRat binom) const {
    if (i == ea.size()) {
      RatFn g = gb;
      for (size_t k = 0; k < c.size(); ++k)
        for (int t = 0; t < c[k]; ++t) g = g.diff(base_[k]);
      if (g.is_zero()) return;
      DExp e(ea.size());
      for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] - c[k] + eb[k];
      out.add(std::move(e), binom * fa * g);
      return;
    }
    long choose = 1;
    for (int ci = 0; ci <= ea[i]; ++ci) {
      c[i] = ci;
      leibniz(out, ea, fa, eb, gb, c, i + 1, binom * GaussRat(choose));
      choose = choose * (ea[i] - ci) / (ci + 1);
    }
    c[i] = 0;
  }

  RingPtr ring_;
  std::vector<std::string> base_;
  std::map<DExp, RatFn> terms_;
};

inline WeylOp commutator(const WeylOp& a, const WeylOp& b) { return a * b - b * a; }

// Two-operator symmetrizer {A,B} = AB + BA.
inline WeylOp sym2(const WeylOp& a, const WeylOp& b) { return a * b + b * a; }

// Six-term symmetrizer of three operators.
inline WeylOp sym3(const WeylOp& a, const WeylOp& b, const WeylOp& c) {
  return a * b * c + a * c * b + b * a * c + b * c * a + c * a * b + c * b * a;
}

// --- quantum model algebras ------------------------------------------------

// Differential-operator algebra attached to a phase-space chart: the flat
// plane uses base (x, y); the sphere uses the ambient base (s1, s2, s3) with
// coefficients in C[s]/(s.s - 1) and rotation fields J_i as generators.
struct OperatorAlgebra {
  RingPtr ring;                    // coefficient ring
  std::vector<std::string> base;   // differentiation symbols
  std::map<std::string, WeylOp> generators;

  WeylOp zero() const { return WeylOp::zero(ring, base); }
  WeylOp identity() const { return WeylOp::identity(ring, base); }
  WeylOp d(size_t i, int p = 1) const { return WeylOp::deriv(ring, base, i, p); }
  WeylOp mul(const RatFn& f) const { return WeylOp::mult(ring, base, f); }
  WeylOp mul(std::string_view expr) const {
    return WeylOp::mult(ring, base, parse_ratfn(expr, ring));
  }
  const WeylOp& gen(const std::string& n) const {
    auto it = generators.find(n);
    if (it == generators.end()) throw std::invalid_argument("no generator " + n);
    return it->second;
  }
};

// Flat chart operators over x, y and the given parameters.
inline OperatorAlgebra flat_operator_algebra(const std::vector<std::string>& params) {
  OperatorAlgebra A;
  std::vector<RingCtx::VarDecl> vars = {{"x", VarKind::Position}, {"y", VarKind::Position}};
  for (const auto& p : params) vars.push_back({p, VarKind::Parameter});
  A.ring = RingCtx::make(std::move(vars));
  A.base = {"x", "y"};
  return A;
}

// Ambient sphere operators: coefficients in C[s1,s2,s3]/(s.s-1), rotation
// vector fields J1 = s2 d3 - s3 d2 (cyclic).
inline OperatorAlgebra sphere_operator_algebra(const std::vector<std::string>& params) {
  OperatorAlgebra A;
  std::vector<RingCtx::VarDecl> vars = {
      {"s3", VarKind::Position}, {"s1", VarKind::Position}, {"s2", VarKind::Position}};
  for (const auto& p : params) vars.push_back({p, VarKind::Parameter});
  size_t n = vars.size();
  Exp lhs(n, 0);
  lhs[0] = 2;
  auto mono = [n](size_t i, int e, long c) {
    Exp ex(n, 0);
    ex[i] = e;
    return RawTerm{std::move(ex), GaussRat(c)};
  };
  RawPoly rhs = {RawTerm{Exp(n, 0), GaussRat(1)}, mono(1, 2, -1), mono(2, 2, -1)};
  A.ring = RingCtx::make(std::move(vars), {RewriteRule{lhs, rhs}});
  A.base = {"s1", "s2", "s3"};
  auto s = [&](int i) { return RatFn::var(A.ring, "s" + std::to_string(i)); };
  // J1 = s2 d3 - s3 d2, J2 = s3 d1 - s1 d3, J3 = s1 d2 - s2 d1
  A.generators.emplace("J1", A.mul(s(2)) * A.d(2) - A.mul(s(3)) * A.d(1));
  A.generators.emplace("J2", A.mul(s(3)) * A.d(0) - A.mul(s(1)) * A.d(2));
  A.generators.emplace("J3", A.mul(s(1)) * A.d(1) - A.mul(s(2)) * A.d(0));
  return A;
}

}  // namespace qalg
