#pragma once
// Expression text I/O: deterministic printing of polynomials and rational
// functions, and a recursive-descent parser for the shared expression grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | primary ('^' nat)?
//   primary:= integer | identifier | 'i' | 'd[' identifier ']' | '(' expr ')'
// Derivative symbols d[x] only have meaning inside the operator algebra; the
// classical evaluator rejects them.

#include <algorithm>
#include <cctype>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalg/ratfn.hpp"

namespace qalg {

// --- printing --------------------------------------------------------------

namespace detail {

// Variable permutation sorted by name, used so printed term order does not
// depend on declaration order.
inline std::vector<size_t> name_order(const RingPtr& ring) {
  std::vector<size_t> perm(ring->arity());
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::sort(perm.begin(), perm.end(),
            [&](size_t a, size_t b) { return ring->name(a) < ring->name(b); });
  return perm;
}

inline bool print_before(const Exp& a, const Exp& b, const std::vector<size_t>& perm) {
  int64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;  // higher degree first
  for (size_t i : perm) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

inline std::string monomial_str(const RingPtr& ring, const Exp& e,
                                const std::vector<size_t>& perm) {
  std::string out;
  for (size_t i : perm) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring->name(i);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace detail

inline std::string print_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  const RingPtr& ring = p.ring();
  auto perm = detail::name_order(ring);
  std::vector<const std::pair<const Exp, GaussRat>*> terms;
  terms.reserve(p.term_count());
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
    return detail::print_before(a->first, b->first, perm);
  });

  std::string out;
  bool first = true;
  for (auto* t : terms) {
    const GaussRat& c = t->second;
    std::string mono = detail::monomial_str(ring, t->first, perm);
    GaussRat mag = c;
    bool negative = false;
    if (c.is_real()) {
      negative = c.re() < 0;
      if (negative) mag = -c;
    } else if (c.re() == 0) {
      negative = c.im() < 0;
      if (negative) mag = -c;
    }
    std::string cs = mag.str();
    bool needs_paren = !(mag.is_real() || mag.re() == 0);
    std::string piece;
    if (mono.empty()) {
      piece = needs_paren ? "(" + cs + ")" : cs;
    } else if (mag.is_one()) {
      piece = mono;
    } else {
      piece = (needs_paren ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + piece : piece;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += piece;
    }
  }
  return out;
}

inline std::string print_ratfn(const RatFn& f) {
  if (f.is_poly()) return print_poly(f.as_poly());
  const Poly& n = f.num();
  const Poly& d = f.den();
  std::string ns = print_poly(n);
  bool n_paren = n.term_count() > 1 || ns.find(" - ") != std::string::npos ||
                 (!ns.empty() && ns[0] == '-') || ns.find('/') != std::string::npos;
  // Denominator may stay bare only for a single power of a single variable
  // (then '^' binds tighter than '/').
  bool d_bare = false;
  if (d.term_count() == 1) {
    const auto& [e, c] = *d.terms().begin();
    int nz = 0;
    for (auto x : e) nz += (x != 0);
    d_bare = (nz == 1 && c.is_one());
  }
  std::string ds = print_poly(d);
  std::string out = n_paren ? "(" + ns + ")" : ns;
  out += "/";
  out += d_bare ? ds : "(" + ds + ")";
  return out;
}

inline std::string Poly::str() const { return print_poly(*this); }
inline std::string RatFn::str() const { return print_ratfn(*this); }

// --- parsing ---------------------------------------------------------------

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
  size_t offset;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Integer, Ident, ImagUnit, Deriv, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind;
  std::string text;  // integer digits or identifier name
  int exponent = 0;  // for Pow
  ExprPtr a, b;
  size_t offset = 0;  // source byte offset, for diagnostics
};

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        char op = take();
        ExprPtr rhs = parse_term();
        lhs = node(op == '+' ? ExprNode::Kind::Add : ExprNode::Kind::Sub, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '*' || peek() == '/') {
        char op = take();
        ExprPtr rhs = parse_factor();
        lhs = node(op == '*' ? ExprNode::Kind::Mul : ExprNode::Kind::Div, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_factor() {
    skip_ws();
    if (peek() == '-') {
      size_t off = pos_;
      take();
      ExprPtr inner = parse_factor();
      auto n = node(ExprNode::Kind::Neg, inner, nullptr);
      const_cast<ExprNode*>(n.get())->offset = off;
      return n;
    }
    ExprPtr base = parse_primary();
    skip_ws();
    if (peek() == '^') {
      size_t off = pos_;
      take();
      skip_ws();
      if (!std::isdigit(peek())) throw ParseError("expected integer exponent", pos_);
      long e = 0;
      while (std::isdigit(peek())) {
        e = e * 10 + (take() - '0');
        if (e > 512) throw ParseError("exponent too large", off);
      }
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Pow;
      n->a = base;
      n->exponent = static_cast<int>(e);
      n->offset = off;
      return n;
    }
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    size_t off = pos_;
    char c = peek();
    if (c == '(') {
      take();
      ExprPtr e = parse_expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      take();
      return e;
    }
    if (std::isdigit(c)) {
      std::string digits;
      while (std::isdigit(peek())) digits.push_back(take());
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Integer;
      n->text = digits;
      n->offset = off;
      return n;
    }
    if (std::isalpha(c) || c == '_') {
      std::string name;
      while (std::isalnum(peek()) || peek() == '_' || peek() == '\'')
        name.push_back(take());
      if (name == "d" && peek() == '[') {
        take();
        skip_ws();
        std::string var;
        while (std::isalnum(peek()) || peek() == '_') var.push_back(take());
        skip_ws();
        if (var.empty() || peek() != ']')
          throw ParseError("malformed derivative token", pos_);
        take();
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::Deriv;
        n->text = var;
        n->offset = off;
        return n;
      }
      auto n = std::make_shared<ExprNode>();
      n->kind = name == "i" ? ExprNode::Kind::ImagUnit : ExprNode::Kind::Ident;
      n->text = name;
      n->offset = off;
      return n;
    }
    throw ParseError("unexpected character", pos_);
  }

  static ExprPtr node(ExprNode::Kind k, ExprPtr a, ExprPtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    if (n->a) n->offset = n->a->offset;
    return n;
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char take() { return src_[pos_++]; }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
};

inline ExprPtr parse_expr_tree(std::string_view src) { return ExprParser(src).parse(); }

// Evaluate an expression tree to a rational function over `ring`, resolving
// identifiers through `lookup` first (for model-bound names like J), then as
// ring variables.  Derivative tokens are rejected here.
inline RatFn eval_expr(const ExprPtr& e, const RingPtr& ring,
                       const std::map<std::string, RatFn>& lookup = {}) {
  switch (e->kind) {
    case ExprNode::Kind::Integer:
      return RatFn::constant(ring, GaussRat(mpq_class(e->text)));
    case ExprNode::Kind::ImagUnit:
      return RatFn::constant(ring, GaussRat::i());
    case ExprNode::Kind::Ident: {
      auto it = lookup.find(e->text);
      if (it != lookup.end()) {
        if (it->second.ring().get() != ring.get())
          throw std::invalid_argument("eval: binding in wrong ring for " + e->text);
        return it->second;
      }
      if (ring->index_of(e->text) < 0)
        throw ParseError("unknown identifier '" + e->text + "'", e->offset);
      return RatFn::var(ring, e->text);
    }
    case ExprNode::Kind::Deriv:
      throw ParseError("derivative token outside operator algebra", e->offset);
    case ExprNode::Kind::Add:
      return eval_expr(e->a, ring, lookup) + eval_expr(e->b, ring, lookup);
    case ExprNode::Kind::Sub:
      return eval_expr(e->a, ring, lookup) - eval_expr(e->b, ring, lookup);
    case ExprNode::Kind::Mul:
      return eval_expr(e->a, ring, lookup) * eval_expr(e->b, ring, lookup);
    case ExprNode::Kind::Div: {
      RatFn d = eval_expr(e->b, ring, lookup);
      if (d.is_zero()) throw ParseError("division by zero", e->b->offset);
      return eval_expr(e->a, ring, lookup) / d;
    }
    case ExprNode::Kind::Pow: {
      RatFn b = eval_expr(e->a, ring, lookup);
      RatFn acc = RatFn::constant(ring, GaussRat::one());
      for (int k = 0; k < e->exponent; ++k) acc *= b;
      return acc;
    }
    case ExprNode::Kind::Neg:
      return -eval_expr(e->a, ring, lookup);
  }
  throw std::logic_error("eval: unreachable");
}

inline RatFn parse_ratfn(std::string_view src, const RingPtr& ring,
                         const std::map<std::string, RatFn>& lookup = {}) {
  return eval_expr(parse_expr_tree(src), ring, lookup);
}

}  // namespace qalg
