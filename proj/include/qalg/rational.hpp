#pragma once
// Exact complex-rational scalars: a + b*i with arbitrary-precision rational a, b.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qalg {

// Element of Q(i). Components are always canonicalized (lowest terms,
// positive denominator) -- mpq_class guarantees this after canonicalize().
class GaussRat {
 public:
  GaussRat() : re_(0), im_(0) {}
  GaussRat(long n) : re_(n), im_(0) {}
  GaussRat(long num, long den) : re_(num, den), im_(0) { re_.canonicalize(); }
  explicit GaussRat(const mpq_class& re) : re_(re), im_(0) {}
  GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRat zero() { return GaussRat(); }
  static GaussRat one() { return GaussRat(1); }
  static GaussRat i() { return GaussRat(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

  GaussRat operator-() const { return GaussRat(-re_, -im_); }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
  // Total order for deterministic containers/printing only (not a field order).
  friend bool operator<(const GaussRat& a, const GaussRat& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  GaussRat inverse() const {
    if (is_zero()) throw std::domain_error("GaussRat: division by zero");
    mpq_class n = re_ * re_ + im_ * im_;
    return GaussRat(re_ / n, -im_ / n);
  }

  GaussRat conj() const { return GaussRat(re_, -im_); }

  // Exact conversion to double (used only by the numeric trajectory oracle).
  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

  // Lossless text form: "p/q", "r/s*i", or "p/q+r/s*i" (minus signs folded in).
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out += rat_str(re_);
    if (im_ != 0) {
      if (im_ > 0 && !out.empty()) out += "+";
      if (im_ == 1)
        out += out.empty() ? "i" : "i";
      else if (im_ == -1)
        out += "-i";
      else
        out += rat_str(im_) + "*i";
    }
    return out;
  }

  // Parses the str() grammar. Accepts "3", "-3/2", "i", "-i", "2*i", "1/2+3/4*i".
  static std::optional<GaussRat> parse(std::string_view s);

 private:
  static std::string rat_str(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
  }

  mpq_class re_, im_;
};

inline std::optional<GaussRat> GaussRat::parse(std::string_view s) {
  // Splits on a top-level '+' or '-' (not the leading sign) into real and
  // imaginary pieces; each piece is [sign]digits[/digits][*i] or [sign]i.
  auto parse_piece = [](std::string_view p, bool& is_imag) -> std::optional<mpq_class> {
    is_imag = false;
    if (p.empty()) return std::nullopt;
    std::string body(p);
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "*i") == 0) {
      is_imag = true;
      body.resize(body.size() - 2);
    } else if (!body.empty() && body.back() == 'i') {
      is_imag = true;
      body.pop_back();
      if (body.empty() || body == "-" || body == "+") body += "1";
    }
    if (body.empty()) return std::nullopt;
    for (size_t k = 0; k < body.size(); ++k) {
      char c = body[k];
      bool ok = (c >= '0' && c <= '9') || c == '/' || (k == 0 && (c == '-' || c == '+'));
      if (!ok) return std::nullopt;
    }
    if (body[0] == '+') body.erase(0, 1);  // GMP rejects a leading '+'
    if (body.empty() || body.back() == '/' || body.find("/-") != std::string::npos)
      return std::nullopt;
    try {
      mpq_class q(body);
      q.canonicalize();
      return q;
    } catch (...) {
      return std::nullopt;
    }
  };

  size_t split = std::string_view::npos;
  for (size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '*' && s[k - 1] != '/') {
      split = k;  // keep scanning: the last top-level sign starts the imag part
    }
  }
  bool imag_flag = false;
  if (split == std::string_view::npos) {
    auto q = parse_piece(s, imag_flag);
    if (!q) return std::nullopt;
    return imag_flag ? GaussRat(mpq_class(0), *q) : GaussRat(*q);
  }
  auto first = parse_piece(s.substr(0, split), imag_flag);
  if (!first || imag_flag) {
    // A single piece that merely contains a sign (e.g. "-3/4*i") parses whole.
    auto whole = parse_piece(s, imag_flag);
    if (!whole) return std::nullopt;
    return imag_flag ? GaussRat(mpq_class(0), *whole) : GaussRat(*whole);
  }
  bool second_imag = false;
  std::string_view rest = s.substr(split);
  auto second = parse_piece(rest, second_imag);
  if (!second || !second_imag) return std::nullopt;
  return GaussRat(*first, *second);
}

}  // namespace qalg
