#pragma once

// Bivariate polynomials over Q with a small recursive-descent parser for the
// curve-file syntax: integer or a/b coefficients, variables x and y, the
// operators + - * ^ and parentheses.  Multiplication is always explicit.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wahllab/jet.hpp"
#include "wahllab/rational.hpp"

namespace wahllab {

class Poly2 {
 public:
  Poly2() = default;

  static Poly2 constant(const Rat& c) {
    Poly2 p;
    p.add_term(0, 0, c);
    return p;
  }
  static Poly2 var_x() {
    Poly2 p;
    p.add_term(1, 0, Rat(1));
    return p;
  }
  static Poly2 var_y() {
    Poly2 p;
    p.add_term(0, 1, Rat(1));
    return p;
  }

  void add_term(int dx, int dy, const Rat& c) {
    if (dx < 0 || dy < 0) throw OutOfRange("negative exponent");
    if (is_zero(c)) return;
    auto key = std::make_pair(dx, dy);
    auto it = t_.find(key);
    if (it == t_.end()) {
      t_.emplace(key, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) t_.erase(it);
    }
  }

  Rat coeff(int dx, int dy) const {
    auto it = t_.find(std::make_pair(dx, dy));
    return it == t_.end() ? Rat(0) : it->second;
  }

  bool is_zero_poly() const { return t_.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e.first + e.second);
    return d;  // -1 for the zero polynomial
  }
  int deg_x() const {
    int d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e.first);
    return d;
  }
  int deg_y() const {
    int d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e.second);
    return d;
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 out = a;
    for (const auto& [e, c] : b.t_) out.add_term(e.first, e.second, c);
    return out;
  }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) {
    Poly2 out = a;
    for (const auto& [e, c] : b.t_) out.add_term(e.first, e.second, -c);
    return out;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_)
        out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return out;
  }
  Poly2 pow(int e) const {
    if (e < 0) throw OutOfRange("negative exponent");
    Poly2 out = constant(Rat(1));
    for (int i = 0; i < e; ++i) out = out * (*this);
    return out;
  }

  Poly2 partial_x() const {
    Poly2 out;
    for (const auto& [e, c] : t_)
      if (e.first > 0) out.add_term(e.first - 1, e.second, c * Rat(e.first));
    return out;
  }
  Poly2 partial_y() const {
    Poly2 out;
    for (const auto& [e, c] : t_)
      if (e.second > 0) out.add_term(e.first, e.second - 1, c * Rat(e.second));
    return out;
  }

  Rat eval(const Rat& x, const Rat& y) const {
    // Horner in y, coefficients evaluated by Horner in x.
    Rat acc(0);
    for (int b = deg_y(); b >= 0; --b) {
      Rat cb(0);
      for (int a = deg_x(); a >= 0; --a) cb = cb * x + coeff(a, b);
      acc = acc * y + cb;
    }
    return acc;
  }

  // Substitute jets for both variables (used by branch expansion).
  JetQ eval_at(const JetQ& X, const JetQ& Y) const {
    int n = std::min(X.order(), Y.order());
    JetQ acc = JetQ::zero(n);
    for (int b = deg_y(); b >= 0; --b) {
      JetQ cb = JetQ::zero(n);
      for (int a = deg_x(); a >= 0; --a) {
        cb = jet_mul_trunc(cb, X, n);
        Rat c = coeff(a, b);
        if (!is_zero(c)) cb.coeff_mut(0) += c;
      }
      acc = jet_mul_trunc(acc, Y, n) + cb;
    }
    return acc;
  }

  bool univariate_in_x() const { return deg_y() == 0; }

  std::vector<Rat> x_coeffs() const {
    internal_check(univariate_in_x(), "polynomial is not univariate in x");
    std::vector<Rat> out(static_cast<size_t>(deg_x()) + 1, Rat(0));
    for (const auto& [e, c] : t_) out[e.first] = c;
    return out;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    // map iteration order: ascending (dx, dy)
    for (const auto& [e, c] : t_) {
      if (!s.empty()) s += " + ";
      std::string term = rat_str(c);
      if (e.first > 0) term += "*x^" + std::to_string(e.first);
      if (e.second > 0) term += "*y^" + std::to_string(e.second);
      s += term;
    }
    return s;
  }

  static Poly2 parse(const std::string& text);

 private:
  std::map<std::pair<int, int>, Rat> t_;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  Poly2 run() {
    Poly2 p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  Poly2 expr() {
    Poly2 acc = term();
    for (;;) {
      skip_ws();
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  Poly2 term() {
    Poly2 acc = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) acc = acc * factor();
      else return acc;
    }
  }

  Poly2 factor() {
    skip_ws();
    if (accept('-')) return Poly2::constant(Rat(-1)) * factor();
    Poly2 b = base();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      long e = integer_literal();
      return b.pow(static_cast<int>(e));
    }
    return b;
  }

  Poly2 base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly2 inner = expr();
      skip_ws();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (c == 'x') { ++pos_; return Poly2::var_x(); }
    if (c == 'y') { ++pos_; return Poly2::var_y(); }
    if (c >= '0' && c <= '9') return Poly2::constant(rational_literal());
    fail(std::string("unexpected character '") + c + "'");
    return Poly2();  // unreachable
  }

  Rat rational_literal() {
    Int num = digits();
    if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
        s_[pos_ + 1] >= '0' && s_[pos_ + 1] <= '9') {
      ++pos_;
      Int den = digits();
      if (sgn(den) == 0) fail("zero denominator");
      return make_rat(num, den);
    }
    return Rat(num);
  }

  long integer_literal() {
    if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '9')
      fail("exponent must be a non-negative integer");
    Int d = digits();
    if (!d.fits_slong_p() || d.get_si() > 1000) fail("exponent too large");
    return d.get_si();
  }

  Int digits() {
    size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail("expected digits");
    return Int(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("polynomial parse error at position " +
                     std::to_string(pos_) + ": " + why);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Poly2 Poly2::parse(const std::string& text) {
  return detail::PolyParser(text).run();
}

// Univariate helpers over Q, used for squarefreeness checks.

inline std::vector<Rat> upoly_trim(std::vector<Rat> p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
  return p;
}

inline std::vector<Rat> upoly_derivative(const std::vector<Rat>& p) {
  std::vector<Rat> out;
  for (size_t k = 1; k < p.size(); ++k) out.push_back(Rat(k) * p[k]);
  return upoly_trim(out);
}

inline std::vector<Rat> upoly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  internal_check(!b.empty(), "division by zero polynomial");
  while (a.size() >= b.size()) {
    Rat q = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a = upoly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

inline std::vector<Rat> upoly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  a = upoly_trim(std::move(a));
  b = upoly_trim(std::move(b));
  while (!b.empty()) {
    std::vector<Rat> r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

inline bool upoly_squarefree(const std::vector<Rat>& p) {
  std::vector<Rat> t = upoly_trim(p);
  if (t.size() <= 1) return true;  // constants
  return upoly_gcd(t, upoly_derivative(t)).size() == 1;
}

}  // namespace wahllab
