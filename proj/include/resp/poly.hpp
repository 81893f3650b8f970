#pragma once

#include "resp/integer.hpp"
#include "resp/prime_set.hpp"

#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace resp {

/// Dense univariate polynomial over Z; coeffs()[i] is the coefficient of t^i.
/// The zero polynomial has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPoly constant(const Int& v) { return IntPoly(std::vector<Int>{v}); }
  /// c * t^k
  static IntPoly monomial(const Int& c, std::size_t k) {
    std::vector<Int> v(k + 1);
    v[k] = c;
    return IntPoly(std::move(v));
  }
  /// t - a
  static IntPoly linear_root(const Int& a) { return IntPoly(std::vector<Int>{Int(-a), Int(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
  Int lc() const { return c_.empty() ? Int(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Int eval(const Int& x) const {
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// Augmentation t -> 1: the sum of the coefficients.
  Int eval_at_one() const {
    Int s = 0;
    for (const Int& v : c_) s += v;
    return s;
  }

  Int content() const {
    Int g = 0;
    for (const Int& v : c_) g = gcd(g, v);
    return g;
  }

  /// Content removed and leading coefficient made positive.
  IntPoly primitive_part() const {
    if (is_zero()) return {};
    Int g = content();
    if (lc() < 0) g = -g;
    std::vector<Int> v(c_);
    for (Int& x : v) x /= g;
    return IntPoly(std::move(v));
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Int> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * i;
    return IntPoly(std::move(v));
  }

  IntPoly operator-() const {
    std::vector<Int> v(c_);
    for (Int& x : v) x = -x;
    return IntPoly(std::move(v));
  }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(v));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(v));
  }
  friend IntPoly operator*(const Int& s, const IntPoly& a) {
    std::vector<Int> v(a.c_);
    for (Int& x : v) x *= s;
    return IntPoly(std::move(v));
  }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

  IntPoly pow(unsigned e) const {
    IntPoly r = constant(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  /// Orders by degree, then lexicographically from the leading coefficient down.
  friend bool canonical_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

  /// Exact quotient a / b over Z, or nullopt when b does not divide a in Z[t].
  friend std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw InputError("division by the zero polynomial");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Int> r(a.c_);
    std::vector<Int> q(a.c_.size() - b.c_.size() + 1);
    const Int& blc = b.c_.back();
    for (int i = a.degree() - b.degree(); i >= 0; --i) {
      const Int& top = r[i + b.degree()];
      if (top % blc != 0) return std::nullopt;
      q[i] = top / blc;
      if (q[i] != 0)
        for (int j = 0; j <= b.degree(); ++j) r[i + j] -= q[i] * b.c_[j];
    }
    for (const Int& x : r)
      if (x != 0) return std::nullopt;
    return IntPoly(std::move(q));
  }

  /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
  friend IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw InputError("division by the zero polynomial");
    if (a.degree() < b.degree()) return a;
    std::vector<Int> r(a.c_);
    const Int& blc = b.c_.back();
    int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
      Int top = r[i];
      for (Int& x : r) x *= blc;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= top * b.c_[j];
    }
    return IntPoly(std::move(r));
  }

  /// Primitive gcd with positive leading coefficient (primitive PRS).
  friend IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    Int cont = resp::gcd(a.content(), b.content());
    IntPoly x = a.primitive_part(), y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
      IntPoly r = pseudo_remainder(x, y);
      x = std::move(y);
      y = r.primitive_part();
    }
    return cont * x.primitive_part();
  }

  /// Text form `[c0,c1,...]`.
  std::string to_coeff_string() const {
    std::string s = "[";
    if (c_.empty()) s += "0";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].str();
    return s + "]";
  }

  /// Human form, e.g. `t^2-6*t-1`.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Int& c = c_[i];
      if (c == 0) continue;
      Int mag = abs(c);
      if (c < 0)
        s += "-";
      else if (!s.empty())
        s += "+";
      if (i == 0 || mag != 1) {
        s += mag.str();
        if (i > 0) s += "*";
      }
      if (i >= 1) s += "t";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

  /// Accepts `[c0,c1,...]` or a sum of terms like `t^2-6*t-1`, `3t^4 + 2`.
  static IntPoly parse(std::string_view text);

  /// The n-th cyclotomic polynomial via t^n - 1 = prod_{d | n} Phi_d.
  static IntPoly cyclotomic(unsigned n);

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

inline IntPoly IntPoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("empty polynomial");
  if (s.front() == '[') {
    if (s.back() != ']') throw InputError("unterminated coefficient list: " + s);
    std::vector<Int> v;
    std::string_view body(s);
    body = body.substr(1, body.size() - 2);
    while (!body.empty()) {
      auto comma = body.find(',');
      v.push_back(parse_int(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    return IntPoly(std::move(v));
  }
  std::map<std::size_t, Int> terms;
  std::size_t pos = 0;
  auto fail = [&] { throw InputError("cannot parse polynomial '" + std::string(text) + "'"); };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail();
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    Int coef = start == pos ? Int(1) : parse_int(std::string_view(s).substr(start, pos - start));
    bool has_digits = start != pos;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_digits) fail();
      ++pos;
      if (pos >= s.size() || (s[pos] != 't' && s[pos] != 'x')) fail();
    }
    std::size_t exp = 0;
    if (pos < s.size() && (s[pos] == 't' || s[pos] == 'x')) {
      ++pos;
      exp = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t es = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (es == pos) fail();
        exp = std::stoul(s.substr(es, pos - es));
      }
    } else if (!has_digits) {
      fail();
    }
    terms[exp] += sign * coef;
  }
  std::vector<Int> v(terms.empty() ? 0 : terms.rbegin()->first + 1);
  for (auto& [e, c] : terms) v[e] = c;
  return IntPoly(std::move(v));
}

inline IntPoly IntPoly::cyclotomic(unsigned n) {
  if (n == 0) throw InputError("cyclotomic index must be positive");
  std::map<unsigned, IntPoly> phi;
  for (unsigned m = 1; m <= n; ++m) {
    if (n % m) continue;
    IntPoly num = monomial(1, m) - constant(1);
    for (auto& [d, pd] : phi)
      if (m % d == 0) num = *exact_divide(num, pd);
    phi.emplace(m, std::move(num));
  }
  return phi.at(n);
}

/// Recognizes Phi_n; candidates n satisfy euler_phi(n) = deg P, hence n <= 2 deg^2 (n <= 2 for deg 1).
inline std::optional<unsigned> is_cyclotomic(const IntPoly& p) {
  if (p.degree() < 1) throw InputError("is_cyclotomic needs a nonconstant polynomial");
  if (!p.is_monic()) throw InputError("is_cyclotomic needs a monic polynomial");
  auto deg = static_cast<std::uint64_t>(p.degree());
  std::uint64_t bound = std::max<std::uint64_t>(2, 2 * deg * deg);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (euler_phi(n) != deg) continue;
    if (IntPoly::cyclotomic(static_cast<unsigned>(n)) == p) return static_cast<unsigned>(n);
  }
  return std::nullopt;
}

/// Membership in S_pi: the augmentation of P is a pi-number.
inline bool in_S_pi(const IntPoly& p, const PrimeSet& pi) { return is_pi_number(p.eval_at_one(), pi); }

}  // namespace resp
