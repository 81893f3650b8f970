#pragma once

#include "resp/integer.hpp"
#include "resp/poly.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace resp {

/// Dense polynomial over F_p for a word-sized prime p; coefficients in [0, p).
class FpPoly {
 public:
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& x : c_) x %= p_;
    trim();
  }
  explicit FpPoly(std::uint64_t p) : p_(p) {}

  static FpPoly reduce(const IntPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    c.reserve(f.coeffs().size());
    for (const Int& v : f.coeffs()) c.push_back(mod(v, Int(p)).convert_to<std::uint64_t>());
    return FpPoly(p, std::move(c));
  }

  static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }
  static FpPoly one(std::uint64_t p) { return FpPoly(p, {1}); }

  std::uint64_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t lc() const { return c_.empty() ? 0 : c_.back(); }

  IntPoly lift() const {
    std::vector<Int> v;
    for (auto x : c_) v.emplace_back(x);
    return IntPoly(std::move(v));
  }

  std::uint64_t inv(std::uint64_t a) const { return detail::powmod(a, p_ - 2, p_); }

  FpPoly monic() const {
    if (c_.empty()) return *this;
    std::uint64_t s = inv(lc());
    std::vector<std::uint64_t> v(c_);
    for (auto& x : v) x = detail::mulmod(x, s, p_);
    return FpPoly(p_, std::move(v));
  }

  FpPoly derivative() const {
    if (c_.size() <= 1) return FpPoly(p_);
    std::vector<std::uint64_t> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = detail::mulmod(c_[i], i % p_, p_);
    return FpPoly(p_, std::move(v));
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.at(i) + b.at(i)) % a.p_;
    return FpPoly(a.p_, std::move(v));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.at(i) + a.p_ - b.at(i)) % a.p_;
    return FpPoly(a.p_, std::move(v));
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<std::uint64_t> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        v[i + j] = (v[i + j] + detail::mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
    return FpPoly(a.p_, std::move(v));
  }
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  /// Quotient and remainder; b nonzero.
  friend std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw InputError("division by zero in F_p[t]");
    const std::uint64_t p = a.p_;
    if (a.degree() < b.degree()) return {FpPoly(p), a};
    std::vector<std::uint64_t> r(a.c_);
    std::vector<std::uint64_t> q(a.c_.size() - b.c_.size() + 1, 0);
    std::uint64_t binv = a.inv(b.lc());
    int db = b.degree();
    for (int i = a.degree() - db; i >= 0; --i) {
      std::uint64_t coef = detail::mulmod(r[i + db], binv, p);
      q[i] = coef;
      if (coef == 0) continue;
      for (int j = 0; j <= db; ++j) r[i + j] = (r[i + j] + p - detail::mulmod(coef, b.c_[j], p)) % p;
    }
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
  }
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divrem(a, b).second; }
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divrem(a, b).first; }

  /// Monic gcd (zero if both are zero).
  friend FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
      FpPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// s, t with s*a + t*b = gcd(a, b) (monic).
  friend std::pair<FpPoly, FpPoly> bezout(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.p_;
    FpPoly r0 = a, r1 = b, s0 = one(p), s1(p), t0(p), t1 = one(p);
    while (!r1.is_zero()) {
      auto [q, r] = divrem(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    std::uint64_t li = a.inv(r0.lc());
    FpPoly scale(p, {li});
    return {s0 * scale, t0 * scale};
  }

  /// base^e mod m.
  friend FpPoly powmod(FpPoly base, Int e, const FpPoly& m) {
    FpPoly result = one(base.p_) % m;
    base = base % m;
    while (e > 0) {
      if ((e & 1) != 0) result = result * base % m;
      e >>= 1;
      if (e > 0) base = base * base % m;
    }
    return result;
  }

 private:
  std::uint64_t at(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

/// Irreducible factorization of a monic squarefree polynomial over F_p
/// (distinct-degree then Cantor-Zassenhaus equal-degree splitting).
inline std::vector<FpPoly> factor_squarefree_mod_p(const FpPoly& f, std::mt19937_64& rng) {
  const std::uint64_t p = f.prime();
  std::vector<std::pair<FpPoly, int>> ddf;
  FpPoly rest = f;
  FpPoly h = FpPoly::x(p);
  for (int i = 1; 2 * i <= rest.degree(); ++i) {
    h = powmod(h, Int(p), rest);
    FpPoly g = gcd(h - FpPoly::x(p), rest);
    if (!g.is_one()) {
      ddf.emplace_back(g, i);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) ddf.emplace_back(rest, rest.degree());

  std::vector<FpPoly> out;
  std::vector<std::pair<FpPoly, int>> work(ddf.rbegin(), ddf.rend());
  while (!work.empty()) {
    auto [g, d] = std::move(work.back());
    work.pop_back();
    if (g.degree() == d) {
      out.push_back(g);
      continue;
    }
    while (true) {
      std::vector<std::uint64_t> a(static_cast<std::size_t>(g.degree()));
      std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
      for (auto& c : a) c = dist(rng);
      FpPoly ap(p, std::move(a));
      if (ap.degree() < 1) continue;
      FpPoly b(p);
      if (p == 2) {
        // trace map a + a^2 + ... + a^(2^(d-1))
        FpPoly term = ap % g;
        b = term;
        for (int j = 1; j < d; ++j) {
          term = term * term % g;
          b = b + term;
        }
      } else {
        Int e = (pow(Int(p), static_cast<std::uint64_t>(d)) - 1) / 2;
        b = powmod(ap, e, g) - FpPoly::one(p);
      }
      FpPoly split = gcd(b, g);
      if (split.degree() > 0 && split.degree() < g.degree()) {
        work.emplace_back(g / split, d);
        work.emplace_back(split, d);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(), b.coeffs().rbegin(),
                                        b.coeffs().rend());
  });
  return out;
}

}  // namespace resp
