#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace resp {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed input or violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two independent computations of the same quantity disagree.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Floor division remainder in [0, |m|).
inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

/// Returns g = gcd(a,b) >= 0 together with Bezout coefficients s*a + t*b = g.
struct ExtGcd {
  Int g, s, t;
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline Int pow(const Int& base, std::uint64_t e) {
  Int result = 1, b = base;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

/// Parses an optionally signed decimal integer; throws InputError otherwise.
inline Int parse_int(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  std::size_t j = s.size();
  while (j > i && (s[j - 1] == ' ' || s[j - 1] == '\t')) --j;
  s = s.substr(i, j - i);
  bool neg = false;
  std::size_t k = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    k = 1;
  }
  if (k == s.size()) throw InputError("expected an integer, got '" + std::string(s) + "'");
  Int v = 0;
  for (; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9')
      throw InputError("expected an integer, got '" + std::string(s) + "'");
    v = v * 10 + (s[k] - '0');
  }
  return neg ? Int(-v) : v;
}

inline std::string to_string(const Int& v) { return v.str(); }

inline std::int64_t to_i64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  return v.convert_to<std::int64_t>();
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Miller-Rabin on arbitrary precision integers; deterministic for n < 2^64 and
/// a fixed 24-base probable-prime test above that.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime_u64(n.convert_to<std::uint64_t>());
  static constexpr unsigned kBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                        41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  for (unsigned p : kBases)
    if (n % p == 0) return false;
  Int d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : kBases) {
    Int x = boost::multiprecision::powm(Int(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  for (unsigned c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto f = [&](const Int& v) { return (v * v + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(x > y ? Int(x - y) : Int(y - x), n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Distinct prime divisors of |n| in increasing order; n must be nonzero.
/// Trial division to 10^6, then Miller-Rabin / Pollard rho on the cofactor.
inline std::vector<Int> prime_divisors(const Int& n) {
  if (n == 0) throw InputError("prime_divisors of zero");
  Int m = abs(n);
  std::vector<Int> primes;
  for (std::uint64_t p = 2; p <= 1000000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      primes.emplace_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) {
    std::vector<Int> rest;
    detail::factor_into(m, rest);
    primes.insert(primes.end(), rest.begin(), rest.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace resp
