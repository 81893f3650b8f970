#pragma once

#include "resp/factor.hpp"
#include "resp/integer.hpp"
#include "resp/poly.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace resp {

using IntVector = std::vector<Int>;

/// Dense row-major integer matrix. Automorphisms of Z^d are the square ones with det = +-1.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (auto& r : rows) {
      if (r.size() != cols_) throw InputError("ragged matrix literal");
      for (long long v : r) a_.emplace_back(v);
    }
  }
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static IntMatrix identity(std::size_t d) {
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
    return m;
  }
  /// Block-diagonal sum.
  static IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return rows_; }
  bool square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<IntVector> row_list() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& v) { return v == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols_ != x.size()) throw InputError("matrix/vector dimension mismatch");
    IntVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }
  friend IntMatrix operator*(const Int& s, const IntMatrix& a) {
    IntMatrix c = a;
    for (Int& v : c.a_) v *= s;
    return c;
  }
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  IntMatrix pow(std::uint64_t e) const {
    IntMatrix result = identity(rows_), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  Int trace() const {
    Int s = 0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  /// Bareiss fraction-free elimination.
  Int det() const {
    if (!square()) throw InputError("determinant of a non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m(k, k) == 0) {
        std::size_t piv = k + 1;
        while (piv < n && m(piv, k) == 0) ++piv;
        if (piv == n) return 0;
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
  }

  /// Exact inverse of a unimodular matrix.
  IntMatrix inverse_unimodular() const;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// Row-reduced echelon form over Q, pivoting only in the first `cols` columns
/// (the remaining columns ride along, as in an augmented matrix). Returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline IntMatrix IntMatrix::inverse_unimodular() const {
  if (!square()) throw InputError("inverse of a non-square matrix");
  std::size_t n = rows_;
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rational((*this)(i, j));
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug, n);
  if (piv.size() != n) throw InputError("matrix is singular");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = aug[i][n + j];
      if (boost::multiprecision::denominator(v) != 1) throw InputError("matrix is not unimodular");
      inv(i, j) = boost::multiprecision::numerator(v);
    }
  return inv;
}

/// Basis of the right kernel {x in Q^cols : M x = 0}, scaled to primitive integer vectors.
inline std::vector<IntVector> rational_kernel(const IntMatrix& m) {
  std::size_t cols = m.cols();
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rational(m(i, j));
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    Int den = 1;
    for (auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
    IntVector w(cols);
    Int g = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      w[j] = boost::multiprecision::numerator(Rational(v[j] * den));
      g = gcd(g, w[j]);
    }
    for (auto& x : w) x /= g;
    basis.push_back(std::move(w));
  }
  return basis;
}

inline void require_square(const IntMatrix& m) {
  if (!m.square() || m.rows() == 0) throw InputError("expected a nonempty square matrix");
}

inline bool is_automorphism(const IntMatrix& m) {
  if (!m.square() || m.rows() == 0) return false;
  Int d = m.det();
  return d == 1 || d == -1;
}

inline void require_automorphism(const IntMatrix& m) {
  require_square(m);
  if (!is_automorphism(m)) throw InputError("matrix is not an automorphism of Z^d (det != +-1)");
}

/// det(tI - M) by Faddeev-LeVerrier; every division is exact.
inline IntPoly char_poly(const IntMatrix& m) {
  require_square(m);
  std::size_t n = m.rows();
  std::vector<Int> c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);
  IntMatrix id = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    Int tr = (m * mk).trace();
    c[n - k] = -tr / Int(k);
  }
  return IntPoly(std::move(c));
}

/// P(M) by Horner's rule.
inline IntMatrix eval_poly(const IntPoly& p, const IntMatrix& m) {
  require_square(m);
  IntMatrix r(m.rows(), m.cols());
  IntMatrix id = IntMatrix::identity(m.rows());
  for (int i = p.degree(); i >= 0; --i) r = r * m + p.coeffs()[static_cast<std::size_t>(i)] * id;
  return r;
}

/// (M - I)^d = 0, cross-checked against char_poly(M) = (t-1)^d.
inline bool is_unipotent(const IntMatrix& m) {
  require_automorphism(m);
  std::size_t d = m.dim();
  bool nilpotent = (m - IntMatrix::identity(d)).pow(d).is_zero();
  bool charpoly = char_poly(m) == IntPoly{-1, 1}.pow(static_cast<unsigned>(d));
  if (nilpotent != charpoly) throw InconsistencyError("unipotence tests disagree for " + m.to_string());
  return nilpotent;
}

/// Matrix over Z/m for a word-sized modulus m >= 1.
class ModMatrix {
 public:
  ModMatrix(std::uint64_t modulus, std::size_t d) : m_(modulus), d_(d), a_(d * d, 0) {}

  static ModMatrix reduce(const IntMatrix& a, std::uint64_t modulus) {
    require_square(a);
    if (modulus == 0) throw InputError("modulus must be positive");
    ModMatrix r(modulus, a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = mod(a(i, j), Int(modulus)).convert_to<std::uint64_t>();
    return r;
  }
  static ModMatrix identity(std::uint64_t modulus, std::size_t d) {
    ModMatrix r(modulus, d);
    for (std::size_t i = 0; i < d; ++i) r(i, i) = 1 % modulus;
    return r;
  }

  std::uint64_t modulus() const { return m_; }
  std::size_t dim() const { return d_; }
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
    ModMatrix c(a.m_, a.d_);
    for (std::size_t i = 0; i < a.d_; ++i)
      for (std::size_t k = 0; k < a.d_; ++k) {
        std::uint64_t aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.d_; ++j) c(i, j) = (c(i, j) + detail::mulmod(aik, b(k, j), a.m_)) % a.m_;
      }
    return c;
  }
  friend ModMatrix operator-(const ModMatrix& a, const ModMatrix& b) {
    ModMatrix c(a.m_, a.d_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = (a.a_[i] + a.m_ - b.a_[i]) % a.m_;
    return c;
  }
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.m_ == b.m_ && a.d_ == b.d_ && a.a_ == b.a_;
  }

  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& x) const {
    std::vector<std::uint64_t> y(d_, 0);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) y[i] = (y[i] + detail::mulmod((*this)(i, j), x[j], m_)) % m_;
    return y;
  }

  ModMatrix pow(Int e) const {
    ModMatrix result = identity(m_, d_), base = *this;
    while (e > 0) {
      if ((e & 1) != 0) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::uint64_t v) { return v == 0; });
  }
  bool is_identity() const { return *this == identity(m_, d_); }

  /// Determinant over Z/m computed over Z from representatives.
  std::uint64_t det() const {
    IntMatrix z(d_, d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) z(i, j) = (*this)(i, j);
    return mod(z.det(), Int(m_)).convert_to<std::uint64_t>();
  }
  bool invertible() const { return std::gcd(det(), m_) == 1 || m_ == 1; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < d_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < d_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  std::uint64_t m_;
  std::size_t d_;
  std::vector<std::uint64_t> a_;
};

/// |GL(d, Z/m)| = prod over p^e || m of p^((e-1) d^2) * prod_{i<d} (p^d - p^i).
inline Int gl_order(std::size_t d, std::uint64_t m) {
  Int total = 1;
  std::uint64_t rest = m;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    Int pd = pow(Int(p), d);
    for (std::size_t i = 0; i < d; ++i) total *= pd - pow(Int(p), i);
    total *= pow(Int(p), (e - 1) * d * d);
  }
  return total;
}

/// Least k >= 1 with M^k = I, by iteration capped at |GL(d, Z/m)|.
/// Multiplicative order of an invertible matrix mod n.
/// Mod a prime p the order divides p^t * lcm{p^j - 1 : j <= d} with p^t >= d (semisimple part has
/// eigenvalues in some F_{p^j}, unipotent part has p-power order); lifting to p^e multiplies by p^(e-1).
/// Starting from that multiple, prime factors are stripped while the power stays the identity.
inline Int order(const ModMatrix& m) {
  if (!m.invertible()) throw InputError("matrix is not invertible modulo " + std::to_string(m.modulus()));
  std::size_t d = m.dim();
  Int n = 1;
  std::uint64_t rest = m.modulus();
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p) continue;
    Int local = 1;
    for (std::size_t j = 1; j <= d; ++j) local = lcm(local, pow(Int(p), j) - 1);
    for (Int pt = 1; pt < Int(d); pt *= p) local *= p;
    for (rest /= p; rest % p == 0; rest /= p) local *= p;
    n = lcm(n, local);
  }
  if (!m.pow(n).is_identity()) throw InconsistencyError("order bound failed for " + m.to_string());
  for (const Int& q : prime_divisors(n))
    while (n % q == 0 && m.pow(n / q).is_identity()) n /= q;
  return n;
}

inline ModMatrix reduce_mod_p(const IntMatrix& m, std::uint64_t p) {
  if (!is_prime_u64(p)) throw InputError(std::to_string(p) + " is not prime");
  return ModMatrix::reduce(m, p);
}

inline Int order_mod_p(const ModMatrix& m) { return order(m); }

inline bool is_p_power(Int n, const Int& p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

/// (M - I)^d = 0 over F_p, cross-checked against "the order of M is a power of p".
inline bool is_unipotent_mod_p(const ModMatrix& m) {
  if (!is_prime_u64(m.modulus())) throw InputError("modulus is not prime");
  if (!m.invertible()) throw InputError("matrix is not invertible modulo p");
  std::size_t d = m.dim();
  bool nilpotent = (m - ModMatrix::identity(m.modulus(), d)).pow(Int(d)).is_zero();
  bool p_order = is_p_power(order(m), Int(m.modulus()));
  if (nilpotent != p_order) throw InconsistencyError("mod-p unipotence tests disagree for " + m.to_string());
  return nilpotent;
}

/// lcm{n >= 1 : euler_phi(n) <= d}; every root-of-unity eigenvalue of a d x d integer matrix has order dividing it.
inline Int quasi_unipotent_exponent_bound(std::size_t d) {
  Int l = 1;
  // euler_phi(n) >= sqrt(n/2), so n <= 2 d^2 covers every candidate.
  for (std::uint64_t n = 1; n <= std::max<std::uint64_t>(2, 2 * d * d); ++n)
    if (euler_phi(n) <= d) l = lcm(l, Int(n));
  return l;
}

namespace detail {

/// Exact test for "M^k is unipotent", refuted cheaply modulo large primes first.
inline bool power_is_unipotent(const IntMatrix& m, const Int& k) {
  std::size_t d = m.dim();
  for (std::uint64_t q : {2305843009213693951ULL, 4611686018427387847ULL}) {
    ModMatrix mk = ModMatrix::reduce(m, q).pow(k);
    if (!(mk - ModMatrix::identity(q, d)).pow(Int(d)).is_zero()) return false;
  }
  IntMatrix mk = m.pow(k.convert_to<std::uint64_t>());
  return (mk - IntMatrix::identity(d)).pow(d).is_zero();
}

inline std::vector<Int> divisors(const Int& n) {
  std::vector<Int> small, large;
  for (Int i = 1; i * i <= n; ++i) {
    if (n % i) continue;
    small.push_back(i);
    if (i * i != n) large.push_back(n / i);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

struct QuasiUnipotence {
  bool quasi_unipotent = false;
  std::optional<Int> witness;  // least k > 0 with M^k unipotent
};

/// Cyclotomic route: every irreducible factor of the characteristic polynomial is cyclotomic.
inline bool quasi_unipotent_by_factors(const IntMatrix& m, FactorOptions opts = {}) {
  require_automorphism(m);
  Factorization fac = factor_over_Z(char_poly(m), opts);
  return std::all_of(fac.factors.begin(), fac.factors.end(),
                     [](const auto& f) { return is_cyclotomic(f.first).has_value(); });
}

/// Power route: least divisor k of quasi_unipotent_exponent_bound(d) with M^k unipotent.
inline std::optional<Int> quasi_unipotent_by_powers(const IntMatrix& m) {
  require_automorphism(m);
  for (const Int& k : detail::divisors(quasi_unipotent_exponent_bound(m.dim())))
    if (detail::power_is_unipotent(m, k)) return k;
  return std::nullopt;
}

/// Both routes; throws InconsistencyError if they disagree.
inline QuasiUnipotence is_quasi_unipotent(const IntMatrix& m, FactorOptions opts = {}) {
  bool cyclotomic = quasi_unipotent_by_factors(m, opts);
  std::optional<Int> witness = quasi_unipotent_by_powers(m);
  if (cyclotomic != witness.has_value())
    throw InconsistencyError("quasi-unipotence tests disagree for " + m.to_string());
  return {cyclotomic, witness};
}

namespace detail {

/// Univariate polynomial over Q, used for invariant factors.
struct QPoly {
  std::vector<Rational> c;

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }

  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i)
      r.c[i] = (i < a.c.size() ? a.c[i] : Rational(0)) - (i < b.c.size() ? b.c[i] : Rational(0));
    r.trim();
    return r;
  }
  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i)
      r.c[i] = (i < a.c.size() ? a.c[i] : Rational(0)) + (i < b.c.size() ? b.c[i] : Rational(0));
    r.trim();
    return r;
  }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
    QPoly q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
      auto shift = static_cast<std::size_t>(r.degree() - b.degree());
      Rational f = r.c.back() / b.c.back();
      q.c[shift] = f;
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[shift + j] -= f * b.c[j];
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  QPoly monic() const {
    QPoly r = *this;
    if (r.is_zero()) return r;
    Rational l = r.c.back();
    for (auto& x : r.c) x /= l;
    return r;
  }
};

}  // namespace detail

/// Invariant factors P_1 | ... | P_l of M: the nonconstant diagonal entries of the Smith
/// normal form of tI - M over Q[t], made monic. Their product is char_poly(M).
inline std::vector<IntPoly> invariant_factors(const IntMatrix& m) {
  using detail::QPoly;
  require_square(m);
  std::size_t n = m.dim();
  std::vector<std::vector<QPoly>> a(n, std::vector<QPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j].c = {Rational(-m(i, j))};
      if (i == j) a[i][j].c.push_back(Rational(1));
      a[i][j].trim();
    }
  std::vector<QPoly> diag;
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // smallest-degree nonzero pivot in the trailing block
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (!a[i][j].is_zero() && (pi == n || a[i][j].degree() < a[pi][pj].degree())) {
            pi = i;
            pj = j;
          }
      if (pi == n) break;
      std::swap(a[k], a[pi]);
      for (auto& row : a) std::swap(row[k], row[pj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a[i][k].is_zero()) continue;
        QPoly q = divrem(a[i][k], a[k][k]).first;
        for (std::size_t j = k; j < n; ++j) a[i][j] = a[i][j] - q * a[k][j];
        if (!a[i][k].is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[k][j].is_zero()) continue;
        QPoly q = divrem(a[k][j], a[k][k]).first;
        for (std::size_t i = k; i < n; ++i) a[i][j] = a[i][j] - q * a[i][k];
        if (!a[k][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = k + 1; i < n && divides; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (!divrem(a[i][j], a[k][k]).second.is_zero()) {
            for (std::size_t c = k; c < n; ++c) a[k][c] = a[k][c] + a[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(a[k][k].monic());
  }
  std::vector<IntPoly> out;
  for (const QPoly& q : diag) {
    if (q.degree() < 1) continue;
    std::vector<Int> coeffs;
    for (const Rational& r : q.c) {
      if (boost::multiprecision::denominator(r) != 1)
        throw InconsistencyError("non-integral invariant factor for " + m.to_string());
      coeffs.push_back(boost::multiprecision::numerator(r));
    }
    out.emplace_back(std::move(coeffs));
  }
  std::sort(out.begin(), out.end(), [](const IntPoly& x, const IntPoly& y) { return x.degree() < y.degree(); });
  return out;
}

}  // namespace resp
