#pragma once

#include "resp/integer.hpp"
#include "resp/poly.hpp"
#include "resp/poly_modp.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace resp {

/// unit * content * prod factor^multiplicity. Factors are primitive, irreducible
/// over Z, have positive leading coefficient, and are sorted canonically.
struct Factorization {
  int unit = 1;
  Int content = 1;
  std::vector<std::pair<IntPoly, unsigned>> factors;

  IntPoly expand() const {
    IntPoly r = IntPoly::constant(Int(unit) * content);
    for (const auto& [f, m] : factors) r *= f.pow(m);
    return r;
  }

  /// e.g. `(t-1)(t+1)(t^2+1)`, `-2(t-1)^2`.
  std::string to_string() const {
    std::string s;
    Int lead = Int(unit) * content;
    if (lead == -1 && !factors.empty())
      s = "-";
    else if (lead != 1 || factors.empty())
      s = lead.str();
    for (const auto& [f, m] : factors) {
      s += "(" + f.to_string() + ")";
      if (m > 1) s += "^" + std::to_string(m);
    }
    return s;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

struct FactorOptions {
  std::uint64_t seed = 0x5eed5eedULL;
};

namespace detail {

/// Coefficients reduced into [0, m).
inline IntPoly reduce_mod(const IntPoly& f, const Int& m) {
  std::vector<Int> v(f.coeffs());
  for (Int& x : v) x = mod(x, m);
  return IntPoly(std::move(v));
}

/// Coefficients reduced into (-m/2, m/2].
inline IntPoly symmetric_mod(const IntPoly& f, const Int& m) {
  std::vector<Int> v(f.coeffs());
  Int half = m / 2;
  for (Int& x : v) {
    x = mod(x, m);
    if (x > half) x -= m;
  }
  return IntPoly(std::move(v));
}

/// Division by a monic polynomial over Z/m.
inline std::pair<IntPoly, IntPoly> divrem_monic_mod(const IntPoly& a, const IntPoly& b, const Int& m) {
  if (a.degree() < b.degree()) return {IntPoly{}, reduce_mod(a, m)};
  std::vector<Int> r(a.coeffs());
  std::vector<Int> q(r.size() - b.coeffs().size() + 1);
  int db = b.degree();
  for (int i = a.degree() - db; i >= 0; --i) {
    Int coef = mod(r[i + db], m);
    q[i] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= db; ++j) r[i + j] = mod(r[i + j] - coef * b.coeffs()[j], m);
  }
  return {IntPoly(std::move(q)), reduce_mod(IntPoly(std::move(r)), m)};
}

/// One quadratic Hensel step: given f = g h mod m, s g + t h = 1 mod m with h monic,
/// returns the same data modulo m^2.
struct HenselState {
  IntPoly g, h, s, t;
};

inline HenselState hensel_step(const IntPoly& f, const HenselState& st, const Int& m) {
  Int m2 = m * m;
  IntPoly e = reduce_mod(f - st.g * st.h, m2);
  auto [q, r] = divrem_monic_mod(st.s * e, st.h, m2);
  IntPoly g2 = reduce_mod(st.g + st.t * e + q * st.g, m2);
  IntPoly h2 = reduce_mod(st.h + r, m2);
  IntPoly b = reduce_mod(st.s * g2 + st.t * h2 - IntPoly::constant(1), m2);
  auto [c, d] = divrem_monic_mod(st.s * b, h2, m2);
  IntPoly s2 = reduce_mod(st.s - d, m2);
  IntPoly t2 = reduce_mod(st.t - st.t * b - c * g2, m2);
  return {g2, h2, s2, t2};
}

/// Lifts a factorization f = prod(factors) mod p of a monic (mod p^(2^k)) polynomial to
/// modulus `target` = p^(2^k). Factors are monic.
inline std::vector<IntPoly> multifactor_lift(const IntPoly& f, const std::vector<FpPoly>& factors,
                                             std::uint64_t p, const Int& target) {
  if (factors.size() == 1) return {reduce_mod(f, target)};
  std::size_t half = factors.size() / 2;
  FpPoly gbar = FpPoly::one(p), hbar = FpPoly::one(p);
  for (std::size_t i = 0; i < half; ++i) gbar = gbar * factors[i];
  for (std::size_t i = half; i < factors.size(); ++i) hbar = hbar * factors[i];
  auto [sbar, tbar] = bezout(gbar, hbar);
  HenselState st{gbar.lift(), hbar.lift(), sbar.lift(), tbar.lift()};
  Int m = p;
  while (m < target) {
    st = hensel_step(f, st, m);
    m *= m;
  }
  std::vector<FpPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<FpPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  auto lg = multifactor_lift(st.g, left, p, target);
  auto lh = multifactor_lift(st.h, right, p, target);
  lg.insert(lg.end(), lh.begin(), lh.end());
  return lg;
}

inline std::uint64_t next_prime(std::uint64_t p) {
  do ++p;
  while (!is_prime_u64(p));
  return p;
}

/// Smallest prime not dividing lc(f) for which f mod p stays squarefree.
inline std::uint64_t choose_good_prime(const IntPoly& f) {
  for (std::uint64_t p = 2;; p = next_prime(p)) {
    if (f.lc() % p == 0) continue;
    FpPoly fb = FpPoly::reduce(f, p);
    if (gcd(fb, fb.derivative()).is_one()) return p;
  }
}

/// Factors a primitive squarefree polynomial with positive leading coefficient.
inline std::vector<IntPoly> factor_squarefree_over_Z(const IntPoly& f, std::mt19937_64& rng) {
  if (f.degree() <= 1) return {f};
  const std::uint64_t p = choose_good_prime(f);
  FpPoly fbar = FpPoly::reduce(f, p);
  std::vector<FpPoly> local = factor_squarefree_mod_p(fbar.monic(), rng);
  if (local.size() == 1) return {f};

  // Any factor g of f has |coeff| <= 2^deg(f) ||f||_2; lc(f) * g must fit in (-M/2, M/2].
  Int norm2 = 0;
  for (const Int& c : f.coeffs()) norm2 += c * c;
  Int bound = abs(f.lc()) * pow(Int(2), static_cast<std::uint64_t>(f.degree())) *
              (boost::multiprecision::sqrt(norm2) + 1);
  Int target = p;
  while (target <= 2 * bound) target *= target;

  Int lc_inv = mod(ext_gcd(mod(f.lc(), target), target).s, target);
  IntPoly fmonic = reduce_mod(lc_inv * f, target);
  std::vector<IntPoly> lifted = multifactor_lift(fmonic, local, p, target);

  std::vector<IntPoly> found;
  IntPoly rest = f;
  std::vector<IntPoly> pool = lifted;
  for (std::size_t size = 1; 2 * size <= pool.size();) {
    bool hit = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      IntPoly cand = IntPoly::constant(rest.lc());
      for (std::size_t i : idx) cand = reduce_mod(cand * pool[i], target);
      cand = symmetric_mod(cand, target).primitive_part();
      bool plausible = rest.coeff(0) == 0 || (cand.coeff(0) != 0 && rest.coeff(0) % cand.coeff(0) == 0);
      if (plausible) {
        if (auto q = exact_divide(rest, cand)) {
          found.push_back(cand);
          rest = *q;
          std::vector<IntPoly> next;
          for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
            if (k < idx.size() && idx[k] == i)
              ++k;
            else
              next.push_back(pool[i]);
          }
          pool = std::move(next);
          hit = true;
          break;
        }
      }
      // next combination
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == pool.size() - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++size;
  }
  if (rest.degree() > 0) found.push_back(rest.primitive_part());
  return found;
}

}  // namespace detail

/// Complete irreducible factorization over Z: squarefree decomposition (Yun), then
/// factoring each part modulo a good prime, Hensel lifting and exhaustive recombination.
inline Factorization factor_over_Z(const IntPoly& poly, FactorOptions opts = {}) {
  if (poly.is_zero()) throw InputError("cannot factor the zero polynomial");
  Factorization out;
  out.unit = poly.lc() < 0 ? -1 : 1;
  out.content = poly.content();
  IntPoly f = poly.primitive_part();
  if (f.degree() == 0) return out;

  std::mt19937_64 rng(opts.seed);
  IntPoly c = gcd(f, f.derivative());
  IntPoly w = *exact_divide(f, c);
  IntPoly y = *exact_divide(f.derivative(), c);
  IntPoly z = y - w.derivative();
  for (unsigned mult = 1; w.degree() > 0; ++mult) {
    IntPoly g = gcd(w, z);
    w = *exact_divide(w, g);
    y = *exact_divide(z, g);
    z = y - w.derivative();
    if (g.degree() > 0)
      for (IntPoly& q : detail::factor_squarefree_over_Z(g, rng)) out.factors.emplace_back(std::move(q), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

}  // namespace resp
