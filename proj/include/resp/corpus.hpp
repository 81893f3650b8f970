#pragma once

#include "resp/lattice.hpp"
#include "resp/matrix.hpp"
#include "resp/prime_set.hpp"
#include "resp/residual.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace resp::corpus {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline std::int64_t uniform_signed(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Product of 10-30 elementary row operations applied to I: add +-row, swap, negate.
inline IntMatrix random_gl(std::size_t d, Rng& rng) {
  if (d == 0) throw InputError("dimension must be positive");
  IntMatrix m = IntMatrix::identity(d);
  if (d == 1) {
    if (uniform(rng, 0, 1)) m(0, 0) = -1;
    return m;
  }
  std::uint64_t steps = uniform(rng, 10, 30);
  for (std::uint64_t s = 0; s < steps; ++s) {
    std::size_t i = uniform(rng, 0, d - 1);
    std::size_t j = uniform(rng, 0, d - 2);
    if (j >= i) ++j;
    switch (uniform(rng, 0, 5)) {
      case 0:
        for (std::size_t c = 0; c < d; ++c) std::swap(m(i, c), m(j, c));
        break;
      case 1:
        for (std::size_t c = 0; c < d; ++c) m(i, c) = -m(i, c);
        break;
      default: {
        Int sign = uniform(rng, 0, 1) ? 1 : -1;
        for (std::size_t c = 0; c < d; ++c) m(i, c) += sign * m(j, c);
      }
    }
  }
  return m;
}

/// S U S^-1 with U random upper unitriangular and S from random_gl.
inline IntMatrix random_unipotent(std::size_t d, Rng& rng) {
  IntMatrix u = IntMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) u(i, j) = uniform_signed(rng, -3, 3);
  IntMatrix s = random_gl(d, rng);
  return s * u * s.inverse_unimodular();
}

inline IntVector random_nonzero_vector(std::size_t d, Rng& rng, std::int64_t bound = 9) {
  IntVector v(d);
  do {
    for (auto& x : v) x = uniform_signed(rng, -bound, bound);
  } while (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }));
  return v;
}

/// Seeded matrices with dimension cycling through dims.
inline std::vector<IntMatrix> gl_corpus(std::size_t count, const std::vector<std::size_t>& dims, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IntMatrix> out;
  for (std::size_t n = 0; n < count; ++n) out.push_back(random_gl(dims[n % dims.size()], rng));
  return out;
}

inline std::vector<IntMatrix> unipotent_corpus(std::size_t count, const std::vector<std::size_t>& dims,
                                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IntMatrix> out;
  for (std::size_t n = 0; n < count; ++n) out.push_back(random_unipotent(dims[n % dims.size()], rng));
  return out;
}

/// Least n <= max_n with x outside pi_saturate(omega^n A, pi), if any.
inline std::optional<std::size_t> escape_index(const IntMatrix& phi, const PrimeSet& pi, const IntVector& x,
                                               std::size_t max_n) {
  IntMatrix shift = phi - IntMatrix::identity(phi.dim());
  Lattice l = Lattice::full(phi.dim());
  for (std::size_t n = 0; n <= max_n; ++n) {
    if (!pi_saturate(l, pi).contains(x)) return n;
    l = image(shift, l);
  }
  return std::nullopt;
}

inline const std::vector<PrimeSet>& cross_check_prime_sets() {
  static const std::vector<PrimeSet> sets{PrimeSet::empty(), PrimeSet::all_but(2), PrimeSet::all_but(3),
                                          PrimeSet::all_but(5), PrimeSet::all_but(7)};
  return sets;
}

inline const std::vector<std::uint64_t>& cross_check_primes() {
  static const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11};
  return primes;
}

struct CrossCheck {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Every cross-check for one matrix: report invariants, oracle agreement over
/// cross_check_prime_sets(), quasi-unipotent witness power, escape sampling.
inline CrossCheck cross_check(const IntMatrix& phi, Rng& rng, std::size_t escape_samples = 10) {
  CrossCheck out;
  auto fail = [&](const std::string& what) { out.failures.push_back(phi.to_string() + ": " + what); };
  ResidualReport r = analyze(phi, cross_check_primes());
  for (const auto& v : r.violations) fail(v);

  MappingTorusCriteria crit(phi);
  for (const PrimeSet& pi : cross_check_prime_sets()) {
    OracleVerdict o = oracle_verdict(crit, pi);
    if (!o.agree()) fail("criterion and torsion kernel disagree for pi = " + pi.to_string());
    if (!o.criterion) continue;
    for (std::size_t s = 0; s < escape_samples; ++s) {
      IntVector x = random_nonzero_vector(phi.dim(), rng);
      if (!escape_index(phi, pi, x, 64 * phi.dim())) fail("vector did not escape the omega chain for pi = " + pi.to_string());
    }
  }
  if (r.quasi_unipotent_witness) {
    IntMatrix phik = phi.pow(r.quasi_unipotent_witness->convert_to<std::uint64_t>());
    if (!analyze(phik, {}).unipotent) fail("phi^k with the quasi-unipotent witness k is not unipotent");
  }
  if (r.unipotent && r.nilpotency_class_interval && r.nilpotency_class_interval->second > phi.dim() + 1)
    fail("class interval upper bound exceeds d+1");
  return out;
}

}  // namespace resp::corpus
