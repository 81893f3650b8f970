#include "resp/lattice.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace resp;
using testsupport::draw;
using testsupport::Rng;

namespace {

Lattice lat(std::vector<IntVector> gens, std::size_t d) { return Lattice::from_generators(std::move(gens), d); }

Lattice random_lattice(Rng& rng, std::size_t d, std::int64_t bound) {
  std::vector<IntVector> gens;
  std::size_t n = static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(d) + 1));
  for (std::size_t i = 0; i < n; ++i) {
    IntVector v(d);
    for (auto& x : v) x = draw(rng, -bound, bound);
    gens.push_back(v);
  }
  return lat(gens, d);
}

IntVector random_vector(Rng& rng, std::size_t d, std::int64_t bound) {
  IntVector v(d);
  for (auto& x : v) x = draw(rng, -bound, bound);
  return v;
}

const IntMatrix kJordan{{1, 1}, {0, 1}};
const IntMatrix kFib{{0, 1}, {1, 1}};

}  // namespace

TEST(Lattice, HermiteExamples) {
  EXPECT_EQ(lat({{2, 0}, {0, 2}, {1, 1}}, 2).basis(), (std::vector<IntVector>{{1, 1}, {0, 2}}));
  EXPECT_TRUE(lat({}, 2).is_zero());
  EXPECT_EQ(lat({{0, 1}, {1, 0}}, 2), Lattice::full(2));
  EXPECT_EQ(lat({{2, 0}, {0, 2}, {1, 1}}, 2).index(), 2);
}

TEST(Lattice, HermiteIsCanonical) {
  Rng rng(1);
  for (int n = 0; n < 200; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 5));
    Lattice l = random_lattice(rng, d, 12);
    // the same lattice from a shuffled, redundant generating set
    std::vector<IntVector> gens = l.basis();
    if (!gens.empty()) {
      IntVector extra(d);
      for (const auto& g : gens) {
        Int c = draw(rng, -3, 3);
        for (std::size_t j = 0; j < d; ++j) extra[j] += c * g[j];
      }
      gens.push_back(extra);
      std::shuffle(gens.begin(), gens.end(), rng);
    }
    EXPECT_EQ(lat(gens, d), l);
    // shape: upper echelon, positive pivots, reduced above
    std::size_t prev = 0;
    for (std::size_t i = 0; i < l.rank(); ++i) {
      std::size_t pc = 0;
      while (l.basis()[i][pc] == 0) ++pc;
      if (i) { EXPECT_GT(pc, prev); }
      prev = pc;
      EXPECT_GT(l.basis()[i][pc], 0);
      for (std::size_t r = 0; r < i; ++r) {
        EXPECT_GE(l.basis()[r][pc], 0);
        EXPECT_LT(l.basis()[r][pc], l.basis()[i][pc]);
      }
    }
  }
}

TEST(Lattice, MembershipMatchesRationalSolve) {
  Rng rng(2);
  for (int n = 0; n < 200; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 4));
    Lattice l = random_lattice(rng, d, 6);
    auto z = testsupport::to_zmat(l.basis());
    for (int k = 0; k < 10; ++k) {
      IntVector x = random_vector(rng, d, 6);
      std::vector<oracle::BigZ> zx(x.begin(), x.end());
      EXPECT_EQ(l.contains(x), oracle::in_lattice(z, zx)) << l.to_string();
    }
  }
}

TEST(Lattice, ElementaryDivisorsAndFrame) {
  Lattice l = lat({{2, 0}, {0, 6}}, 2);
  EXPECT_EQ(elementary_divisors(l), (std::vector<Int>{2, 6}));
  Rng rng(3);
  for (int n = 0; n < 150; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 5));
    Lattice l2 = random_lattice(rng, d, 9);
    SmithFrame sf = smith_frame(l2);
    std::vector<IntVector> scaled;
    for (std::size_t i = 0; i < sf.frame.size(); ++i) {
      if (i + 1 < sf.divisors.size()) { EXPECT_EQ(sf.divisors[i + 1] % sf.divisors[i], 0); }
      IntVector v = sf.frame[i];
      for (auto& x : v) x *= sf.divisors[i];
      scaled.push_back(v);
    }
    EXPECT_EQ(lat(scaled, d), l2);
    // the frame spans a saturated lattice
    Lattice f = lat(sf.frame, d);
    Int prod = 1;
    for (const Int& e : elementary_divisors(f)) prod *= e;
    EXPECT_EQ(prod, 1);
  }
}

TEST(Lattice, PiSaturateExamples) {
  Lattice l = lat({{2, 0}, {0, 6}}, 2);
  EXPECT_EQ(pi_saturate(l, PrimeSet::all()), Lattice::full(2));
  EXPECT_EQ(pi_saturate(l, PrimeSet::empty()), l);
  EXPECT_EQ(elementary_divisors(pi_saturate(l, PrimeSet::all_but(2))), (std::vector<Int>{2, 2}));
  EXPECT_EQ(pi_saturate(l, PrimeSet::all_but(2)), lat({{2, 0}, {0, 2}}, 2));
}

TEST(Lattice, PiSaturateMatchesDenominatorOracle) {
  Rng rng(4);
  const std::vector<PrimeSet> sets{PrimeSet::empty(), PrimeSet::finite({2}), PrimeSet::all_but(3), PrimeSet::all()};
  for (int n = 0; n < 120; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 4));
    Lattice l = random_lattice(rng, d, 8);
    auto z = testsupport::to_zmat(l.basis());
    for (const PrimeSet& pi : sets) {
      Lattice s = pi_saturate(l, pi);
      EXPECT_EQ(pi_saturate(s, pi), s);
      EXPECT_TRUE(s.contains(l));
      for (int k = 0; k < 8; ++k) {
        IntVector x = random_vector(rng, d, 5);
        auto den = oracle::saturation_denominator(z, std::vector<oracle::BigZ>(x.begin(), x.end()));
        bool expected = den && is_pi_number(Int(*den), pi);
        EXPECT_EQ(s.contains(x), expected) << l.to_string() << " pi=" << pi.to_string();
      }
    }
    // monotone in pi
    for (std::size_t i = 0; i + 1 < sets.size(); ++i)
      if (sets[i].subset_of(sets[i + 1])) { EXPECT_TRUE(pi_saturate(l, sets[i + 1]).contains(pi_saturate(l, sets[i]))); }
  }
}

TEST(Lattice, IntersectExamples) {
  Lattice two = lat({{2, 0}, {0, 2}}, 2), three = lat({{3, 0}, {0, 3}}, 2);
  EXPECT_EQ(intersect(two, three), lat({{6, 0}, {0, 6}}, 2));
  Lattice l = lat({{1, 2}, {0, 5}}, 2);
  EXPECT_EQ(intersect(l, l), l);
  EXPECT_TRUE(intersect(lat({{1, 1}}, 2), lat({{1, -1}}, 2)).is_zero());
}

TEST(Lattice, IntersectMatchesMembership) {
  Rng rng(5);
  for (int n = 0; n < 120; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 4));
    Lattice a = random_lattice(rng, d, 6), b = random_lattice(rng, d, 6);
    Lattice c = intersect(a, b);
    EXPECT_TRUE(a.contains(c));
    EXPECT_TRUE(b.contains(c));
    for (int k = 0; k < 20; ++k) {
      IntVector x = random_vector(rng, d, 12);
      EXPECT_EQ(c.contains(x), a.contains(x) && b.contains(x));
    }
  }
}

TEST(Lattice, OmegaPowerExamples) {
  EXPECT_EQ(omega_power(kJordan, 1), lat({{1, 0}}, 2));
  EXPECT_TRUE(omega_power(kJordan, 2).is_zero());
  EXPECT_EQ(omega_power(kFib, 0), Lattice::full(2));
  auto chain = omega_chain(kFib, 4);
  ASSERT_EQ(chain.size(), 5u);
  for (std::size_t n = 0; n < chain.size(); ++n) EXPECT_EQ(chain[n], omega_power(kFib, n));
}

TEST(Lattice, TorsionKernelExamples) {
  for (const PrimeSet& pi : {PrimeSet::empty(), PrimeSet::all(), PrimeSet::all_but(2)})
    EXPECT_TRUE(torsion_kernel(kJordan, pi).is_zero());
  EXPECT_EQ(torsion_kernel(kFib, PrimeSet::empty()), Lattice::full(2));
  IntMatrix b = IntMatrix::block_diag(kJordan, kFib);
  EXPECT_EQ(torsion_kernel(b, PrimeSet::all()), lat({{0, 0, 1, 0}, {0, 0, 0, 1}}, 4));
}

TEST(Lattice, ChainSandwichOnCorpus) {
  corpus::Rng rng(6);
  for (int n = 0; n < 60; ++n) {
    IntMatrix phi = corpus::random_gl(static_cast<std::size_t>(2 + n % 3), rng);
    auto chain = omega_chain(phi, 6);
    for (const PrimeSet& pi : corpus::cross_check_prime_sets()) {
      Lattice kernel = pi_saturate(torsion_kernel(phi, pi), pi);
      for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
        Lattice upper = pi_saturate(chain[k], pi), lower = pi_saturate(chain[k + 1], pi);
        EXPECT_TRUE(upper.contains(lower)) << phi.to_string();
        EXPECT_TRUE(lower.contains(kernel)) << phi.to_string() << " pi=" << pi.to_string();
      }
    }
  }
}

TEST(Lattice, TorsionKernelIsPhiInvariantAndSaturated) {
  corpus::Rng rng(7);
  for (int n = 0; n < 80; ++n) {
    IntMatrix phi = corpus::random_gl(static_cast<std::size_t>(2 + n % 4), rng);
    for (const PrimeSet& pi : corpus::cross_check_prime_sets()) {
      Lattice k = torsion_kernel(phi, pi);
      EXPECT_EQ(saturate(k), k);
      EXPECT_EQ(image(phi, k), k) << phi.to_string();
    }
  }
}
