#include "resp/matrix.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace resp;
using testsupport::draw;
using testsupport::Rng;

namespace {

IntPoly from_big(const std::vector<oracle::BigZ>& c) { return IntPoly(std::vector<Int>(c.begin(), c.end())); }

const IntMatrix kJordan{{1, 1}, {0, 1}};
const IntMatrix kSol{{2, 1}, {1, 1}};
const IntMatrix kRotation{{0, -1}, {1, 0}};
const IntMatrix kA6{{0, 1}, {1, 6}};

}  // namespace

TEST(Matrix, AutomorphismExamples) {
  EXPECT_TRUE(is_automorphism(IntMatrix::identity(3)));
  EXPECT_TRUE(is_automorphism(kSol));
  EXPECT_FALSE(is_automorphism(IntMatrix{{2, 0}, {0, 1}}));
  EXPECT_FALSE(is_automorphism(IntMatrix{{1, 2, 3}, {4, 5, 6}}));
  EXPECT_THROW(require_automorphism(IntMatrix{{2, 0}, {0, 1}}), InputError);
}

TEST(Matrix, CharPolyExamples) {
  EXPECT_EQ(char_poly(IntMatrix::identity(2)), (IntPoly{1, -2, 1}));
  EXPECT_EQ(char_poly(kSol), (IntPoly{1, -3, 1}));
  EXPECT_EQ(char_poly(kA6), (IntPoly{-1, -6, 1}));
}

TEST(Matrix, CharPolyMatchesPermutationExpansion) {
  Rng rng(1);
  for (int n = 0; n < 150; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 5));
    IntMatrix m = testsupport::random_matrix(rng, d, d, 9);
    EXPECT_EQ(char_poly(m), from_big(oracle::char_poly_by_permutations(testsupport::to_zmat(m)))) << m.to_string();
  }
}

TEST(Matrix, CayleyHamilton) {
  Rng rng(2);
  for (int n = 0; n < 100; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 6));
    IntMatrix m = testsupport::random_matrix(rng, d, d, 20);
    EXPECT_TRUE(eval_poly(char_poly(m), m).is_zero()) << m.to_string();
  }
}

TEST(Matrix, DeterminantAgainstConstantTerm) {
  Rng rng(3);
  for (int n = 0; n < 100; ++n) {
    std::size_t d = static_cast<std::size_t>(draw(rng, 1, 6));
    IntMatrix m = testsupport::random_matrix(rng, d, d, 15);
    Int sign = d % 2 ? -1 : 1;
    EXPECT_EQ(char_poly(m).coeff(0), sign * m.det());
  }
  // on GL(d, Z) the constant term is +-1
  corpus::Rng c(4);
  for (int n = 0; n < 100; ++n) {
    IntMatrix m = corpus::random_gl(static_cast<std::size_t>(draw(rng, 1, 6)), c);
    EXPECT_EQ(abs(char_poly(m).coeff(0)), 1);
    EXPECT_EQ(m * m.inverse_unimodular(), IntMatrix::identity(m.dim()));
  }
}

TEST(Matrix, UnipotentExamples) {
  EXPECT_TRUE(is_unipotent(kJordan));
  EXPECT_TRUE(is_unipotent(IntMatrix::identity(4)));
  EXPECT_FALSE(is_unipotent(kRotation));
}

TEST(Matrix, QuasiUnipotentExamples) {
  auto r = is_quasi_unipotent(kRotation);
  EXPECT_TRUE(r.quasi_unipotent);
  EXPECT_EQ(r.witness, Int(4));
  auto j = is_quasi_unipotent(kJordan);
  EXPECT_TRUE(j.quasi_unipotent);
  EXPECT_EQ(j.witness, Int(1));
  EXPECT_FALSE(is_quasi_unipotent(kSol).quasi_unipotent);
  EXPECT_EQ(quasi_unipotent_exponent_bound(2), 12);
}

TEST(Matrix, QuasiUnipotentRoutesAgreeOnCorpus) {
  corpus::Rng rng(5);
  for (int n = 0; n < 200; ++n) {
    IntMatrix m = corpus::random_gl(static_cast<std::size_t>(2 + n % 5), rng);
    bool by_factors = quasi_unipotent_by_factors(m);
    auto by_powers = quasi_unipotent_by_powers(m);
    EXPECT_EQ(by_factors, by_powers.has_value()) << m.to_string();
    if (by_powers) { EXPECT_TRUE(is_unipotent(m.pow(by_powers->convert_to<std::uint64_t>()))); }
  }
}

TEST(Matrix, InvariantFactorExamples) {
  EXPECT_EQ(invariant_factors(IntMatrix::identity(2)), (std::vector<IntPoly>{{-1, 1}, {-1, 1}}));
  EXPECT_EQ(invariant_factors(kSol), (std::vector<IntPoly>{{1, -3, 1}}));
  IntMatrix b = IntMatrix::block_diag(kJordan, IntMatrix{{0, 1}, {1, 1}});
  // coprime blocks give a cyclic module: one factor (t-1)^2 (t^2-t-1)
  EXPECT_EQ(invariant_factors(b), (std::vector<IntPoly>{{-1, 1, 2, -3, 1}}));
  EXPECT_EQ(oracle::minimal_polynomial_degree(testsupport::to_zmat(b)), 4u);
}

TEST(Matrix, InvariantFactorChainOnCorpus) {
  corpus::Rng rng(6);
  for (int n = 0; n < 150; ++n) {
    IntMatrix m = corpus::random_gl(static_cast<std::size_t>(1 + n % 5), rng);
    auto fs = invariant_factors(m);
    IntPoly prod = IntPoly::constant(1);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      EXPECT_TRUE(fs[i].is_monic());
      prod *= fs[i];
      if (i + 1 < fs.size()) { EXPECT_TRUE(exact_divide(fs[i + 1], fs[i]).has_value()); }
    }
    EXPECT_EQ(prod, char_poly(m));
    // the last invariant factor is the minimal polynomial
    EXPECT_EQ(static_cast<std::size_t>(fs.back().degree()), oracle::minimal_polynomial_degree(testsupport::to_zmat(m)));
    EXPECT_TRUE(eval_poly(fs.back(), m).is_zero());
  }
}

TEST(Matrix, ReduceModPExamples) {
  EXPECT_EQ(reduce_mod_p(kA6, 3).to_string(), "[[0,1],[1,0]]");
  EXPECT_TRUE(reduce_mod_p(IntMatrix::identity(3), 7).is_identity());
  EXPECT_EQ(reduce_mod_p(kJordan, 2).to_string(), "[[1,1],[0,1]]");
  EXPECT_THROW(reduce_mod_p(kJordan, 4), InputError);
}

TEST(Matrix, OrderModPExamples) {
  EXPECT_EQ(order_mod_p(reduce_mod_p(IntMatrix{{0, 1}, {1, 0}}, 3)), 2);
  EXPECT_EQ(order_mod_p(reduce_mod_p(IntMatrix::identity(2), 5)), 1);
  EXPECT_EQ(order_mod_p(reduce_mod_p(kJordan, 2)), 2);
  EXPECT_TRUE(is_unipotent_mod_p(reduce_mod_p(kJordan, 2)));
  EXPECT_FALSE(is_unipotent_mod_p(reduce_mod_p(IntMatrix{{0, 1}, {1, 0}}, 3)));
  EXPECT_TRUE(is_unipotent_mod_p(reduce_mod_p(IntMatrix{{0, 1}, {1, 0}}, 2)));
}

TEST(Matrix, OrderDividesGroupOrderAndUnipotenceMatchesPPower) {
  corpus::Rng rng(7);
  for (int n = 0; n < 120; ++n) {
    IntMatrix m = corpus::random_gl(static_cast<std::size_t>(2 + n % 3), rng);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      ModMatrix r = reduce_mod_p(m, p);
      Int ord = order_mod_p(r);
      EXPECT_EQ(gl_order(m.dim(), p) % ord, 0);
      EXPECT_TRUE(r.pow(ord).is_identity());
      EXPECT_EQ(is_unipotent_mod_p(r), is_p_power(ord, p));
    }
  }
}

TEST(Matrix, RationalKernel) {
  IntMatrix m{{1, 2, 3}, {2, 4, 6}};
  auto k = rational_kernel(m);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) {
    for (const Int& x : m * v) EXPECT_EQ(x, 0);
  }
  EXPECT_TRUE(rational_kernel(IntMatrix::identity(3)).empty());
}
