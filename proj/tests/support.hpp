#pragma once

#include "resp/corpus.hpp"
#include "resp/matrix.hpp"
#include "resp/poly.hpp"

#include "oracles/brute.hpp"

#include <random>
#include <vector>

namespace testsupport {

using resp::Int;
using resp::IntMatrix;
using resp::IntPoly;
using Rng = std::mt19937_64;

inline std::int64_t draw(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Random polynomial of exact degree deg with coefficients in [-bound, bound].
inline IntPoly random_poly(Rng& rng, int deg, std::int64_t bound) {
  std::vector<Int> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = draw(rng, -bound, bound);
  while (c.back() == 0) c.back() = draw(rng, -bound, bound);
  return IntPoly(std::move(c));
}

/// Random polynomial built as a product of small factors, so factorizations are nontrivial.
inline IntPoly random_product(Rng& rng, int max_deg, std::int64_t bound) {
  IntPoly p = IntPoly::constant(draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1));
  int deg = 0;
  while (deg < max_deg) {
    int d = static_cast<int>(draw(rng, 1, std::min(3, max_deg - deg)));
    IntPoly f = random_poly(rng, d, 3);
    IntPoly next = p * f;
    bool small = true;
    for (const auto& c : next.coeffs()) small = small && resp::abs(c) <= bound;
    if (!small) break;
    p = next;
    deg += d;
    if (draw(rng, 0, 2) == 0) break;
  }
  return p;
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound) {
  std::vector<resp::IntVector> r(rows, resp::IntVector(cols));
  for (auto& row : r)
    for (auto& x : row) x = draw(rng, -bound, bound);
  return IntMatrix::from_rows(r, cols);
}

inline oracle::ZMat to_zmat(const IntMatrix& m) {
  oracle::ZMat z(m.rows(), std::vector<oracle::BigZ>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) z[i][j] = m(i, j);
  return z;
}

inline oracle::ZMat to_zmat(const std::vector<resp::IntVector>& rows) {
  oracle::ZMat z;
  for (const auto& r : rows) z.emplace_back(r.begin(), r.end());
  return z;
}

}  // namespace testsupport
