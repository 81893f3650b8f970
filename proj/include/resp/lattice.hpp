#pragma once

#include "resp/factor.hpp"
#include "resp/integer.hpp"
#include "resp/matrix.hpp"
#include "resp/prime_set.hpp"

#include <string>
#include <utility>
#include <vector>

namespace resp {

namespace detail {

/// Row Hermite normal form in place: upper echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot). Zero rows are dropped.
inline void hermite_in_place(std::vector<IntVector>& rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[r][c];
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows.size() || rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& v : rows[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      Int q = rows[i][c] / rows[r][c];
      if (rows[i][c] - q * rows[r][c] < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
}

}  // namespace detail

/// Subgroup of Z^d stored by its canonical row Hermite basis.
class Lattice {
 public:
  Lattice() = default;

  static Lattice from_generators(std::vector<IntVector> gens, std::size_t d) {
    for (const auto& g : gens)
      if (g.size() != d) throw InputError("generator length does not match ambient dimension");
    detail::hermite_in_place(gens, d);
    Lattice l;
    l.d_ = d;
    l.basis_ = std::move(gens);
    return l;
  }
  static Lattice zero(std::size_t d) { return from_generators({}, d); }
  static Lattice full(std::size_t d) { return from_generators(IntMatrix::identity(d).row_list(), d); }

  std::size_t ambient() const { return d_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<IntVector>& basis() const { return basis_; }

  bool contains(IntVector x) const {
    if (x.size() != d_) throw InputError("vector length does not match ambient dimension");
    std::size_t col = 0;
    for (const IntVector& row : basis_) {
      std::size_t pc = col;
      while (row[pc] == 0) ++pc;
      for (; col < pc; ++col)
        if (x[col] != 0) return false;
      if (x[pc] % row[pc] != 0) return false;
      Int q = x[pc] / row[pc];
      for (std::size_t j = pc; j < d_; ++j) x[j] -= q * row[j];
      col = pc + 1;
    }
    for (; col < d_; ++col)
      if (x[col] != 0) return false;
    return true;
  }

  bool contains(const Lattice& other) const {
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  /// Absolute index [Z^d : L] for full-rank lattices; 0 when rank < d.
  Int index() const {
    if (rank() < d_) return 0;
    Int prod = 1;
    for (std::size_t i = 0; i < d_; ++i) prod *= basis_[i][i];
    return prod;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.d_ == b.d_ && a.basis_ == b.basis_; }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      s += i ? ", (" : "(";
      for (std::size_t j = 0; j < d_; ++j) s += (j ? "," : "") + basis_[i][j].str();
      s += ")";
    }
    return s + ">";
  }

 private:
  std::size_t d_ = 0;
  std::vector<IntVector> basis_;
};

inline Lattice hnf_from_generators(std::vector<IntVector> gens, std::size_t d) {
  return Lattice::from_generators(std::move(gens), d);
}

/// Smith decomposition of a lattice: L = span(divisors[i] * frame[i]) where the frame rows
/// extend to a basis of Z^d and span(frame) = span_Q(L) cap Z^d.
struct SmithFrame {
  std::vector<Int> divisors;       // d_1 | d_2 | ... | d_r, positive
  std::vector<IntVector> frame;    // r primitive frame vectors
};

inline SmithFrame smith_frame(const Lattice& lat) {
  const std::size_t r = lat.rank(), d = lat.ambient();
  std::vector<IntVector> b = lat.basis();
  std::vector<IntVector> v = IntMatrix::identity(d).row_list();  // inverse of accumulated column ops

  auto col_addmul = [&](std::size_t j, std::size_t k, const Int& q) {  // col_j += q col_k
    for (std::size_t i = 0; i < r; ++i) b[i][j] += q * b[i][k];
    for (std::size_t x = 0; x < d; ++x) v[k][x] -= q * v[j][x];
  };
  auto col_swap = [&](std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < r; ++i) std::swap(b[i][j], b[i][k]);
    std::swap(v[j], v[k]);
  };

  for (std::size_t k = 0; k < r; ++k) {
    while (true) {
      std::size_t pi = r, pj = d;
      for (std::size_t i = k; i < r; ++i)
        for (std::size_t j = k; j < d; ++j)
          if (b[i][j] != 0 && (pi == r || abs(b[i][j]) < abs(b[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == r) throw InconsistencyError("Hermite basis is rank deficient");
      std::swap(b[k], b[pi]);
      if (pj != k) col_swap(k, pj);
      bool clean = true;
      for (std::size_t i = k + 1; i < r; ++i) {
        if (b[i][k] == 0) continue;
        Int q = b[i][k] / b[k][k];
        for (std::size_t j = k; j < d; ++j) b[i][j] -= q * b[k][j];
        if (b[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < d; ++j) {
        if (b[k][j] == 0) continue;
        Int q = b[k][j] / b[k][k];
        col_addmul(j, k, -q);
        if (b[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = k + 1; i < r && divides; ++i)
        for (std::size_t j = k + 1; j < d; ++j)
          if (b[i][j] % b[k][k] != 0) {
            for (std::size_t c = k; c < d; ++c) b[k][c] += b[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  SmithFrame out;
  for (std::size_t k = 0; k < r; ++k) {
    out.divisors.push_back(abs(b[k][k]));
    out.frame.push_back(v[k]);
  }
  return out;
}

/// Elementary divisors of L inside its saturation span_Q(L) cap Z^d.
inline std::vector<Int> elementary_divisors(const Lattice& lat) { return smith_frame(lat).divisors; }

/// {x in Z^d : k x in L for some pi-number k}.
inline Lattice pi_saturate(const Lattice& lat, const PrimeSet& pi) {
  if (lat.is_zero()) return lat;
  SmithFrame sf = smith_frame(lat);
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < sf.frame.size(); ++i) {
    Int keep = strip_pi_part(sf.divisors[i], pi);
    IntVector g = sf.frame[i];
    for (auto& x : g) x *= keep;
    gens.push_back(std::move(g));
  }
  return Lattice::from_generators(std::move(gens), lat.ambient());
}

inline Lattice saturate(const Lattice& lat) { return pi_saturate(lat, PrimeSet::all()); }

/// L1 cap L2, via the Hermite form of [[B1, B1], [B2, 0]]: rows with vanishing left half
/// span {0} x (L1 cap L2).
inline Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) throw InputError("lattices live in different ambient dimensions");
  const std::size_t d = a.ambient();
  std::vector<IntVector> rows;
  for (const auto& v : a.basis()) {
    IntVector r(v);
    r.insert(r.end(), v.begin(), v.end());
    rows.push_back(std::move(r));
  }
  for (const auto& v : b.basis()) {
    IntVector r(v);
    r.resize(2 * d);
    rows.push_back(std::move(r));
  }
  detail::hermite_in_place(rows, 2 * d);
  std::vector<IntVector> gens;
  for (const auto& r : rows) {
    bool left_zero = std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d), [](const Int& x) { return x == 0; });
    if (left_zero) gens.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(d), r.end());
  }
  return Lattice::from_generators(std::move(gens), d);
}

/// Image of L under the linear map M (acting on column vectors).
inline Lattice image(const IntMatrix& m, const Lattice& lat) {
  std::vector<IntVector> gens;
  for (const auto& v : lat.basis()) gens.push_back(m * v);
  return Lattice::from_generators(std::move(gens), m.rows());
}

/// omega^n A = (phi - I)^n Z^d, computed by applying phi - I n times to a Hermite basis.
inline Lattice omega_power(const IntMatrix& phi, std::size_t n) {
  require_automorphism(phi);
  IntMatrix shift = phi - IntMatrix::identity(phi.dim());
  Lattice l = Lattice::full(phi.dim());
  for (std::size_t i = 0; i < n && !l.is_zero(); ++i) l = image(shift, l);
  return l;
}

/// The omega-adic chain omega^0 A, omega^1 A, ..., omega^n A.
inline std::vector<Lattice> omega_chain(const IntMatrix& phi, std::size_t n) {
  require_automorphism(phi);
  IntMatrix shift = phi - IntMatrix::identity(phi.dim());
  std::vector<Lattice> chain{Lattice::full(phi.dim())};
  for (std::size_t i = 0; i < n; ++i) chain.push_back(image(shift, chain.back()));
  return chain;
}

/// N_pi = Z^d cap (sum over irreducible factors P of P_phi with P in S_pi of the rational
/// generalized kernel of P(phi)^mult). Zero exactly when A is S_pi-torsion-free.
inline Lattice torsion_kernel(const IntMatrix& phi, const PrimeSet& pi, FactorOptions opts = {}) {
  require_automorphism(phi);
  Factorization fac = factor_over_Z(char_poly(phi), opts);
  std::vector<IntVector> gens;
  for (const auto& [p, mult] : fac.factors) {
    if (!in_S_pi(p, pi)) continue;
    IntMatrix k = eval_poly(p.pow(mult), phi);
    for (auto& v : rational_kernel(k)) gens.push_back(std::move(v));
  }
  return saturate(Lattice::from_generators(std::move(gens), phi.dim()));
}

}  // namespace resp
