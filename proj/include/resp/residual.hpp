#pragma once

#include "resp/factor.hpp"
#include "resp/integer.hpp"
#include "resp/lattice.hpp"
#include "resp/matrix.hpp"
#include "resp/poly.hpp"
#include "resp/prime_set.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace resp {

/// Residual properties of G = Z x|_phi Z^d read off the irreducible factors of P_phi.
/// Factors once; every criterion below is a question about their augmentations.
class MappingTorusCriteria {
 public:
  explicit MappingTorusCriteria(IntMatrix phi, FactorOptions opts = {}) : phi_(std::move(phi)), opts_(opts) {
    require_automorphism(phi_);
    char_poly_ = resp::char_poly(phi_);
    factorization_ = factor_over_Z(char_poly_, opts_);
    for (const auto& f : factorization_.factors) augmentations_.push_back(f.first.eval_at_one());
  }

  const IntMatrix& phi() const { return phi_; }
  const IntPoly& char_poly() const { return char_poly_; }
  const Factorization& factorization() const { return factorization_; }
  /// epsilon(P) for each distinct irreducible factor P, in factorization order.
  const std::vector<Int>& augmentations() const { return augmentations_; }
  const FactorOptions& options() const { return opts_; }

  bool residually_p(const Int& p) const {
    require_prime(p);
    return std::all_of(augmentations_.begin(), augmentations_.end(), [&](const Int& e) { return e % p == 0; });
  }

  PrimeSet good_primes() const {
    Int g = 0;
    for (const Int& e : augmentations_) {
      if (abs(e) == 1) return PrimeSet::empty();
      g = gcd(g, e);
    }
    if (g == 0) return PrimeSet::all();
    return PrimeSet::finite(prime_divisors(g));
  }

  /// No irreducible factor of P_phi lies in S_pi.
  bool residually_pi_tf_nilpotent(const PrimeSet& pi) const {
    return std::none_of(augmentations_.begin(), augmentations_.end(), [&](const Int& e) { return is_pi_number(e, pi); });
  }

  /// epsilon(P) != +-1 for every irreducible factor P.
  bool residually_nilpotent() const {
    return std::none_of(augmentations_.begin(), augmentations_.end(), [](const Int& e) { return abs(e) == 1; });
  }

  /// P_phi is a power of t - 1.
  bool residually_tf_nilpotent() const {
    return factorization_.factors.size() == 1 && factorization_.factors[0].first == IntPoly{-1, 1};
  }

 private:
  static void require_prime(const Int& p) {
    if (!is_prime(p)) throw InputError(p.str() + " is not prime");
  }

  IntMatrix phi_;
  FactorOptions opts_;
  IntPoly char_poly_;
  Factorization factorization_;
  std::vector<Int> augmentations_;
};

inline bool residually_p(const IntMatrix& phi, const Int& p) { return MappingTorusCriteria(phi).residually_p(p); }
inline PrimeSet good_primes(const IntMatrix& phi) { return MappingTorusCriteria(phi).good_primes(); }
inline bool residually_nilpotent(const IntMatrix& phi) { return MappingTorusCriteria(phi).residually_nilpotent(); }
inline bool residually_tf_nilpotent(const IntMatrix& phi) { return MappingTorusCriteria(phi).residually_tf_nilpotent(); }
inline bool residually_pi_tf_nilpotent(const IntMatrix& phi, const PrimeSet& pi) {
  return MappingTorusCriteria(phi).residually_pi_tf_nilpotent(pi);
}

/// Least n >= 0 with (phi - I)^n = 0, if phi is unipotent.
inline std::optional<std::size_t> unipotency_index(const IntMatrix& phi) {
  require_automorphism(phi);
  std::size_t d = phi.dim();
  IntMatrix shift = phi - IntMatrix::identity(d);
  IntMatrix power = IntMatrix::identity(d);
  for (std::size_t n = 0; n <= d; ++n) {
    if (power.is_zero()) return n;
    power = power * shift;
  }
  return std::nullopt;
}

/// Bounds [lo, hi] on the nilpotency class of G when phi is unipotent: with n0 the unipotency
/// index, omega^(n0-1) A != 0 lies in gamma_n0(G) and gamma_(n0+2)(G) lies in omega^n0 A = 0.
inline std::optional<std::pair<std::size_t, std::size_t>> nilpotency_class_interval(const IntMatrix& phi) {
  auto n0 = unipotency_index(phi);
  if (!n0) return std::nullopt;
  return std::make_pair(std::max<std::size_t>(*n0, 1), *n0 + 1);
}

struct ModPAnalysis {
  std::uint64_t p = 0;
  Int order;                   // order of phi mod p in GL(d, p)
  bool unipotent_mod_p = false;
  bool gbar_residually_p = false;
  bool residually_p = false;
  bool reverse_gap = false;    // G residually p while Gbar is not

  friend bool operator==(const ModPAnalysis&, const ModPAnalysis&) = default;
};

inline ModPAnalysis mod_p_analysis(const MappingTorusCriteria& crit, std::uint64_t p) {
  ModMatrix reduced = reduce_mod_p(crit.phi(), p);
  ModPAnalysis out;
  out.p = p;
  out.order = order_mod_p(reduced);
  out.unipotent_mod_p = is_unipotent_mod_p(reduced);
  out.gbar_residually_p = out.unipotent_mod_p;
  out.residually_p = crit.residually_p(Int(p));
  out.reverse_gap = out.residually_p && !out.gbar_residually_p;
  return out;
}

inline ModPAnalysis mod_p_analysis(const IntMatrix& phi, std::uint64_t p) {
  return mod_p_analysis(MappingTorusCriteria(phi), p);
}

/// Sol torus-bundle monodromy in dimension 2: det 1 and trace > 2.
inline bool sol_check(const IntMatrix& phi) {
  if (!phi.square() || phi.dim() != 2) throw InputError("sol_check needs a 2x2 matrix");
  return phi.det() == 1 && phi.trace() > 2;
}

struct OracleVerdict {
  PrimeSet pi = PrimeSet::empty();
  bool criterion = false;     // residually pi-torsion-free nilpotent, factor route
  bool kernel_zero = false;   // torsion kernel N_pi = 0, lattice route
  bool agree() const { return criterion == kernel_zero; }

  friend bool operator==(const OracleVerdict&, const OracleVerdict&) = default;
};

inline OracleVerdict oracle_verdict(const MappingTorusCriteria& crit, const PrimeSet& pi) {
  return {pi, crit.residually_pi_tf_nilpotent(pi), torsion_kernel(crit.phi(), pi, crit.options()).is_zero()};
}

struct ResidualReport {
  IntMatrix phi;
  IntPoly char_poly;
  Factorization factorization;
  std::vector<IntPoly> invariant_factors;
  PrimeSet good_primes = PrimeSet::empty();
  bool residually_nilpotent = false;
  bool residually_tf_nilpotent = false;
  bool unipotent = false;
  bool quasi_unipotent = false;
  std::optional<Int> quasi_unipotent_witness;
  bool virtually_res_all_p = false;
  std::optional<std::pair<std::size_t, std::size_t>> nilpotency_class_interval;
  std::vector<ModPAnalysis> mod_p;
  std::optional<bool> sol_flag;
  std::vector<OracleVerdict> oracle;
  std::vector<std::string> violations;  // empty iff every report invariant holds

  bool consistent() const { return violations.empty(); }
  friend bool operator==(const ResidualReport&, const ResidualReport&) = default;
};

inline const std::vector<std::uint64_t>& default_report_primes() {
  static const std::vector<std::uint64_t> primes{2, 3, 5, 7};
  return primes;
}

inline std::vector<PrimeSet> default_oracle_prime_sets() {
  return {PrimeSet::empty(), PrimeSet::all_but(2), PrimeSet::all_but(3), PrimeSet::all_but(5)};
}

/// Fills every report field and records each violated invariant in `violations`.
inline ResidualReport analyze(const IntMatrix& phi, const std::vector<std::uint64_t>& primes = default_report_primes(),
                              FactorOptions opts = {}) {
  require_automorphism(phi);
  MappingTorusCriteria crit(phi, opts);
  ResidualReport r;
  r.phi = phi;
  r.char_poly = crit.char_poly();
  r.factorization = crit.factorization();
  r.invariant_factors = invariant_factors(phi);
  r.good_primes = crit.good_primes();
  r.residually_nilpotent = crit.residually_nilpotent();
  r.residually_tf_nilpotent = crit.residually_tf_nilpotent();
  r.unipotent = is_unipotent(phi);
  QuasiUnipotence qu = is_quasi_unipotent(phi, opts);
  r.quasi_unipotent = qu.quasi_unipotent;
  r.quasi_unipotent_witness = qu.witness;
  // G_{k,1} = Z x|_{phi^k} Z^d is a finite-index subgroup; it is residually p for all p iff phi^k is unipotent.
  if (qu.witness) {
    IntMatrix phik = phi.pow(qu.witness->convert_to<std::uint64_t>());
    r.virtually_res_all_p = MappingTorusCriteria(phik, opts).good_primes().kind() == PrimeSet::Kind::All;
  }
  r.nilpotency_class_interval = nilpotency_class_interval(phi);
  for (std::uint64_t p : primes) r.mod_p.push_back(mod_p_analysis(crit, p));
  if (phi.dim() == 2) r.sol_flag = sol_check(phi);
  for (const PrimeSet& pi : default_oracle_prime_sets()) r.oracle.push_back(oracle_verdict(crit, pi));

  auto& v = r.violations;
  const bool all_primes = r.good_primes.kind() == PrimeSet::Kind::All;
  if (r.unipotent != all_primes) v.push_back("unipotent differs from good_primes = all");
  if (r.unipotent != r.residually_tf_nilpotent) v.push_back("unipotent differs from residually_tf_nilpotent");
  if (r.good_primes.kind() == PrimeSet::Kind::Cofinite) v.push_back("good_primes is cofinite");
  if (r.quasi_unipotent != r.virtually_res_all_p) v.push_back("quasi_unipotent differs from virtually_res_all_p");
  if (r.unipotent != r.nilpotency_class_interval.has_value()) v.push_back("class interval presence differs from unipotence");
  if (r.nilpotency_class_interval && r.nilpotency_class_interval->second > phi.dim() + 1)
    v.push_back("nilpotency class bound exceeds d+1");
  if (r.residually_nilpotent != crit.residually_pi_tf_nilpotent(PrimeSet::empty()))
    v.push_back("residually_nilpotent differs from pi = empty criterion");
  for (const auto& row : r.mod_p) {
    if (row.gbar_residually_p && !r.good_primes.contains(Int(row.p)))
      v.push_back("Gbar residually " + std::to_string(row.p) + " but p is not a good prime");
    if (row.residually_p != crit.residually_pi_tf_nilpotent(PrimeSet::all_but(Int(row.p))))
      v.push_back("residually_p differs from pi = all-{" + std::to_string(row.p) + "} criterion");
    if (row.residually_p != r.good_primes.contains(Int(row.p)))
      v.push_back("residually_p differs from good_primes membership at " + std::to_string(row.p));
  }
  if (r.sol_flag && *r.sol_flag && r.virtually_res_all_p) v.push_back("Sol monodromy reported virtually residually p for all p");
  for (const auto& o : r.oracle)
    if (!o.agree()) v.push_back("criterion and torsion kernel disagree for pi = " + o.pi.to_string());
  IntPoly prod = IntPoly::constant(1);
  for (const auto& f : r.invariant_factors) prod *= f;
  if (prod != r.char_poly) v.push_back("invariant factors do not multiply to the characteristic polynomial");
  return r;
}

}  // namespace resp
