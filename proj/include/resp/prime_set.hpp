#pragma once

#include "resp/integer.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace resp {

/// A set of primes: empty, a finite list, all primes but a finite list, or all.
class PrimeSet {
 public:
  enum class Kind { Empty, Finite, Cofinite, All };

  static PrimeSet empty() { return PrimeSet(Kind::Empty, {}); }
  static PrimeSet all() { return PrimeSet(Kind::All, {}); }

  /// Normalizes: an empty list becomes Empty.
  static PrimeSet finite(std::vector<Int> primes) {
    normalize(primes);
    if (primes.empty()) return empty();
    return PrimeSet(Kind::Finite, std::move(primes));
  }

  /// All primes except `excluded`; an empty exclusion list becomes All.
  static PrimeSet cofinite(std::vector<Int> excluded) {
    normalize(excluded);
    if (excluded.empty()) return all();
    return PrimeSet(Kind::Cofinite, std::move(excluded));
  }

  static PrimeSet all_but(const Int& p) { return cofinite({p}); }

  Kind kind() const { return kind_; }
  /// The listed primes (members for Finite, exclusions for Cofinite).
  const std::vector<Int>& primes() const { return primes_; }

  bool contains(const Int& p) const {
    switch (kind_) {
      case Kind::Empty:
        return false;
      case Kind::All:
        return true;
      case Kind::Finite:
        return std::binary_search(primes_.begin(), primes_.end(), p);
      case Kind::Cofinite:
        return !std::binary_search(primes_.begin(), primes_.end(), p);
    }
    return false;
  }

  /// Set inclusion.
  bool subset_of(const PrimeSet& other) const {
    if (kind_ == Kind::Empty || other.kind_ == Kind::All) return true;
    if (other.kind_ == Kind::Empty) return false;
    if (kind_ == Kind::Finite)
      return std::all_of(primes_.begin(), primes_.end(), [&](const Int& p) { return other.contains(p); });
    if (other.kind_ == Kind::Finite) return false;
    if (kind_ == Kind::All) return false;
    // Cofinite vs Cofinite: our exclusions must cover theirs.
    return std::all_of(other.primes_.begin(), other.primes_.end(),
                       [&](const Int& p) { return std::binary_search(primes_.begin(), primes_.end(), p); });
  }

  friend bool operator==(const PrimeSet& a, const PrimeSet& b) {
    return a.kind_ == b.kind_ && a.primes_ == b.primes_;
  }

  /// Grammar: `all`, `none`, `{2,3}`, `all-{5}` (also `all-{}` = all, `{}` = none).
  static PrimeSet parse(std::string_view spec) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    spec = trim(spec);
    if (spec == "all") return all();
    if (spec == "none") return empty();
    bool co = false;
    if (spec.substr(0, 4) == "all-") {
      co = true;
      spec = trim(spec.substr(4));
    }
    if (spec.size() < 2 || spec.front() != '{' || spec.back() != '}')
      throw InputError("bad prime set '" + std::string(spec) + "'; expected all, none, {p,...} or all-{p,...}");
    std::vector<Int> primes;
    std::string_view body = trim(spec.substr(1, spec.size() - 2));
    while (!body.empty()) {
      auto comma = body.find(',');
      Int p = parse_int(body.substr(0, comma));
      if (!is_prime(p)) throw InputError("not a prime: " + p.str());
      primes.push_back(p);
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    return co ? cofinite(std::move(primes)) : finite(std::move(primes));
  }

  std::string to_string() const {
    auto list = [&] {
      std::string s = "{";
      for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? "," : "") + primes_[i].str();
      return s + "}";
    };
    switch (kind_) {
      case Kind::Empty:
        return "none";
      case Kind::All:
        return "all";
      case Kind::Finite:
        return list();
      case Kind::Cofinite:
        return "all-" + list();
    }
    return {};
  }

 private:
  PrimeSet(Kind kind, std::vector<Int> primes) : kind_(kind), primes_(std::move(primes)) {}

  static void normalize(std::vector<Int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  Kind kind_;
  std::vector<Int> primes_;
};

/// True iff k != 0 and every prime divisor of k lies in `pi`.
inline bool is_pi_number(const Int& k, const PrimeSet& pi) {
  if (k == 0) return false;
  Int m = abs(k);
  if (m == 1) return true;
  switch (pi.kind()) {
    case PrimeSet::Kind::Empty:
      return false;
    case PrimeSet::Kind::All:
      return true;
    case PrimeSet::Kind::Finite:
      for (const Int& p : pi.primes())
        while (m % p == 0) m /= p;
      return m == 1;
    case PrimeSet::Kind::Cofinite:
      for (const Int& p : pi.primes())
        if (m % p == 0) return false;
      return true;
  }
  return false;
}

/// Removes from |n| every prime factor that lies in `pi`.
inline Int strip_pi_part(const Int& n, const PrimeSet& pi) {
  Int m = abs(n);
  if (m == 0) return 0;
  switch (pi.kind()) {
    case PrimeSet::Kind::Empty:
      return m;
    case PrimeSet::Kind::All:
      return 1;
    case PrimeSet::Kind::Finite:
      for (const Int& p : pi.primes())
        while (m % p == 0) m /= p;
      return m;
    case PrimeSet::Kind::Cofinite: {
      Int kept = 1;
      for (const Int& p : pi.primes())
        while (m % p == 0) {
          m /= p;
          kept *= p;
        }
      return kept;
    }
  }
  return m;
}

}  // namespace resp
