#pragma once

#include "resp/integer.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace resp::fg {

/// Permutation of {0, ..., n-1}; images()[x] is the image of x.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
      if (v >= img_.size() || seen[v]) throw InputError("image array is not a permutation");
      seen[v] = true;
    }
  }
  static Perm identity(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>(i);
    return Perm(std::move(v));
  }
  /// Product from cycles, e.g. {{0,1},{2,3}} on n points.
  static Perm from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::vector<std::uint32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>(i);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) v[c[i]] = c[(i + 1) % c.size()];
    return Perm(std::move(v));
  }

  std::size_t degree() const { return img_.size(); }
  const std::vector<std::uint32_t>& images() const { return img_; }
  std::uint32_t operator[](std::size_t x) const { return img_[x]; }

  /// Left-to-right product: apply *this first, then b.
  Perm operator*(const Perm& b) const {
    std::vector<std::uint32_t> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[i] = b.img_[img_[i]];
    Perm r;
    r.img_ = std::move(v);
    return r;
  }
  Perm inverse() const {
    std::vector<std::uint32_t> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[img_[i]] = static_cast<std::uint32_t>(i);
    Perm r;
    r.img_ = std::move(v);
    return r;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<std::uint32_t> img_;
};

/// Set of elements of a parent PermGroup, by element index.
using ElementSet = boost::dynamic_bitset<>;

/// A subgroup of a materialized PermGroup.
struct Subgroup {
  ElementSet members;

  std::size_t order() const { return members.count(); }
  bool contains(std::size_t e) const { return members.test(e); }
  bool operator==(const Subgroup& o) const { return members == o.members; }
  bool operator<(const Subgroup& o) const { return members < o.members; }
};

inline constexpr std::size_t kDefaultOrderCap = 20160;

/// Finite permutation group with its full element list materialized at construction.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t order_cap = kDefaultOrderCap)
      : degree_(degree), gens_(std::move(generators)) {
    for (const auto& g : gens_)
      if (g.degree() != degree_) throw InputError("generator degree does not match group degree");
    Perm id = Perm::identity(degree_);
    index_.emplace(id, 0);
    elements_.push_back(id);
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      for (const auto& g : gens_) {
        Perm p = elements_[head] * g;
        if (index_.emplace(p, elements_.size()).second) {
          elements_.push_back(std::move(p));
          if (elements_.size() > order_cap)
            throw InputError("group order exceeds cap of " + std::to_string(order_cap));
        }
      }
    }
    const std::size_t n = elements_.size();
    inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) inverse_[i] = index_.at(elements_[i].inverse());
    if (n <= kTableLimit) {
      table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = static_cast<std::uint32_t>(index_.at(elements_[i] * elements_[j]));
    }
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& generators() const { return gens_; }
  const Perm& element(std::size_t i) const { return elements_[i]; }
  std::size_t identity_index() const { return 0; }

  std::optional<std::size_t> find(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const Perm& p) const {
    auto i = find(p);
    if (!i) throw InputError("permutation is not an element of the group");
    return *i;
  }

  std::size_t mul(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a * order() + b];
    return index_.at(elements_[a] * elements_[b]);
  }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  /// g^-1 h g
  std::size_t conj(std::size_t h, std::size_t g) const { return mul(mul(inv(g), h), g); }

  Subgroup whole() const {
    Subgroup s{ElementSet(order())};
    s.members.set();
    return s;
  }
  Subgroup trivial() const {
    Subgroup s{ElementSet(order())};
    s.members.set(0);
    return s;
  }

  /// Subgroup generated by the given element indices.
  Subgroup generate(const std::vector<std::size_t>& gens) const {
    Subgroup s = trivial();
    std::vector<std::size_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t g : gens) {
        std::size_t p = mul(queue[head], g);
        if (!s.members.test(p)) {
          s.members.set(p);
          queue.push_back(p);
        }
      }
    return s;
  }

  Subgroup subgroup(const std::vector<Perm>& gens) const {
    std::vector<std::size_t> idx;
    for (const auto& g : gens) idx.push_back(index_of(g));
    return generate(idx);
  }

  std::vector<std::size_t> elements_of(const Subgroup& h) const {
    std::vector<std::size_t> out;
    for (auto i = h.members.find_first(); i != ElementSet::npos; i = h.members.find_next(i)) out.push_back(i);
    return out;
  }

 private:
  static constexpr std::size_t kTableLimit = 1024;

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::vector<Perm> elements_;
  std::map<Perm, std::size_t> index_;
  std::vector<std::size_t> inverse_;
  std::vector<std::uint32_t> table_;
};

inline std::size_t index(const PermGroup& g, const Subgroup& h) { return g.order() / h.order(); }

inline bool is_subgroup_of(const Subgroup& h, const Subgroup& k) { return h.members.is_subset_of(k.members); }

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) { return {a.members & b.members}; }

inline Subgroup conjugate(const PermGroup& g, const Subgroup& h, std::size_t x) {
  Subgroup c{ElementSet(g.order())};
  for (std::size_t e : g.elements_of(h)) c.members.set(g.conj(e, x));
  return c;
}

/// H normal in K (both subgroups of g, H <= K).
inline bool is_normal_in(const PermGroup& g, const Subgroup& h, const Subgroup& k) {
  if (!is_subgroup_of(h, k)) return false;
  auto hs = g.elements_of(h);
  for (std::size_t x : g.elements_of(k))
    for (std::size_t e : hs)
      if (!h.contains(g.conj(e, x))) return false;
  return true;
}

inline bool is_normal(const PermGroup& g, const Subgroup& h) { return is_normal_in(g, h, g.whole()); }

/// H_G: intersection of all conjugates of H.
inline Subgroup core(const PermGroup& g, const Subgroup& h) {
  Subgroup c = h;
  for (std::size_t x = 0; x < g.order(); ++x) c.members &= conjugate(g, h, x).members;
  return c;
}

inline Subgroup normalizer(const PermGroup& g, const Subgroup& h) {
  Subgroup n{ElementSet(g.order())};
  for (std::size_t x = 0; x < g.order(); ++x)
    if (conjugate(g, h, x) == h) n.members.set(x);
  return n;
}

/// Number of distinct conjugates of H, by enumeration.
inline std::size_t conjugate_count(const PermGroup& g, const Subgroup& h) {
  std::set<Subgroup> seen;
  for (std::size_t x = 0; x < g.order(); ++x) seen.insert(conjugate(g, h, x));
  return seen.size();
}

/// Smallest normal subgroup of K containing H (H <= K).
inline Subgroup normal_closure_in(const PermGroup& g, const Subgroup& h, const Subgroup& k) {
  std::vector<std::size_t> gens;
  auto ks = g.elements_of(k);
  for (std::size_t e : g.elements_of(h))
    for (std::size_t x : ks) gens.push_back(g.conj(e, x));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return g.generate(gens);
}

/// Ascending chain H = H_0 <| H_1 <| ... <| H_n = G when H is subnormal. Uses the
/// descending series K_0 = G, K_{i+1} = normal closure of H in K_i, which stabilizes at H
/// exactly when H is subnormal.
inline std::optional<std::vector<Subgroup>> is_subnormal(const PermGroup& g, const Subgroup& h) {
  std::vector<Subgroup> series{g.whole()};
  while (true) {
    Subgroup next = normal_closure_in(g, h, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  if (!(series.back() == h)) return std::nullopt;
  std::reverse(series.begin(), series.end());
  return series;
}

/// Chain H = H_0 <| H_1 <| ... <| H_n = G with every [H_{i+1} : H_i] = p.
inline std::vector<Subgroup> p_refined_chain(const PermGroup& g, const Subgroup& h, std::uint64_t p) {
  if (!is_prime_u64(p)) throw InputError("p must be prime");
  std::size_t idx = index(g, h);
  for (std::size_t n = idx; n > 1; n /= p)
    if (n % p) throw InputError("[G:H] is not a power of p");
  auto series = is_subnormal(g, h);
  if (!series) throw InputError("H is not subnormal in G");
  std::vector<Subgroup> chain{h};
  for (std::size_t s = 0; s + 1 < series->size(); ++s) {
    const Subgroup& top = (*series)[s + 1];
    Subgroup k = chain.back();
    auto top_elems = g.elements_of(top);
    while (!(k == top)) {
      // x in top \ k, central of order p modulo k
      std::optional<std::size_t> pick;
      for (std::size_t x : top_elems) {
        if (k.contains(x)) continue;
        std::size_t xp = 0;
        for (std::uint64_t i = 0; i < p; ++i) xp = g.mul(xp, x);
        if (!k.contains(xp)) continue;
        bool central = std::all_of(top_elems.begin(), top_elems.end(), [&](std::size_t y) {
          return k.contains(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
        });
        if (central) {
          pick = x;
          break;
        }
      }
      if (!pick) throw InconsistencyError("no central element of order p in a p-group quotient");
      std::vector<std::size_t> gens = g.elements_of(k);
      gens.push_back(*pick);
      k = g.generate(gens);
      chain.push_back(k);
    }
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i + 1].order() != p * chain[i].order() || !is_normal_in(g, chain[i], chain[i + 1]))
      throw InconsistencyError("refined chain failed verification");
  }
  return chain;
}

struct KeyLemmaCheck {
  Int lhs;  // [G : H_G]
  Int rhs;  // [G : H]^[G : N_G(H)]
  bool divides = false;
};

/// [G : H_G] divides [G : H]^[G : N_G(H)] (guaranteed for subnormal H; evaluated for any H).
inline KeyLemmaCheck key_lemma_check(const PermGroup& g, const Subgroup& h) {
  KeyLemmaCheck out;
  out.lhs = Int(index(g, core(g, h)));
  out.rhs = pow(Int(index(g, h)), index(g, normalizer(g, h)));
  out.divides = out.rhs % out.lhs == 0;
  return out;
}

/// For subnormal H_i: [K : H cap K] | [G : H] and [G : H cap K] | [G : H][G : K] for every pair,
/// and [G : H_1 cap ... cap H_m] | prod [G : H_i] for the whole list.
inline bool intersection_checks(const PermGroup& g, const std::vector<Subgroup>& hs) {
  for (const auto& h : hs) {
    if (!is_subnormal(g, h)) throw InputError("intersection_checks needs subnormal subgroups");
    for (const auto& k : hs) {
      Subgroup hk = intersection(h, k);
      if (index(g, h) % (k.order() / hk.order()) != 0) return false;
      if ((index(g, h) * index(g, k)) % index(g, hk) != 0) return false;
    }
  }
  if (hs.empty()) return true;
  Subgroup all = hs.front();
  Int prod = 1;
  for (const auto& h : hs) {
    all = intersection(all, h);
    prod *= index(g, h);
  }
  return prod % index(g, all) == 0;
}

/// Every subgroup of g, by closing under adjoining one element at a time.
inline std::vector<Subgroup> all_subgroups(const PermGroup& g, std::size_t order_limit = 2048) {
  if (g.order() > order_limit) throw InputError("group too large for exhaustive subgroup enumeration");
  std::set<Subgroup> seen;
  std::vector<std::pair<Subgroup, std::vector<std::size_t>>> queue;
  Subgroup triv = g.trivial();
  seen.insert(triv);
  queue.emplace_back(triv, std::vector<std::size_t>{});
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [s, gens] = queue[head];
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (s.contains(x)) continue;
      auto next_gens = gens;
      next_gens.push_back(x);
      Subgroup t = g.generate(next_gens);
      if (seen.insert(t).second) queue.emplace_back(std::move(t), std::move(next_gens));
    }
  }
  return {seen.begin(), seen.end()};
}

inline bool is_p_power(std::size_t n, std::uint64_t p) {
  while (n > 1 && n % p == 0) n /= p;
  return n == 1;
}

struct WeakResidualCheck {
  std::optional<Subgroup> subnormal_witness;  // subnormal, p-power index, avoids g
  std::optional<Subgroup> normal_witness;     // normal, p-power index, avoids g
  bool core_witness_valid = true;             // core of the subnormal witness is itself a normal witness
  bool agree = false;
};

/// Exhaustive search for subnormal and normal p-power-index subgroups avoiding g.
inline WeakResidualCheck weakly_resp_check(const PermGroup& g, std::uint64_t p, std::size_t element,
                                           const std::vector<Subgroup>& subgroups) {
  if (element == g.identity_index()) throw InputError("g must be nontrivial");
  WeakResidualCheck out;
  for (const auto& h : subgroups) {
    if (h.contains(element) || !is_p_power(index(g, h), p)) continue;
    if (!out.normal_witness && is_normal(g, h)) out.normal_witness = h;
    if (!out.subnormal_witness && is_subnormal(g, h)) out.subnormal_witness = h;
    if (out.normal_witness && out.subnormal_witness) break;
  }
  if (out.subnormal_witness) {
    Subgroup c = core(g, *out.subnormal_witness);
    out.core_witness_valid = is_normal(g, c) && is_p_power(index(g, c), p) && !c.contains(element);
  }
  out.agree = out.subnormal_witness.has_value() == out.normal_witness.has_value() && out.core_witness_valid;
  return out;
}

inline WeakResidualCheck weakly_resp_check(const PermGroup& g, std::uint64_t p, std::size_t element) {
  return weakly_resp_check(g, p, element, all_subgroups(g));
}

struct SuiteResult {
  std::size_t subgroups = 0;
  std::size_t subnormal = 0;
  std::size_t key_lemma_checked = 0;
  std::size_t chains_checked = 0;
  std::size_t intersection_sets = 0;
  std::size_t weak_checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Exhaustive run over every subgroup of g: core maximality, conjugate counts, key lemma on
/// subnormal subgroups, refined chains, intersection divisibility on pairs and triples, and
/// weakly_resp_check agreement for each prime and nontrivial element.
inline SuiteResult run_suite(const PermGroup& g, const std::vector<std::uint64_t>& primes) {
  SuiteResult out;
  auto subs = all_subgroups(g);
  out.subgroups = subs.size();
  std::vector<Subgroup> normal, subnormal;
  for (const auto& h : subs) {
    if (is_normal(g, h)) normal.push_back(h);
    if (is_subnormal(g, h)) subnormal.push_back(h);
  }
  out.subnormal = subnormal.size();
  for (const auto& h : subs) {
    Subgroup c = core(g, h);
    bool maximal = is_normal(g, c) && is_subgroup_of(c, h);
    for (const auto& n : normal)
      if (is_subgroup_of(n, h) && !is_subgroup_of(n, c)) maximal = false;
    if (!maximal) out.failures.push_back("core is not the largest normal subgroup inside H");
    Subgroup nh = normalizer(g, h);
    if (!is_normal_in(g, h, nh)) out.failures.push_back("H is not normal in its normalizer");
    if (conjugate_count(g, h) != index(g, nh)) out.failures.push_back("conjugate count differs from [G:N_G(H)]");
  }
  for (const auto& h : subnormal) {
    ++out.key_lemma_checked;
    if (!key_lemma_check(g, h).divides)
      out.failures.push_back("key lemma divisibility fails for a subnormal subgroup of order " + std::to_string(h.order()));
    for (std::uint64_t p : primes) {
      if (!is_p_power(index(g, h), p)) continue;
      try {
        auto chain = p_refined_chain(g, h, p);
        ++out.chains_checked;
        if (chain.front() != h || chain.back() != g.whole())
          out.failures.push_back("refined chain has the wrong endpoints");
      } catch (const std::exception& e) {
        out.failures.push_back(std::string("refined chain: ") + e.what());
      }
    }
  }
  for (std::size_t a = 0; a < subnormal.size(); ++a)
    for (std::size_t b = a; b < subnormal.size(); ++b) {
      ++out.intersection_sets;
      if (!intersection_checks(g, {subnormal[a], subnormal[b]})) out.failures.push_back("pair intersection check failed");
      for (std::size_t c = b; c < subnormal.size(); ++c) {
        ++out.intersection_sets;
        if (!intersection_checks(g, {subnormal[a], subnormal[b], subnormal[c]}))
          out.failures.push_back("triple intersection check failed");
      }
    }
  for (std::uint64_t p : primes)
    for (std::size_t x = 1; x < g.order(); ++x) {
      ++out.weak_checks;
      if (!weakly_resp_check(g, p, x, subs).agree)
        out.failures.push_back("weakly_resp_check disagrees at p = " + std::to_string(p));
    }
  return out;
}

}  // namespace resp::fg
