#pragma once

#include "resp/integer.hpp"
#include "resp/lattice.hpp"
#include "resp/matrix.hpp"
#include "resp/prime_set.hpp"

#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace resp {

/// (i, x) in Z x Z^d.
struct MTElement {
  Int i;
  IntVector x;

  friend bool operator==(const MTElement&, const MTElement&) = default;

  /// Text form `(i; x1,...,xd)`.
  std::string to_string() const {
    std::string s = "(" + i.str() + ";";
    for (std::size_t k = 0; k < x.size(); ++k) s += (k ? "," : " ") + x[k].str();
    return s + ")";
  }

  static MTElement parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 3 || s.front() != '(' || s.back() != ')')
      throw InputError("element must look like (i; x1,...,xd): " + std::string(text));
    auto semi = s.find(';');
    if (semi == std::string::npos) throw InputError("element is missing ';': " + std::string(text));
    MTElement e;
    e.i = parse_int(std::string_view(s).substr(1, semi - 1));
    std::string_view body = std::string_view(s).substr(semi + 1, s.size() - semi - 2);
    while (!body.empty()) {
      auto comma = body.find(',');
      e.x.push_back(parse_int(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    return e;
  }
};

/// G = Z x|_phi Z^d with (i,x)(j,y) = (i+j, x + phi^i y).
class MTGroup {
 public:
  explicit MTGroup(IntMatrix phi) : phi_(std::move(phi)) {
    require_automorphism(phi_);
    phi_inv_ = phi_.inverse_unimodular();
    if (!(phi_ * phi_inv_ == IntMatrix::identity(phi_.dim())))
      throw InconsistencyError("inverse check failed for " + phi_.to_string());
  }

  std::size_t dim() const { return phi_.dim(); }
  const IntMatrix& phi() const { return phi_; }
  const IntMatrix& phi_inverse() const { return phi_inv_; }

  IntMatrix phi_power(const Int& e) const {
    std::uint64_t n = abs(e).convert_to<std::uint64_t>();
    return e >= 0 ? phi_.pow(n) : phi_inv_.pow(n);
  }

  MTElement identity() const { return {0, IntVector(dim())}; }
  bool is_identity(const MTElement& g) const { return g == identity(); }

  MTElement multiply(const MTElement& g, const MTElement& h) const {
    check(g);
    check(h);
    IntVector y = phi_power(g.i) * h.x;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += g.x[k];
    return {g.i + h.i, std::move(y)};
  }

  MTElement inverse(const MTElement& g) const {
    check(g);
    IntVector y = phi_power(-g.i) * g.x;
    for (auto& v : y) v = -v;
    return {-g.i, std::move(y)};
  }

  /// [g, h] = g^-1 h^-1 g h.
  MTElement commutator(const MTElement& g, const MTElement& h) const {
    return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
  }

  MTElement power(const MTElement& g, std::int64_t e) const {
    MTElement base = e >= 0 ? g : inverse(g);
    std::uint64_t n = e >= 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-(e + 1)) + 1;
    MTElement r = identity();
    while (n) {
      if (n & 1) r = multiply(r, base);
      n >>= 1;
      if (n) base = multiply(base, base);
    }
    return r;
  }

  /// Membership in G_{k,n} = kZ x nZ^d.
  static bool in_Gkn(const MTElement& g, const Int& k, const Int& n) {
    if (k < 1 || n < 1) throw InputError("G_{k,n} needs k, n >= 1");
    if (g.i % k != 0) return false;
    return std::all_of(g.x.begin(), g.x.end(), [&](const Int& v) { return v % n == 0; });
  }

  /// (i, a) -> (k i, n a), an isomorphism Z x|_{phi^k} Z^d -> G_{k,n}.
  static MTElement iso_to_Gkn(const MTElement& g, const Int& k, const Int& n) {
    if (k < 1 || n < 1) throw InputError("G_{k,n} needs k, n >= 1");
    MTElement out{k * g.i, g.x};
    for (auto& v : out.x) v *= n;
    return out;
  }

 private:
  void check(const MTElement& g) const {
    if (g.x.size() != dim()) throw InputError("element has the wrong dimension");
  }

  IntMatrix phi_;
  IntMatrix phi_inv_;
};

/// Image of G in (Z/s) x|_phi (Z/k)^d where s is a multiple of the order r of phi mod k.
/// Elements are (i mod s, x mod k); the projection (i, x) -> (i mod s, x mod k) is a morphism.
class FiniteQuotient {
 public:
  struct Element {
    std::uint64_t i;
    std::vector<std::uint64_t> x;
    friend bool operator==(const Element&, const Element&) = default;
  };

  FiniteQuotient(const MTGroup& g, std::uint64_t k, std::uint64_t s)
      : k_(k), s_(s), phi_(ModMatrix::reduce(g.phi(), k)) {
    if (k < 1 || s < 1) throw InputError("quotient moduli must be positive");
    r_ = resp::order(phi_).convert_to<std::uint64_t>();
    if (s_ % r_ != 0) throw InputError("cyclic modulus must be a multiple of the order of phi mod k");
  }

  std::uint64_t modulus() const { return k_; }          // k
  std::uint64_t phi_order() const { return r_; }        // r
  std::uint64_t cyclic_modulus() const { return s_; }   // s
  std::size_t dim() const { return phi_.dim(); }

  /// |Q| = s * k^d.
  Int order() const { return Int(s_) * pow(Int(k_), dim()); }

  /// The prime p when |Q| is a power of p (trivial group: none).
  std::optional<std::uint64_t> p_group_prime() const {
    Int n = order();
    if (n == 1) return std::nullopt;
    auto primes = prime_divisors(n);
    if (primes.size() != 1) return std::nullopt;
    return primes[0].convert_to<std::uint64_t>();
  }

  Element project(const MTElement& g) const {
    Element e{mod(g.i, Int(s_)).convert_to<std::uint64_t>(), {}};
    for (const Int& v : g.x) e.x.push_back(mod(v, Int(k_)).convert_to<std::uint64_t>());
    return e;
  }

  Element identity() const { return {0, std::vector<std::uint64_t>(dim(), 0)}; }

  Element multiply(const Element& a, const Element& b) const {
    std::vector<std::uint64_t> y = phi_.pow(Int(a.i % r_)).apply(b.x);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = (y[j] + a.x[j]) % k_;
    return {(a.i + b.i) % s_, std::move(y)};
  }

  Element power(Element a, std::uint64_t e) const {
    Element r = identity();
    while (e) {
      if (e & 1) r = multiply(r, a);
      e >>= 1;
      if (e) a = multiply(a, a);
    }
    return r;
  }

  /// Order of (i, x): with e = s / gcd(i, s), (i, x)^e = (0, y) and the order is e times the
  /// additive order of y in (Z/k)^d.
  std::uint64_t element_order(const Element& a) const {
    std::uint64_t e = s_ / std::gcd(a.i, s_);
    Element y = power(a, e);
    if (y.i != 0) throw InconsistencyError("cyclic coordinate did not vanish");
    std::uint64_t c = k_;
    for (std::uint64_t v : y.x) c = std::gcd(c, v);
    std::uint64_t n = e * (k_ / c);
    if (!(power(a, n) == identity())) throw InconsistencyError("element order check failed");
    return n;
  }

 private:
  std::uint64_t k_, s_, r_ = 1;
  ModMatrix phi_;
};

/// G -> Z/r x|_phi (Z/k)^d with r the order of phi mod k.
inline FiniteQuotient congruence_quotient(const MTGroup& g, std::uint64_t k) {
  if (k < 1) throw InputError("k must be positive");
  std::uint64_t r = resp::order(ModMatrix::reduce(g.phi(), k)).convert_to<std::uint64_t>();
  return FiniteQuotient(g, k, r);
}

struct SeparatingWitness {
  FiniteQuotient quotient;
  std::uint64_t image_order;
};

/// A finite quotient in which m divides the order of the image of g != 1.
/// i != 0: the cyclic quotient Z/(m|i|) (A killed); i = 0: the congruence quotient mod m*c
/// where c is the content of x.
inline SeparatingWitness separating_quotient_with_order(const MTGroup& g, const MTElement& elt, std::uint64_t m) {
  if (m < 1) throw InputError("m must be positive");
  if (g.is_identity(elt)) throw InputError("the identity has order 1 in every quotient");
  if (elt.i != 0) {
    std::uint64_t s = m * abs(elt.i).convert_to<std::uint64_t>();
    FiniteQuotient q(g, 1, s);
    auto ord = q.element_order(q.project(elt));
    return {std::move(q), ord};
  }
  Int c = 0;
  for (const Int& v : elt.x) c = gcd(c, v);
  std::uint64_t k = m * c.convert_to<std::uint64_t>();
  FiniteQuotient q = congruence_quotient(g, k);
  auto ord = q.element_order(q.project(elt));
  return {std::move(q), ord};
}

/// Sandwich bounds for gamma^pi_{n+1}(G) cap A: (pi-sat of omega^n A, pi-sat of omega^(n-1) A).
struct GammaPiBounds {
  Lattice lower;
  Lattice upper;
};

inline GammaPiBounds gamma_pi_lattice(const MTGroup& g, std::size_t n, const PrimeSet& pi) {
  if (n < 1) throw InputError("n must be at least 1");
  auto chain = omega_chain(g.phi(), n);
  return {pi_saturate(chain[n], pi), pi_saturate(chain[n - 1], pi)};
}

}  // namespace resp
