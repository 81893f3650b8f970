#pragma once

#include "resp/finite_groups.hpp"
#include "resp/lattice.hpp"
#include "resp/matrix.hpp"
#include "resp/residual.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace resp::io {

using nlohmann::json;

/// Integers are emitted as JSON numbers when they fit in 64 bits, else as decimal strings.
inline json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw InputError("expected an integer (number or decimal string), got " + j.dump());
}

inline json vector_to_json(const IntVector& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

inline IntVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers");
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

inline json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

/// Accepts either a bare array of rows or `{"matrix": [[...], ...]}`; must be square.
inline IntMatrix matrix_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("matrix") : j;
  if (!rows.is_array() || rows.empty()) throw InputError("matrix must be a nonempty array of rows");
  std::vector<IntVector> r;
  for (const auto& row : rows) r.push_back(vector_from_json(row));
  IntMatrix m = IntMatrix::from_rows(r, r[0].size());
  if (!m.square()) throw InputError("matrix must be square");
  return m;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline IntMatrix read_matrix_file(const std::string& path) {
  try {
    return matrix_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline json poly_to_json(const IntPoly& p) { return vector_to_json(p.coeffs()); }
inline IntPoly poly_from_json(const json& j) { return IntPoly(vector_from_json(j)); }

inline json lattice_to_json(const Lattice& l) {
  json basis = json::array();
  for (const auto& v : l.basis()) basis.push_back(vector_to_json(v));
  return {{"ambient", l.ambient()}, {"basis", basis}};
}

inline Lattice lattice_from_json(const json& j) {
  std::vector<IntVector> gens;
  for (const auto& v : j.at("basis")) gens.push_back(vector_from_json(v));
  return Lattice::from_generators(std::move(gens), j.at("ambient").get<std::size_t>());
}

inline json factorization_to_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& [p, m] : f.factors) factors.push_back({{"poly", poly_to_json(p)}, {"multiplicity", m}});
  return {{"unit", f.unit}, {"content", int_to_json(f.content)}, {"factors", factors}, {"text", f.to_string()}};
}

inline Factorization factorization_from_json(const json& j) {
  Factorization f;
  f.unit = j.at("unit").get<int>();
  f.content = int_from_json(j.at("content"));
  for (const auto& x : j.at("factors")) f.factors.emplace_back(poly_from_json(x.at("poly")), x.at("multiplicity").get<unsigned>());
  return f;
}

inline json report_to_json(const ResidualReport& r) {
  json j;
  j["phi"] = matrix_to_json(r.phi);
  j["dimension"] = r.phi.dim();
  j["char_poly"] = poly_to_json(r.char_poly);
  j["char_poly_text"] = r.char_poly.to_string();
  j["factorization"] = factorization_to_json(r.factorization);
  j["invariant_factors"] = json::array();
  for (const auto& p : r.invariant_factors) j["invariant_factors"].push_back(poly_to_json(p));
  j["good_primes"] = r.good_primes.to_string();
  j["residually_nilpotent"] = r.residually_nilpotent;
  j["residually_tf_nilpotent"] = r.residually_tf_nilpotent;
  j["unipotent"] = r.unipotent;
  j["quasi_unipotent"] = r.quasi_unipotent;
  j["quasi_unipotent_witness"] = r.quasi_unipotent_witness ? int_to_json(*r.quasi_unipotent_witness) : json(nullptr);
  j["virtually_res_all_p"] = r.virtually_res_all_p;
  j["nilpotency_class_interval"] = r.nilpotency_class_interval
                                       ? json::array({r.nilpotency_class_interval->first, r.nilpotency_class_interval->second})
                                       : json(nullptr);
  j["mod_p"] = json::array();
  for (const auto& m : r.mod_p)
    j["mod_p"].push_back({{"p", m.p},
                          {"order", int_to_json(m.order)},
                          {"unipotent_mod_p", m.unipotent_mod_p},
                          {"gbar_residually_p", m.gbar_residually_p},
                          {"residually_p", m.residually_p},
                          {"reverse_gap", m.reverse_gap}});
  j["sol_flag"] = r.sol_flag ? json(*r.sol_flag) : json(nullptr);
  j["oracle"] = json::array();
  for (const auto& o : r.oracle)
    j["oracle"].push_back(
        {{"pi", o.pi.to_string()}, {"criterion", o.criterion}, {"kernel_zero", o.kernel_zero}, {"agree", o.agree()}});
  j["consistent"] = r.consistent();
  j["violations"] = r.violations;
  return j;
}

inline ResidualReport report_from_json(const json& j) {
  ResidualReport r;
  r.phi = matrix_from_json(j.at("phi"));
  r.char_poly = poly_from_json(j.at("char_poly"));
  r.factorization = factorization_from_json(j.at("factorization"));
  for (const auto& p : j.at("invariant_factors")) r.invariant_factors.push_back(poly_from_json(p));
  r.good_primes = PrimeSet::parse(j.at("good_primes").get<std::string>());
  r.residually_nilpotent = j.at("residually_nilpotent").get<bool>();
  r.residually_tf_nilpotent = j.at("residually_tf_nilpotent").get<bool>();
  r.unipotent = j.at("unipotent").get<bool>();
  r.quasi_unipotent = j.at("quasi_unipotent").get<bool>();
  if (!j.at("quasi_unipotent_witness").is_null()) r.quasi_unipotent_witness = int_from_json(j.at("quasi_unipotent_witness"));
  r.virtually_res_all_p = j.at("virtually_res_all_p").get<bool>();
  if (const auto& ci = j.at("nilpotency_class_interval"); !ci.is_null())
    r.nilpotency_class_interval = std::make_pair(ci.at(0).get<std::size_t>(), ci.at(1).get<std::size_t>());
  for (const auto& m : j.at("mod_p")) {
    ModPAnalysis a;
    a.p = m.at("p").get<std::uint64_t>();
    a.order = int_from_json(m.at("order"));
    a.unipotent_mod_p = m.at("unipotent_mod_p").get<bool>();
    a.gbar_residually_p = m.at("gbar_residually_p").get<bool>();
    a.residually_p = m.at("residually_p").get<bool>();
    a.reverse_gap = m.at("reverse_gap").get<bool>();
    r.mod_p.push_back(a);
  }
  if (!j.at("sol_flag").is_null()) r.sol_flag = j.at("sol_flag").get<bool>();
  for (const auto& o : j.at("oracle"))
    r.oracle.push_back({PrimeSet::parse(o.at("pi").get<std::string>()), o.at("criterion").get<bool>(),
                        o.at("kernel_zero").get<bool>()});
  r.violations = j.at("violations").get<std::vector<std::string>>();
  return r;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string good_primes_text(const PrimeSet& s) {
  switch (s.kind()) {
    case PrimeSet::Kind::Empty:
      return "none";
    case PrimeSet::Kind::All:
      return "all";
    default:
      return s.to_string();
  }
}

inline std::string report_to_text(const ResidualReport& r) {
  std::ostringstream out;
  out << "phi: " << r.phi.to_string() << "\n";
  out << "characteristic polynomial: " << r.char_poly.to_string() << "\n";
  out << "factorization: " << r.factorization.to_string() << "\n";
  out << "invariant factors:";
  for (const auto& p : r.invariant_factors) out << " (" << p.to_string() << ")";
  out << "\n";
  out << "good primes: " << good_primes_text(r.good_primes) << "\n";
  out << "residually nilpotent: " << yes_no(r.residually_nilpotent) << "\n";
  out << "residually torsion-free nilpotent: " << yes_no(r.residually_tf_nilpotent) << "\n";
  out << "unipotent: " << yes_no(r.unipotent) << "\n";
  out << "quasi-unipotent: " << yes_no(r.quasi_unipotent);
  if (r.quasi_unipotent_witness) out << " (phi^" << *r.quasi_unipotent_witness << " unipotent)";
  out << "\n";
  out << "virtually residually p for all p: " << yes_no(r.virtually_res_all_p) << "\n";
  if (r.nilpotency_class_interval)
    out << "nilpotency class in: [" << r.nilpotency_class_interval->first << ", "
        << r.nilpotency_class_interval->second << "]\n";
  for (const auto& m : r.mod_p)
    out << "mod " << m.p << ": order " << m.order << ", unipotent " << yes_no(m.unipotent_mod_p)
        << ", Gbar residually p " << yes_no(m.gbar_residually_p) << ", G residually p " << yes_no(m.residually_p)
        << (m.reverse_gap ? ", reverse gap" : "") << "\n";
  if (r.sol_flag) out << "Sol torus bundle: " << yes_no(*r.sol_flag) << "\n";
  for (const auto& o : r.oracle)
    out << "oracle pi=" << o.pi.to_string() << ": criterion " << yes_no(o.criterion) << ", kernel zero "
        << yes_no(o.kernel_zero) << (o.agree() ? "" : "  DISAGREE") << "\n";
  out << "consistent: " << yes_no(r.consistent()) << "\n";
  for (const auto& v : r.violations) out << "  violation: " << v << "\n";
  return out.str();
}

struct CatalogEntry {
  std::string name;
  std::size_t degree = 0;
  std::vector<fg::Perm> generators;
};

/// Catalog file: JSON list of {name, degree, generators: [[images...], ...]}.
inline std::vector<CatalogEntry> catalog_from_json(const json& j) {
  if (!j.is_array()) throw InputError("catalog must be a JSON list");
  std::vector<CatalogEntry> out;
  for (const auto& e : j) {
    CatalogEntry c;
    c.name = e.at("name").get<std::string>();
    c.degree = e.at("degree").get<std::size_t>();
    for (const auto& g : e.at("generators")) {
      auto imgs = g.get<std::vector<std::uint32_t>>();
      if (imgs.size() != c.degree) throw InputError(c.name + ": generator length differs from degree");
      c.generators.emplace_back(std::move(imgs));
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<CatalogEntry> read_catalog_file(const std::string& path) {
  try {
    return catalog_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace resp::io
