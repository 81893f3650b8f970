#include "resp/corpus.hpp"
#include "resp/finite_groups.hpp"
#include "resp/json_io.hpp"
#include "resp/mapping_torus.hpp"
#include "resp/residual.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace resp;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr std::uint64_t kDefaultSeed = 20240601;

std::vector<std::uint64_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Int p = parse_int(item);
    if (p < 2 || p > 1000000 || !is_prime(p)) throw InputError("not a usable prime: " + item);
    out.push_back(p.convert_to<std::uint64_t>());
  }
  if (out.empty()) throw InputError("empty prime list");
  return out;
}

int cmd_analyze(const std::string& file, const std::string& primes, const std::string& format) {
  IntMatrix phi = io::read_matrix_file(file);
  auto report = analyze(phi, primes.empty() ? default_report_primes() : parse_prime_list(primes));
  if (format == "json")
    std::cout << io::report_to_json(report).dump(2) << "\n";
  else
    std::cout << io::report_to_text(report);
  return report.consistent() ? kOk : kViolation;
}

int cmd_factor(const std::string& expr, const std::string& format) {
  Factorization f = factor_over_Z(IntPoly::parse(expr));
  if (f.expand() != IntPoly::parse(expr)) {
    std::cerr << "factorization does not reconstruct the input\n";
    return kViolation;
  }
  if (format == "json")
    std::cout << io::factorization_to_json(f).dump(2) << "\n";
  else
    std::cout << f.to_string() << "\n";
  return kOk;
}

int cmd_primes(const std::string& file) {
  std::cout << good_primes(io::read_matrix_file(file)).to_string() << "\n";
  return kOk;
}

int cmd_oracle(const std::string& file, const std::string& spec) {
  MappingTorusCriteria crit(io::read_matrix_file(file));
  PrimeSet pi = PrimeSet::parse(spec);
  OracleVerdict v = oracle_verdict(crit, pi);
  Lattice kernel = torsion_kernel(crit.phi(), pi);
  std::cout << "pi: " << pi.to_string() << "\n"
            << "factorization: " << crit.factorization().to_string() << "\n"
            << "criterion (residually pi-tf-nilpotent): " << io::yes_no(v.criterion) << "\n"
            << "torsion kernel: " << kernel.to_string() << "\n"
            << "kernel zero: " << io::yes_no(v.kernel_zero) << "\n"
            << "agree: " << io::yes_no(v.agree()) << "\n";
  return v.agree() ? kOk : kViolation;
}

void print_quotient(const FiniteQuotient& q) {
  auto p = q.p_group_prime();
  std::cout << "modulus k: " << q.modulus() << "\n"
            << "order of phi mod k: " << q.phi_order() << "\n"
            << "cyclic modulus s: " << q.cyclic_modulus() << "\n"
            << "order: " << q.order() << "\n"
            << "p-group: " << (p ? std::to_string(*p) : std::string("none")) << "\n";
}

int cmd_quotient(const std::string& file, std::uint64_t k) {
  MTGroup g(io::read_matrix_file(file));
  print_quotient(congruence_quotient(g, k));
  return kOk;
}

int cmd_separate(const std::string& file, const std::string& element, std::uint64_t m) {
  MTGroup g(io::read_matrix_file(file));
  MTElement e = MTElement::parse(element);
  if (e.x.size() != g.dim()) throw InputError("element dimension does not match the matrix");
  SeparatingWitness w = separating_quotient_with_order(g, e, m);
  print_quotient(w.quotient);
  std::cout << "element: " << e.to_string() << "\n"
            << "image order: " << w.image_order << "\n"
            << "m divides image order: " << io::yes_no(w.image_order % m == 0) << "\n";
  return w.image_order % m == 0 ? kOk : kViolation;
}

int cmd_finite_check(const std::string& file, const std::string& primes) {
  auto catalog = io::read_catalog_file(file);
  auto ps = primes.empty() ? std::vector<std::uint64_t>{2, 3} : parse_prime_list(primes);
  bool ok = true;
  for (const auto& entry : catalog) {
    fg::PermGroup g(entry.degree, entry.generators);
    fg::SuiteResult r = fg::run_suite(g, ps);
    std::cout << entry.name << ": order " << g.order() << ", subgroups " << r.subgroups << ", subnormal "
              << r.subnormal << ", key lemma " << r.key_lemma_checked << ", chains " << r.chains_checked
              << ", intersection sets " << r.intersection_sets << ", weak checks " << r.weak_checks << ": "
              << (r.ok() ? "ok" : "FAILED") << "\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    ok = ok && r.ok();
  }
  return ok ? kOk : kViolation;
}

struct CorpusRow {
  IntMatrix phi;
  ResidualReport report;
  std::vector<std::string> failures;
};

int cmd_corpus(std::size_t count, std::size_t dim, std::uint64_t seed, const std::string& format, unsigned threads) {
  if (dim < 1 || dim > 12) throw InputError("dimension must be between 1 and 12");
  corpus::Rng gen(seed);
  std::vector<CorpusRow> rows(count);
  for (auto& row : rows) row.phi = corpus::random_gl(dim, gen);

  // each matrix gets its own sampling stream so the output does not depend on scheduling
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t n = begin; n < count; n += step) {
      corpus::Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (n + 1)));
      rows[n].report = analyze(rows[n].phi, corpus::cross_check_primes());
      rows[n].failures = corpus::cross_check(rows[n].phi, rng).failures;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  for (auto& t : pool) t.join();

  std::size_t failed = 0;
  for (const auto& row : rows) failed += !row.failures.empty();
  if (format == "json") {
    io::json out;
    out["seed"] = seed;
    out["dimension"] = dim;
    out["count"] = count;
    out["failed"] = failed;
    out["instances"] = io::json::array();
    for (const auto& row : rows)
      out["instances"].push_back({{"phi", io::matrix_to_json(row.phi)},
                                  {"good_primes", row.report.good_primes.to_string()},
                                  {"quasi_unipotent", row.report.quasi_unipotent},
                                  {"unipotent", row.report.unipotent},
                                  {"failures", row.failures}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (std::size_t n = 0; n < count; ++n) {
      const auto& row = rows[n];
      std::cout << n << " " << row.phi.to_string() << " good primes " << io::good_primes_text(row.report.good_primes)
                << ", quasi-unipotent " << io::yes_no(row.report.quasi_unipotent) << ", "
                << (row.failures.empty() ? "ok" : "FAILED") << "\n";
      for (const auto& f : row.failures) std::cout << "  " << f << "\n";
    }
    std::cout << "corpus seed " << seed << ": " << count - failed << "/" << count << " passed all cross-checks\n";
  }
  return failed == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual properties of Z x| Z^d mapping tori and finite-group checks"};
  app.require_subcommand(1);

  std::string matrix, primes, format = "text", poly, pi, element, catalog;
  std::uint64_t k = 0, m = 0, seed = kDefaultSeed;
  std::size_t count = 100, dim = 3;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto formats = CLI::IsMember({"text", "json"});

  auto* analyze_cmd = app.add_subcommand("analyze", "full residual report for a matrix");
  analyze_cmd->add_option("--matrix", matrix, "JSON matrix file")->required();
  analyze_cmd->add_option("--primes", primes, "comma-separated primes for the mod-p table");
  analyze_cmd->add_option("--format", format)->check(formats);

  auto* factor_cmd = app.add_subcommand("factor", "factor an integer polynomial");
  factor_cmd->add_option("--poly", poly, "e.g. \"t^4-1\" or \"[-1,0,0,0,1]\"")->required();
  factor_cmd->add_option("--format", format)->check(formats);

  auto* primes_cmd = app.add_subcommand("primes", "primes p for which the mapping torus is residually p");
  primes_cmd->add_option("--matrix", matrix)->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "compare the factor criterion with the torsion kernel");
  oracle_cmd->add_option("--matrix", matrix)->required();
  oracle_cmd->add_option("--pi", pi, "all | none | {2,3} | all-{5}")->required();

  auto* quotient_cmd = app.add_subcommand("quotient", "congruence quotient modulo k");
  quotient_cmd->add_option("--matrix", matrix)->required();
  quotient_cmd->add_option("--k", k)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));

  auto* separate_cmd = app.add_subcommand("separate", "finite quotient where m divides the order of an element");
  separate_cmd->add_option("--matrix", matrix)->required();
  separate_cmd->add_option("--element", element, "\"(i; x1,...,xd)\"")->required();
  separate_cmd->add_option("--m", m)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));

  auto* finite_cmd = app.add_subcommand("finite-check", "subgroup suite over a permutation group catalog");
  finite_cmd->add_option("--catalog", catalog)->required();
  finite_cmd->add_option("--primes", primes, "default 2,3");

  auto* corpus_cmd = app.add_subcommand("corpus", "random GL(d,Z) cross-check run");
  corpus_cmd->add_option("--count", count)->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  auto* seed_opt = corpus_cmd->add_option("--seed", seed);
  corpus_cmd->add_option("--dim", dim);
  corpus_cmd->add_option("--format", format)->check(formats);
  corpus_cmd->add_option("--threads", threads)->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(matrix, primes, format);
    if (*factor_cmd) return cmd_factor(poly, format);
    if (*primes_cmd) return cmd_primes(matrix);
    if (*oracle_cmd) return cmd_oracle(matrix, pi);
    if (*quotient_cmd) return cmd_quotient(matrix, k);
    if (*separate_cmd) return cmd_separate(matrix, element, m);
    if (*finite_cmd) return cmd_finite_check(catalog, primes);
    if (*corpus_cmd) {
      if (seed_opt->count() == 0)
        if (const char* env = std::getenv("RESP_SEED")) seed = parse_int(env).convert_to<std::uint64_t>();
      return cmd_corpus(count, dim, seed, format, threads);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kViolation;
  }
  return kInputError;
}
