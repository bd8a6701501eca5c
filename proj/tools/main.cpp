#include "lienil/battery.hpp"
#include "lienil/exprio.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace lienil;

void write_json(const std::string& path, const std::vector<CaseReport>& reports) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << emit_report_array(reports) << "\n";
}

void print_reports(const std::vector<CaseReport>& reports) {
  for (const auto& r : reports) {
    std::cout << (r.verdict == "holds" ? "[ ok ]" : r.verdict == "refused" ? "[refu]" : "[FAIL]")
              << " " << r.case_id;
    if (r.torsion_index >= 0) std::cout << "  torsion_index=" << r.torsion_index;
    std::cout << "  (" << r.elapsed_ms << " ms)\n";
    if (r.verdict == "fails" && !r.certificate_json.empty())
      std::cout << "       " << r.certificate_json << "\n";
  }
}

int exit_code(const std::vector<CaseReport>& reports) {
  for (const auto& r : reports)
    if (r.verdict == "fails") return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lienil: Lie nilpotency verification and commutator ideal membership in free algebras"};
  app.require_subcommand(1);

  std::string ring_flag = "Q";
  std::string json_path;
  std::string gens_flag;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t seed = 1;

  // member
  auto* member = app.add_subcommand("member", "membership of an expression in a truncated ideal");
  std::string target_expr, ideal_spec;
  int degree_cap = 12;
  member->add_option("--target", target_expr, "expression, e.g. \"[x1,x2]*[x3,x4,x5]\"")
      ->required();
  member->add_option("--ideal", ideal_spec,
                     "family (Sn:<n>, TnOracle:<n>, LatyshevT3, VolichenkoT4, IntegerT4, WForms, "
                     "IPrimeForms) or @file with one expression per line")
      ->required();
  member->add_option("--ring", ring_flag, "coefficient ring: Q, Z, Z3loc or Fp:<p>");
  member->add_option("--gens", gens_flag, "comma-separated generator names (default: inferred)");
  member->add_option("--degree-cap", degree_cap,
                     "refuse components of total degree above this cap");
  member->add_option("--json", json_path, "write the JSON report here");

  // verify
  auto* verify = app.add_subcommand("verify", "Lie nilpotency of a finite-dimensional algebra");
  std::string algebra_path, example_spec, mode = "both";
  int verify_n = 3;
  bool force = false;
  verify->add_option("--algebra", algebra_path, "algebra description file (JSON)");
  verify->add_option("--example", example_spec,
                     "built-in algebra: heisenberg_truncated(D), grassmann(k), "
                     "unitriangular_plus_unit(m), commutative_series(m)");
  verify->add_option("--n", verify_n, "nilpotency bound: check [a1,...,an] = 0")->required();
  verify->add_option("--ring", ring_flag, "coefficient ring for --example");
  verify->add_option("--mode", mode, "theorem, oracle or both");
  verify->add_flag("--force", force,
                   "run the finite-generator check even when 3 is not invertible "
                   "(condition-only result)");
  verify->add_option("--json", json_path, "write the JSON report here");

  // identities
  auto* identities = app.add_subcommand("identities", "randomized expansion-identity suite");
  int samples = 100;
  identities->add_option("--seed", seed, "RNG seed");
  identities->add_option("--samples", samples, "instantiations per family per ring");
  identities->add_option("--json", json_path, "write the JSON report here");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "run the named verification battery");
  std::string filter;
  bool list_only = false;
  reproduce->add_option("--filter", filter, "case id filter, '*' wildcards allowed");
  reproduce->add_option("--jobs", jobs, "worker threads");
  reproduce->add_flag("--list", list_only, "list case ids and exit");
  reproduce->add_option("--json", json_path, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (member->parsed()) {
      MemberQuery q;
      q.target_expr = target_expr;
      q.ideal_spec = ideal_spec;
      q.ring = parse_ring_name(ring_flag);
      q.degree_cap = degree_cap;
      if (!gens_flag.empty()) {
        std::string cur;
        for (char c : gens_flag + ",") {
          if (c == ',') {
            if (!cur.empty()) q.generators.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
      }
      auto reports = cmd_member(q);
      print_reports(reports);
      write_json(json_path, reports);
      return 0;  // a non-member answer is still a successful query
    }
    if (verify->parsed()) {
      if (algebra_path.empty() == example_spec.empty())
        throw std::invalid_argument("verify needs exactly one of --algebra / --example");
      VerifyQuery q;
      q.algebra_path = algebra_path;
      q.example_spec = example_spec;
      q.n = verify_n;
      q.ring = parse_ring_name(ring_flag);
      q.mode = mode;
      q.force = force;
      auto reports = cmd_verify(q);
      print_reports(reports);
      write_json(json_path, reports);
      return exit_code(reports);
    }
    if (identities->parsed()) {
      auto reports = cmd_identities(seed, samples);
      print_reports(reports);
      write_json(json_path, reports);
      return exit_code(reports);
    }
    if (reproduce->parsed()) {
      if (list_only) {
        for (const auto& c : battery_cases())
          std::cout << c.id << "  -  " << c.description << "\n";
        return 0;
      }
      auto result = cmd_reproduce(filter, jobs);
      print_reports(result.reports);
      write_json(json_path, result.reports);
      std::cout << (result.failures == 0 ? "all cases hold" : "FAILURES: ") << (result.failures
                                                                                    ? std::to_string(result.failures)
                                                                                    : "")
                << "\n";
      return result.failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
