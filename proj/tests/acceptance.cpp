// Acceptance suite: one criterion per line, exact arithmetic throughout.
// Every criterion runs the corresponding named battery cases and enforces
// its wall-clock budget. Exit code 0 iff every criterion passes.

#include "lienil/battery.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

namespace {

struct Criterion {
  int number;
  std::string summary;
  long budget_ms;
};

const std::vector<Criterion> kCriteria = {
    {1, "expansion identities and right-letter decomposition: 100 random instantiations "
        "per family per ring, 0 failures", 10'000},
    {2, "S^(n) generates T^(n) componentwise for n in {3,4,5}, |mu| <= n+2 over <= 3 "
        "generators, over Q and Z[1/3]", 300'000},
    {3, "[x1,x2][x3,x4,x5] is outside T^(4) over Z with torsion index exactly 3", 60'000},
    {4, "[[x1,x2]x3,x4,x5] lies in T^(4) over Q and outside it over Z", 60'000},
    {5, "Latyshev (T^3, |mu|<=5, Q) and Volichenko / six-type integer families "
        "(T^4, multilinear |mu|<=6, Q resp. Z) generate the oracle spans", 600'000},
    {6, "five W-forms generate the bordered-bracket oracle over Z (|mu|<=6); four forms "
        "suffice over Q; the I'-torsion of [s,x1][x2,x3,x4] divides 3", 600'000},
    {7, "[u,a1][a2,a3]+[u,a2][a1,a3] lies in T^(4) over Z and u[a1,a2,a3] has torsion "
        "index 3, for u = [x1,x2]", 60'000},
    {8, "multilinear [a1,a2,a3][a4,a5] lies in T^(4) over Q; [x1,x2][x3,x4] is outside "
        "T^(3) over Q", 60'000},
    {9, "finite-generator criterion agrees with the brute-force oracle for n in {2..6} "
        "on the example algebras over Q and GF(5); truncated U(H) ladder behaves", 120'000},
    {10, "the ideal generated by the evaluated S^(n) equals T^(n)(A) on the example "
         "algebras over Q, n in {3,4,5}", 120'000},
    {11, "standalone property suites: freealg invariants, certificate soundness, "
         "normal-form transform verification, 1000 randomized cases each", 120'000},
};

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failed = 0;
  long total_ms = 0;

  for (const auto& crit : kCriteria) {
    std::vector<std::size_t> selected;
    const auto& cases = lienil::battery_cases();
    auto start = clock::now();
    bool ok = true;
    std::string first_failure;
    int ran = 0;
    for (const auto& bc : cases) {
      if (bc.criterion != crit.number) continue;
      auto result = lienil::run_battery(bc.id, 1);
      ++ran;
      for (const auto& r : result.reports) {
        if (r.verdict != "holds") {
          ok = false;
          if (first_failure.empty()) first_failure = r.case_id + ": " + r.certificate_json;
        }
      }
    }
    long elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count();
    total_ms += elapsed;
    bool in_budget = elapsed <= crit.budget_ms;
    bool pass = ok && in_budget && ran > 0;
    if (!pass) ++failed;
    std::printf("[%s] criterion-%02d %s (%ld ms, budget %ld ms, %d cases)\n",
                pass ? "PASS" : "FAIL", crit.number, crit.summary.c_str(), elapsed,
                crit.budget_ms, ran);
    if (!ok) std::printf("       first failure: %s\n", first_failure.c_str());
    if (!in_budget) std::printf("       over budget\n");
    std::fflush(stdout);
  }

  std::printf("%d/%zu criteria passed (total %ld ms)\n",
              static_cast<int>(kCriteria.size()) - failed, kCriteria.size(), total_ms);
  return failed == 0 ? 0 : 1;
}
