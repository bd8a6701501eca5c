#include "lienil/battery.hpp"

#include <doctest.h>

#include <set>

using namespace lienil;

TEST_CASE("case id filters") {
  CHECK(case_id_matches("remark2-torsion", ""));
  CHECK(case_id_matches("remark2-torsion", "remark2-torsion"));
  CHECK(case_id_matches("theorem2-n3-Q", "theorem2-n3-*"));
  CHECK(case_id_matches("theorem2-n3-Z3loc", "theorem2-*"));
  CHECK(!case_id_matches("theorem2-n4-Q", "theorem2-n3-*"));
  CHECK(case_id_matches("findim-agreement-F5", "*F5"));
  CHECK(!case_id_matches("findim-agreement-F5", "*Q"));
  CHECK(case_id_matches("lemma10-i-Z", "*lemma10*"));
}

TEST_CASE("battery registry has stable unique ids") {
  const auto& cases = battery_cases();
  CHECK(cases.size() >= 20);
  std::set<std::string> ids;
  for (const auto& c : cases) {
    CHECK(ids.insert(c.id).second);
    CHECK(!c.description.empty());
  }
  // ids referenced by the documentation
  for (const char* id : {"identities-suite", "remark2-torsion", "theorem2-n3-Q",
                         "latyshev-t3-Q", "findim-agreement-Q", "heisenberg-ladder"})
    CHECK(ids.count(id) == 1);
}

TEST_CASE("unknown filter is reported") {
  CHECK_THROWS_AS(run_battery("no-such-case", 1), std::invalid_argument);
}

TEST_CASE("identity suite passes and catches a corrupted table") {
  auto results = run_identity_suite(1, 5);
  for (const auto& r : results) CHECK(r.failures == 0);

  // harness self-test: a deliberately false identity must be reported with a
  // counterexample
  std::vector<IdentityFamily> corrupted = {
      {"broken",
       [](std::mt19937_64&, const RingSpec& ring) -> std::string {
         Poly lhs = commutator(Poly::generator(ring, 0), Poly::generator(ring, 1));
         Poly rhs = Poly::zero(ring);
         if (poly_sub(lhs, rhs).is_zero()) return {};
         return "broken at [x1,x2]";
       }},
  };
  auto bad = run_identity_suite_with(corrupted, 1, 3);
  bool found_failure = false;
  for (const auto& r : bad) {
    if (r.failures > 0) {
      found_failure = true;
      CHECK(!r.first_counterexample.empty());
    }
  }
  CHECK(found_failure);

  // zero samples: empty pass
  auto empty = run_identity_suite(1, 0);
  for (const auto& r : empty) {
    CHECK(r.samples == 0);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("generator name inference") {
  auto names = infer_generator_names("[x1,x2]*[x3,x4,x5]");
  CHECK(names == std::vector<std::string>{"x1", "x2", "x3", "x4", "x5"});
  names = infer_generator_names("[b, a*b]");
  CHECK(names == std::vector<std::string>{"b", "a"});
  CHECK(infer_generator_names("3/4").empty());
}

TEST_CASE("cmd_member splits inhomogeneous targets and honors the cap") {
  MemberQuery q;
  q.target_expr = "[x1,x2] + [x1,x2,x2]";
  q.ideal_spec = "TnOracle:2";
  q.ring = RingSpec::rationals();
  auto reports = cmd_member(q);
  REQUIRE(reports.size() == 2);  // components (1,1) and (1,2)
  for (const auto& r : reports) CHECK(r.verdict == "holds");

  q.degree_cap = 2;
  reports = cmd_member(q);
  int refused = 0;
  for (const auto& r : reports) refused += r.verdict == "refused";
  CHECK(refused == 1);

  // a plain generator is not in T^(2): its degree-1 component is zero
  q = MemberQuery{};
  q.target_expr = "x1";
  q.ideal_spec = "TnOracle:2";
  q.ring = RingSpec::rationals();
  q.generators = {"x1", "x2"};
  reports = cmd_member(q);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == "fails");
}

TEST_CASE("cmd_member reports the torsion index over Z") {
  MemberQuery q;
  q.target_expr = "[x1,x2]*[x3,x4,x5]";
  q.ideal_spec = "TnOracle:4";
  q.ring = RingSpec::integers();
  auto reports = cmd_member(q);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == "fails");
  CHECK(reports[0].torsion_index == 3);
}

TEST_CASE("cmd_verify modes") {
  VerifyQuery q;
  q.example_spec = "grassmann(3)";
  q.n = 3;
  q.ring = RingSpec::rationals();
  q.mode = "both";
  auto reports = cmd_verify(q);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == "holds");
  CHECK(reports[0].certificate_json.find("LieNilpotent") != std::string::npos);

  q.example_spec = "heisenberg_truncated(4)";
  reports = cmd_verify(q);
  CHECK(reports[0].verdict == "holds");
  CHECK(reports[0].certificate_json.find("NotLieNilpotent") != std::string::npos);

  q.ring = RingSpec::integers();
  q.mode = "theorem";
  reports = cmd_verify(q);
  CHECK(reports[0].verdict == "refused");
}

TEST_CASE("single battery case runs end to end") {
  auto result = run_battery("remark2-torsion", 1);
  REQUIRE(result.reports.size() == 1);
  CHECK(result.reports[0].verdict == "holds");
  CHECK(result.reports[0].torsion_index == 3);
  CHECK(result.failures == 0);
}
