#include "lienil/battery.hpp"

#include "lienil/findim.hpp"
#include "lienil/gensets.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace lienil {

namespace {

using nlohmann::json;

std::vector<std::string> gen_names(std::size_t g) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string mu_string(const MultiDegree& mu) {
  std::string s = "(";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(mu.exponents[i]);
  }
  return s + ")";
}

/// All exponent vectors with `parts` coordinates and total degree <= max_total.
std::vector<MultiDegree> all_multidegrees(std::size_t parts, std::size_t max_total) {
  std::vector<MultiDegree> out;
  std::vector<std::uint32_t> cur(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos == parts) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t e = 0; e <= left; ++e) {
      cur[pos] = static_cast<std::uint32_t>(e);
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(0, max_total);
  return out;
}

std::vector<std::uint32_t> sorted_desc(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// canonical representative under permuting all generators
std::vector<std::uint32_t> canon_full(const MultiDegree& mu) { return sorted_desc(mu.exponents); }

// canonical under the symmetries fixing the seed [x1,x2]: swap of the first
// two coordinates and permutations of the rest
std::vector<std::uint32_t> canon_fix2(const MultiDegree& mu) {
  std::vector<std::uint32_t> head(mu.exponents.begin(), mu.exponents.begin() + 2);
  std::vector<std::uint32_t> tail(mu.exponents.begin() + 2, mu.exponents.end());
  std::sort(head.begin(), head.end(), std::greater<>());
  std::sort(tail.begin(), tail.end(), std::greater<>());
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

Poly parse_target(const std::string& expr, std::size_t g, const RingSpec& ring) {
  return parse_poly(expr, gen_names(g), ring);
}

json witness_json(const std::vector<WitnessTerm>& witness, const std::vector<std::string>& names) {
  json arr = json::array();
  for (const auto& wt : witness) {
    json t;
    t["coeff"] = scalar_to_string(wt.coeff);
    t["left"] = render_word(wt.left, names);
    t["gen"] = wt.gen_index;
    t["right"] = render_word(wt.right, names);
    arr.push_back(std::move(t));
  }
  return arr;
}

json certificate_json(const MembershipCertificate& cert, const std::vector<std::string>& names) {
  json j;
  switch (cert.verdict) {
    case MembershipCertificate::Verdict::Member: j["type"] = "member"; break;
    case MembershipCertificate::Verdict::NonMember: j["type"] = "nonmember"; break;
    case MembershipCertificate::Verdict::Torsion: j["type"] = "torsion"; break;
  }
  if (!cert.witness.empty()) j["witness"] = witness_json(cert.witness, names);
  if (cert.torsion_index != 0) j["torsion_index"] = cert.torsion_index.get_str();
  if (cert.span_rank >= 0) j["span_rank"] = cert.span_rank;
  if (cert.augmented_rank >= 0) j["augmented_rank"] = cert.augmented_rank;
  j["in_rational_span"] = cert.in_rational_span;
  return j;
}

CaseOutcome holds(json detail) {
  return {"holds", detail.dump(), -1};
}
CaseOutcome fails(json detail) {
  return {"fails", detail.dump(), -1};
}

// --------------------------------------------------------------------------
// span-equality batteries
// --------------------------------------------------------------------------

struct SpanBattery {
  int checked = 0;
  int classes = 0;
  int spot_checks = 0;
  std::vector<std::string> failures;

  using FamilyBuilder = std::function<std::vector<Poly>(const MultiDegree&)>;

  /// Checks span_equal(a, b, mu) over every multidegree, computing once per
  /// symmetry class and spot-checking that permuted components agree with
  /// their canonical representative.
  void run(const std::vector<MultiDegree>& mus,
           const std::function<std::vector<std::uint32_t>(const MultiDegree&)>& canon,
           const FamilyBuilder& family_a, const FamilyBuilder& family_b, int spots) {
    std::map<std::vector<std::uint32_t>, bool> memo;
    auto compute = [&](const MultiDegree& mu) {
      return span_equal(family_a(mu), family_b(mu), mu);
    };
    std::vector<MultiDegree> permuted_candidates;
    for (const auto& mu : mus) {
      ++checked;
      auto key = canon(mu);
      auto it = memo.find(key);
      if (it == memo.end()) {
        MultiDegree cm{key};
        it = memo.emplace(key, compute(cm)).first;
        ++classes;
      } else if (!(mu.exponents == key) && mu.total() >= 2) {
        permuted_candidates.push_back(mu);
      }
      if (!it->second) failures.push_back(mu_string(mu));
    }
    // direct recomputation on a deterministic sample of permuted components
    for (int i = 0; i < spots && !permuted_candidates.empty(); ++i) {
      const MultiDegree& mu =
          permuted_candidates[(i * 7919) % permuted_candidates.size()];
      ++spot_checks;
      bool direct = compute(mu);
      if (direct != memo.at(canon(mu)))
        failures.push_back("symmetry mismatch at " + mu_string(mu));
    }
  }

  CaseOutcome outcome(json extra = json::object()) const {
    json j = std::move(extra);
    j["components"] = checked;
    j["canonical_classes"] = classes;
    j["spot_checks"] = spot_checks;
    if (failures.empty()) return holds(j);
    j["failures"] = failures;
    return fails(j);
  }
};

CaseOutcome theorem2_case(int n, const RingSpec& ring) {
  SpanBattery battery;
  battery.run(
      all_multidegrees(3, n + 2),
      canon_full,
      [&](const MultiDegree& mu) {
        GensetOptions opts;
        opts.within = mu;
        return sn_generators(n, 3, ring, opts);
      },
      [&](const MultiDegree& mu) { return tideal_generators(n, ring, mu); }, 4);
  return battery.outcome({{"n", n}, {"ring", ring_name(ring)}});
}

CaseOutcome latyshev_case() {
  const RingSpec ring = RingSpec::rationals();
  SpanBattery battery;
  // one run per generator count: components over exactly g letters
  for (std::size_t g = 1; g <= 5; ++g) {
    std::vector<MultiDegree> mus;
    for (const auto& mu : all_multidegrees(g, 5)) {
      bool positive = true;
      for (auto e : mu.exponents) positive = positive && e > 0;
      if (positive) mus.push_back(mu);
    }
    battery.run(
        mus, canon_full,
        [&](const MultiDegree& mu) {
          GensetOptions opts;
          opts.within = mu;
          return latyshev_t3(g, ring, opts);
        },
        [&](const MultiDegree& mu) { return tideal_generators(3, ring, mu); }, 2);
  }
  return battery.outcome({{"ring", "Q"}});
}

CaseOutcome multilinear_t4_case(bool integer_family) {
  const RingSpec ring = integer_family ? RingSpec::integers() : RingSpec::rationals();
  SpanBattery battery;
  for (std::size_t d = 1; d <= 6; ++d) {
    MultiDegree mu(std::vector<std::uint32_t>(d, 1));
    std::vector<MultiDegree> mus{mu};
    battery.run(
        mus, canon_full,
        [&](const MultiDegree& m) {
          GensetOptions opts;
          opts.within = m;
          return integer_family ? integer_t4(d, ring, opts) : volichenko_t4(d, ring, opts);
        },
        [&](const MultiDegree& m) { return tideal_generators(4, ring, m); }, 0);
  }
  return battery.outcome({{"ring", ring_name(ring)}, {"multilinear", true}});
}

CaseOutcome wforms_case(bool five_forms_over_z) {
  const RingSpec ring = five_forms_over_z ? RingSpec::integers() : RingSpec::rationals();
  const std::size_t g = 6;
  std::vector<Poly> seed{commutator(Poly::generator(ring, 0), Poly::generator(ring, 1))};
  SpanBattery battery;
  battery.run(
      all_multidegrees(g, 6), canon_fix2,
      [&](const MultiDegree& mu) {
        GensetOptions opts;
        opts.within = mu;
        return five_forms_over_z ? w_forms(seed, g, opts) : corollary5_forms(seed, g, opts);
      },
      [&](const MultiDegree& mu) { return w_oracle_generators(seed, mu); }, 3);
  return battery.outcome(
      {{"ring", ring_name(ring)}, {"forms", five_forms_over_z ? 5 : 4}});
}

// --------------------------------------------------------------------------
// membership cases
// --------------------------------------------------------------------------

MultiDegree multilinear(std::size_t d) { return MultiDegree(std::vector<std::uint32_t>(d, 1)); }

CaseOutcome remark2_case() {
  const RingSpec ring = RingSpec::integers();
  MultiDegree mu = multilinear(5);
  IdealTruncation t = make_truncation(tideal_generators(4, ring, mu), mu);
  MembershipSolver solver(t);
  Poly target = parse_target("[x1,x2]*[x3,x4,x5]", 5, ring);
  auto plain = solver.member(target);
  auto torsion = solver.torsion_member(target);
  json j;
  j["member"] = certificate_json(plain, gen_names(5));
  j["torsion"] = certificate_json(torsion, gen_names(5));
  bool ok = plain.verdict == MembershipCertificate::Verdict::NonMember &&
            torsion.verdict == MembershipCertificate::Verdict::Torsion &&
            torsion.torsion_index == 3;
  CaseOutcome out = ok ? holds(j) : fails(j);
  out.torsion_index = static_cast<long>(torsion.torsion_index.get_si());
  return out;
}

CaseOutcome prop3_case(bool over_q) {
  const RingSpec ring = over_q ? RingSpec::rationals() : RingSpec::integers();
  MultiDegree mu = multilinear(5);
  IdealTruncation t = make_truncation(tideal_generators(4, ring, mu), mu);
  MembershipSolver solver(t);
  Poly target = parse_target("[[x1,x2]*x3, x4, x5]", 5, ring);
  auto cert = solver.member(target);
  json j = certificate_json(cert, gen_names(5));
  bool ok = over_q ? cert.is_member()
                   : cert.verdict == MembershipCertificate::Verdict::NonMember;
  return ok ? holds(j) : fails(j);
}

CaseOutcome lemma10_case(bool part_two) {
  const RingSpec ring = RingSpec::integers();
  MultiDegree mu = multilinear(5);
  IdealTruncation t = make_truncation(tideal_generators(4, ring, mu), mu);
  MembershipSolver solver(t);
  json j;
  j["instances"] = json::array();
  bool ok = true;
  std::vector<std::array<int, 3>> perms = {{3, 4, 5}, {3, 5, 4}, {4, 3, 5},
                                           {4, 5, 3}, {5, 3, 4}, {5, 4, 3}};
  for (const auto& p : perms) {
    std::string a1 = "x" + std::to_string(p[0]);
    std::string a2 = "x" + std::to_string(p[1]);
    std::string a3 = "x" + std::to_string(p[2]);
    std::string expr =
        part_two ? "[x1,x2]*[" + a1 + "," + a2 + "," + a3 + "]"
                 : "[[x1,x2]," + a1 + "]*[" + a2 + "," + a3 + "] + [[x1,x2]," + a2 + "]*[" +
                       a1 + "," + a3 + "]";
    Poly target = parse_target(expr, 5, ring);
    json inst;
    inst["target"] = expr;
    if (part_two) {
      auto cert = solver.torsion_member(target);
      inst["torsion_index"] = cert.torsion_index.get_str();
      ok = ok && cert.verdict == MembershipCertificate::Verdict::Torsion &&
           cert.torsion_index == 3;
    } else {
      auto cert = solver.member(target);
      inst["verdict"] = cert.is_member() ? "member" : "nonmember";
      ok = ok && cert.is_member();
    }
    j["instances"].push_back(std::move(inst));
  }
  return ok ? holds(j) : fails(j);
}

CaseOutcome remark1_case(bool t3t2) {
  const RingSpec ring = RingSpec::rationals();
  if (t3t2) {
    MultiDegree mu = multilinear(5);
    IdealTruncation t = make_truncation(tideal_generators(4, ring, mu), mu);
    MembershipSolver solver(t);
    std::array<int, 5> perm = {1, 2, 3, 4, 5};
    int count = 0;
    bool ok = true;
    std::string bad;
    do {
      std::string expr = "[x" + std::to_string(perm[0]) + ",x" + std::to_string(perm[1]) +
                         ",x" + std::to_string(perm[2]) + "]*[x" + std::to_string(perm[3]) +
                         ",x" + std::to_string(perm[4]) + "]";
      auto cert = solver.member(parse_target(expr, 5, ring));
      ++count;
      if (!cert.is_member()) {
        ok = false;
        if (bad.empty()) bad = expr;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    json j{{"instances", count}};
    if (!ok) j["first_failure"] = bad;
    return ok ? holds(j) : fails(j);
  }
  MultiDegree mu = multilinear(4);
  IdealTruncation t = make_truncation(tideal_generators(3, ring, mu), mu);
  MembershipSolver solver(t);
  auto cert = solver.member(parse_target("[x1,x2]*[x3,x4]", 4, ring));
  json j = certificate_json(cert, gen_names(4));
  return cert.verdict == MembershipCertificate::Verdict::NonMember ? holds(j) : fails(j);
}

CaseOutcome prop4_case() {
  const RingSpec ring = RingSpec::integers();
  MultiDegree mu = multilinear(6);
  std::vector<Poly> seed{commutator(Poly::generator(ring, 0), Poly::generator(ring, 1))};
  GensetOptions opts;
  opts.within = mu;
  IdealTruncation t = make_truncation(iprime_forms(seed, 6, opts), mu);
  MembershipSolver solver(t);
  Poly target = parse_target("[[x1,x2],x3]*[x4,x5,x6]", 6, ring);
  auto cert = solver.torsion_member(target);
  json j = certificate_json(cert, gen_names(6));
  bool ok = cert.verdict == MembershipCertificate::Verdict::Torsion &&
            (cert.torsion_index == 1 || cert.torsion_index == 3);
  CaseOutcome out = ok ? holds(j) : fails(j);
  if (cert.verdict == MembershipCertificate::Verdict::Torsion)
    out.torsion_index = static_cast<long>(cert.torsion_index.get_si());
  return out;
}

CaseOutcome prop3_char3_probe() {
  const RingSpec ring = RingSpec::prime_field(3);
  MultiDegree mu = multilinear(5);
  IdealTruncation t = make_truncation(tideal_generators(4, ring, mu), mu);
  MembershipSolver solver(t);
  auto cert = solver.member(parse_target("[x1,x2]*[x3,x4,x5]", 5, ring));
  json j = certificate_json(cert, gen_names(5));
  j["note"] = "informational probe over GF(3); no expected verdict";
  return holds(j);
}

CaseOutcome remark4_case() {
  const RingSpec ring = RingSpec::integers();
  const std::size_t g = 5;
  auto [s_family, sprime_family] = sn_variants(4, g, 3, ring);
  json j;
  j["elements"] = static_cast<int>(s_family.size());
  int plain = 0, with_oracle = 0, unresolved = 0;

  // coordinate rows of a poly family inside one component (no borders:
  // this is a linear-span question, not an ideal-membership one)
  auto rows_in_component = [&](const std::vector<Poly>& polys, const MultiDegree& mu,
                               const std::vector<Word>& basis) {
    std::map<Word, int> col;
    for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = static_cast<int>(i);
    std::vector<ZRow> rows;
    for (const Poly& p : polys) {
      MultiDegree pd;
      if (p.is_zero() || !p.is_homogeneous(g, &pd) || !(pd == mu)) continue;
      SparseVec v(static_cast<int>(basis.size()));
      for (const auto& [w, c] : p.terms()) v.entries.emplace_back(col.at(w), c);
      std::sort(v.entries.begin(), v.entries.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      rows.push_back(to_zrow_cleared(v, ring));
    }
    return rows;
  };

  std::map<std::vector<std::uint32_t>, std::pair<ZEchelon, ZEchelon>> solvers;
  for (const Poly& el : s_family) {
    MultiDegree mu;
    el.is_homogeneous(g, &mu);
    auto key = mu.exponents;
    auto it = solvers.find(key);
    if (it == solvers.end()) {
      std::vector<Word> basis = component_basis(g, mu);
      ZEchelon plain_ech(static_cast<int>(basis.size()));
      for (auto& r : rows_in_component(sprime_family, mu, basis)) plain_ech.insert(std::move(r));
      ZEchelon oracle_ech(static_cast<int>(basis.size()));
      for (auto& r : rows_in_component(sprime_family, mu, basis)) oracle_ech.insert(std::move(r));
      IdealTruncation t = make_truncation(tideal_generators(4, ring, mu), mu);
      for (const auto& row : t.spanning.rows) oracle_ech.insert(to_zrow_cleared(row, ring));
      it = solvers.emplace(key, std::make_pair(std::move(plain_ech), std::move(oracle_ech))).first;
    }
    std::vector<Word> basis = component_basis(g, mu);
    std::map<Word, int> col;
    for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = static_cast<int>(i);
    SparseVec v(static_cast<int>(basis.size()));
    for (const auto& [w, c] : el.terms()) v.entries.emplace_back(col.at(w), c);
    std::sort(v.entries.begin(), v.entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    ZRow row = to_zrow_cleared(v, ring);
    if (it->second.first.contains(row))
      ++plain;
    else if (it->second.second.contains(row))
      ++with_oracle;
    else
      ++unresolved;
  }
  j["in_plain_sprime_span"] = plain;
  j["needed_t4_redundancy"] = with_oracle;
  j["unresolved"] = unresolved;
  return unresolved == 0 ? holds(j) : fails(j);
}

// --------------------------------------------------------------------------
// finite-dimensional cases
// --------------------------------------------------------------------------

std::vector<std::pair<std::string, std::function<StructureAlgebra(const RingSpec&)>>>
example_suite() {
  std::vector<std::pair<std::string, std::function<StructureAlgebra(const RingSpec&)>>> out;
  for (int k = 2; k <= 4; ++k)
    out.emplace_back("grassmann(" + std::to_string(k) + ")", [k](const RingSpec& r) {
      return example_algebra(ExampleKind::Grassmann, k, r);
    });
  for (int m = 2; m <= 4; ++m)
    out.emplace_back("unitriangular_plus_unit(" + std::to_string(m) + ")",
                     [m](const RingSpec& r) {
                       return example_algebra(ExampleKind::UnitriangularPlusUnit, m, r);
                     });
  for (int m = 2; m <= 5; ++m)
    out.emplace_back("commutative_series(" + std::to_string(m) + ")", [m](const RingSpec& r) {
      return example_algebra(ExampleKind::CommutativeSeries, m, r);
    });
  for (int d = 2; d <= 5; ++d)
    out.emplace_back("heisenberg_truncated(" + std::to_string(d) + ")", [d](const RingSpec& r) {
      return example_algebra(ExampleKind::HeisenbergTruncated, d, r);
    });
  return out;
}

CaseOutcome findim_agreement_case(const RingSpec& ring) {
  json j;
  j["algebras"] = json::array();
  bool ok = true;
  for (const auto& [name, build] : example_suite()) {
    StructureAlgebra a = build(ring);
    json alg{{"name", name}};
    alg["verdicts"] = json::array();
    for (int n = 2; n <= 6; ++n) {
      NilpotencyResult t = verify_via_theorem(a, n);
      NilpotencyResult o = lie_nilpotency_oracle(a, n);
      bool agree = t.verdict == o.verdict;
      ok = ok && agree && t.verdict != NilpotencyVerdict::Refused;
      json v{{"n", n},
             {"theorem", t.nilpotent() ? "LieNilpotent" : "NotLieNilpotent"},
             {"oracle", o.nilpotent() ? "LieNilpotent" : "NotLieNilpotent"},
             {"agree", agree}};
      if (!t.nilpotent() && !t.witness_names.empty()) {
        std::string w;
        for (const auto& nm : t.witness_names) w += (w.empty() ? "[" : ", ") + nm;
        v["witness"] = w + "]";
      }
      alg["verdicts"].push_back(std::move(v));
    }
    j["algebras"].push_back(std::move(alg));
  }
  j["ring"] = ring_name(ring);
  return ok ? holds(j) : fails(j);
}

CaseOutcome heisenberg_ladder_case() {
  const RingSpec ring = RingSpec::rationals();
  json j;
  j["caps"] = json::array();
  bool ok = true;
  for (int cap = 2; cap <= 6; ++cap) {
    StructureAlgebra a = example_algebra(ExampleKind::HeisenbergTruncated, cap, ring);
    Element av = a.generators()[0].second;
    Element bv = a.generators()[1].second;
    Element ab = fd_mul(a, av, bv);
    Element c = fd_commutator(a, av, bv);
    json capj{{"cap", cap}};
    capj["ladder"] = json::array();
    Element bracket = av;
    Element power = av;  // a * c^k
    for (int k = 1; k <= 4; ++k) {
      bracket = fd_commutator(a, bracket, ab);
      power = fd_mul(a, power, c);
      bool expect_nonzero = 2 * k + 1 <= cap;
      bool match = (bracket == power) && (bracket.is_zero() == !expect_nonzero);
      ok = ok && match;
      capj["ladder"].push_back(
          {{"k", k}, {"nonzero", !bracket.is_zero()}, {"matches_ac_k", bracket == power}});
    }
    j["caps"].push_back(std::move(capj));
  }
  // the nonvanishing witness [a, ab, ab] = a c^2 at caps >= 5
  StructureAlgebra a5 = example_algebra(ExampleKind::HeisenbergTruncated, 5, ring);
  Element av = a5.generators()[0].second;
  Element bv = a5.generators()[1].second;
  Element ab = fd_mul(a5, av, bv);
  Element w = fd_commutator(a5, fd_commutator(a5, av, ab), ab);
  ok = ok && !w.is_zero();
  j["witness_a_ab_ab_nonzero_at_cap5"] = !w.is_zero();
  return ok ? holds(j) : fails(j);
}

CaseOutcome findim_theorem2_case() {
  const RingSpec ring = RingSpec::rationals();
  json j;
  j["checks"] = json::array();
  bool ok = true;
  for (const auto& [name, build] : example_suite()) {
    StructureAlgebra a = build(ring);
    for (int n = 3; n <= 5; ++n) {
      SubspaceBasis lhs = ideal_from_gens_findim(a, evaluate_sn_family(a, n));
      SubspaceBasis rhs = tideal_findim(a, n);
      bool equal = lhs == rhs;
      ok = ok && equal;
      j["checks"].push_back(
          {{"algebra", name}, {"n", n}, {"rank", rhs.rank()}, {"equal", equal}});
    }
  }
  return ok ? holds(j) : fails(j);
}

CaseOutcome char3_force_probe() {
  const RingSpec ring = RingSpec::prime_field(3);
  json j;
  j["checks"] = json::array();
  for (const auto& [name, build] : example_suite()) {
    StructureAlgebra a = build(ring);
    for (int n = 2; n <= 4; ++n) {
      NilpotencyResult t = verify_via_theorem(a, n, /*force=*/true);
      NilpotencyResult o = lie_nilpotency_oracle(a, n);
      j["checks"].push_back({{"algebra", name},
                             {"n", n},
                             {"criterion_condition", t.nilpotent()},
                             {"oracle", o.nilpotent()},
                             {"diverges", t.verdict != o.verdict}});
    }
  }
  j["note"] = "condition-only search over GF(3); divergences are findings, not failures";
  return holds(j);
}

// --------------------------------------------------------------------------
// property suites (criterion: randomized invariants, zero tolerated failures)
// --------------------------------------------------------------------------

const std::vector<RingSpec>& all_rings() {
  static const std::vector<RingSpec> rings = {
      RingSpec::rationals(), RingSpec::integers(), RingSpec::integers_loc3(),
      RingSpec::prime_field(5), RingSpec::prime_field(3)};
  return rings;
}

Word random_word(std::mt19937_64& rng, std::size_t g, std::size_t max_deg, bool nonempty) {
  std::uniform_int_distribution<std::size_t> len_dist(nonempty ? 1 : 0, max_deg);
  std::uniform_int_distribution<GeneratorIndex> letter(0, static_cast<GeneratorIndex>(g - 1));
  std::vector<GeneratorIndex> ls(len_dist(rng));
  for (auto& l : ls) l = letter(rng);
  return Word{std::move(ls)};
}

Poly random_poly(std::mt19937_64& rng, const RingSpec& ring, std::size_t g, std::size_t max_deg,
                 int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<long> coeff(-3, 3);
  Poly p(ring);
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    long c = coeff(rng);
    if (c == 0) c = 1;
    p.add_term(random_word(rng, g, max_deg, false), scalar_from_long(ring, c));
  }
  return p;
}

CaseOutcome property_freealg_case() {
  std::mt19937_64 rng(20240601);
  int failures = 0;
  std::string first;
  const int iterations = 1000;
  for (int i = 0; i < iterations; ++i) {
    const RingSpec& ring = all_rings()[i % all_rings().size()];
    Poly p = random_poly(rng, ring, 3, 3, 3);
    Poly q = random_poly(rng, ring, 3, 3, 3);
    Poly r = random_poly(rng, ring, 3, 3, 3);
    // anticommutativity
    if (!(commutator(p, q) == poly_neg(commutator(q, p)))) {
      ++failures;
      if (first.empty()) first = "anticommutativity #" + std::to_string(i);
      continue;
    }
    // Jacobi for left-normed brackets
    Poly jac = poly_add(poly_add(commutator(commutator(p, q), r), commutator(commutator(q, r), p)),
                        commutator(commutator(r, p), q));
    if (!jac.is_zero()) {
      ++failures;
      if (first.empty()) first = "jacobi #" + std::to_string(i);
      continue;
    }
    // homogeneous components form a partition
    auto parts = homogeneous_components(p, 3);
    Poly sum(ring);
    bool pure = true;
    for (const auto& [mu, comp] : parts) {
      MultiDegree got;
      pure = pure && comp.is_homogeneous(3, &got) && got == mu;
      sum = poly_add(sum, comp);
    }
    if (!pure || !(sum == p)) {
      ++failures;
      if (first.empty()) first = "partition #" + std::to_string(i);
    }
  }
  json j{{"iterations", iterations}, {"failures", failures}};
  if (failures) j["first_failure"] = first;
  return failures == 0 ? holds(j) : fails(j);
}

CaseOutcome property_ideal_case() {
  std::mt19937_64 rng(20240602);
  int failures = 0;
  std::string first;
  const int iterations = 1000;
  for (int i = 0; i < iterations; ++i) {
    const RingSpec& ring = all_rings()[i % all_rings().size()];
    std::uniform_int_distribution<int> pick_g(2, 3);
    std::size_t g = pick_g(rng);
    std::uniform_int_distribution<std::uint32_t> e(0, 2);
    MultiDegree mu = MultiDegree::zero(g);
    std::size_t total = 0;
    for (auto& x : mu.exponents) {
      x = e(rng);
      total += x;
    }
    if (total < 2) mu.exponents[0] += 2;
    std::vector<Poly> gens = tideal_generators(2, ring, mu);
    IdealTruncation t = make_truncation(gens, mu);
    if (t.spanning.rows.empty()) continue;
    MembershipSolver solver(t);

    // target built as an integer combination of spanning rows: must be Member
    std::uniform_int_distribution<std::size_t> pick(0, t.spanning.rows.size() - 1);
    std::uniform_int_distribution<long> coeff(-2, 2);
    Poly target(ring);
    for (int pieces = 0; pieces < 3; ++pieces) {
      std::size_t row = pick(rng);
      long c = coeff(rng);
      if (c == 0) c = 1;
      for (const auto& [cidx, s] : t.spanning.rows[row].entries)
        target.add_term(t.basis[cidx], ring_mul(ring, scalar_from_long(ring, c), s));
    }
    try {
      if (!target.is_zero()) {
        auto cert = solver.member(target);  // witness re-expansion runs inside
        if (!cert.is_member()) {
          ++failures;
          if (first.empty()) first = "combination not Member #" + std::to_string(i);
          continue;
        }
        // monotonicity under a larger family
        std::vector<Poly> more = gens;
        more.push_back(left_normed_commutator(
            {Poly::generator(ring, 0), Poly::generator(ring, 1), Poly::generator(ring, 0)}));
        auto cert2 = member(target, more);
        if (!cert2.is_member()) {
          ++failures;
          if (first.empty()) first = "monotonicity #" + std::to_string(i);
          continue;
        }
      }
      // a random monomial: any verdict, but certificates must verify (the
      // solver asserts witness re-expansion internally)
      Poly mono = Poly::monomial(ring, component_basis(g, mu)[0], scalar_from_long(ring, 1));
      (void)solver.member(mono);
      if (ring.kind == RingKind::Integers) (void)solver.torsion_member(mono);
    } catch (const std::exception& ex) {
      ++failures;
      if (first.empty()) first = std::string("exception: ") + ex.what();
    }
  }
  json j{{"iterations", iterations}, {"failures", failures}};
  if (failures) j["first_failure"] = first;
  return failures == 0 ? holds(j) : fails(j);
}

CaseOutcome property_linexact_case() {
  std::mt19937_64 rng(20240603);
  int failures = 0;
  std::string first;
  const int iterations = 1000;
  const RingSpec z = RingSpec::integers();
  for (int i = 0; i < iterations; ++i) {
    std::uniform_int_distribution<int> dim_dist(1, 6), rows_dist(1, 6), entry(-9, 9);
    int dim = dim_dist(rng), nrows = rows_dist(rng);
    SparseMat m(z, dim);
    for (int r = 0; r < nrows; ++r) {
      SparseVec v(dim);
      for (int c = 0; c < dim; ++c) {
        long x = entry(rng);
        if (x != 0 && rng() % 2 == 0) v.entries.emplace_back(c, scalar_from_long(z, x));
      }
      m.rows.push_back(std::move(v));
    }
    try {
      NormalFormResult h = hermite_normal_form(m);  // verifies U*A = H internally
      NormalFormResult s = smith_normal_form(m);    // verifies U*A*V = D internally
      for (std::size_t d = 1; d < s.diagonal.size(); ++d)
        if (s.diagonal[d] % s.diagonal[d - 1] != 0) {
          ++failures;
          if (first.empty()) first = "divisibility chain #" + std::to_string(i);
          break;
        }
      // torsion index versus lattice membership
      SparseVec v(dim);
      for (int c = 0; c < dim; ++c) {
        long x = entry(rng);
        if (x != 0 && rng() % 2 == 0) v.entries.emplace_back(c, scalar_from_long(z, x));
      }
      auto k = torsion_index(m, v);
      ZEchelon ech(dim);
      for (const auto& row : m.rows) ech.insert(to_zrow_cleared(row, z));
      bool in_lattice = ech.contains(to_zrow_cleared(v, z));
      if (in_lattice != (k.has_value() && *k == 1)) {
        ++failures;
        if (first.empty()) first = "torsion/lattice disagree #" + std::to_string(i);
      }
      if (k && *k > 1) {
        // k*v must be in the lattice and no proper divisor of k may work
        ZRow kv = to_zrow_cleared(v, z);
        for (auto& [c, val] : kv.e) val *= *k;
        if (!ech.contains(kv)) {
          ++failures;
          if (first.empty()) first = "k*v outside lattice #" + std::to_string(i);
        }
        for (mpz_class d = 1; d < *k; ++d) {
          if (*k % d != 0) continue;
          ZRow dv = to_zrow_cleared(v, z);
          for (auto& [c, val] : dv.e) val *= d;
          if (ech.contains(dv)) {
            ++failures;
            if (first.empty()) first = "torsion not minimal #" + std::to_string(i);
            break;
          }
        }
      }
    } catch (const std::exception& ex) {
      ++failures;
      if (first.empty()) first = std::string("exception: ") + ex.what();
    }
  }
  json j{{"iterations", iterations}, {"failures", failures}};
  if (failures) j["first_failure"] = first;
  return failures == 0 ? holds(j) : fails(j);
}

CaseOutcome identities_case() {
  auto results = run_identity_suite(1, 100);
  json j;
  j["families"] = json::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.failures == 0;
    json f{{"family", r.family}, {"ring", r.ring}, {"samples", r.samples},
           {"failures", r.failures}};
    if (r.failures) f["counterexample"] = r.first_counterexample;
    j["families"].push_back(std::move(f));
  }
  return ok ? holds(j) : fails(j);
}

}  // namespace

// --------------------------------------------------------------------------
// identity families
// --------------------------------------------------------------------------

namespace {

Poly random_word_poly(std::mt19937_64& rng, const RingSpec& ring, std::size_t g,
                      std::size_t max_deg) {
  return Poly::monomial(ring, random_word(rng, g, max_deg, true), scalar_from_long(ring, 1));
}

std::string check_identity(IdentityName name, std::mt19937_64& rng, const RingSpec& ring,
                           std::size_t fixed_arity, std::size_t k_extra) {
  std::size_t arity = fixed_arity;
  if (fixed_arity == 0) {
    std::uniform_int_distribution<std::size_t> kd(1, 4);
    arity = kd(rng) + k_extra;
  }
  std::vector<Poly> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(random_word_poly(rng, ring, 3, 4));
  auto [lhs, rhs] = identity_instance(name, std::span<const Poly>(args));
  if (poly_sub(lhs, rhs).is_zero()) return {};
  std::string desc = identity_name_string(name) + " at args";
  for (const auto& a : args) desc += " " + render_poly(a, gen_names(3));
  return desc;
}

}  // namespace

const std::vector<IdentityFamily>& identity_families() {
  static const std::vector<IdentityFamily> families = {
      {"prod2_once",
       [](std::mt19937_64& rng, const RingSpec& ring) {
         return check_identity(IdentityName::Prod2Once, rng, ring, 3, 0);
       }},
      {"prodk_once",
       [](std::mt19937_64& rng, const RingSpec& ring) {
         return check_identity(IdentityName::ProdKOnce, rng, ring, 0, 1);
       }},
      {"prod2_twice",
       [](std::mt19937_64& rng, const RingSpec& ring) {
         return check_identity(IdentityName::Prod2Twice, rng, ring, 4, 0);
       }},
      {"prodk_twice",
       [](std::mt19937_64& rng, const RingSpec& ring) {
         return check_identity(IdentityName::ProdKTwice, rng, ring, 0, 2);
       }},
      {"prod2_thrice",
       [](std::mt19937_64& rng, const RingSpec& ring) {
         return check_identity(IdentityName::Prod2Thrice, rng, ring, 5, 0);
       }},
      {"right_letter_decomposition",
       [](std::mt19937_64& rng, const RingSpec& ring) -> std::string {
         Word w1 = random_word(rng, 3, 4, true);
         Word w2 = random_word(rng, 3, 4, true);
         Poly p = commutator(Poly::monomial(ring, w1, scalar_from_long(ring, 1)),
                             Poly::monomial(ring, w2, scalar_from_long(ring, 1)));
         auto decomp = rewrite_as_right_letter_commutators(p, 3);
         Poly sum(ring);
         for (const auto& [c, q] : decomp) sum = poly_add(sum, poly_scalar_mul(c, q));
         if (sum == p) return {};
         return "decomposition of [" + render_word(w1, gen_names(3)) + ", " +
                render_word(w2, gen_names(3)) + "] does not re-sum";
       }},
  };
  return families;
}

std::vector<IdentityFamilyResult> run_identity_suite_with(
    const std::vector<IdentityFamily>& families, std::uint64_t seed, int samples) {
  std::vector<IdentityFamilyResult> out;
  for (const auto& fam : families) {
    for (const auto& ring : all_rings()) {
      IdentityFamilyResult r;
      r.family = fam.name;
      r.ring = ring_name(ring);
      r.samples = samples;
      std::mt19937_64 rng(seed ^ std::hash<std::string>{}(fam.name + r.ring));
      for (int i = 0; i < samples; ++i) {
        std::string cex = fam.sample(rng, ring);
        if (!cex.empty()) {
          ++r.failures;
          if (r.first_counterexample.empty()) r.first_counterexample = cex;
        }
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<IdentityFamilyResult> run_identity_suite(std::uint64_t seed, int samples) {
  return run_identity_suite_with(identity_families(), seed, samples);
}

// --------------------------------------------------------------------------
// registry and runner
// --------------------------------------------------------------------------

const std::vector<BatteryCase>& battery_cases() {
  static const std::vector<BatteryCase> cases = [] {
    std::vector<BatteryCase> v;
    v.push_back({"identities-suite", "expansion identities and right-letter decomposition", 1,
                 [] { return identities_case(); }});
    for (int n : {3, 4, 5}) {
      v.push_back({"theorem2-n" + std::to_string(n) + "-Q",
                   "S^(n) equals the T^(n) oracle componentwise over Q", 2,
                   [n] { return theorem2_case(n, RingSpec::rationals()); }});
      v.push_back({"theorem2-n" + std::to_string(n) + "-Z3loc",
                   "S^(n) equals the T^(n) oracle componentwise over Z[1/3]", 2,
                   [n] { return theorem2_case(n, RingSpec::integers_loc3()); }});
    }
    v.push_back({"remark2-torsion",
                 "[x1,x2][x3,x4,x5] has torsion index 3 in T^(4) over Z", 3,
                 [] { return remark2_case(); }});
    v.push_back({"prop3-member-Q", "[[x1,x2]x3,x4,x5] lies in T^(4) over Q", 4,
                 [] { return prop3_case(true); }});
    v.push_back({"prop3-nonmember-Z", "[[x1,x2]x3,x4,x5] is outside T^(4) over Z", 4,
                 [] { return prop3_case(false); }});
    v.push_back({"latyshev-t3-Q", "Latyshev family generates T^(3) componentwise", 5,
                 [] { return latyshev_case(); }});
    v.push_back({"volichenko-t4-Q", "Volichenko family generates T^(4) multilinearly", 5,
                 [] { return multilinear_t4_case(false); }});
    v.push_back({"integer-t4-Z", "six-type integer family generates T^(4) multilinearly", 5,
                 [] { return multilinear_t4_case(true); }});
    v.push_back({"theorem3-wforms-Z", "five-form family generates W componentwise over Z", 6,
                 [] { return wforms_case(true); }});
    v.push_back({"corollary5-wforms-Q", "four-form family generates W componentwise over Q", 6,
                 [] { return wforms_case(false); }});
    v.push_back({"prop4-iprime-torsion",
                 "torsion of [s,x1][x2,x3,x4] against the I' forms divides 3", 6,
                 [] { return prop4_case(); }});
    v.push_back({"lemma10-i-Z", "[u,a1][a2,a3]+[u,a2][a1,a3] lies in T^(4) over Z", 7,
                 [] { return lemma10_case(false); }});
    v.push_back({"lemma10-ii-torsion", "u[a1,a2,a3] has torsion index 3 in T^(4) over Z", 7,
                 [] { return lemma10_case(true); }});
    v.push_back({"remark1-t3t2-member-Q",
                 "multilinear [a1,a2,a3][a4,a5] lies in T^(4) over Q", 8,
                 [] { return remark1_case(true); }});
    v.push_back({"remark1-t2t2-nonmember-Q", "[x1,x2][x3,x4] is outside T^(3) over Q", 8,
                 [] { return remark1_case(false); }});
    v.push_back({"findim-agreement-Q",
                 "criterion and brute-force oracle agree on the example algebras over Q", 9,
                 [] { return findim_agreement_case(RingSpec::rationals()); }});
    v.push_back({"findim-agreement-F5",
                 "criterion and brute-force oracle agree on the example algebras over GF(5)", 9,
                 [] { return findim_agreement_case(RingSpec::prime_field(5)); }});
    v.push_back({"heisenberg-ladder", "[a, ab, ..., ab] = a c^k in truncated U(H)", 9,
                 [] { return heisenberg_ladder_case(); }});
    v.push_back({"findim-theorem2-Q",
                 "ideal of evaluated S^(n) equals T^(n)(A) on the example algebras", 10,
                 [] { return findim_theorem2_case(); }});
    v.push_back({"property-freealg", "anticommutativity, Jacobi and component partition", 11,
                 [] { return property_freealg_case(); }});
    v.push_back({"property-ideal-certificates",
                 "membership certificates re-expand; membership is monotone", 11,
                 [] { return property_ideal_case(); }});
    v.push_back({"property-linexact-normalforms",
                 "HNF/SNF transforms verify; torsion matches lattice membership", 11,
                 [] { return property_linexact_case(); }});
    v.push_back({"remark4-span-Z", "position-k variants lie in the Z-span of the k=2 variants",
                 0, [] { return remark4_case(); }});
    v.push_back({"prop3-char3-probe", "membership of the Remark 2 witness over GF(3)", 0,
                 [] { return prop3_char3_probe(); }});
    v.push_back({"char3-force-probe",
                 "condition-only criterion versus oracle over GF(3) on the examples", 0,
                 [] { return char3_force_probe(); }});
    return v;
  }();
  return cases;
}

bool case_id_matches(const std::string& id, const std::string& filter) {
  if (filter.empty() || filter == "*") return true;
  // glob with '*' wildcards
  std::vector<std::string> parts;
  std::string cur;
  for (char c : filter) {
    if (c == '*') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (p.empty()) continue;
    std::size_t found = id.find(p, pos);
    if (found == std::string::npos) return false;
    if (i == 0 && found != 0) return false;
    pos = found + p.size();
  }
  if (!parts.back().empty() && pos != id.size()) return false;
  return true;
}

BatteryResult run_battery(const std::string& filter, int jobs) {
  const auto& cases = battery_cases();
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (case_id_matches(cases[i].id, filter)) selected.push_back(i);
  if (selected.empty() && !filter.empty())
    throw std::invalid_argument("no battery case matches filter '" + filter + "'");

  std::vector<CaseReport> reports(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t slot = next.fetch_add(1);
      if (slot >= selected.size()) return;
      const BatteryCase& bc = cases[selected[slot]];
      auto start = std::chrono::steady_clock::now();
      CaseOutcome outcome;
      try {
        outcome = bc.run();
      } catch (const std::exception& ex) {
        outcome.verdict = "fails";
        outcome.certificate_json = json{{"error", ex.what()}}.dump();
      }
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      CaseReport r;
      r.case_id = bc.id;
      r.verdict = outcome.verdict;
      r.certificate_json = outcome.certificate_json;
      r.torsion_index = outcome.torsion_index;
      r.elapsed_ms = static_cast<long>(elapsed);
      reports[slot] = std::move(r);
    }
  };

  int nthreads = std::max(1, jobs);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BatteryResult res;
  res.reports = std::move(reports);
  for (const auto& r : res.reports)
    if (r.verdict == "fails") ++res.failures;
  return res;
}

// --------------------------------------------------------------------------
// command engines
// --------------------------------------------------------------------------

std::vector<std::string> infer_generator_names(const std::string& expr) {
  std::vector<std::string> names;
  std::string cur;
  for (std::size_t i = 0; i <= expr.size(); ++i) {
    char c = i < expr.size() ? expr[i] : ' ';
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
        (!cur.empty() && std::isdigit(static_cast<unsigned char>(c)))) {
      cur += c;
    } else {
      if (!cur.empty() && std::find(names.begin(), names.end(), cur) == names.end())
        names.push_back(cur);
      cur.clear();
    }
  }
  return names;
}

std::vector<CaseReport> cmd_member(const MemberQuery& q) {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> names =
      q.generators.empty() ? infer_generator_names(q.target_expr) : q.generators;
  if (names.empty()) throw std::invalid_argument("no generators named in the target");
  Poly target = parse_poly(q.target_expr, names, q.ring);

  std::vector<CaseReport> reports;
  auto components = homogeneous_components(target, names.size());
  if (components.empty())
    components.emplace(MultiDegree::zero(names.size()), Poly::zero(q.ring));

  for (const auto& [mu, comp] : components) {
    CaseReport r;
    r.case_id = "member/" + q.ideal_spec + "/" + q.target_expr + "@" + mu_string(mu);
    auto comp_start = std::chrono::steady_clock::now();
    if (static_cast<int>(mu.total()) > q.degree_cap) {
      r.verdict = "refused";
      r.certificate_json =
          json{{"reason", "component degree " + std::to_string(mu.total()) +
                              " exceeds --degree-cap " + std::to_string(q.degree_cap)}}
              .dump();
      reports.push_back(std::move(r));
      continue;
    }
    std::vector<Poly> gens;
    if (!q.ideal_spec.empty() && q.ideal_spec[0] == '@') {
      std::ifstream in(q.ideal_spec.substr(1));
      if (!in) throw std::invalid_argument("cannot open ideal file " + q.ideal_spec.substr(1));
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        gens.push_back(parse_poly(line, names, q.ring));
      }
    } else {
      FamilySpec spec = parse_family_spec(q.ideal_spec);
      gens = build_family(spec, q.ring, names.size(), mu);
    }

    IdealTruncation t = make_truncation(gens, mu);
    MembershipSolver solver(t);
    auto cert = solver.member(comp);
    json cj = certificate_json(cert, names);
    if (q.ring.kind == RingKind::Integers) {
      auto torsion = solver.torsion_member(comp);
      if (torsion.verdict == MembershipCertificate::Verdict::Torsion)
        r.torsion_index = static_cast<long>(torsion.torsion_index.get_si());
    } else if (cert.in_rational_span && cert.torsion_index != 0) {
      r.torsion_index = static_cast<long>(cert.torsion_index.get_si());
    }
    r.verdict = cert.is_member() ? "holds" : "fails";
    r.certificate_json = cj.dump();
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - comp_start)
                       .count();
    reports.push_back(std::move(r));
  }
  (void)start;
  return reports;
}

std::vector<CaseReport> cmd_verify(const VerifyQuery& q) {
  auto start = std::chrono::steady_clock::now();
  StructureAlgebra a = [&] {
    if (!q.algebra_path.empty()) return from_algebra_file(load_algebra(q.algebra_path));
    return example_algebra(q.example_spec, q.ring);
  }();

  std::string what = q.algebra_path.empty() ? q.example_spec : q.algebra_path;
  CaseReport r;
  r.case_id = "verify/" + what + "/n=" + std::to_string(q.n) + "/" + q.mode;
  json cj;

  std::optional<NilpotencyResult> theorem, oracle;
  if (q.mode == "theorem" || q.mode == "both") theorem = verify_via_theorem(a, q.n, q.force);
  if (q.mode == "oracle" || q.mode == "both") oracle = lie_nilpotency_oracle(a, q.n);

  auto verdict_str = [](const NilpotencyResult& res) {
    switch (res.verdict) {
      case NilpotencyVerdict::LieNilpotent: return "LieNilpotent";
      case NilpotencyVerdict::NotLieNilpotent: return "NotLieNilpotent";
      case NilpotencyVerdict::Refused: return "Refused";
    }
    return "?";
  };
  auto witness_of = [&](const NilpotencyResult& res) {
    json w = json::array();
    for (const auto& nm : res.witness_names) w.push_back(nm);
    return w;
  };

  if (theorem) {
    cj["theorem"] = verdict_str(*theorem);
    if (theorem->verdict == NilpotencyVerdict::NotLieNilpotent)
      cj["theorem_witness"] = witness_of(*theorem);
    if (theorem->verdict == NilpotencyVerdict::Refused) cj["reason"] = theorem->refusal_reason;
    if (q.force && !three_invertible(a.ring())) cj["condition_only"] = true;
  }
  if (oracle) {
    cj["oracle"] = verdict_str(*oracle);
    if (oracle->verdict == NilpotencyVerdict::NotLieNilpotent)
      cj["oracle_witness"] = witness_of(*oracle);
  }

  bool inconsistent = theorem && oracle && theorem->verdict != NilpotencyVerdict::Refused &&
                      theorem->verdict != oracle->verdict;
  if (inconsistent) {
    cj["inconsistent"] = true;
    r.verdict = "fails";
  } else if (theorem && theorem->verdict == NilpotencyVerdict::Refused && !oracle) {
    r.verdict = "refused";
  } else {
    r.verdict = "holds";
  }
  r.certificate_json = cj.dump();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return {r};
}

std::vector<CaseReport> cmd_identities(std::uint64_t seed, int samples) {
  std::vector<CaseReport> reports;
  auto start = std::chrono::steady_clock::now();
  auto results = run_identity_suite(seed, samples);
  long elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  long per = results.empty() ? 0 : elapsed / static_cast<long>(results.size());
  for (const auto& res : results) {
    CaseReport r;
    r.case_id = "identities/" + res.family + "/" + res.ring;
    r.verdict = res.failures == 0 ? "holds" : "fails";
    json cj{{"samples", res.samples}, {"failures", res.failures}};
    if (res.failures) cj["counterexample"] = res.first_counterexample;
    r.certificate_json = cj.dump();
    r.elapsed_ms = per;
    reports.push_back(std::move(r));
  }
  return reports;
}

BatteryResult cmd_reproduce(const std::string& filter, int jobs) {
  return run_battery(filter, jobs);
}

}  // namespace lienil
