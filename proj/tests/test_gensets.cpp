#include "lienil/gensets.hpp"

#include "lienil/ideal.hpp"

#include <doctest.h>

using namespace lienil;

namespace {

const RingSpec Q = RingSpec::rationals();

Poly bracket(std::initializer_list<GeneratorIndex> idx, const RingSpec& ring = Q) {
  std::vector<Poly> args;
  for (auto i : idx) args.push_back(Poly::generator(ring, i));
  return left_normed_commutator(std::span<const Poly>(args));
}

bool contains_poly(const std::vector<Poly>& family, const Poly& p) {
  for (const auto& f : family)
    if (f == p) return true;
  return false;
}

}  // namespace

TEST_CASE("sn generators: counts and pruning") {
  // n=2, two generators: [x1,x2] and [x2,x1] survive zero pruning
  auto s2 = sn_generators(2, 2, Q);
  CHECK(s2.size() == 2);
  GensetOptions dedup;
  dedup.dedup = true;
  CHECK(sn_generators(2, 2, Q, dedup).size() == 1);

  // raw tuple count g^2 (g+g^2)^(n-2)
  CHECK(sn_raw_tuple_count(3, 2) == 24);
  CHECK(sn_raw_tuple_count(2, 2) == 4);

  // n=3 on a single generator: everything vanishes
  CHECK(sn_generators(3, 1, Q).empty());

  // every emitted element is homogeneous (ideal-module precondition)
  for (const auto& p : sn_generators(3, 2, Q)) {
    CHECK(!p.is_zero());
    CHECK(p.is_homogeneous(2));
  }
}

TEST_CASE("sn generators: tuple enumeration matches the closed form") {
  // count tuples by brute force, including vanishing brackets
  for (int n : {2, 3}) {
    for (std::size_t g : {1u, 2u}) {
      long middles = static_cast<long>(g + g * g);
      long raw = static_cast<long>(g * g);
      for (int i = 0; i < n - 2; ++i) raw *= middles;
      CHECK(sn_raw_tuple_count(n, g) == raw);
    }
  }
}

TEST_CASE("latyshev family includes the displayed forms") {
  auto fam = latyshev_t3(4, Q);
  CHECK(contains_poly(fam, bracket({0, 1, 2})));
  Poly displayed = poly_add(poly_mul(bracket({0, 1}), bracket({2, 3})),
                            poly_mul(bracket({0, 2}), bracket({1, 3})));
  CHECK(contains_poly(fam, displayed));
}

TEST_CASE("volichenko family includes the displayed forms") {
  GensetOptions opts;
  opts.within = MultiDegree({1, 1, 1, 1, 1});
  auto fam = volichenko_t4(5, Q, opts);
  Poly displayed = poly_mul(bracket({0, 1}), bracket({2, 3, 4}));
  CHECK(contains_poly(fam, displayed));
  for (const auto& p : fam)
    if (!p.is_zero()) CHECK(p.is_homogeneous(5));
}

TEST_CASE("integer family includes the displayed forms") {
  const RingSpec Z = RingSpec::integers();
  GensetOptions opts;
  opts.within = MultiDegree({1, 1, 1, 1, 1, 1});
  auto fam = integer_t4(6, Z, opts);
  Poly displayed = poly_mul(bracket({0, 1, 2}, Z), bracket({3, 4, 5}, Z));
  CHECK(contains_poly(fam, displayed));
}

TEST_CASE("w forms and the I' subfamily") {
  std::vector<Poly> seed{bracket({0, 1})};
  auto w = w_forms(seed, 4);
  auto ip = iprime_forms(seed, 4);
  auto c5 = corollary5_forms(seed, 4);

  // [[x1,x2],x1,x2] appears as a form-1 instance
  Poly f1 = left_normed_commutator({bracket({0, 1}), Poly::generator(Q, 0),
                                    Poly::generator(Q, 1)});
  CHECK(contains_poly(w, f1));
  CHECK(contains_poly(ip, f1));

  // form-3 instance [s,x3][x1,x2,x4]
  Poly f3 = poly_mul(commutator(bracket({0, 1}), Poly::generator(Q, 2)),
                     left_normed_commutator({Poly::generator(Q, 0), Poly::generator(Q, 1),
                                             Poly::generator(Q, 3)}));
  CHECK(contains_poly(w, f3));
  CHECK(!contains_poly(c5, f3));

  // every I' element appears among the w forms
  for (const auto& p : ip) CHECK(contains_poly(w, p));

  CHECK_THROWS_AS(w_forms({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(w_forms({poly_add(bracket({0, 1}), Poly::generator(Q, 0))}, 3),
                  std::invalid_argument);
}

TEST_CASE("sn variants") {
  auto [s, sp] = sn_variants(4, 5, 3, Q);
  CHECK(!s.empty());
  // an S element has its two-letter entry in position 3: [x1, x2, x3x4, x5]
  Poly sample = left_normed_commutator(
      {Poly::generator(Q, 0), Poly::generator(Q, 1),
       Poly::monomial(Q, Word{{2, 3}}, Scalar(1)), Poly::generator(Q, 4)});
  CHECK(contains_poly(s, sample));

  // k = 2 gives S = S'
  auto [s2, sp2] = sn_variants(4, 3, 2, Q);
  CHECK(s2.size() == sp2.size());
  for (std::size_t i = 0; i < s2.size(); ++i) CHECK(s2[i] == sp2[i]);

  // n = 3 admits only k = 2
  CHECK_THROWS_AS(sn_variants(3, 3, 3, Q), std::invalid_argument);
  auto [s3, sp3] = sn_variants(3, 2, 2, Q);
  CHECK(s3.size() == sp3.size());
}

TEST_CASE("every S^(n) element lies in the T^(n) oracle span") {
  auto s3 = sn_generators(3, 2, Q);
  for (const auto& p : s3) {
    MultiDegree mu;
    REQUIRE(p.is_homogeneous(2, &mu));
    auto oracle = tideal_generators(3, Q, mu);
    CHECK(member(p, oracle).is_member());
  }
}

TEST_CASE("family spec parsing") {
  CHECK(parse_family_spec("Sn:3").name == FamilySpec::Name::Sn);
  CHECK(parse_family_spec("Sn:3").n == 3);
  CHECK(parse_family_spec("TnOracle:4").n == 4);
  CHECK(parse_family_spec("LatyshevT3").name == FamilySpec::Name::LatyshevT3);
  CHECK_THROWS(parse_family_spec("Sn:1"));
  CHECK_THROWS(parse_family_spec("Bogus"));

  // TnOracle requires a component
  CHECK_THROWS_AS(build_family(parse_family_spec("TnOracle:3"), Q, 3), std::invalid_argument);
  auto fam = build_family(parse_family_spec("TnOracle:3"), Q, 3, MultiDegree({1, 1, 1}));
  CHECK(fam.size() == 3);
}

TEST_CASE("budget filtering preserves the component restriction") {
  // generators surviving the component filter agree with the unfiltered family
  MultiDegree mu({2, 1, 1});
  GensetOptions budget;
  budget.within = mu;
  auto filtered = latyshev_t3(3, Q, budget);
  auto full = latyshev_t3(3, Q);
  IdealTruncation a = make_truncation(filtered, mu);
  IdealTruncation b = make_truncation(full, mu);
  CHECK(a.spanning.rows.size() == b.spanning.rows.size());
  CHECK(span_equal(filtered, full, mu));
}
