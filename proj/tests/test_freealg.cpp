#include "lienil/freealg.hpp"

#include <doctest.h>

#include <random>

using namespace lienil;

namespace {

const RingSpec Q = RingSpec::rationals();

Poly gen(GeneratorIndex i, const RingSpec& ring = Q) { return Poly::generator(ring, i); }

Poly word(std::initializer_list<GeneratorIndex> ls, const RingSpec& ring = Q) {
  return Poly::monomial(ring, Word{std::vector<GeneratorIndex>(ls)}, scalar_from_long(ring, 1));
}

Word random_word(std::mt19937_64& rng, std::size_t g, std::size_t max_deg, bool nonempty) {
  std::uniform_int_distribution<std::size_t> len(nonempty ? 1 : 0, max_deg);
  std::uniform_int_distribution<GeneratorIndex> letter(0, static_cast<GeneratorIndex>(g - 1));
  std::vector<GeneratorIndex> ls(len(rng));
  for (auto& l : ls) l = letter(rng);
  return Word{std::move(ls)};
}

const std::vector<RingSpec>& five_rings() {
  static const std::vector<RingSpec> rings = {
      RingSpec::rationals(), RingSpec::integers(), RingSpec::integers_loc3(),
      RingSpec::prime_field(5), RingSpec::prime_field(3)};
  return rings;
}

}  // namespace

TEST_CASE("poly add / mul basics") {
  CHECK(poly_add(gen(0), poly_neg(gen(0))).is_zero());
  Poly s = poly_add(word({0, 1}), word({1, 0}));
  CHECK(s.term_count() == 2);
  Poly t = poly_add(poly_add(gen(0), gen(1)), gen(0));
  CHECK(t.coeff(Word::single(0)) == Scalar(2));
  CHECK(t.coeff(Word::single(1)) == Scalar(1));

  CHECK(poly_mul(gen(0), gen(1)) == word({0, 1}));
  CHECK(poly_mul(Poly::unit(Q), s) == s);
  // (x1 + x2)(x1 - x2) = x1x1 - x1x2 + x2x1 - x2x2
  Poly prod = poly_mul(poly_add(gen(0), gen(1)), poly_sub(gen(0), gen(1)));
  CHECK(prod.coeff(Word{{0, 0}}) == Scalar(1));
  CHECK(prod.coeff(Word{{0, 1}}) == Scalar(-1));
  CHECK(prod.coeff(Word{{1, 0}}) == Scalar(1));
  CHECK(prod.coeff(Word{{1, 1}}) == Scalar(-1));
  CHECK(prod.term_count() == 4);

  CHECK_THROWS_AS(poly_add(gen(0), gen(0, RingSpec::integers())), RingError);
}

TEST_CASE("commutators") {
  Poly c = commutator(gen(0), gen(1));
  CHECK(c.coeff(Word{{0, 1}}) == Scalar(1));
  CHECK(c.coeff(Word{{1, 0}}) == Scalar(-1));
  CHECK(c.term_count() == 2);

  Poly p = poly_add(gen(0), word({1, 1}));
  CHECK(commutator(p, p).is_zero());
  CHECK(commutator(gen(0), Poly::unit(Q)).is_zero());
}

TEST_CASE("left-normed brackets") {
  // [[x1,x2],x3] = x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1
  Poly b = left_normed_commutator({gen(0), gen(1), gen(2)});
  CHECK(b.term_count() == 4);
  CHECK(b.coeff(Word{{0, 1, 2}}) == Scalar(1));
  CHECK(b.coeff(Word{{1, 0, 2}}) == Scalar(-1));
  CHECK(b.coeff(Word{{2, 0, 1}}) == Scalar(-1));
  CHECK(b.coeff(Word{{2, 1, 0}}) == Scalar(1));

  CHECK(left_normed_commutator({gen(0), gen(0), gen(1)}).is_zero());

  // [a, ab] on two generators
  Poly a = gen(0), ab = word({0, 1});
  Poly want = poly_sub(poly_mul(a, ab), poly_mul(ab, a));
  CHECK(left_normed_commutator({a, ab}) == want);

  std::vector<Poly> one{gen(0)};
  CHECK_THROWS_AS(left_normed_commutator(std::span<const Poly>(one)), std::invalid_argument);
}

TEST_CASE("multidegree") {
  CHECK(multidegree(Word{{0, 1, 0}}, 2) == MultiDegree({2, 1}));
  CHECK(multidegree(Word::unit(), 2) == MultiDegree({0, 0}));
  CHECK(multidegree(Word{{1, 1}}, 3) == MultiDegree({0, 2, 0}));
  CHECK_THROWS_AS(multidegree(Word{{5}}, 2), std::out_of_range);
}

TEST_CASE("homogeneous components") {
  Poly c = commutator(gen(0), gen(1));
  auto parts = homogeneous_components(c, 2);
  CHECK(parts.size() == 1);
  CHECK(parts.begin()->first == MultiDegree({1, 1}));

  Poly mixed = poly_add(gen(0), word({0, 0}));
  parts = homogeneous_components(mixed, 2);
  CHECK(parts.size() == 2);

  CHECK(homogeneous_components(Poly::zero(Q), 2).empty());

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    Poly p(Q);
    for (int t = 0; t < 4; ++t) p.add_term(random_word(rng, 3, 4, false), Scalar(1 + t % 2));
    Poly sum(Q);
    for (const auto& [mu, comp] : homogeneous_components(p, 3)) {
      MultiDegree got;
      CHECK(comp.is_homogeneous(3, &got));
      CHECK(got == mu);
      sum = poly_add(sum, comp);
    }
    CHECK(sum == p);
  }
}

TEST_CASE("anticommutativity and Jacobi on random polynomials") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const RingSpec& ring = five_rings()[i % five_rings().size()];
    auto rnd = [&] {
      Poly p(ring);
      std::uniform_int_distribution<long> c(-2, 2);
      for (int t = 0; t < 3; ++t) {
        long v = c(rng);
        p.add_term(random_word(rng, 3, 3, false), scalar_from_long(ring, v == 0 ? 1 : v));
      }
      return p;
    };
    Poly p = rnd(), q = rnd(), r = rnd();
    CHECK(commutator(p, q) == poly_neg(commutator(q, p)));
    Poly jac = poly_add(
        poly_add(commutator(commutator(p, q), r), commutator(commutator(q, r), p)),
        commutator(commutator(r, p), q));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("identity instances vanish on the documented examples") {
  auto [l1, r1] = identity_instance(IdentityName::Prod2Once,
                                    std::vector<Poly>{gen(0), gen(1), gen(2)});
  CHECK(poly_sub(l1, r1).is_zero());

  auto [l2, r2] = identity_instance(IdentityName::Prod2Twice,
                                    std::vector<Poly>{gen(0), gen(1), gen(2), gen(3)});
  CHECK(poly_sub(l2, r2).is_zero());

  auto [l3, r3] = identity_instance(IdentityName::Prod2Thrice,
                                    std::vector<Poly>{gen(0), gen(1), gen(2), gen(3), gen(4)});
  CHECK(poly_sub(l3, r3).is_zero());
}

TEST_CASE("identity instances vanish on random words over all rings") {
  std::mt19937_64 rng(17);
  struct Probe {
    IdentityName name;
    std::size_t arity;  // 0: k-ary, draw k
    std::size_t extra;
  };
  std::vector<Probe> probes = {{IdentityName::Prod2Once, 3, 0},
                               {IdentityName::ProdKOnce, 0, 1},
                               {IdentityName::Prod2Twice, 4, 0},
                               {IdentityName::ProdKTwice, 0, 2},
                               {IdentityName::Prod2Thrice, 5, 0}};
  for (const auto& ring : five_rings()) {
    for (const auto& probe : probes) {
      for (int i = 0; i < 20; ++i) {
        std::size_t arity = probe.arity;
        if (arity == 0) {
          std::uniform_int_distribution<std::size_t> kd(1, 4);
          arity = kd(rng) + probe.extra;
        }
        std::vector<Poly> args;
        for (std::size_t a = 0; a < arity; ++a)
          args.push_back(
              Poly::monomial(ring, random_word(rng, 3, 4, true), scalar_from_long(ring, 1)));
        auto [lhs, rhs] = identity_instance(probe.name, args);
        CHECK(poly_sub(lhs, rhs).is_zero());
      }
    }
  }
}

TEST_CASE("identity instance rejects wrong arity and unknown names") {
  std::vector<Poly> two{gen(0), gen(1)};
  CHECK_THROWS_AS(identity_instance(IdentityName::Prod2Once, two), std::invalid_argument);
  CHECK_THROWS(identity_name_from_string("nope"));
  CHECK(identity_name_from_string("prod2_twice") == IdentityName::Prod2Twice);
}

TEST_CASE("right-letter decomposition matches the documented examples") {
  auto decompose = [&](std::initializer_list<GeneratorIndex> w1,
                       std::initializer_list<GeneratorIndex> w2) {
    Poly p = commutator(word(w1), word(w2));
    return rewrite_as_right_letter_commutators(p, 4);
  };

  // [x1, x2] -> {(1, [x1, x2])}
  auto d1 = decompose({0}, {1});
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].first == Scalar(1));
  CHECK(d1[0].second == commutator(gen(0), gen(1)));

  // [x1x2, x3x4] -> {(1, [x1x2x3, x4]), (1, [x4x1x2, x3])}
  auto d2 = decompose({0, 1}, {2, 3});
  REQUIRE(d2.size() == 2);
  CHECK(d2[0].second == commutator(word({0, 1, 2}), gen(3)));
  CHECK(d2[1].second == commutator(word({3, 0, 1}), gen(2)));

  // [x1, x2x3] -> {(1, [x1x2, x3]), (1, [x3x1, x2])}
  auto d3 = decompose({0}, {1, 2});
  REQUIRE(d3.size() == 2);
  CHECK(d3[0].second == commutator(word({0, 1}), gen(2)));
  CHECK(d3[1].second == commutator(word({2, 0}), gen(1)));

  CHECK_THROWS_AS(rewrite_as_right_letter_commutators(gen(0), 2), std::invalid_argument);
  CHECK_THROWS_AS(rewrite_as_right_letter_commutators(poly_add(gen(0), gen(1)), 2),
                  std::invalid_argument);
}

TEST_CASE("right-letter decomposition re-sums to its input") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    const RingSpec& ring = five_rings()[i % five_rings().size()];
    Word w1 = random_word(rng, 3, 4, true);
    Word w2 = random_word(rng, 3, 4, true);
    Poly p = commutator(Poly::monomial(ring, w1, scalar_from_long(ring, 1)),
                        Poly::monomial(ring, w2, scalar_from_long(ring, 1)));
    Poly sum(ring);
    for (const auto& [c, q] : rewrite_as_right_letter_commutators(p, 3))
      sum = poly_add(sum, poly_scalar_mul(c, q));
    CHECK(sum == p);
  }
}

TEST_CASE("canonical rendering") {
  std::vector<std::string> names{"x1", "x2"};
  CHECK(render_poly(commutator(gen(0), gen(1)), names) == "x1*x2 - x2*x1");
  CHECK(render_poly(Poly::zero(Q), names) == "0");
  Poly c(Q);
  c.add_term(Word::unit(), Scalar(-1, 2));
  c.add_term(Word{{1}}, Scalar(3));
  CHECK(render_poly(c, names) == "-1/2 + 3*x2");
}
