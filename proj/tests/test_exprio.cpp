#include "lienil/exprio.hpp"

#include <doctest.h>

#include <random>

using namespace lienil;

namespace {

const RingSpec Q = RingSpec::rationals();
const std::vector<std::string> XY{"x1", "x2", "x3", "x4"};

}  // namespace

TEST_CASE("parser shapes") {
  auto ast = parse_expr("[x1,x2]", XY);
  CHECK(std::holds_alternative<Bracket>(ast->node));
  CHECK(std::get<Bracket>(ast->node).args.size() == 2);

  ast = parse_expr("[x1, x2*x3, x4]", XY);
  const auto& br = std::get<Bracket>(ast->node);
  REQUIRE(br.args.size() == 3);
  CHECK(std::holds_alternative<Product>(br.args[1]->node));

  ast = parse_expr("[x1,x2]*[x3,x4] + [x1,x3]*[x2,x4]", XY);
  const auto& sum = std::get<Sum>(ast->node);
  REQUIRE(sum.terms.size() == 2);
  CHECK(std::holds_alternative<Product>(sum.terms[0].term->node));
}

TEST_CASE("parser rejections carry positions") {
  CHECK_THROWS_AS(parse_expr("[x1]", XY), ParseError);          // one-argument bracket
  CHECK_THROWS_AS(parse_expr("[x1,x2", XY), ParseError);        // unterminated
  CHECK_THROWS_AS(parse_expr("x1 x2", XY), ParseError);         // juxtaposition is not product
  CHECK_THROWS_AS(parse_expr("[x9,x2]", XY), ParseError);       // unknown generator
  CHECK_THROWS_AS(parse_expr("", XY), ParseError);
  try {
    parse_expr("[x1,\n  x2", XY);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("elaboration") {
  CHECK(parse_poly("[x1,x2]", XY, Q) ==
        commutator(Poly::generator(Q, 0), Poly::generator(Q, 1)));

  Poly p = parse_poly("3*[x1,x2]", XY, RingSpec::integers());
  CHECK(p.coeff(Word{{0, 1}}) == Scalar(3));
  CHECK(p.coeff(Word{{1, 0}}) == Scalar(-3));

  CHECK_THROWS_AS(parse_poly("1/2*[x1,x2]", XY, RingSpec::integers()), RingError);
  // whitespace-insensitive
  CHECK(parse_poly(" [ x1 , x2 ] ", XY, Q) == parse_poly("[x1,x2]", XY, Q));
  // parenthesized subexpressions and constants
  CHECK(parse_poly("(x1 + x2)*x3 - x1*x3 - x2*x3", XY, Q).is_zero());
  CHECK(parse_poly("2 - 2", XY, Q).is_zero());
  CHECK(parse_poly("-x1 + x1", XY, Q).is_zero());
}

TEST_CASE("render / parse round trip on random polynomials") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> nterms(1, 4), len(0, 3), letter(0, 3);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  for (int i = 0; i < 300; ++i) {
    Poly p(Q);
    int t = nterms(rng);
    for (int k = 0; k < t; ++k) {
      std::vector<GeneratorIndex> ls(len(rng));
      for (auto& l : ls) l = letter(rng);
      long n = num(rng);
      if (n == 0) n = 1;
      p.add_term(Word{std::move(ls)}, Scalar(n, den(rng)));
    }
    std::string text = render_poly(p, XY);
    CHECK(parse_poly(text, XY, Q) == p);
  }
}

static const char* kValidAlgebra = R"({
  "dim": 2,
  "ring": {"kind": "Q"},
  "sc": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"], [1,1,1,"0"]],
  "unit": ["1","0"],
  "generators": {"t": ["0","1"]}
})";

TEST_CASE("algebra files load and validate") {
  AlgebraFile f = parse_algebra_json(kValidAlgebra);
  CHECK(f.dim == 2);
  CHECK(f.ring == RingSpec::rationals());
  CHECK(f.generators.size() == 1);

  // one-dimensional algebra with e0*e0 = e0 and unit e0
  AlgebraFile one = parse_algebra_json(
      R"({"dim":1,"ring":{"kind":"Q"},"sc":[[0,0,0,"1"]],"unit":["1"],"generators":{}})");
  CHECK(one.dim == 1);

  // same but zero unit vector: the unit axiom fails
  CHECK_THROWS_AS(parse_algebra_json(
                      R"({"dim":1,"ring":{"kind":"Q"},"sc":[[0,0,0,"1"]],"unit":["0"],"generators":{}})"),
                  SchemaError);

  // structure-constant index out of range
  CHECK_THROWS_AS(parse_algebra_json(
                      R"({"dim":1,"ring":{"kind":"Q"},"sc":[[0,0,1,"1"]],"unit":["1"]})"),
                  SchemaError);

  // non-prime modulus
  CHECK_THROWS_AS(parse_algebra_json(
                      R"({"dim":1,"ring":{"kind":"Fp","p":6},"sc":[[0,0,0,"1"]],"unit":["1"]})"),
                  RingError);

  CHECK_THROWS_AS(parse_algebra_json("not json"), SchemaError);
  CHECK_THROWS_AS(parse_algebra_json(R"({"ring":{"kind":"Q"}})"), SchemaError);
}

TEST_CASE("report schema") {
  CaseReport r;
  r.case_id = "case-1";
  r.verdict = "holds";
  r.certificate_json = R"({"type":"member"})";
  r.torsion_index = 3;
  r.elapsed_ms = 12;
  std::string j = emit_report(r);
  CHECK(j.find("\"case\": \"case-1\"") != std::string::npos);
  CHECK(j.find("\"verdict\": \"holds\"") != std::string::npos);
  CHECK(j.find("\"torsion_index\": 3") != std::string::npos);
  CHECK(j.find("\"elapsed_ms\": 12") != std::string::npos);

  CaseReport bare;
  bare.case_id = "case-2";
  bare.verdict = "fails";
  std::string j2 = emit_report(bare);
  CHECK(j2.find("certificate") == std::string::npos);
  CHECK(j2.find("torsion_index") == std::string::npos);

  std::string arr = emit_report_array({r, bare});
  CHECK(arr.find("case-1") != std::string::npos);
  CHECK(arr.find("case-2") != std::string::npos);
}
