#include "lienil/exprio.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace lienil {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& generators)
      : text_(text), generators_(generators) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& text_;
  const std::vector<std::string>& generators_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek_is(c)) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  bool at_sign_digit() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) return true;
    if ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
      return true;
    return false;
  }

  mpz_class parse_integer() {
    skip_ws();
    std::string digits;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      digits += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      advance();
    }
    return mpz_class(digits);
  }

  mpq_class parse_coeff() {
    mpz_class num = parse_integer();
    if (accept('/')) {
      mpz_class den = parse_integer();
      if (den == 0) fail("zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    return mpq_class(num);
  }

  std::string parse_name() {
    skip_ws();
    std::string name;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name += c;
        advance();
      } else {
        break;
      }
    }
    if (name.empty()) fail("expected generator name");
    return name;
  }

  ExprPtr parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '[') {
      advance();
      std::vector<ExprPtr> args;
      args.push_back(parse_sum());
      if (!peek_is(',')) fail("bracket needs at least 2 arguments");
      while (accept(',')) args.push_back(parse_sum());
      expect(']');
      return std::make_shared<ExprAST>(ExprAST{Bracket{std::move(args)}});
    }
    if (c == '(') {
      advance();
      ExprPtr e = parse_sum();
      expect(')');
      return e;
    }
    std::string name = parse_name();
    for (GeneratorIndex i = 0; i < generators_.size(); ++i)
      if (generators_[i] == name)
        return std::make_shared<ExprAST>(ExprAST{GeneratorRef{name, i}});
    fail("unknown generator name '" + name + "'");
  }

  ExprPtr parse_term() {
    std::vector<ExprPtr> factors;
    skip_ws();
    if (at_sign_digit()) {
      mpq_class coeff = parse_coeff();
      factors.push_back(std::make_shared<ExprAST>(ExprAST{ScalarLit{coeff}}));
      if (!accept('*')) {
        // bare constant term
        return factors.front();
      }
      factors.push_back(parse_factor());
    } else {
      factors.push_back(parse_factor());
    }
    while (accept('*')) factors.push_back(parse_factor());
    if (factors.size() == 1) return factors.front();
    return std::make_shared<ExprAST>(ExprAST{Product{std::move(factors)}});
  }

  ExprPtr parse_sum() {
    std::vector<SignedTerm> terms;
    skip_ws();
    int sign = 1;
    if (accept('-')) sign = -1;
    terms.push_back({sign, parse_term()});
    while (true) {
      if (accept('+'))
        terms.push_back({+1, parse_term()});
      else if (accept('-'))
        terms.push_back({-1, parse_term()});
      else
        break;
    }
    if (terms.size() == 1 && terms.front().sign == 1) return terms.front().term;
    return std::make_shared<ExprAST>(ExprAST{Sum{std::move(terms)}});
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& text, const std::vector<std::string>& generators) {
  return Parser(text, generators).run();
}

Poly elaborate(const ExprAST& ast, const RingSpec& ring) {
  struct Visitor {
    const RingSpec& ring;
    Poly operator()(const GeneratorRef& g) const { return Poly::generator(ring, g.index); }
    Poly operator()(const ScalarLit& s) const {
      return Poly::monomial(ring, Word::unit(), canonicalize(ring, s.value));
    }
    Poly operator()(const Product& p) const {
      Poly acc = Poly::unit(ring);
      for (const auto& f : p.factors) acc = poly_mul(acc, elaborate(*f, ring));
      return acc;
    }
    Poly operator()(const Sum& s) const {
      Poly acc(ring);
      for (const auto& [sign, t] : s.terms) {
        Poly p = elaborate(*t, ring);
        acc = sign > 0 ? poly_add(acc, p) : poly_sub(acc, p);
      }
      return acc;
    }
    Poly operator()(const Bracket& b) const {
      std::vector<Poly> args;
      args.reserve(b.args.size());
      for (const auto& a : b.args) args.push_back(elaborate(*a, ring));
      return left_normed_commutator(std::span<const Poly>(args));
    }
  };
  return std::visit(Visitor{ring}, ast.node);
}

Poly parse_poly(const std::string& text, const std::vector<std::string>& generators,
                const RingSpec& ring) {
  return elaborate(*parse_expr(text, generators), ring);
}

namespace {

using nlohmann::json;

RingSpec ring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError("ring: expected {\"kind\": ...}");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return RingSpec::rationals();
  if (kind == "Z") return RingSpec::integers();
  if (kind == "Z3loc") return RingSpec::integers_loc3();
  if (kind == "Fp") {
    if (!j.contains("p")) throw SchemaError("ring Fp requires \"p\"");
    return RingSpec::prime_field(j.at("p").get<std::uint64_t>());
  }
  throw SchemaError("unknown ring kind '" + kind + "'");
}

std::vector<Scalar> coeff_vector(const json& j, const RingSpec& ring, int dim,
                                 const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw SchemaError(what + ": expected array of " + std::to_string(dim) + " coefficients");
  std::vector<Scalar> v;
  v.reserve(dim);
  for (const auto& c : j) v.push_back(scalar_from_string(ring, c.get<std::string>()));
  return v;
}

}  // namespace

AlgebraFile parse_algebra_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("bad JSON: ") + e.what());
  }
  AlgebraFile f;
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw SchemaError("missing integer \"dim\"");
  f.dim = j.at("dim").get<int>();
  if (f.dim <= 0) throw SchemaError("dim must be positive");
  f.ring = ring_from_json(j.at("ring"));

  if (!j.contains("sc") || !j.at("sc").is_array()) throw SchemaError("missing \"sc\" array");
  for (const auto& t : j.at("sc")) {
    if (!t.is_array() || t.size() != 4) throw SchemaError("sc entries are [i,j,k,\"coeff\"]");
    AlgebraFile::Triple tr;
    tr.i = t[0].get<int>();
    tr.j = t[1].get<int>();
    tr.k = t[2].get<int>();
    if (tr.i < 0 || tr.i >= f.dim || tr.j < 0 || tr.j >= f.dim || tr.k < 0 || tr.k >= f.dim)
      throw SchemaError("structure constant index out of range");
    tr.c = scalar_from_string(f.ring, t[3].get<std::string>());
    f.sc.push_back(std::move(tr));
  }

  if (!j.contains("unit")) throw SchemaError("missing \"unit\"");
  f.unit = coeff_vector(j.at("unit"), f.ring, f.dim, "unit");

  if (j.contains("generators")) {
    if (!j.at("generators").is_object()) throw SchemaError("\"generators\" must be an object");
    for (const auto& [name, coords] : j.at("generators").items())
      f.generators.emplace_back(name, coeff_vector(coords, f.ring, f.dim, "generator " + name));
  }

  // unit axiom: unit * e_j = e_j * unit = e_j for the declared product
  {
    std::vector<std::vector<std::pair<int, Scalar>>> prod(
        static_cast<std::size_t>(f.dim) * f.dim);
    for (const auto& t : f.sc) prod[t.i * f.dim + t.j].emplace_back(t.k, t.c);
    auto mul_basis_by_unit = [&](int j, bool unit_left) {
      std::vector<Scalar> acc(f.dim, Scalar());
      for (int i = 0; i < f.dim; ++i) {
        if (f.unit[i].is_zero()) continue;
        const auto& cell = unit_left ? prod[i * f.dim + j] : prod[j * f.dim + i];
        for (const auto& [k, c] : cell)
          acc[k] = ring_add(f.ring, acc[k], ring_mul(f.ring, f.unit[i], c));
      }
      return acc;
    };
    for (int j = 0; j < f.dim; ++j) {
      for (int side = 0; side < 2; ++side) {
        std::vector<Scalar> r = mul_basis_by_unit(j, side == 0);
        for (int k = 0; k < f.dim; ++k) {
          Scalar want = (k == j) ? scalar_from_long(f.ring, 1) : Scalar();
          if (!(r[k] == want))
            throw SchemaError("unit axiom fails at basis element " + std::to_string(j));
        }
      }
    }
  }
  return f;
}

AlgebraFile load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open algebra file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra_json(ss.str());
}

namespace {

nlohmann::json report_to_json(const CaseReport& r) {
  nlohmann::json j;
  j["case"] = r.case_id;
  j["verdict"] = r.verdict;
  if (!r.certificate_json.empty()) j["certificate"] = nlohmann::json::parse(r.certificate_json);
  if (r.torsion_index >= 0) j["torsion_index"] = r.torsion_index;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace

std::string emit_report(const CaseReport& report) { return report_to_json(report).dump(2); }

std::string emit_report_array(const std::vector<CaseReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2);
}

}  // namespace lienil
