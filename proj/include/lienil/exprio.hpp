#ifndef LIENIL_EXPRIO_HPP
#define LIENIL_EXPRIO_HPP

#include "lienil/freealg.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lienil {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l),
        column(c) {}
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExprAST;
using ExprPtr = std::shared_ptr<const ExprAST>;

struct GeneratorRef {
  std::string name;
  GeneratorIndex index;
};
struct ScalarLit {
  mpq_class value;
};
struct Product {
  std::vector<ExprPtr> factors;
};
struct SignedTerm {
  int sign;  // +1 or -1
  ExprPtr term;
};
struct Sum {
  std::vector<SignedTerm> terms;
};
struct Bracket {
  std::vector<ExprPtr> args;  // arity >= 2
};

struct ExprAST {
  std::variant<GeneratorRef, ScalarLit, Product, Sum, Bracket> node;
};

/// Parses a commutator expression against a declared generator list.
///
/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
///   factor := generator | '[' expr (',' expr)+ ']' | '(' expr ')'
///   coeff  := integer | integer '/' integer
///
/// Whitespace-insensitive. Unknown generator names and one-argument
/// brackets are rejected.
ExprPtr parse_expr(const std::string& text, const std::vector<std::string>& generators);

/// Lowers an AST into the free algebra over the given ring. A scalar
/// literal outside the ring (e.g. "1/2" over Z) raises RingError.
Poly elaborate(const ExprAST& ast, const RingSpec& ring);
Poly parse_poly(const std::string& text, const std::vector<std::string>& generators,
                const RingSpec& ring);

/// Description of a finite-dimensional algebra by structure constants,
/// as loaded from the JSON document format.
struct AlgebraFile {
  int dim = 0;
  RingSpec ring;
  // e_i * e_j = sum_k c * e_k, stored as (i, j, k, c)
  struct Triple {
    int i, j, k;
    Scalar c;
  };
  std::vector<Triple> sc;
  std::vector<Scalar> unit;
  std::vector<std::pair<std::string, std::vector<Scalar>>> generators;
};

/// Loads and validates an algebra file: index bounds, ring validity and
/// the two-sided unit axiom are all checked here.
AlgebraFile load_algebra(const std::string& path);
AlgebraFile parse_algebra_json(const std::string& json_text);

/// One entry of a machine-readable report.
struct CaseReport {
  std::string case_id;
  std::string verdict;  // "holds" | "fails" | "refused"
  std::string certificate_json;  // optional, empty when absent
  long torsion_index = -1;       // optional, -1 when absent
  long elapsed_ms = 0;
};

std::string emit_report(const CaseReport& report);
std::string emit_report_array(const std::vector<CaseReport>& reports);

}  // namespace lienil

#endif
