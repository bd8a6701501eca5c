#ifndef LIENIL_FINDIM_HPP
#define LIENIL_FINDIM_HPP

#include "lienil/exprio.hpp"
#include "lienil/linexact.hpp"

#include <string>
#include <vector>

namespace lienil {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite-dimensional unital associative algebra given by its structure
/// tensor. The unit axiom and associativity on all basis triples are
/// validated at construction.
class StructureAlgebra {
 public:
  using Element = SparseVec;

  StructureAlgebra(RingSpec ring, int dim, std::vector<SparseVec> table, SparseVec unit,
                   std::vector<std::pair<std::string, SparseVec>> generators,
                   std::vector<std::string> basis_names);

  int dim() const { return dim_; }
  const RingSpec& ring() const { return ring_; }
  const SparseVec& unit() const { return unit_; }
  const std::vector<std::pair<std::string, SparseVec>>& generators() const { return gens_; }
  const std::vector<std::string>& basis_names() const { return names_; }

  /// Product e_i * e_j in coordinates.
  const SparseVec& basis_product(int i, int j) const { return table_[i * dim_ + j]; }

  Element basis_element(int i) const;

 private:
  RingSpec ring_;
  int dim_;
  std::vector<SparseVec> table_;
  SparseVec unit_;
  std::vector<std::pair<std::string, SparseVec>> gens_;
  std::vector<std::string> names_;

  void validate() const;
};

using Element = StructureAlgebra::Element;

Element fd_mul(const StructureAlgebra& a, const Element& p, const Element& q);
Element fd_commutator(const StructureAlgebra& a, const Element& p, const Element& q);
Element fd_scalar_mul(const StructureAlgebra& a, const Scalar& c, const Element& p);
Element fd_add(const StructureAlgebra& a, const Element& p, const Element& q);

/// Canonical basis of a subspace (field rings: reduced primitive echelon;
/// Integers: canonical Hermite lattice basis). Equality of subspaces is
/// equality of these bases.
struct SubspaceBasis {
  RingSpec ring;
  int dim = 0;
  std::vector<SparseVec> rows;

  bool is_zero() const { return rows.empty(); }
  int rank() const { return static_cast<int>(rows.size()); }
  bool operator==(const SubspaceBasis&) const = default;
};

enum class NilpotencyVerdict { LieNilpotent, NotLieNilpotent, Refused };

struct NilpotencyResult {
  NilpotencyVerdict verdict;
  /// For NotLieNilpotent: the names of the elements of a nonvanishing
  /// left-normed bracket, outermost first, plus its value.
  std::vector<std::string> witness_names;
  Element witness_value;
  std::string refusal_reason;

  bool nilpotent() const { return verdict == NilpotencyVerdict::LieNilpotent; }
};

/// Finite-generator criterion: checks [y1, ..., yn] = 0 for y1, yn in X and
/// middle entries in X and X^2 (products computed in the algebra). Refuses
/// when 3 is not invertible in the coefficient ring, since the criterion's
/// hypothesis fails there; `force` runs the check anyway (condition-only).
NilpotencyResult verify_via_theorem(const StructureAlgebra& a, int n, bool force = false);

/// Brute-force chain: M_1 = A, M_{k+1} = span{[m, e_j]}; Lie nilpotent of
/// class <= n-1 iff M_n = 0. Exact over every supported ring.
NilpotencyResult lie_nilpotency_oracle(const StructureAlgebra& a, int n);

/// T^(n)(A): the two-sided ideal generated by all n-fold brackets.
SubspaceBasis tideal_findim(const StructureAlgebra& a, int n);

/// Two-sided ideal closure of the given elements.
SubspaceBasis ideal_from_gens_findim(const StructureAlgebra& a, const std::vector<Element>& gens);

/// All brackets [y1, ..., yn] with y1, yn in X and middles in X u X^2,
/// evaluated in the algebra; zero values dropped.
std::vector<Element> evaluate_sn_family(const StructureAlgebra& a, int n);

enum class ExampleKind {
  HeisenbergTruncated,   // U(H) truncated at weighted PBW degree D (deg c = 2)
  Grassmann,             // exterior algebra on k generators
  UnitriangularPlusUnit, // R*1 + strictly upper triangular m x m matrices
  CommutativeSeries,     // R[t]/(t^m)
};

StructureAlgebra example_algebra(ExampleKind kind, int param, const RingSpec& ring);

/// Parses "heisenberg_truncated(4)", "grassmann(3)",
/// "unitriangular_plus_unit(3)" or "commutative_series(4)".
StructureAlgebra example_algebra(const std::string& spec, const RingSpec& ring);

StructureAlgebra from_algebra_file(const AlgebraFile& file);

}  // namespace lienil

#endif
