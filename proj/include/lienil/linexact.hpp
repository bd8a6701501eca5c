#ifndef LIENIL_LINEXACT_HPP
#define LIENIL_LINEXACT_HPP

#include "lienil/coeff.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace lienil {

/// Sparse vector over a coefficient ring: sorted (index, value) pairs,
/// no stored zeros, indices below the ambient dimension.
struct SparseVec {
  int dim = 0;
  std::vector<std::pair<int, Scalar>> entries;

  SparseVec() = default;
  explicit SparseVec(int d) : dim(d) {}

  bool is_zero() const { return entries.empty(); }
  void set(int i, const Scalar& v);
  Scalar get(int i) const;

  bool operator==(const SparseVec&) const = default;
};

struct SparseMat {
  RingSpec ring;
  int dim = 0;
  std::vector<SparseVec> rows;

  SparseMat() = default;
  SparseMat(RingSpec r, int d) : ring(r), dim(d) {}
  void add_row(SparseVec v);
  std::size_t row_count() const { return rows.size(); }
};

/// Exact rank of a matrix over a field ring (Rationals or PrimeField).
int rank_over_field(const SparseMat& m);

/// Coefficients c with sum c_i * row_i = v, or nullopt when v is outside
/// the row span. Field rings only.
std::optional<std::vector<Scalar>> solve_in_rowspan(const SparseMat& m, const SparseVec& v);

/// Result of a normal-form computation over the integers. The transforms
/// are returned so every certificate is checkable by multiplication; the
/// check itself runs as part of the computation.
struct NormalFormResult {
  SparseMat h;             // HNF: U*A = h (zero rows at the bottom); SNF: U*A*V
  SparseMat transform_u;   // unimodular row transform
  SparseMat transform_v;   // unimodular column transform (SNF only)
  std::vector<mpz_class> diagonal;  // SNF: nonzero invariant factors d1 | d2 | ...

  /// Nonzero rows of h (the lattice basis).
  std::vector<SparseVec> lattice_basis() const;
};

/// Row-style Hermite normal form with unimodular certificate U*A = H.
/// Pivots positive, entries above each pivot reduced into [0, pivot).
NormalFormResult hermite_normal_form(const SparseMat& m);

/// Smith normal form with U*A*V = diag(d), d1 | d2 | ... Computed by
/// iterated row/column Hermite passes plus a divisibility fixup.
NormalFormResult smith_normal_form(const SparseMat& m);

/// Smallest k >= 1 with k*v in the row lattice of an integer matrix, or
/// nullopt when no multiple lies in it (v outside the rational row span).
std::optional<mpz_class> torsion_index(const SparseMat& rows, const SparseVec& v);

// ---------------------------------------------------------------------------
// Elimination engines. These are the workhorses behind the public operations
// and behind the ideal / findim subspace computations. Rows are plain integer
// vectors; callers clear denominators first (see zrow conversions below).
// ---------------------------------------------------------------------------

/// Integer row: sorted (column, value) pairs, no zeros.
struct ZRow {
  std::vector<std::pair<int, mpz_class>> e;

  bool is_zero() const { return e.empty(); }
  int lead() const { return e.front().first; }
  const mpz_class& lead_coeff() const { return e.front().second; }
  void negate();
  bool operator==(const ZRow&) const = default;
  bool operator<(const ZRow& o) const { return e < o.e; }
};

/// r += c * s.
void zrow_axpy(ZRow& r, const mpz_class& c, const ZRow& s);
/// Divides by the gcd of the entries; no-op on the zero row.
void zrow_make_primitive(ZRow& r);
/// Flips sign so that the leading coefficient is positive.
void zrow_normalize_sign(ZRow& r);

/// Linear combination of tagged rows (tag -> coefficient).
using ZCombo = std::map<int, mpz_class>;
using QCombo = std::map<int, mpq_class>;

/// Row-echelon accumulator for an integer row lattice. Basis rows are keyed
/// by leading column; insertion uses Euclidean exchanges, so the accumulated
/// lattice always equals the lattice of the inserted rows.
class ZEchelon {
 public:
  explicit ZEchelon(int dim, bool track = false) : dim_(dim), track_(track) {}

  /// Returns true when the insertion mutated the basis. Rows whose insert
  /// returned false were already in the lattice of earlier rows.
  bool insert(ZRow v, int tag = -1);

  bool contains(const ZRow& v) const;

  /// v = sum q_j * basis_j over Q (keys are basis lead columns), or nullopt
  /// when v is outside the rational span of the lattice.
  std::optional<std::map<int, mpq_class>> reduce_rational(const ZRow& v) const;

  /// Integer combination of inserted tags for k*v in the lattice, where k is
  /// the denominator lcm of the rational reduction. Requires tracking.
  struct TorsionSolution {
    mpz_class k;
    ZCombo combo;  // k*v = sum combo_t * row_t
  };
  std::optional<TorsionSolution> torsion_solve(const ZRow& v) const;

  int rank() const { return static_cast<int>(basis_.size()); }
  int dim() const { return dim_; }

  /// Full above-pivot reduction; after this the basis is the canonical HNF
  /// basis of the lattice (unique), suitable for lattice equality tests.
  void canonicalize();

  const std::map<int, ZRow>& basis_by_lead() const { return basis_; }
  const ZCombo& combo_for_lead(int lead) const { return combos_.at(lead); }

 private:
  int dim_;
  bool track_;
  std::map<int, ZRow> basis_;
  std::map<int, ZCombo> combos_;
};

/// Row-echelon accumulator for a rational row span. Basis rows are stored as
/// primitive integer vectors with positive leading coefficient; the update
/// rule is fraction-free, so only integer arithmetic is used.
class QEchelon {
 public:
  explicit QEchelon(int dim, bool track = false) : dim_(dim), track_(track) {}

  bool insert(ZRow v, int tag = -1);
  bool contains(const ZRow& v) const;

  /// Rational coefficients over inserted tags with v = sum c_t * row_t.
  /// Requires tracking.
  std::optional<QCombo> solve(const ZRow& v) const;

  int rank() const { return static_cast<int>(basis_.size()); }
  int dim() const { return dim_; }

  /// Fully reduces above pivots; basis becomes the unique primitive
  /// row-reduced form of the span.
  void canonicalize();

  const std::map<int, ZRow>& basis_by_lead() const { return basis_; }

 private:
  int dim_;
  bool track_;
  std::map<int, ZRow> basis_;
  std::map<int, QCombo> combos_;  // basis row = sum combo_t * row_t (rational)
};

/// Row echelon over GF(p) with machine-word residues; pivots normalized to 1.
class FpEchelon {
 public:
  using Row = std::vector<std::pair<int, std::uint64_t>>;

  FpEchelon(int dim, std::uint64_t p, bool track = false) : dim_(dim), p_(p), track_(track) {}

  bool insert(Row v, int tag = -1);
  bool contains(const Row& v) const;
  std::optional<std::map<int, std::uint64_t>> solve(const Row& v) const;

  int rank() const { return static_cast<int>(basis_.size()); }
  void canonicalize();
  const std::map<int, Row>& basis_by_lead() const { return basis_; }

 private:
  int dim_;
  std::uint64_t p_;
  bool track_;
  std::map<int, Row> basis_;
  std::map<int, std::map<int, std::uint64_t>> combos_;
};

/// Clears denominators: returns an integer row equal to scale * v where
/// scale is a positive rational (reported via *scale_out when requested).
/// For Rationals the scale is the denominator lcm; for IntegersLoc3 it is
/// the smallest power of 3 making the row integral; for Integers it is 1.
ZRow to_zrow_cleared(const SparseVec& v, const RingSpec& ring, mpq_class* scale_out = nullptr);

FpEchelon::Row to_fp_row(const SparseVec& v, std::uint64_t p);

SparseVec zrow_to_sparsevec(const ZRow& r, int dim);

}  // namespace lienil

#endif
