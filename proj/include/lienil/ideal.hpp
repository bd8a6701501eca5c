#ifndef LIENIL_IDEAL_HPP
#define LIENIL_IDEAL_HPP

#include "lienil/freealg.hpp"
#include "lienil/linexact.hpp"

#include <optional>
#include <vector>

namespace lienil {

/// All words of multidegree mu, in canonical (lexicographic) order.
/// Size is the multinomial coefficient of mu.
std::vector<Word> component_basis(std::size_t generator_count, const MultiDegree& mu);

/// All words w with multidegree(w) <= mu entrywise, in deg-lex order.
/// The unit word is included unless nonunit_only is set.
std::vector<Word> words_dominated_by(const MultiDegree& mu, bool nonunit_only = false);

/// Oracle generating family for T^(n) in a component: every left-normed
/// bracket [m1, ..., mn] of nonunit words whose combined multidegree fits
/// inside mu. Zero brackets are dropped and duplicates (up to sign over
/// ordered rings, up to leading-coefficient normalization over fields)
/// are removed.
std::vector<Poly> tideal_generators(int n, const RingSpec& ring, const MultiDegree& mu);

/// Oracle generating family for the ideal W generated by {[u, a, b]} with
/// u ranging over the two-sided ideal generated by S: every bracket
/// [b1*s*b2, m1, m2] with monomial borders b1, b2 and nonunit words m1, m2
/// fitting inside mu.
std::vector<Poly> w_oracle_generators(const std::vector<Poly>& S, const MultiDegree& mu);

/// A generating family restricted to one multidegree component, realized as
/// the matrix of coordinate images of a * g * b over all monomial borders.
/// For multidegree-homogeneous generators this span is exactly the
/// component of the two-sided ideal they generate.
struct IdealTruncation {
  RingSpec ring;
  MultiDegree component;
  std::vector<Poly> generators;

  std::vector<Word> basis;  // component basis, canonical order
  SparseMat spanning;       // deduplicated rows, deterministic order
  struct Border {
    int gen_index;
    Word left, right;
  };
  std::vector<Border> provenance;  // parallel to spanning.rows
};

IdealTruncation make_truncation(std::vector<Poly> generators, const MultiDegree& mu);

struct WitnessTerm {
  Scalar coeff;
  Word left;
  int gen_index;
  Word right;
};

/// Certificate for a membership query. Member and Torsion verdicts carry a
/// witness combination that re-expands to the target (resp. k * target);
/// the expansion check runs whenever a certificate is produced. NonMember
/// carries rank evidence, plus the torsion index when the target lies in
/// the rational span but not the lattice.
struct MembershipCertificate {
  enum class Verdict { Member, NonMember, Torsion };
  Verdict verdict;
  std::vector<WitnessTerm> witness;
  mpz_class torsion_index = 0;
  bool in_rational_span = false;
  int span_rank = -1;
  int augmented_rank = -1;

  bool is_member() const { return verdict == Verdict::Member; }
};

/// Answers membership queries against one component truncation; the
/// elimination state is built once and shared across queries.
class MembershipSolver {
 public:
  explicit MembershipSolver(const IdealTruncation& trunc);

  /// Membership of a homogeneous target in the truncated ideal. Over a
  /// field this is span membership; over Z lattice membership; over Z[1/3]
  /// membership after clearing powers of 3.
  MembershipCertificate member(const Poly& target);

  /// Smallest k >= 1 with k * target in the lattice (Integers ring only).
  MembershipCertificate torsion_member(const Poly& target);

  const IdealTruncation& truncation() const { return trunc_; }
  int rank() const;

 private:
  const IdealTruncation& trunc_;
  std::map<Word, int> column_of_;

  std::optional<QEchelon> q_ech_;
  std::optional<ZEchelon> z_ech_;
  std::optional<FpEchelon> fp_ech_;
  std::vector<int> contributing_;

  std::optional<QEchelon> q_tracked_;
  std::optional<ZEchelon> z_tracked_;
  std::optional<FpEchelon> fp_tracked_;

  SparseVec coordinates(const Poly& target) const;
  void ensure_tracked();
  std::vector<WitnessTerm> witness_from_qcombo(const QCombo& combo, const mpq_class& scale) const;
  void verify_witness(const std::vector<WitnessTerm>& witness, const Poly& target,
                      const mpz_class& k) const;
};

MembershipCertificate member(const Poly& target, const std::vector<Poly>& gens);
MembershipCertificate torsion_member(const Poly& target, const std::vector<Poly>& gens);

/// True iff the two families span the same component: equal row spans over
/// a field, equal row lattices over Z (canonical Hermite bases), equal
/// 3-saturated lattices over Z[1/3].
bool span_equal(const std::vector<Poly>& gens_a, const std::vector<Poly>& gens_b,
                const MultiDegree& mu);

}  // namespace lienil

#endif
