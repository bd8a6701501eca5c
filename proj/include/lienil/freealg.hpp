#ifndef LIENIL_FREEALG_HPP
#define LIENIL_FREEALG_HPP

#include "lienil/coeff.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lienil {

using GeneratorIndex = std::uint32_t;

/// Monomial in the free algebra: a finite sequence of generator indices.
/// The empty word is the unit monomial.
struct Word {
  std::vector<GeneratorIndex> letters;

  Word() = default;
  explicit Word(std::vector<GeneratorIndex> ls) : letters(std::move(ls)) {}
  static Word unit() { return Word{}; }
  static Word single(GeneratorIndex i) { return Word{{i}}; }

  std::size_t degree() const { return letters.size(); }
  bool is_unit() const { return letters.empty(); }
  Word concat(const Word& other) const;

  bool operator==(const Word&) const = default;
  /// Degree-lexicographic: shorter words first, ties broken by the letter
  /// sequence. This is the canonical term order of the library.
  bool operator<(const Word& o) const {
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    return letters < o.letters;
  }
};

struct WordDegLex {
  bool operator()(const Word& a, const Word& b) const { return a < b; }
};

inline bool word_less(const Word& a, const Word& b) { return WordDegLex{}(a, b); }

/// Per-generator exponent vector of a monomial.
struct MultiDegree {
  std::vector<std::uint32_t> exponents;

  MultiDegree() = default;
  explicit MultiDegree(std::vector<std::uint32_t> e) : exponents(std::move(e)) {}
  static MultiDegree zero(std::size_t generator_count) {
    return MultiDegree(std::vector<std::uint32_t>(generator_count, 0));
  }

  std::size_t total() const;
  std::size_t size() const { return exponents.size(); }

  MultiDegree operator+(const MultiDegree& o) const;
  /// Entrywise difference; requires o <= *this entrywise.
  MultiDegree operator-(const MultiDegree& o) const;
  /// Entrywise <=.
  bool dominates(const MultiDegree& o) const;

  bool operator==(const MultiDegree&) const = default;
  bool operator<(const MultiDegree& o) const { return exponents < o.exponents; }
};

MultiDegree multidegree(const Word& w, std::size_t generator_count);

/// Sparse polynomial over the free algebra: finitely supported map from
/// words to nonzero scalars, tagged with its coefficient ring.
class Poly {
 public:
  using TermMap = std::map<Word, Scalar, WordDegLex>;

  explicit Poly(RingSpec ring) : ring_(ring) {}
  static Poly zero(RingSpec ring) { return Poly(ring); }
  static Poly unit(RingSpec ring);
  static Poly generator(RingSpec ring, GeneratorIndex i);
  static Poly monomial(RingSpec ring, Word w, Scalar coeff);

  const RingSpec& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Adds c * w in place, pruning a resulting zero.
  void add_term(const Word& w, const Scalar& c);

  Scalar coeff(const Word& w) const;

  bool operator==(const Poly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Largest word of the support in deg-lex order (the support is nonempty).
  const Word& leading_word() const;

  /// True iff every term has the same multidegree; mu receives it
  /// (meaningful only when the poly is nonzero).
  bool is_homogeneous(std::size_t generator_count, MultiDegree* mu = nullptr) const;

 private:
  RingSpec ring_;
  TermMap terms_;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_neg(const Poly& p);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scalar_mul(const Scalar& c, const Poly& p);

/// pq - qp.
Poly commutator(const Poly& p, const Poly& q);

/// [a1, ..., an] = [[a1, ..., a(n-1)], an]; requires at least 2 arguments.
Poly left_normed_commutator(std::span<const Poly> args);
Poly left_normed_commutator(std::initializer_list<Poly> args);

std::map<MultiDegree, Poly> homogeneous_components(const Poly& p, std::size_t generator_count);

/// The instanced expansion identities used in the proofs. Each instance
/// returns (lhs, rhs) with lhs - rhs = 0 identically.
enum class IdentityName {
  Prod2Once,    // [a1 a2, b]            arity 3
  ProdKOnce,    // [a1 ... ak, b]        arity >= 2
  Prod2Twice,   // [a1 a2, b1, b2]       arity 4
  ProdKTwice,   // [a1 ... ak, b1, b2]   arity >= 3
  Prod2Thrice,  // [a1 a2, b1, b2, b3]   arity 5
};

std::string identity_name_string(IdentityName name);
IdentityName identity_name_from_string(const std::string& s);

std::pair<Poly, Poly> identity_instance(IdentityName name, std::span<const Poly> args);

/// Telescoping decomposition of a commutator of two words into commutators
/// with a single-letter right argument: returns pairs (c, [d, x]) whose
/// weighted sum equals p. p must be of the form [w1, w2] for words w1, w2.
std::vector<std::pair<Scalar, Poly>> rewrite_as_right_letter_commutators(
    const Poly& p, std::size_t generator_count);

/// Canonical text rendering, e.g. "x1*x2 - x2*x1".
std::string render_poly(const Poly& p, const std::vector<std::string>& generator_names);
std::string render_word(const Word& w, const std::vector<std::string>& generator_names);

}  // namespace lienil

#endif
