#ifndef LIENIL_COEFF_HPP
#define LIENIL_COEFF_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lienil {

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInvertibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RingKind { Rationals, Integers, IntegersLoc3, PrimeField };

/// Coefficient ring descriptor. The four supported rings are Q, Z, Z[1/3]
/// and GF(p); the modulus field is meaningful only for PrimeField.
struct RingSpec {
  RingKind kind = RingKind::Rationals;
  std::uint64_t modulus = 0;

  static RingSpec rationals() { return {RingKind::Rationals, 0}; }
  static RingSpec integers() { return {RingKind::Integers, 0}; }
  static RingSpec integers_loc3() { return {RingKind::IntegersLoc3, 0}; }
  static RingSpec prime_field(std::uint64_t p);

  bool is_field() const {
    return kind == RingKind::Rationals || kind == RingKind::PrimeField;
  }
  bool operator==(const RingSpec&) const = default;
};

std::string ring_name(const RingSpec& ring);

/// Parses "Q", "Z", "Z3loc", "Fp:<p>".
RingSpec parse_ring_name(const std::string& text);

/// True iff 3 = 1+1+1 is a unit in the ring.
bool three_invertible(const RingSpec& ring);

/// Exact scalar in canonical form for its ring:
///   Rationals     reduced fraction, positive denominator
///   Integers      denominator 1
///   IntegersLoc3  reduced fraction whose denominator is a power of 3
///   PrimeField    integer residue in [0, p)
/// The ring itself is not stored; operations take an explicit RingSpec.
class Scalar {
 public:
  Scalar() : v_(0) {}
  explicit Scalar(long n) : v_(n) {}
  explicit Scalar(const mpz_class& n) : v_(n) {}
  explicit Scalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  Scalar(long num, long den) : v_(num, den) { v_.canonicalize(); }

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  bool operator==(const Scalar& o) const { return v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return v_ != o.v_; }
  bool operator<(const Scalar& o) const { return v_ < o.v_; }

 private:
  mpq_class v_;
};

enum class ArithOp { Add, Sub, Mul };

/// Brings a raw rational value into the ring's canonical form.
/// Throws RingError if the value does not belong to the ring.
Scalar canonicalize(const RingSpec& ring, const mpq_class& raw);

bool is_canonical(const RingSpec& ring, const Scalar& a);

Scalar scalar_arith(ArithOp op, const Scalar& a, const Scalar& b, const RingSpec& ring);
Scalar ring_add(const RingSpec& ring, const Scalar& a, const Scalar& b);
Scalar ring_sub(const RingSpec& ring, const Scalar& a, const Scalar& b);
Scalar ring_mul(const RingSpec& ring, const Scalar& a, const Scalar& b);
Scalar ring_neg(const RingSpec& ring, const Scalar& a);

/// Multiplicative inverse, or nullopt when a is not a unit of the ring.
std::optional<Scalar> try_invert(const RingSpec& ring, const Scalar& a);

/// As try_invert but throws NotInvertibleError on failure.
Scalar scalar_invert(const Scalar& a, const RingSpec& ring);

Scalar scalar_from_long(const RingSpec& ring, long n);

/// Text form: integers as optional-sign digit strings, fractions as "a/b",
/// prime-field residues as plain integers.
std::string scalar_to_string(const Scalar& a);
Scalar scalar_from_string(const RingSpec& ring, const std::string& text);

}  // namespace lienil

#endif
