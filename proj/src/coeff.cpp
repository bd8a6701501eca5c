#include "lienil/coeff.hpp"

namespace lienil {

namespace {

bool is_prime_u64(std::uint64_t p) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  return mpz_probab_prime_p(z.get_mpz_t(), 32) > 0;
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

// Residue of an integer in [0, p).
mpz_class mod_p(const mpz_class& n, const RingSpec& ring) {
  mpz_class p = to_mpz(ring.modulus);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return r;
}

}  // namespace

RingSpec RingSpec::prime_field(std::uint64_t p) {
  if (p < 2 || !is_prime_u64(p))
    throw RingError("PrimeField modulus must be prime and >= 2, got " + std::to_string(p));
  return {RingKind::PrimeField, p};
}

std::string ring_name(const RingSpec& ring) {
  switch (ring.kind) {
    case RingKind::Rationals: return "Q";
    case RingKind::Integers: return "Z";
    case RingKind::IntegersLoc3: return "Z3loc";
    case RingKind::PrimeField: return "Fp:" + std::to_string(ring.modulus);
  }
  return "?";
}

RingSpec parse_ring_name(const std::string& text) {
  if (text == "Q") return RingSpec::rationals();
  if (text == "Z") return RingSpec::integers();
  if (text == "Z3loc") return RingSpec::integers_loc3();
  if (text.rfind("Fp:", 0) == 0) {
    unsigned long p = std::stoul(text.substr(3));
    return RingSpec::prime_field(p);
  }
  throw RingError("unknown ring name: " + text);
}

bool three_invertible(const RingSpec& ring) {
  switch (ring.kind) {
    case RingKind::Rationals: return true;
    case RingKind::Integers: return false;
    case RingKind::IntegersLoc3: return true;
    case RingKind::PrimeField: return ring.modulus != 3;
  }
  return false;
}

Scalar canonicalize(const RingSpec& ring, const mpq_class& raw) {
  mpq_class q = raw;
  q.canonicalize();
  switch (ring.kind) {
    case RingKind::Rationals:
      return Scalar(q);
    case RingKind::Integers:
      if (q.get_den() != 1) throw RingError("not an integer: " + q.get_str());
      return Scalar(q);
    case RingKind::IntegersLoc3: {
      // Reduced denominator must be a power of 3.
      mpz_class d = q.get_den();
      while (d % 3 == 0) d /= 3;
      if (d != 1) throw RingError("not in Z[1/3]: " + q.get_str());
      return Scalar(q);
    }
    case RingKind::PrimeField: {
      mpz_class den = q.get_den();
      mpz_class num = mod_p(q.get_num(), ring);
      if (den == 1) return Scalar(mpq_class(num));
      mpz_class p = to_mpz(ring.modulus), inv;
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw RingError("denominator not invertible mod " + std::to_string(ring.modulus));
      return Scalar(mpq_class(mod_p(num * inv, ring)));
    }
  }
  throw RingError("bad ring");
}

bool is_canonical(const RingSpec& ring, const Scalar& a) {
  switch (ring.kind) {
    case RingKind::Rationals: return true;
    case RingKind::Integers: return a.is_integer();
    case RingKind::IntegersLoc3: {
      mpz_class d = a.denominator();
      while (d % 3 == 0) d /= 3;
      return d == 1;
    }
    case RingKind::PrimeField:
      return a.is_integer() && a.numerator() >= 0 && a.numerator() < to_mpz(ring.modulus);
  }
  return false;
}

Scalar scalar_arith(ArithOp op, const Scalar& a, const Scalar& b, const RingSpec& ring) {
  mpq_class r;
  switch (op) {
    case ArithOp::Add: r = a.value() + b.value(); break;
    case ArithOp::Sub: r = a.value() - b.value(); break;
    case ArithOp::Mul: r = a.value() * b.value(); break;
  }
  if (ring.kind == RingKind::PrimeField) return canonicalize(ring, r);
  return Scalar(r);  // Q, Z and Z[1/3] are closed under +,-,* in reduced form
}

Scalar ring_add(const RingSpec& ring, const Scalar& a, const Scalar& b) {
  return scalar_arith(ArithOp::Add, a, b, ring);
}
Scalar ring_sub(const RingSpec& ring, const Scalar& a, const Scalar& b) {
  return scalar_arith(ArithOp::Sub, a, b, ring);
}
Scalar ring_mul(const RingSpec& ring, const Scalar& a, const Scalar& b) {
  return scalar_arith(ArithOp::Mul, a, b, ring);
}
Scalar ring_neg(const RingSpec& ring, const Scalar& a) {
  if (ring.kind == RingKind::PrimeField) return canonicalize(ring, -a.value());
  return Scalar(mpq_class(-a.value()));
}

std::optional<Scalar> try_invert(const RingSpec& ring, const Scalar& a) {
  if (a.is_zero()) return std::nullopt;
  switch (ring.kind) {
    case RingKind::Rationals:
      return Scalar(mpq_class(1) / a.value());
    case RingKind::Integers:
      if (a.value() == 1 || a.value() == -1) return a;
      return std::nullopt;
    case RingKind::IntegersLoc3: {
      // Units of Z[1/3] are +-3^m.
      mpz_class n = a.numerator();
      mpz_class abs_n = abs(n);
      while (abs_n % 3 == 0) abs_n /= 3;
      if (abs_n != 1) return std::nullopt;
      return Scalar(mpq_class(1) / a.value());
    }
    case RingKind::PrimeField: {
      mpz_class p = to_mpz(ring.modulus), inv;
      mpz_class n = a.numerator();
      if (mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) == 0) return std::nullopt;
      return Scalar(mpq_class(mod_p(inv, ring)));
    }
  }
  return std::nullopt;
}

Scalar scalar_invert(const Scalar& a, const RingSpec& ring) {
  auto r = try_invert(ring, a);
  if (!r)
    throw NotInvertibleError(scalar_to_string(a) + " is not a unit in " + ring_name(ring));
  return *r;
}

Scalar scalar_from_long(const RingSpec& ring, long n) {
  return canonicalize(ring, mpq_class(n));
}

std::string scalar_to_string(const Scalar& a) {
  if (a.is_integer()) return a.numerator().get_str();
  return a.value().get_str();
}

Scalar scalar_from_string(const RingSpec& ring, const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw RingError("bad scalar literal: '" + text + "'");
  if (q.get_den() == 0) throw RingError("zero denominator in scalar literal: '" + text + "'");
  return canonicalize(ring, q);
}

}  // namespace lienil
