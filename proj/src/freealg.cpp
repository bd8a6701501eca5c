#include "lienil/freealg.hpp"

#include <algorithm>
#include <sstream>

namespace lienil {

Word Word::concat(const Word& other) const {
  Word r;
  r.letters.reserve(letters.size() + other.letters.size());
  r.letters.insert(r.letters.end(), letters.begin(), letters.end());
  r.letters.insert(r.letters.end(), other.letters.begin(), other.letters.end());
  return r;
}

std::size_t MultiDegree::total() const {
  std::size_t t = 0;
  for (auto e : exponents) t += e;
  return t;
}

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
  if (exponents.size() != o.exponents.size())
    throw std::invalid_argument("multidegree size mismatch");
  MultiDegree r = *this;
  for (std::size_t i = 0; i < exponents.size(); ++i) r.exponents[i] += o.exponents[i];
  return r;
}

MultiDegree MultiDegree::operator-(const MultiDegree& o) const {
  if (exponents.size() != o.exponents.size())
    throw std::invalid_argument("multidegree size mismatch");
  MultiDegree r = *this;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (o.exponents[i] > exponents[i]) throw std::invalid_argument("multidegree underflow");
    r.exponents[i] -= o.exponents[i];
  }
  return r;
}

bool MultiDegree::dominates(const MultiDegree& o) const {
  if (exponents.size() != o.exponents.size()) return false;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (o.exponents[i] > exponents[i]) return false;
  return true;
}

MultiDegree multidegree(const Word& w, std::size_t generator_count) {
  MultiDegree mu = MultiDegree::zero(generator_count);
  for (auto l : w.letters) {
    if (l >= generator_count)
      throw std::out_of_range("letter " + std::to_string(l) + " out of range for " +
                              std::to_string(generator_count) + " generators");
    mu.exponents[l] += 1;
  }
  return mu;
}

Poly Poly::unit(RingSpec ring) {
  Poly p(ring);
  p.add_term(Word::unit(), scalar_from_long(ring, 1));
  return p;
}

Poly Poly::generator(RingSpec ring, GeneratorIndex i) {
  Poly p(ring);
  p.add_term(Word::single(i), scalar_from_long(ring, 1));
  return p;
}

Poly Poly::monomial(RingSpec ring, Word w, Scalar coeff) {
  Poly p(ring);
  p.add_term(w, coeff);
  return p;
}

void Poly::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  Scalar s = ring_add(ring_, it->second, c);
  if (s.is_zero())
    terms_.erase(it);
  else
    it->second = s;
}

Scalar Poly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

const Word& Poly::leading_word() const {
  if (terms_.empty()) throw std::logic_error("leading_word of zero polynomial");
  return terms_.rbegin()->first;
}

bool Poly::is_homogeneous(std::size_t generator_count, MultiDegree* mu) const {
  bool first = true;
  MultiDegree common;
  for (const auto& [w, c] : terms_) {
    MultiDegree m = multidegree(w, generator_count);
    if (first) {
      common = m;
      first = false;
    } else if (!(m == common)) {
      return false;
    }
  }
  if (mu && !first) *mu = common;
  return true;
}

namespace {

void require_same_ring(const Poly& p, const Poly& q) {
  if (!(p.ring() == q.ring()))
    throw RingError("ring mismatch: " + ring_name(p.ring()) + " vs " + ring_name(q.ring()));
}

}  // namespace

Poly poly_add(const Poly& p, const Poly& q) {
  require_same_ring(p, q);
  Poly r = p;
  for (const auto& [w, c] : q.terms()) r.add_term(w, c);
  return r;
}

Poly poly_sub(const Poly& p, const Poly& q) {
  require_same_ring(p, q);
  Poly r = p;
  for (const auto& [w, c] : q.terms()) r.add_term(w, ring_neg(q.ring(), c));
  return r;
}

Poly poly_neg(const Poly& p) {
  Poly r(p.ring());
  for (const auto& [w, c] : p.terms()) r.add_term(w, ring_neg(p.ring(), c));
  return r;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  require_same_ring(p, q);
  Poly r(p.ring());
  for (const auto& [wp, cp] : p.terms())
    for (const auto& [wq, cq] : q.terms())
      r.add_term(wp.concat(wq), ring_mul(p.ring(), cp, cq));
  return r;
}

Poly poly_scalar_mul(const Scalar& c, const Poly& p) {
  Poly r(p.ring());
  if (c.is_zero()) return r;
  for (const auto& [w, cw] : p.terms()) r.add_term(w, ring_mul(p.ring(), c, cw));
  return r;
}

Poly commutator(const Poly& p, const Poly& q) {
  return poly_sub(poly_mul(p, q), poly_mul(q, p));
}

Poly left_normed_commutator(std::span<const Poly> args) {
  if (args.size() < 2)
    throw std::invalid_argument("left-normed commutator needs at least 2 arguments");
  Poly acc = commutator(args[0], args[1]);
  for (std::size_t i = 2; i < args.size(); ++i) acc = commutator(acc, args[i]);
  return acc;
}

Poly left_normed_commutator(std::initializer_list<Poly> args) {
  std::vector<Poly> v(args);
  return left_normed_commutator(std::span<const Poly>(v));
}

std::map<MultiDegree, Poly> homogeneous_components(const Poly& p, std::size_t generator_count) {
  std::map<MultiDegree, Poly> parts;
  for (const auto& [w, c] : p.terms()) {
    MultiDegree mu = multidegree(w, generator_count);
    auto it = parts.find(mu);
    if (it == parts.end()) it = parts.emplace(mu, Poly(p.ring())).first;
    it->second.add_term(w, c);
  }
  return parts;
}

std::string identity_name_string(IdentityName name) {
  switch (name) {
    case IdentityName::Prod2Once: return "prod2_once";
    case IdentityName::ProdKOnce: return "prodk_once";
    case IdentityName::Prod2Twice: return "prod2_twice";
    case IdentityName::ProdKTwice: return "prodk_twice";
    case IdentityName::Prod2Thrice: return "prod2_thrice";
  }
  return "?";
}

IdentityName identity_name_from_string(const std::string& s) {
  if (s == "prod2_once") return IdentityName::Prod2Once;
  if (s == "prodk_once") return IdentityName::ProdKOnce;
  if (s == "prod2_twice") return IdentityName::Prod2Twice;
  if (s == "prodk_twice") return IdentityName::ProdKTwice;
  if (s == "prod2_thrice") return IdentityName::Prod2Thrice;
  throw std::invalid_argument("unknown identity name: " + s);
}

namespace {

Poly product_range(std::span<const Poly> a, std::size_t lo, std::size_t hi, const RingSpec& ring) {
  Poly r = Poly::unit(ring);
  for (std::size_t i = lo; i < hi; ++i) r = poly_mul(r, a[i]);
  return r;
}

// Sum over i of a1..a(i-1) [ai, bracket args...] a(i+1)..ak.
Poly expand_once(std::span<const Poly> a, std::span<const Poly> bs, const RingSpec& ring) {
  Poly sum(ring);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Poly> br{a[i]};
    br.insert(br.end(), bs.begin(), bs.end());
    Poly mid = left_normed_commutator(std::span<const Poly>(br));
    sum = poly_add(sum, poly_mul(product_range(a, 0, i, ring),
                                 poly_mul(mid, product_range(a, i + 1, a.size(), ring))));
  }
  return sum;
}

}  // namespace

std::pair<Poly, Poly> identity_instance(IdentityName name, std::span<const Poly> args) {
  if (args.empty()) throw std::invalid_argument("identity_instance: no arguments");
  const RingSpec ring = args[0].ring();
  for (const auto& p : args)
    if (!(p.ring() == ring)) throw RingError("identity_instance: ring mismatch");

  auto check_arity = [&](std::size_t want) {
    if (args.size() != want)
      throw std::invalid_argument(identity_name_string(name) + " expects " +
                                  std::to_string(want) + " arguments, got " +
                                  std::to_string(args.size()));
  };

  switch (name) {
    case IdentityName::Prod2Once: {
      check_arity(3);
      const Poly &a1 = args[0], &a2 = args[1], &b = args[2];
      Poly lhs = commutator(poly_mul(a1, a2), b);
      Poly rhs = poly_add(poly_mul(a1, commutator(a2, b)), poly_mul(commutator(a1, b), a2));
      return {lhs, rhs};
    }
    case IdentityName::ProdKOnce: {
      if (args.size() < 2) throw std::invalid_argument("prodk_once expects k >= 1 factors plus b");
      auto a = args.subspan(0, args.size() - 1);
      auto bs = args.subspan(args.size() - 1, 1);
      Poly lhs = commutator(product_range(a, 0, a.size(), ring), args.back());
      Poly rhs = expand_once(a, bs, ring);
      return {lhs, rhs};
    }
    case IdentityName::Prod2Twice:
      check_arity(4);
      [[fallthrough]];
    case IdentityName::ProdKTwice: {
      if (args.size() < 3) throw std::invalid_argument("prodk_twice expects k >= 1 factors plus b1, b2");
      auto a = args.subspan(0, args.size() - 2);
      const Poly &b1 = args[args.size() - 2], &b2 = args[args.size() - 1];
      Poly lhs = left_normed_commutator({product_range(a, 0, a.size(), ring), b1, b2});
      std::vector<Poly> both{b1, b2};
      Poly rhs = expand_once(a, std::span<const Poly>(both), ring);
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
          // a1..[ai,b1]..[aj,b2]..ak + a1..[ai,b2]..[aj,b1]..ak
          for (int swap = 0; swap < 2; ++swap) {
            const Poly& bi = swap ? b2 : b1;
            const Poly& bj = swap ? b1 : b2;
            Poly term = product_range(a, 0, i, ring);
            term = poly_mul(term, commutator(a[i], bi));
            term = poly_mul(term, product_range(a, i + 1, j, ring));
            term = poly_mul(term, commutator(a[j], bj));
            term = poly_mul(term, product_range(a, j + 1, a.size(), ring));
            rhs = poly_add(rhs, term);
          }
        }
      }
      return {lhs, rhs};
    }
    case IdentityName::Prod2Thrice: {
      check_arity(5);
      const Poly &a1 = args[0], &a2 = args[1];
      const Poly &b1 = args[2], &b2 = args[3], &b3 = args[4];
      Poly lhs = left_normed_commutator({poly_mul(a1, a2), b1, b2, b3});
      Poly rhs = poly_mul(a1, left_normed_commutator({a2, b1, b2, b3}));
      rhs = poly_add(rhs, poly_mul(commutator(a1, b1), left_normed_commutator({a2, b2, b3})));
      rhs = poly_add(rhs, poly_mul(commutator(a1, b2), left_normed_commutator({a2, b1, b3})));
      rhs = poly_add(rhs, poly_mul(commutator(a1, b3), left_normed_commutator({a2, b1, b2})));
      rhs = poly_add(rhs, poly_mul(left_normed_commutator({a1, b1, b2}), commutator(a2, b3)));
      rhs = poly_add(rhs, poly_mul(left_normed_commutator({a1, b1, b3}), commutator(a2, b2)));
      rhs = poly_add(rhs, poly_mul(left_normed_commutator({a1, b2, b3}), commutator(a2, b1)));
      rhs = poly_add(rhs, poly_mul(left_normed_commutator({a1, b1, b2, b3}), a2));
      return {lhs, rhs};
    }
  }
  throw std::invalid_argument("unknown identity");
}

std::vector<std::pair<Scalar, Poly>> rewrite_as_right_letter_commutators(
    const Poly& p, std::size_t generator_count) {
  (void)generator_count;
  std::vector<std::pair<Scalar, Poly>> out;
  if (p.is_zero()) return out;  // [w1, w2] with commuting words

  if (p.term_count() != 2) throw std::invalid_argument("not a commutator of two words");
  auto it = p.terms().begin();
  const auto& [wa, ca] = *it;
  ++it;
  const auto& [wb, cb] = *it;
  const RingSpec ring = p.ring();

  // Identify u - v = w1 w2 - w2 w1 with a split u = w1 ++ w2.
  const Word* upos = nullptr;
  const Word* uneg = nullptr;
  if (ca.is_one() && cb == ring_neg(ring, scalar_from_long(ring, 1))) {
    upos = &wa;
    uneg = &wb;
  } else if (cb.is_one() && ca == ring_neg(ring, scalar_from_long(ring, 1))) {
    upos = &wb;
    uneg = &wa;
  } else {
    throw std::invalid_argument("not a commutator of two words");
  }

  for (std::size_t cut = 1; cut < upos->letters.size(); ++cut) {
    Word w1(std::vector<GeneratorIndex>(upos->letters.begin(), upos->letters.begin() + cut));
    Word w2(std::vector<GeneratorIndex>(upos->letters.begin() + cut, upos->letters.end()));
    if (w2.concat(w1) == *uneg) {
      // [y1..yk, z1..zl] = sum over i of [z(l-i+1)..zl y1..yk z1..z(l-i-1), z(l-i)]
      const auto& y = w1.letters;
      const auto& z = w2.letters;
      const std::size_t l = z.size();
      for (std::size_t i = 0; i < l; ++i) {
        std::vector<GeneratorIndex> d;
        d.insert(d.end(), z.begin() + (l - i), z.end());
        d.insert(d.end(), y.begin(), y.end());
        d.insert(d.end(), z.begin(), z.begin() + (l - i - 1));
        Poly dw = Poly::monomial(ring, Word(std::move(d)), scalar_from_long(ring, 1));
        Poly x = Poly::generator(ring, z[l - i - 1]);
        out.emplace_back(scalar_from_long(ring, 1), commutator(dw, x));
      }
      return out;
    }
  }
  throw std::invalid_argument("not a commutator of two words");
}

std::string render_word(const Word& w, const std::vector<std::string>& generator_names) {
  if (w.is_unit()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) os << '*';
    if (w.letters[i] < generator_names.size())
      os << generator_names[w.letters[i]];
    else
      os << 'x' << (w.letters[i] + 1);
  }
  return os.str();
}

std::string render_poly(const Poly& p, const std::vector<std::string>& generator_names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    bool negative = c.value() < 0;
    Scalar abs_c = negative ? ring_neg(p.ring(), c) : c;
    if (first) {
      if (negative) os << '-';
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    if (w.is_unit()) {
      os << scalar_to_string(abs_c);
    } else {
      if (!abs_c.is_one()) os << scalar_to_string(abs_c) << '*';
      os << render_word(w, generator_names);
    }
  }
  return os.str();
}

}  // namespace lienil
