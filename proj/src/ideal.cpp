#include "lienil/ideal.hpp"

#include <algorithm>
#include <set>

namespace lienil {

namespace {

void enum_words_of_length(const MultiDegree& budget, std::size_t len,
                          std::vector<GeneratorIndex>& cur, std::vector<std::uint32_t>& left,
                          std::vector<Word>& out) {
  if (cur.size() == len) {
    out.emplace_back(cur);
    return;
  }
  for (GeneratorIndex l = 0; l < left.size(); ++l) {
    if (left[l] == 0) continue;
    left[l]--;
    cur.push_back(l);
    enum_words_of_length(budget, len, cur, left, out);
    cur.pop_back();
    left[l]++;
  }
}

bool letters_in_range(const Poly& p, std::size_t generator_count) {
  for (const auto& [w, c] : p.terms())
    for (auto l : w.letters)
      if (l >= generator_count) return false;
  return true;
}

// Unit-preserving normalization used for duplicate pruning: over a field the
// leading coefficient is scaled to 1, over Z and Z[1/3] only the sign is
// normalized, so the span (resp. lattice) of each row is unchanged.
Poly normalize_for_dedup(const Poly& p) {
  if (p.is_zero()) return p;
  const RingSpec& ring = p.ring();
  const Scalar& leadc = p.terms().begin()->second;
  if (ring.is_field()) {
    Scalar inv = scalar_invert(leadc, ring);
    return poly_scalar_mul(inv, p);
  }
  if (leadc.value() < 0) return poly_neg(p);
  return p;
}

std::vector<std::pair<Word, Scalar>> dedup_key(const Poly& p) {
  std::vector<std::pair<Word, Scalar>> key;
  key.reserve(p.term_count());
  for (const auto& [w, c] : p.terms()) key.emplace_back(w, c);
  return key;
}

bool is_power_of_3(mpz_class v) {
  if (v <= 0) return false;
  while (v % 3 == 0) v /= 3;
  return v == 1;
}

}  // namespace

std::vector<Word> component_basis(std::size_t generator_count, const MultiDegree& mu) {
  if (mu.size() != generator_count)
    throw std::invalid_argument("component_basis: multidegree size mismatch");
  std::vector<Word> out;
  std::vector<GeneratorIndex> cur;
  std::vector<std::uint32_t> left = mu.exponents;
  enum_words_of_length(mu, mu.total(), cur, left, out);
  return out;
}

std::vector<Word> words_dominated_by(const MultiDegree& mu, bool nonunit_only) {
  std::vector<Word> out;
  std::vector<GeneratorIndex> cur;
  std::vector<std::uint32_t> left = mu.exponents;
  for (std::size_t len = nonunit_only ? 1 : 0; len <= mu.total(); ++len)
    enum_words_of_length(mu, len, cur, left, out);
  return out;
}

std::vector<Poly> tideal_generators(int n, const RingSpec& ring, const MultiDegree& mu) {
  if (n < 2) throw std::invalid_argument("tideal_generators: n must be >= 2");
  std::vector<Poly> out;
  std::set<std::vector<std::pair<Word, Scalar>>> seen;
  std::map<std::vector<std::uint32_t>, std::vector<Word>> word_cache;

  auto words_for = [&](const MultiDegree& budget) -> const std::vector<Word>& {
    auto it = word_cache.find(budget.exponents);
    if (it == word_cache.end())
      it = word_cache.emplace(budget.exponents, words_dominated_by(budget, true)).first;
    return it->second;
  };

  std::vector<Poly> chosen;
  auto rec = [&](auto&& self, const MultiDegree& budget) -> void {
    if (static_cast<int>(chosen.size()) == n) {
      Poly g = left_normed_commutator(std::span<const Poly>(chosen));
      if (g.is_zero()) return;
      Poly key = normalize_for_dedup(g);
      if (seen.insert(dedup_key(key)).second) out.push_back(std::move(key));
      return;
    }
    for (const Word& w : words_for(budget)) {
      MultiDegree wd = multidegree(w, mu.size());
      chosen.push_back(Poly::monomial(ring, w, scalar_from_long(ring, 1)));
      self(self, budget - wd);
      chosen.pop_back();
    }
  };
  rec(rec, mu);
  return out;
}

std::vector<Poly> w_oracle_generators(const std::vector<Poly>& S, const MultiDegree& mu) {
  std::vector<Poly> out;
  std::set<std::vector<std::pair<Word, Scalar>>> seen;
  const std::size_t g_count = mu.size();

  for (const Poly& s : S) {
    if (s.is_zero()) continue;
    if (!letters_in_range(s, g_count)) continue;
    MultiDegree sd;
    if (!s.is_homogeneous(g_count, &sd))
      throw std::invalid_argument("w_oracle_generators: inhomogeneous seed element");
    if (!mu.dominates(sd)) continue;
    MultiDegree budget0 = mu - sd;
    const RingSpec ring = s.ring();

    for (const Word& b1 : words_dominated_by(budget0)) {
      MultiDegree budget1 = budget0 - multidegree(b1, g_count);
      for (const Word& b2 : words_dominated_by(budget1)) {
        MultiDegree budget2 = budget1 - multidegree(b2, g_count);
        Poly u = poly_mul(Poly::monomial(ring, b1, scalar_from_long(ring, 1)),
                          poly_mul(s, Poly::monomial(ring, b2, scalar_from_long(ring, 1))));
        for (const Word& m1 : words_dominated_by(budget2, true)) {
          MultiDegree budget3 = budget2 - multidegree(m1, g_count);
          for (const Word& m2 : words_dominated_by(budget3, true)) {
            Poly gen = left_normed_commutator(
                {u, Poly::monomial(ring, m1, scalar_from_long(ring, 1)),
                 Poly::monomial(ring, m2, scalar_from_long(ring, 1))});
            if (gen.is_zero()) continue;
            Poly key = normalize_for_dedup(gen);
            if (seen.insert(dedup_key(key)).second) out.push_back(std::move(key));
          }
        }
      }
    }
  }
  return out;
}

IdealTruncation make_truncation(std::vector<Poly> generators, const MultiDegree& mu) {
  IdealTruncation t;
  t.component = mu;
  t.generators = std::move(generators);
  const std::size_t g_count = mu.size();
  t.ring = t.generators.empty() ? RingSpec::rationals() : t.generators.front().ring();
  t.basis = component_basis(g_count, mu);
  t.spanning = SparseMat(t.ring, static_cast<int>(t.basis.size()));

  std::map<Word, int> col;
  for (std::size_t i = 0; i < t.basis.size(); ++i) col[t.basis[i]] = static_cast<int>(i);

  std::set<std::vector<std::pair<int, mpq_class>>> seen;
  for (std::size_t gi = 0; gi < t.generators.size(); ++gi) {
    const Poly& g = t.generators[gi];
    if (!(g.ring() == t.ring)) throw RingError("make_truncation: mixed rings");
    if (g.is_zero()) continue;
    if (!letters_in_range(g, g_count)) continue;
    MultiDegree gd;
    if (!g.is_homogeneous(g_count, &gd))
      throw std::invalid_argument("make_truncation: inhomogeneous generator");
    if (!mu.dominates(gd)) continue;
    MultiDegree delta = mu - gd;

    for (const Word& a : words_dominated_by(delta)) {
      MultiDegree beta = delta - multidegree(a, g_count);
      for (const Word& b : component_basis(g_count, beta)) {
        SparseVec row(static_cast<int>(t.basis.size()));
        row.entries.reserve(g.term_count());
        for (const auto& [w, c] : g.terms()) {
          Word full = a.concat(w).concat(b);
          row.entries.emplace_back(col.at(full), c);
        }
        std::sort(row.entries.begin(), row.entries.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });

        // duplicate pruning key: scale-normalized copy
        std::vector<std::pair<int, mpq_class>> key;
        key.reserve(row.entries.size());
        const mpq_class& lead = row.entries.front().second.value();
        for (const auto& [c_idx, s] : row.entries) {
          mpq_class v = t.ring.is_field() ? mpq_class(s.value() / lead)
                                          : (lead < 0 ? mpq_class(-s.value()) : s.value());
          v.canonicalize();
          key.emplace_back(c_idx, std::move(v));
        }
        if (!seen.insert(std::move(key)).second) continue;
        t.spanning.rows.push_back(std::move(row));
        t.provenance.push_back({static_cast<int>(gi), a, b});
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// MembershipSolver
// ---------------------------------------------------------------------------

MembershipSolver::MembershipSolver(const IdealTruncation& trunc) : trunc_(trunc) {
  for (std::size_t i = 0; i < trunc_.basis.size(); ++i)
    column_of_[trunc_.basis[i]] = static_cast<int>(i);
  const int dim = static_cast<int>(trunc_.basis.size());
  const RingSpec& ring = trunc_.ring;
  const int n = static_cast<int>(trunc_.spanning.rows.size());

  if (ring.kind == RingKind::PrimeField) {
    fp_ech_.emplace(dim, ring.modulus);
    for (int i = 0; i < n; ++i)
      if (fp_ech_->insert(to_fp_row(trunc_.spanning.rows[i], ring.modulus), i))
        contributing_.push_back(i);
  } else if (ring.kind == RingKind::Rationals) {
    q_ech_.emplace(dim);
    for (int i = 0; i < n; ++i)
      if (q_ech_->insert(to_zrow_cleared(trunc_.spanning.rows[i], ring), i))
        contributing_.push_back(i);
  } else {
    z_ech_.emplace(dim);
    for (int i = 0; i < n; ++i)
      if (z_ech_->insert(to_zrow_cleared(trunc_.spanning.rows[i], ring), i))
        contributing_.push_back(i);
  }
}

int MembershipSolver::rank() const {
  if (fp_ech_) return fp_ech_->rank();
  if (q_ech_) return q_ech_->rank();
  return z_ech_->rank();
}

SparseVec MembershipSolver::coordinates(const Poly& target) const {
  SparseVec v(static_cast<int>(trunc_.basis.size()));
  v.entries.reserve(target.term_count());
  for (const auto& [w, c] : target.terms()) {
    auto it = column_of_.find(w);
    if (it == column_of_.end())
      throw std::invalid_argument("target lies outside the truncation component");
    v.entries.emplace_back(it->second, c);
  }
  std::sort(v.entries.begin(), v.entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

void MembershipSolver::ensure_tracked() {
  const RingSpec& ring = trunc_.ring;
  const int dim = static_cast<int>(trunc_.basis.size());
  if (ring.kind == RingKind::PrimeField) {
    if (fp_tracked_) return;
    fp_tracked_.emplace(dim, ring.modulus, true);
    for (int i : contributing_)
      fp_tracked_->insert(to_fp_row(trunc_.spanning.rows[i], ring.modulus), i);
  } else if (ring.kind == RingKind::Rationals) {
    if (q_tracked_) return;
    q_tracked_.emplace(dim, true);
    for (int i : contributing_) q_tracked_->insert(to_zrow_cleared(trunc_.spanning.rows[i], ring), i);
  } else {
    if (z_tracked_) return;
    z_tracked_.emplace(dim, true);
    for (int i : contributing_) z_tracked_->insert(to_zrow_cleared(trunc_.spanning.rows[i], ring), i);
  }
}

std::vector<WitnessTerm> MembershipSolver::witness_from_qcombo(const QCombo& combo,
                                                               const mpq_class& scale) const {
  std::vector<WitnessTerm> out;
  for (const auto& [tag, c] : combo) {
    mpq_class v = c * scale;
    v.canonicalize();
    if (v == 0) continue;
    const auto& prov = trunc_.provenance[tag];
    out.push_back({canonicalize(trunc_.ring, v), prov.left, prov.gen_index, prov.right});
  }
  return out;
}

void MembershipSolver::verify_witness(const std::vector<WitnessTerm>& witness, const Poly& target,
                                      const mpz_class& k) const {
  Poly acc(trunc_.ring);
  for (const auto& wt : witness) {
    const Poly& g = trunc_.generators[wt.gen_index];
    Poly term = poly_mul(Poly::monomial(trunc_.ring, wt.left, scalar_from_long(trunc_.ring, 1)),
                         poly_mul(g, Poly::monomial(trunc_.ring, wt.right,
                                                    scalar_from_long(trunc_.ring, 1))));
    acc = poly_add(acc, poly_scalar_mul(wt.coeff, term));
  }
  Poly want = poly_scalar_mul(canonicalize(trunc_.ring, mpq_class(k)), target);
  if (!(acc == want)) throw std::logic_error("membership witness failed re-expansion");
}

MembershipCertificate MembershipSolver::member(const Poly& target) {
  const RingSpec& ring = trunc_.ring;
  if (!(target.ring() == ring)) throw RingError("member: ring mismatch");
  MembershipCertificate cert;
  if (target.is_zero()) {
    cert.verdict = MembershipCertificate::Verdict::Member;
    return cert;
  }
  MultiDegree td;
  if (!target.is_homogeneous(trunc_.component.size(), &td))
    throw std::invalid_argument("member: target is not multidegree-homogeneous");
  if (!(td == trunc_.component))
    throw std::invalid_argument("member: target lies in a different component");
  SparseVec v = coordinates(target);

  if (ring.kind == RingKind::PrimeField) {
    auto row = to_fp_row(v, ring.modulus);
    if (fp_ech_->contains(row)) {
      ensure_tracked();
      auto sol = fp_tracked_->solve(row);
      for (const auto& [tag, c] : *sol) {
        const auto& prov = trunc_.provenance[tag];
        cert.witness.push_back({Scalar(mpz_class(static_cast<unsigned long>(c))), prov.left,
                                prov.gen_index, prov.right});
      }
      cert.verdict = MembershipCertificate::Verdict::Member;
      verify_witness(cert.witness, target, 1);
    } else {
      cert.verdict = MembershipCertificate::Verdict::NonMember;
      cert.span_rank = fp_ech_->rank();
      cert.augmented_rank = cert.span_rank + 1;
    }
    return cert;
  }

  if (ring.kind == RingKind::Rationals) {
    mpq_class vscale;
    ZRow row = to_zrow_cleared(v, ring, &vscale);
    if (q_ech_->contains(row)) {
      ensure_tracked();
      auto sol = q_tracked_->solve(row);
      // sum c_t * (s_t row_t) = s_v v  =>  coeff_t = c_t s_t / s_v
      QCombo adjusted;
      for (const auto& [tag, c] : *sol) {
        mpq_class s_t;
        to_zrow_cleared(trunc_.spanning.rows[tag], ring, &s_t);
        mpq_class val = c * s_t;
        val.canonicalize();
        adjusted.emplace(tag, val);
      }
      cert.witness = witness_from_qcombo(adjusted, mpq_class(1) / vscale);
      cert.verdict = MembershipCertificate::Verdict::Member;
      verify_witness(cert.witness, target, 1);
    } else {
      cert.verdict = MembershipCertificate::Verdict::NonMember;
      cert.span_rank = q_ech_->rank();
      cert.augmented_rank = cert.span_rank + 1;
    }
    return cert;
  }

  // Integers and Z[1/3]: lattice membership after clearing denominators.
  mpq_class vscale;
  ZRow row = to_zrow_cleared(v, ring, &vscale);
  auto red = z_ech_->reduce_rational(row);
  if (!red) {
    cert.verdict = MembershipCertificate::Verdict::NonMember;
    cert.span_rank = z_ech_->rank();
    cert.augmented_rank = cert.span_rank + 1;
    return cert;
  }
  mpz_class k = 1;
  for (const auto& [lead, q] : *red) mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), q.get_den().get_mpz_t());

  const bool ok =
      (ring.kind == RingKind::Integers) ? (k == 1) : is_power_of_3(k);
  if (!ok) {
    cert.verdict = MembershipCertificate::Verdict::NonMember;
    cert.in_rational_span = true;
    cert.torsion_index = k;
    cert.span_rank = z_ech_->rank();
    cert.augmented_rank = cert.span_rank;
    return cert;
  }

  ensure_tracked();
  auto sol = z_tracked_->torsion_solve(row);
  // k * (s_v v) = sum combo_t * (s_t row_t): coeff_t = combo_t s_t / (k s_v)
  QCombo adjusted;
  for (const auto& [tag, c] : sol->combo) {
    mpq_class s_t;
    to_zrow_cleared(trunc_.spanning.rows[tag], ring, &s_t);
    mpq_class val = mpq_class(c) * s_t;
    val.canonicalize();
    adjusted.emplace(tag, val);
  }
  mpq_class scale = mpq_class(1) / (mpq_class(sol->k) * vscale);
  scale.canonicalize();
  cert.witness = witness_from_qcombo(adjusted, scale);
  cert.verdict = MembershipCertificate::Verdict::Member;
  cert.torsion_index = 1;
  verify_witness(cert.witness, target, 1);
  return cert;
}

MembershipCertificate MembershipSolver::torsion_member(const Poly& target) {
  const RingSpec& ring = trunc_.ring;
  if (ring.kind != RingKind::Integers)
    throw RingError("torsion_member requires the Integers ring");
  if (!(target.ring() == ring)) throw RingError("torsion_member: ring mismatch");
  MembershipCertificate cert;
  if (target.is_zero()) {
    cert.verdict = MembershipCertificate::Verdict::Torsion;
    cert.torsion_index = 1;
    return cert;
  }
  MultiDegree td;
  if (!target.is_homogeneous(trunc_.component.size(), &td))
    throw std::invalid_argument("torsion_member: target is not multidegree-homogeneous");
  if (!(td == trunc_.component))
    throw std::invalid_argument("torsion_member: target lies in a different component");
  SparseVec v = coordinates(target);
  ZRow row = to_zrow_cleared(v, ring);

  auto red = z_ech_->reduce_rational(row);
  if (!red) {
    cert.verdict = MembershipCertificate::Verdict::NonMember;
    cert.span_rank = z_ech_->rank();
    cert.augmented_rank = cert.span_rank + 1;
    return cert;
  }
  ensure_tracked();
  auto sol = z_tracked_->torsion_solve(row);
  cert.verdict = MembershipCertificate::Verdict::Torsion;
  cert.torsion_index = sol->k;
  cert.in_rational_span = true;
  for (const auto& [tag, c] : sol->combo) {
    const auto& prov = trunc_.provenance[tag];
    cert.witness.push_back({Scalar(c), prov.left, prov.gen_index, prov.right});
  }
  verify_witness(cert.witness, target, sol->k);
  return cert;
}

MembershipCertificate member(const Poly& target, const std::vector<Poly>& gens) {
  MultiDegree td;
  std::size_t g_count = 0;
  for (const Poly& g : gens)
    for (const auto& [w, c] : g.terms())
      for (auto l : w.letters) g_count = std::max<std::size_t>(g_count, l + 1);
  for (const auto& [w, c] : target.terms())
    for (auto l : w.letters) g_count = std::max<std::size_t>(g_count, l + 1);
  if (target.is_zero()) {
    MembershipCertificate cert;
    cert.verdict = MembershipCertificate::Verdict::Member;
    return cert;
  }
  if (!target.is_homogeneous(g_count, &td))
    throw std::invalid_argument("member: target is not multidegree-homogeneous");
  IdealTruncation t = make_truncation(gens, td);
  MembershipSolver solver(t);
  return solver.member(target);
}

MembershipCertificate torsion_member(const Poly& target, const std::vector<Poly>& gens) {
  MultiDegree td;
  std::size_t g_count = 0;
  for (const Poly& g : gens)
    for (const auto& [w, c] : g.terms())
      for (auto l : w.letters) g_count = std::max<std::size_t>(g_count, l + 1);
  for (const auto& [w, c] : target.terms())
    for (auto l : w.letters) g_count = std::max<std::size_t>(g_count, l + 1);
  if (target.is_zero()) {
    MembershipCertificate cert;
    cert.verdict = MembershipCertificate::Verdict::Torsion;
    cert.torsion_index = 1;
    return cert;
  }
  if (!target.is_homogeneous(g_count, &td))
    throw std::invalid_argument("torsion_member: target is not multidegree-homogeneous");
  IdealTruncation t = make_truncation(gens, td);
  MembershipSolver solver(t);
  return solver.torsion_member(target);
}

bool span_equal(const std::vector<Poly>& gens_a, const std::vector<Poly>& gens_b,
                const MultiDegree& mu) {
  IdealTruncation ta = make_truncation(gens_a, mu);
  IdealTruncation tb = make_truncation(gens_b, mu);
  if (!ta.generators.empty() && !tb.generators.empty() && !(ta.ring == tb.ring))
    throw RingError("span_equal: mixed rings");
  const RingSpec ring = ta.generators.empty() ? tb.ring : ta.ring;
  const int dim = static_cast<int>(ta.basis.size());

  if (ta.spanning.rows.empty() && tb.spanning.rows.empty()) return true;

  if (ring.kind == RingKind::PrimeField) {
    FpEchelon ea(dim, ring.modulus), eb(dim, ring.modulus);
    for (const auto& r : ta.spanning.rows) ea.insert(to_fp_row(r, ring.modulus));
    for (const auto& r : tb.spanning.rows) eb.insert(to_fp_row(r, ring.modulus));
    for (const auto& [lead, row] : eb.basis_by_lead())
      if (!ea.contains(row)) return false;
    for (const auto& [lead, row] : ea.basis_by_lead())
      if (!eb.contains(row)) return false;
    return true;
  }
  if (ring.kind == RingKind::Rationals) {
    QEchelon ea(dim), eb(dim);
    for (const auto& r : ta.spanning.rows) ea.insert(to_zrow_cleared(r, ring));
    for (const auto& r : tb.spanning.rows) eb.insert(to_zrow_cleared(r, ring));
    for (const auto& [lead, row] : eb.basis_by_lead())
      if (!ea.contains(row)) return false;
    for (const auto& [lead, row] : ea.basis_by_lead())
      if (!eb.contains(row)) return false;
    return true;
  }
  if (ring.kind == RingKind::Integers) {
    ZEchelon ea(dim), eb(dim);
    for (const auto& r : ta.spanning.rows) ea.insert(to_zrow_cleared(r, ring));
    for (const auto& r : tb.spanning.rows) eb.insert(to_zrow_cleared(r, ring));
    ea.canonicalize();
    eb.canonicalize();
    return ea.basis_by_lead() == eb.basis_by_lead();
  }
  // Z[1/3]: equality of 3-saturated lattices via mutual membership
  ZEchelon ea(dim), eb(dim);
  for (const auto& r : ta.spanning.rows) ea.insert(to_zrow_cleared(r, ring));
  for (const auto& r : tb.spanning.rows) eb.insert(to_zrow_cleared(r, ring));
  auto in_loc3_span = [](const ZEchelon& e, const ZRow& row) {
    auto red = e.reduce_rational(row);
    if (!red) return false;
    mpz_class k = 1;
    for (const auto& [lead, q] : *red)
      mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), q.get_den().get_mpz_t());
    return is_power_of_3(k) || k == 1;
  };
  for (const auto& [lead, row] : eb.basis_by_lead())
    if (!in_loc3_span(ea, row)) return false;
  for (const auto& [lead, row] : ea.basis_by_lead())
    if (!in_loc3_span(eb, row)) return false;
  return true;
}

}  // namespace lienil
