#include "lienil/findim.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace lienil {

namespace {

bool is_power_of_3(mpz_class v) {
  if (v <= 0) return false;
  while (v % 3 == 0) v /= 3;
  return v == 1;
}

SparseVec sparsify(std::vector<Scalar> dense) {
  SparseVec v(static_cast<int>(dense.size()));
  for (int i = 0; i < static_cast<int>(dense.size()); ++i)
    if (!dense[i].is_zero()) v.entries.emplace_back(i, std::move(dense[i]));
  return v;
}

/// Subspace accumulator dispatching on the coefficient ring: row span over
/// Q / GF(p), row lattice over Z, 3-saturated lattice over Z[1/3].
class SubspaceAccum {
 public:
  SubspaceAccum(RingSpec ring, int dim) : ring_(ring), dim_(dim) {
    if (ring.kind == RingKind::PrimeField)
      fp_.emplace(dim, ring.modulus);
    else if (ring.kind == RingKind::Rationals)
      q_.emplace(dim);
    else
      z_.emplace(dim);
  }

  bool insert(const SparseVec& v) {
    if (v.is_zero()) return false;
    if (fp_) return fp_->insert(to_fp_row(v, ring_.modulus));
    if (q_) return q_->insert(to_zrow_cleared(v, ring_));
    ZRow row = to_zrow_cleared(v, ring_);
    if (ring_.kind == RingKind::IntegersLoc3 && in_loc3_span(row)) return false;
    return z_->insert(std::move(row));
  }

  int rank() const {
    if (fp_) return fp_->rank();
    if (q_) return q_->rank();
    return z_->rank();
  }

  SubspaceBasis canonical() {
    SubspaceBasis b;
    b.ring = ring_;
    b.dim = dim_;
    if (fp_) {
      fp_->canonicalize();
      for (const auto& [lead, row] : fp_->basis_by_lead()) {
        SparseVec v(dim_);
        for (const auto& [c, x] : row)
          v.entries.emplace_back(c, Scalar(mpz_class(static_cast<unsigned long>(x))));
        b.rows.push_back(std::move(v));
      }
      return b;
    }
    if (q_) {
      q_->canonicalize();
      for (const auto& [lead, row] : q_->basis_by_lead())
        b.rows.push_back(zrow_to_sparsevec(row, dim_));
      return b;
    }
    z_->canonicalize();
    for (const auto& [lead, row] : z_->basis_by_lead()) {
      ZRow r = row;
      if (ring_.kind == RingKind::IntegersLoc3) {
        // units 3^k are stripped rowwise
        mpz_class g = 0;
        for (const auto& [c, val] : r.e) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val.get_mpz_t());
        mpz_class three_part = 1;
        while (g % 3 == 0) {
          g /= 3;
          three_part *= 3;
        }
        if (three_part > 1)
          for (auto& [c, val] : r.e) val /= three_part;
      }
      b.rows.push_back(zrow_to_sparsevec(r, dim_));
    }
    return b;
  }

 private:
  RingSpec ring_;
  int dim_;
  std::optional<FpEchelon> fp_;
  std::optional<QEchelon> q_;
  std::optional<ZEchelon> z_;

  bool in_loc3_span(const ZRow& row) const {
    auto red = z_->reduce_rational(row);
    if (!red) return false;
    mpz_class k = 1;
    for (const auto& [lead, q] : *red)
      mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), q.get_den().get_mpz_t());
    return is_power_of_3(k);
  }
};

}  // namespace

StructureAlgebra::StructureAlgebra(RingSpec ring, int dim, std::vector<SparseVec> table,
                                   SparseVec unit,
                                   std::vector<std::pair<std::string, SparseVec>> generators,
                                   std::vector<std::string> basis_names)
    : ring_(ring),
      dim_(dim),
      table_(std::move(table)),
      unit_(std::move(unit)),
      gens_(std::move(generators)),
      names_(std::move(basis_names)) {
  if (static_cast<int>(table_.size()) != dim_ * dim_)
    throw ValidationError("structure tensor has wrong size");
  if (names_.empty())
    for (int i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i));
  validate();
}

Element StructureAlgebra::basis_element(int i) const {
  SparseVec v(dim_);
  v.entries.emplace_back(i, scalar_from_long(ring_, 1));
  return v;
}

void StructureAlgebra::validate() const {
  // unit axiom
  for (int j = 0; j < dim_; ++j) {
    Element ej = basis_element(j);
    if (!(fd_mul(*this, unit_, ej) == ej) || !(fd_mul(*this, ej, unit_) == ej))
      throw ValidationError("unit axiom fails at basis element " + std::to_string(j));
  }
  // associativity on all basis triples
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const SparseVec& ij = basis_product(i, j);
      for (int k = 0; k < dim_; ++k) {
        Element lhs = fd_mul(*this, ij, basis_element(k));
        Element rhs = fd_mul(*this, basis_element(i), basis_product(j, k));
        if (!(lhs == rhs))
          throw ValidationError("associativity fails on basis triple (" + std::to_string(i) +
                                "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
    }
}

Element fd_mul(const StructureAlgebra& a, const Element& p, const Element& q) {
  if (p.dim != a.dim() || q.dim != a.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<Scalar> acc(a.dim(), Scalar());
  for (const auto& [i, ci] : p.entries)
    for (const auto& [j, cj] : q.entries) {
      Scalar c = ring_mul(a.ring(), ci, cj);
      if (c.is_zero()) continue;
      for (const auto& [k, w] : a.basis_product(i, j).entries)
        acc[k] = ring_add(a.ring(), acc[k], ring_mul(a.ring(), c, w));
    }
  return sparsify(std::move(acc));
}

Element fd_commutator(const StructureAlgebra& a, const Element& p, const Element& q) {
  Element pq = fd_mul(a, p, q);
  Element qp = fd_mul(a, q, p);
  std::vector<Scalar> acc(a.dim(), Scalar());
  for (const auto& [i, c] : pq.entries) acc[i] = c;
  for (const auto& [i, c] : qp.entries) acc[i] = ring_sub(a.ring(), acc[i], c);
  return sparsify(std::move(acc));
}

Element fd_add(const StructureAlgebra& a, const Element& p, const Element& q) {
  std::vector<Scalar> acc(a.dim(), Scalar());
  for (const auto& [i, c] : p.entries) acc[i] = c;
  for (const auto& [i, c] : q.entries) acc[i] = ring_add(a.ring(), acc[i], c);
  return sparsify(std::move(acc));
}

Element fd_scalar_mul(const StructureAlgebra& a, const Scalar& c, const Element& p) {
  std::vector<Scalar> acc(a.dim(), Scalar());
  for (const auto& [i, v] : p.entries) acc[i] = ring_mul(a.ring(), c, v);
  return sparsify(std::move(acc));
}

namespace {

struct NamedElement {
  std::string name;
  Element value;
};

std::vector<NamedElement> generator_pool(const StructureAlgebra& a, bool with_squares) {
  std::vector<NamedElement> pool;
  for (const auto& [name, vec] : a.generators()) pool.push_back({name, vec});
  if (with_squares) {
    const auto& gens = a.generators();
    for (const auto& [n1, v1] : gens)
      for (const auto& [n2, v2] : gens)
        pool.push_back({n1 + "*" + n2, fd_mul(a, v1, v2)});
  }
  return pool;
}

}  // namespace

NilpotencyResult verify_via_theorem(const StructureAlgebra& a, int n, bool force) {
  if (n < 2) throw std::invalid_argument("verify_via_theorem: n must be >= 2");
  if (a.generators().empty())
    throw std::invalid_argument("verify_via_theorem: the algebra declares no generating set");
  NilpotencyResult res;
  if (!three_invertible(a.ring()) && !force) {
    res.verdict = NilpotencyVerdict::Refused;
    res.refusal_reason = "3 is not invertible in " + ring_name(a.ring()) +
                         "; the finite-generator criterion does not apply";
    return res;
  }
  const std::vector<NamedElement> ends = generator_pool(a, false);
  const std::vector<NamedElement> middles = generator_pool(a, true);

  std::vector<std::string> chain;
  std::function<bool(const Element&, int)> dfs = [&](const Element& val, int depth) -> bool {
    if (depth == n) {
      res.verdict = NilpotencyVerdict::NotLieNilpotent;
      res.witness_names = chain;
      res.witness_value = val;
      return true;
    }
    const auto& pool = (depth == n - 1) ? ends : middles;
    for (const auto& y : pool) {
      Element w = fd_commutator(a, val, y.value);
      if (w.is_zero()) continue;
      chain.push_back(y.name);
      if (dfs(w, depth + 1)) return true;
      chain.pop_back();
    }
    return false;
  };

  for (const auto& y1 : ends) {
    if (y1.value.is_zero()) continue;
    chain.assign(1, y1.name);
    if (dfs(y1.value, 1)) return res;
  }
  res.verdict = NilpotencyVerdict::LieNilpotent;
  return res;
}

namespace {

struct ChainElement {
  Element value;
  std::vector<int> chain;  // basis indices of the bracket entries
};

// Spanning sets of M_1 ) M_2 ) ...; every kept element is a genuine
// left-normed bracket of basis elements, so a surviving element of M_n is a
// nilpotency witness.
std::vector<ChainElement> bracket_chain_level(const StructureAlgebra& a, int n) {
  std::vector<ChainElement> level;
  for (int i = 0; i < a.dim(); ++i) level.push_back({a.basis_element(i), {i}});
  for (int k = 2; k <= n; ++k) {
    SubspaceAccum accum(a.ring(), a.dim());
    std::vector<ChainElement> next;
    for (const auto& el : level)
      for (int j = 0; j < a.dim(); ++j) {
        Element w = fd_commutator(a, el.value, a.basis_element(j));
        if (w.is_zero()) continue;
        if (!accum.insert(w)) continue;
        ChainElement ce{std::move(w), el.chain};
        ce.chain.push_back(j);
        next.push_back(std::move(ce));
      }
    level = std::move(next);
    if (level.empty()) break;
  }
  return level;
}

}  // namespace

NilpotencyResult lie_nilpotency_oracle(const StructureAlgebra& a, int n) {
  if (n < 2) throw std::invalid_argument("lie_nilpotency_oracle: n must be >= 2");
  NilpotencyResult res;
  std::vector<ChainElement> mn = bracket_chain_level(a, n);
  if (mn.empty()) {
    res.verdict = NilpotencyVerdict::LieNilpotent;
    return res;
  }
  res.verdict = NilpotencyVerdict::NotLieNilpotent;
  for (int idx : mn.front().chain) res.witness_names.push_back(a.basis_names()[idx]);
  res.witness_value = mn.front().value;
  return res;
}

namespace {

SubspaceBasis ideal_closure(const StructureAlgebra& a, const std::vector<Element>& seeds) {
  SubspaceAccum accum(a.ring(), a.dim());
  std::deque<Element> work;
  for (const auto& v : seeds)
    if (accum.insert(v)) work.push_back(v);
  while (!work.empty()) {
    Element v = std::move(work.front());
    work.pop_front();
    for (int j = 0; j < a.dim(); ++j) {
      Element l = fd_mul(a, a.basis_element(j), v);
      if (accum.insert(l)) work.push_back(std::move(l));
      Element r = fd_mul(a, v, a.basis_element(j));
      if (accum.insert(r)) work.push_back(std::move(r));
    }
  }
  return accum.canonical();
}

}  // namespace

SubspaceBasis tideal_findim(const StructureAlgebra& a, int n) {
  std::vector<ChainElement> mn = bracket_chain_level(a, n);
  std::vector<Element> seeds;
  seeds.reserve(mn.size());
  for (auto& el : mn) seeds.push_back(std::move(el.value));
  return ideal_closure(a, seeds);
}

SubspaceBasis ideal_from_gens_findim(const StructureAlgebra& a, const std::vector<Element>& gens) {
  return ideal_closure(a, gens);
}

std::vector<Element> evaluate_sn_family(const StructureAlgebra& a, int n) {
  if (n < 2) throw std::invalid_argument("evaluate_sn_family: n must be >= 2");
  const std::vector<NamedElement> ends = generator_pool(a, false);
  const std::vector<NamedElement> middles = generator_pool(a, true);
  std::vector<Element> out;
  std::function<void(const Element&, int)> dfs = [&](const Element& val, int depth) {
    if (depth == n) {
      out.push_back(val);
      return;
    }
    const auto& pool = (depth == n - 1) ? ends : middles;
    for (const auto& y : pool) {
      Element w = fd_commutator(a, val, y.value);
      if (w.is_zero()) continue;
      dfs(w, depth + 1);
    }
  };
  for (const auto& y1 : ends) {
    if (y1.value.is_zero()) continue;
    dfs(y1.value, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// example algebras
// ---------------------------------------------------------------------------

namespace {

StructureAlgebra build_from_dense(RingSpec ring, int dim,
                                  const std::function<std::vector<Scalar>(int, int)>& prod,
                                  const SparseVec& unit,
                                  std::vector<std::pair<std::string, SparseVec>> gens,
                                  std::vector<std::string> names) {
  std::vector<SparseVec> table(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) table[i * dim + j] = sparsify(prod(i, j));
  return StructureAlgebra(ring, dim, std::move(table), unit, std::move(gens), std::move(names));
}

std::string power_name(const std::string& base, int e) {
  if (e == 0) return "";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

StructureAlgebra heisenberg_truncated(int cap, const RingSpec& ring) {
  if (cap < 1) throw std::invalid_argument("heisenberg_truncated: cap must be >= 1");
  // PBW monomials a^i b^j c^k with weighted degree i + j + 2k <= cap
  struct Mono {
    int i, j, k;
  };
  std::vector<Mono> basis;
  std::map<std::tuple<int, int, int>, int> index;
  for (int d = 0; d <= cap; ++d)
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) {
        int rem = d - i - j;
        if (rem % 2 != 0) continue;
        int k = rem / 2;
        if (i + j + 2 * k != d) continue;
        index[{i, j, k}] = static_cast<int>(basis.size());
        basis.push_back({i, j, k});
      }
  const int dim = static_cast<int>(basis.size());

  std::vector<std::string> names;
  for (const auto& m : basis) {
    std::string s;
    for (const std::string& part :
         {power_name("a", m.i), power_name("b", m.j), power_name("c", m.k)}) {
      if (part.empty()) continue;
      if (!s.empty()) s += "*";
      s += part;
    }
    names.push_back(s.empty() ? "1" : s);
  }

  // (a^i b^j c^k)(a^p b^q c^r) =
  //   sum_t (-1)^t t! C(j,t) C(p,t) a^(i+p-t) b^(j+q-t) c^(k+r+t);
  // the weighted degree of every term equals the sum of the factor degrees,
  // so truncation keeps or drops the whole product.
  auto prod = [&](int x, int y) {
    const Mono& m = basis[x];
    const Mono& w = basis[y];
    std::vector<Scalar> acc(dim, Scalar());
    int deg = m.i + m.j + 2 * m.k + w.i + w.j + 2 * w.k;
    if (deg > cap) return acc;
    for (int t = 0; t <= std::min(m.j, w.i); ++t) {
      mpz_class coef;
      mpz_class bin1, bin2, fact;
      mpz_bin_uiui(bin1.get_mpz_t(), m.j, t);
      mpz_bin_uiui(bin2.get_mpz_t(), w.i, t);
      mpz_fac_ui(fact.get_mpz_t(), t);
      coef = bin1 * bin2 * fact;
      if (t % 2 == 1) coef = -coef;
      auto it = index.find({m.i + w.i - t, m.j + w.j - t, m.k + w.k + t});
      if (it == index.end()) continue;  // cannot happen: degree is preserved
      acc[it->second] =
          ring_add(ring, acc[it->second], canonicalize(ring, mpq_class(coef)));
    }
    return acc;
  };

  SparseVec unit(dim);
  unit.entries.emplace_back(index.at({0, 0, 0}), scalar_from_long(ring, 1));
  SparseVec a_vec(dim), b_vec(dim);
  a_vec.entries.emplace_back(index.at({1, 0, 0}), scalar_from_long(ring, 1));
  b_vec.entries.emplace_back(index.at({0, 1, 0}), scalar_from_long(ring, 1));
  return build_from_dense(ring, dim, prod, unit, {{"a", a_vec}, {"b", b_vec}},
                          std::move(names));
}

StructureAlgebra grassmann(int k, const RingSpec& ring) {
  if (k < 1) throw std::invalid_argument("grassmann: need at least one generator");
  if (k > 16) throw std::invalid_argument("grassmann: too many generators");
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << k); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::map<unsigned, int> index;
  for (std::size_t i = 0; i < masks.size(); ++i) index[masks[i]] = static_cast<int>(i);
  const int dim = static_cast<int>(masks.size());

  auto prod = [&](int x, int y) {
    std::vector<Scalar> acc(dim, Scalar());
    unsigned s = masks[x], t = masks[y];
    if (s & t) return acc;
    // sign: inversions between the sorted factor sequences
    int inv = 0;
    for (int a = 0; a < k; ++a)
      if (s & (1u << a)) inv += __builtin_popcount(t & ((1u << a) - 1));
    Scalar c = scalar_from_long(ring, inv % 2 == 0 ? 1 : -1);
    acc[index.at(s | t)] = c;
    return acc;
  };

  std::vector<std::string> names;
  for (unsigned m : masks) {
    std::string s;
    for (int a = 0; a < k; ++a)
      if (m & (1u << a)) {
        if (!s.empty()) s += "*";
        s += "e" + std::to_string(a + 1);
      }
    names.push_back(s.empty() ? "1" : s);
  }

  SparseVec unit(dim);
  unit.entries.emplace_back(index.at(0), scalar_from_long(ring, 1));
  std::vector<std::pair<std::string, SparseVec>> gens;
  for (int a = 0; a < k; ++a) {
    SparseVec v(dim);
    v.entries.emplace_back(index.at(1u << a), scalar_from_long(ring, 1));
    gens.emplace_back("e" + std::to_string(a + 1), v);
  }
  return build_from_dense(ring, dim, prod, unit, std::move(gens), std::move(names));
}

StructureAlgebra unitriangular_plus_unit(int m, const RingSpec& ring) {
  if (m < 2) throw std::invalid_argument("unitriangular_plus_unit: need m >= 2");
  // basis: 1, then matrix units e_ij (i < j) in lexicographic order
  std::vector<std::pair<int, int>> units;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) units.emplace_back(i, j);
  std::map<std::pair<int, int>, int> index;
  for (std::size_t u = 0; u < units.size(); ++u) index[units[u]] = static_cast<int>(u) + 1;
  const int dim = 1 + static_cast<int>(units.size());

  auto prod = [&](int x, int y) {
    std::vector<Scalar> acc(dim, Scalar());
    if (x == 0) {
      acc[y] = scalar_from_long(ring, 1);
      return acc;
    }
    if (y == 0) {
      acc[x] = scalar_from_long(ring, 1);
      return acc;
    }
    auto [i, j] = units[x - 1];
    auto [p, q] = units[y - 1];
    if (j == p) acc[index.at({i, q})] = scalar_from_long(ring, 1);
    return acc;
  };

  std::vector<std::string> names{"1"};
  std::vector<std::pair<std::string, SparseVec>> gens;
  SparseVec unit(dim);
  unit.entries.emplace_back(0, scalar_from_long(ring, 1));
  gens.emplace_back("1", unit);
  for (std::size_t u = 0; u < units.size(); ++u) {
    std::string nm =
        "e" + std::to_string(units[u].first + 1) + std::to_string(units[u].second + 1);
    names.push_back(nm);
    SparseVec v(dim);
    v.entries.emplace_back(static_cast<int>(u) + 1, scalar_from_long(ring, 1));
    gens.emplace_back(nm, v);
  }
  return build_from_dense(ring, dim, prod, unit, std::move(gens), std::move(names));
}

StructureAlgebra commutative_series(int m, const RingSpec& ring) {
  if (m < 1) throw std::invalid_argument("commutative_series: need m >= 1");
  auto prod = [&](int x, int y) {
    std::vector<Scalar> acc(m, Scalar());
    if (x + y < m) acc[x + y] = scalar_from_long(ring, 1);
    return acc;
  };
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back(i == 0 ? "1" : power_name("t", i));
  SparseVec unit(m);
  unit.entries.emplace_back(0, scalar_from_long(ring, 1));
  std::vector<std::pair<std::string, SparseVec>> gens;
  if (m > 1) {
    SparseVec t(m);
    t.entries.emplace_back(1, scalar_from_long(ring, 1));
    gens.emplace_back("t", t);
  } else {
    gens.emplace_back("1", unit);
  }
  return build_from_dense(ring, m, prod, unit, std::move(gens), std::move(names));
}

}  // namespace

StructureAlgebra example_algebra(ExampleKind kind, int param, const RingSpec& ring) {
  switch (kind) {
    case ExampleKind::HeisenbergTruncated: return heisenberg_truncated(param, ring);
    case ExampleKind::Grassmann: return grassmann(param, ring);
    case ExampleKind::UnitriangularPlusUnit: return unitriangular_plus_unit(param, ring);
    case ExampleKind::CommutativeSeries: return commutative_series(param, ring);
  }
  throw std::invalid_argument("unknown example kind");
}

StructureAlgebra example_algebra(const std::string& spec, const RingSpec& ring) {
  auto open = spec.find('(');
  auto close = spec.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("example spec must look like name(param): " + spec);
  std::string name = spec.substr(0, open);
  int param = std::stoi(spec.substr(open + 1, close - open - 1));
  if (name == "heisenberg_truncated")
    return example_algebra(ExampleKind::HeisenbergTruncated, param, ring);
  if (name == "grassmann") return example_algebra(ExampleKind::Grassmann, param, ring);
  if (name == "unitriangular_plus_unit")
    return example_algebra(ExampleKind::UnitriangularPlusUnit, param, ring);
  if (name == "commutative_series")
    return example_algebra(ExampleKind::CommutativeSeries, param, ring);
  throw std::invalid_argument("unknown example algebra: " + name);
}

StructureAlgebra from_algebra_file(const AlgebraFile& file) {
  const int dim = file.dim;
  std::vector<std::vector<Scalar>> dense(static_cast<std::size_t>(dim) * dim,
                                         std::vector<Scalar>(dim, Scalar()));
  for (const auto& t : file.sc)
    dense[t.i * dim + t.j][t.k] = ring_add(file.ring, dense[t.i * dim + t.j][t.k], t.c);
  std::vector<SparseVec> table(static_cast<std::size_t>(dim) * dim);
  for (std::size_t c = 0; c < table.size(); ++c) table[c] = sparsify(std::move(dense[c]));

  SparseVec unit(dim);
  for (int i = 0; i < dim; ++i)
    if (!file.unit[i].is_zero()) unit.entries.emplace_back(i, file.unit[i]);

  std::vector<std::pair<std::string, SparseVec>> gens;
  for (const auto& [name, coords] : file.generators) {
    SparseVec v(dim);
    for (int i = 0; i < dim; ++i)
      if (!coords[i].is_zero()) v.entries.emplace_back(i, coords[i]);
    gens.emplace_back(name, std::move(v));
  }
  return StructureAlgebra(file.ring, dim, std::move(table), std::move(unit), std::move(gens), {});
}

}  // namespace lienil
