#include "lienil/linexact.hpp"

#include <algorithm>
#include <stdexcept>

namespace lienil {

namespace {

void require_ring(const SparseMat& m, RingKind kind, const char* what) {
  if (m.ring.kind != kind) throw RingError(std::string(what) + ": wrong ring " + ring_name(m.ring));
}

void combo_axpy(ZCombo& r, const mpz_class& c, const ZCombo& s) {
  if (c == 0) return;
  for (const auto& [t, val] : s) {
    auto it = r.find(t);
    if (it == r.end()) {
      mpz_class x = c * val;
      if (x != 0) r.emplace(t, std::move(x));
    } else {
      it->second += c * val;
      if (it->second == 0) r.erase(it);
    }
  }
}

void qcombo_axpy(QCombo& r, const mpq_class& c, const QCombo& s) {
  if (c == 0) return;
  for (const auto& [t, val] : s) {
    auto it = r.find(t);
    if (it == r.end()) {
      mpq_class x = c * val;
      x.canonicalize();
      if (x != 0) r.emplace(t, std::move(x));
    } else {
      it->second += c * val;
      it->second.canonicalize();
      if (it->second == 0) r.erase(it);
    }
  }
}

void qcombo_scale(QCombo& r, const mpq_class& c) {
  for (auto& [t, val] : r) {
    val *= c;
    val.canonicalize();
  }
}

void combo_negate(ZCombo& r) {
  for (auto& [t, val] : r) val = -val;
}
void qcombo_negate(QCombo& r) {
  for (auto& [t, val] : r) val = -val;
}

}  // namespace

void SparseVec::set(int i, const Scalar& v) {
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const auto& a, int b) { return a.first < b; });
  if (it != entries.end() && it->first == i) {
    if (v.is_zero())
      entries.erase(it);
    else
      it->second = v;
  } else if (!v.is_zero()) {
    entries.insert(it, {i, v});
  }
}

Scalar SparseVec::get(int i) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const auto& a, int b) { return a.first < b; });
  if (it != entries.end() && it->first == i) return it->second;
  return Scalar();
}

void SparseMat::add_row(SparseVec v) {
  if (v.dim != dim) throw std::invalid_argument("row dimension mismatch");
  rows.push_back(std::move(v));
}

void ZRow::negate() {
  for (auto& [c, v] : e) v = -v;
}

void zrow_axpy(ZRow& r, const mpz_class& c, const ZRow& s) {
  if (c == 0 || s.e.empty()) return;
  std::vector<std::pair<int, mpz_class>> out;
  out.reserve(r.e.size() + s.e.size());
  auto it = r.e.begin();
  const auto end_r = r.e.end();
  for (const auto& [col, sv] : s.e) {
    while (it != end_r && it->first < col) out.push_back(std::move(*it++));
    mpz_class t = c * sv;
    if (it != end_r && it->first == col) {
      t += it->second;
      ++it;
    }
    if (t != 0) out.emplace_back(col, std::move(t));
  }
  while (it != end_r) out.push_back(std::move(*it++));
  r.e = std::move(out);
}

void zrow_make_primitive(ZRow& r) {
  if (r.e.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : r.e) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& [c, v] : r.e) v /= g;
}

void zrow_normalize_sign(ZRow& r) {
  if (!r.e.empty() && r.e.front().second < 0) r.negate();
}

// ---------------------------------------------------------------------------
// ZEchelon
// ---------------------------------------------------------------------------

bool ZEchelon::insert(ZRow v, int tag) {
  ZCombo vc;
  if (track_ && tag >= 0) vc[tag] = 1;
  bool changed = false;
  while (!v.is_zero()) {
    int j = v.lead();
    auto it = basis_.find(j);
    if (it == basis_.end()) {
      if (v.lead_coeff() < 0) {
        v.negate();
        if (track_) combo_negate(vc);
      }
      basis_.emplace(j, std::move(v));
      if (track_) combos_[j] = std::move(vc);
      return true;
    }
    ZRow& b = it->second;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.lead_coeff().get_mpz_t(),
                b.lead_coeff().get_mpz_t());
    if (q != 0) {
      zrow_axpy(v, -q, b);
      if (track_) combo_axpy(vc, -q, combos_[j]);
    }
    if (r == 0) continue;  // leading column moved right
    // Euclidean exchange: v now has the smaller positive coefficient at j.
    std::swap(b, v);
    if (track_) std::swap(combos_[j], vc);
    changed = true;
  }
  return changed;
}

bool ZEchelon::contains(const ZRow& v0) const {
  ZRow v = v0;
  while (!v.is_zero()) {
    auto it = basis_.find(v.lead());
    if (it == basis_.end()) return false;
    const ZRow& b = it->second;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.lead_coeff().get_mpz_t(),
                b.lead_coeff().get_mpz_t());
    if (r != 0) return false;
    zrow_axpy(v, -q, b);
  }
  return true;
}

std::optional<std::map<int, mpq_class>> ZEchelon::reduce_rational(const ZRow& v0) const {
  std::vector<std::pair<int, mpq_class>> v;
  v.reserve(v0.e.size());
  for (const auto& [c, val] : v0.e) v.emplace_back(c, mpq_class(val));
  std::map<int, mpq_class> coeffs;
  while (!v.empty()) {
    int j = v.front().first;
    auto it = basis_.find(j);
    if (it == basis_.end()) return std::nullopt;
    const ZRow& b = it->second;
    mpq_class q = v.front().second / mpq_class(b.lead_coeff());
    q.canonicalize();
    coeffs[j] = q;
    // v -= q * b
    std::vector<std::pair<int, mpq_class>> out;
    out.reserve(v.size() + b.e.size());
    auto vi = v.begin();
    for (const auto& [col, bv] : b.e) {
      while (vi != v.end() && vi->first < col) out.push_back(std::move(*vi++));
      mpq_class t = -q * mpq_class(bv);
      if (vi != v.end() && vi->first == col) {
        t += vi->second;
        ++vi;
      }
      t.canonicalize();
      if (t != 0) out.emplace_back(col, std::move(t));
    }
    while (vi != v.end()) out.push_back(std::move(*vi++));
    v = std::move(out);
  }
  return coeffs;
}

std::optional<ZEchelon::TorsionSolution> ZEchelon::torsion_solve(const ZRow& v) const {
  auto red = reduce_rational(v);
  if (!red) return std::nullopt;
  mpz_class k = 1;
  for (const auto& [lead, q] : *red) mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), q.get_den().get_mpz_t());
  TorsionSolution sol;
  sol.k = k;
  if (track_) {
    for (const auto& [lead, q] : *red) {
      mpq_class kq = q * k;
      kq.canonicalize();
      // kq is integral by construction of k
      combo_axpy(sol.combo, kq.get_num(), combos_.at(lead));
    }
  }
  return sol;
}

void ZEchelon::canonicalize() {
  // Reduce every entry sitting at another pivot's column into [0, pivot).
  for (auto it = basis_.rbegin(); it != basis_.rend(); ++it) {
    ZRow& b = it->second;
    bool again = true;
    while (again) {
      again = false;
      for (const auto& [col, val] : b.e) {
        if (col == it->first) continue;
        auto pit = basis_.find(col);
        if (pit == basis_.end()) continue;
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), val.get_mpz_t(),
                    pit->second.lead_coeff().get_mpz_t());
        if (q != 0) {
          zrow_axpy(b, -q, pit->second);
          if (track_) combo_axpy(combos_[it->first], -q, combos_[pit->first]);
          again = true;
          break;  // iterators into b.e invalidated
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// QEchelon
// ---------------------------------------------------------------------------

bool QEchelon::insert(ZRow v, int tag) {
  QCombo vc;
  if (track_ && tag >= 0) vc[tag] = 1;
  {
    mpz_class g = 0;
    for (const auto& [c, val] : v.e) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val.get_mpz_t());
    if (g > 1) {
      for (auto& [c, val] : v.e) val /= g;
      if (track_) qcombo_scale(vc, mpq_class(1) / mpq_class(g));
    }
  }
  while (!v.is_zero()) {
    int j = v.lead();
    auto it = basis_.find(j);
    if (it == basis_.end()) {
      if (v.lead_coeff() < 0) {
        v.negate();
        if (track_) qcombo_negate(vc);
      }
      basis_.emplace(j, std::move(v));
      if (track_) combos_[j] = std::move(vc);
      return true;
    }
    const ZRow& b = it->second;
    mpz_class bl = b.lead_coeff();
    mpz_class vl = v.lead_coeff();
    // fraction-free elimination of column j: v <- bl*v - vl*b
    for (auto& [c, val] : v.e) val *= bl;
    zrow_axpy(v, -vl, b);
    if (track_) {
      qcombo_scale(vc, mpq_class(bl));
      qcombo_axpy(vc, mpq_class(-vl), combos_[j]);
    }
    mpz_class g = 0;
    for (const auto& [c, val] : v.e) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val.get_mpz_t());
    if (g > 1) {
      for (auto& [c, val] : v.e) val /= g;
      if (track_) qcombo_scale(vc, mpq_class(1) / mpq_class(g));
    }
  }
  return false;
}

bool QEchelon::contains(const ZRow& v0) const {
  ZRow v = v0;
  while (!v.is_zero()) {
    auto it = basis_.find(v.lead());
    if (it == basis_.end()) return false;
    const ZRow& b = it->second;
    mpz_class bl = b.lead_coeff();
    mpz_class vl = v.lead_coeff();
    for (auto& [c, val] : v.e) val *= bl;
    zrow_axpy(v, -vl, b);
    zrow_make_primitive(v);
  }
  return true;
}

std::optional<QCombo> QEchelon::solve(const ZRow& v0) const {
  if (!track_) throw std::logic_error("QEchelon::solve requires tracking");
  ZRow v = v0;
  mpq_class lambda = 1;
  QCombo mu;
  while (!v.is_zero()) {
    auto it = basis_.find(v.lead());
    if (it == basis_.end()) return std::nullopt;
    const ZRow& b = it->second;
    mpz_class bl = b.lead_coeff();
    mpz_class vl = v.lead_coeff();
    for (auto& [c, val] : v.e) val *= bl;
    zrow_axpy(v, -vl, b);
    lambda *= bl;
    qcombo_scale(mu, mpq_class(bl));
    qcombo_axpy(mu, mpq_class(-vl), combos_.at(it->first));
    mpz_class g = 0;
    for (const auto& [c, val] : v.e) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val.get_mpz_t());
    if (g > 1) {
      for (auto& [c, val] : v.e) val /= g;
      lambda /= g;
      lambda.canonicalize();
      qcombo_scale(mu, mpq_class(mpz_class(1), g));
    }
  }
  // 0 = lambda*v0 + sum mu_t * row_t  =>  v0 = sum (-mu_t/lambda) row_t
  QCombo out;
  for (const auto& [t, val] : mu) {
    mpq_class c = -val / lambda;
    c.canonicalize();
    if (c != 0) out.emplace(t, std::move(c));
  }
  return out;
}

void QEchelon::canonicalize() {
  for (auto it = basis_.rbegin(); it != basis_.rend(); ++it) {
    ZRow& b = it->second;
    bool again = true;
    while (again) {
      again = false;
      for (const auto& [col, val] : b.e) {
        if (col == it->first) continue;
        auto pit = basis_.find(col);
        if (pit == basis_.end()) continue;
        mpz_class pl = pit->second.lead_coeff();
        mpz_class bv = val;
        for (auto& [c, x] : b.e) x *= pl;
        zrow_axpy(b, -bv, pit->second);
        zrow_make_primitive(b);
        zrow_normalize_sign(b);
        if (track_) {
          // canonical basis rows are only used for span comparison; combo
          // tracking across full reduction is not needed there
          combos_.erase(it->first);
        }
        again = true;
        break;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// FpEchelon
// ---------------------------------------------------------------------------

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 128-bit intermediates
  __int128 t = 0, newt = 1;
  __int128 r = p, newr = a % p;
  while (newr != 0) {
    __int128 q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw NotInvertibleError("residue not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

using FpRow = FpEchelon::Row;

// r -= c * s  (mod p)
void fp_axpy(FpRow& r, std::uint64_t c, const FpRow& s, std::uint64_t p) {
  if (c == 0 || s.empty()) return;
  FpRow out;
  out.reserve(r.size() + s.size());
  auto it = r.begin();
  for (const auto& [col, sv] : s) {
    while (it != r.end() && it->first < col) out.push_back(*it++);
    std::uint64_t sub = mulmod_u64(c, sv, p);
    std::uint64_t cur = 0;
    if (it != r.end() && it->first == col) {
      cur = it->second;
      ++it;
    }
    std::uint64_t val = (cur + p - sub) % p;
    if (val != 0) out.emplace_back(col, val);
  }
  while (it != r.end()) out.push_back(*it++);
  r = std::move(out);
}

void fp_combo_axpy(std::map<int, std::uint64_t>& r, std::uint64_t c,
                   const std::map<int, std::uint64_t>& s, std::uint64_t p) {
  if (c == 0) return;
  for (const auto& [t, val] : s) {
    std::uint64_t sub = mulmod_u64(c, val, p);
    auto it = r.find(t);
    std::uint64_t cur = it == r.end() ? 0 : it->second;
    std::uint64_t nv = (cur + p - sub) % p;
    if (nv == 0) {
      if (it != r.end()) r.erase(it);
    } else if (it == r.end()) {
      r.emplace(t, nv);
    } else {
      it->second = nv;
    }
  }
}

}  // namespace

bool FpEchelon::insert(Row v, int tag) {
  std::map<int, std::uint64_t> vc;
  if (track_ && tag >= 0) vc[tag] = 1;
  while (!v.empty()) {
    int j = v.front().first;
    auto it = basis_.find(j);
    if (it == basis_.end()) {
      std::uint64_t inv = invmod_u64(v.front().second, p_);
      for (auto& [c, x] : v) x = mulmod_u64(x, inv, p_);
      if (track_) {
        for (auto& [t, x] : vc) x = mulmod_u64(x, inv, p_);
        combos_[j] = std::move(vc);
      }
      basis_.emplace(j, std::move(v));
      return true;
    }
    std::uint64_t c = v.front().second;  // pivot of basis row is 1
    fp_axpy(v, c, it->second, p_);
    if (track_) fp_combo_axpy(vc, c, combos_[j], p_);
  }
  return false;
}

bool FpEchelon::contains(const Row& v0) const {
  Row v = v0;
  while (!v.empty()) {
    auto it = basis_.find(v.front().first);
    if (it == basis_.end()) return false;
    fp_axpy(v, v.front().second, it->second, p_);
  }
  return true;
}

std::optional<std::map<int, std::uint64_t>> FpEchelon::solve(const Row& v0) const {
  if (!track_) throw std::logic_error("FpEchelon::solve requires tracking");
  Row v = v0;
  std::map<int, std::uint64_t> acc;  // tag -> coefficient of the combination
  while (!v.empty()) {
    int j = v.front().first;
    auto it = basis_.find(j);
    if (it == basis_.end()) return std::nullopt;
    std::uint64_t c = v.front().second;
    fp_axpy(v, c, it->second, p_);
    // v0 = ... + c * basis_j + residue; basis_j = sum combo_t row_t
    for (const auto& [t, val] : combos_.at(j)) {
      std::uint64_t add = mulmod_u64(c, val, p_);
      std::uint64_t nv = (acc[t] + add) % p_;
      if (nv == 0)
        acc.erase(t);
      else
        acc[t] = nv;
    }
  }
  return acc;
}

void FpEchelon::canonicalize() {
  for (auto it = basis_.rbegin(); it != basis_.rend(); ++it) {
    Row& b = it->second;
    bool again = true;
    while (again) {
      again = false;
      for (const auto& [col, val] : b) {
        if (col == it->first) continue;
        auto pit = basis_.find(col);
        if (pit == basis_.end()) continue;
        fp_axpy(b, val, pit->second, p_);
        again = true;
        break;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// conversions
// ---------------------------------------------------------------------------

ZRow to_zrow_cleared(const SparseVec& v, const RingSpec& ring, mpq_class* scale_out) {
  if (ring.kind == RingKind::PrimeField)
    throw RingError("to_zrow_cleared: prime-field vectors use to_fp_row");
  mpz_class l = 1;
  for (const auto& [i, s] : v.entries)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.denominator().get_mpz_t());
  ZRow r;
  r.e.reserve(v.entries.size());
  for (const auto& [i, s] : v.entries) {
    mpq_class scaled = s.value() * l;
    scaled.canonicalize();
    r.e.emplace_back(i, scaled.get_num());
  }
  if (scale_out) *scale_out = mpq_class(l);
  return r;
}

FpEchelon::Row to_fp_row(const SparseVec& v, std::uint64_t p) {
  FpEchelon::Row r;
  r.reserve(v.entries.size());
  for (const auto& [i, s] : v.entries) {
    mpz_class n = s.numerator();
    mpz_class m;
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_fdiv_r(m.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    std::uint64_t val = mpz_get_ui(m.get_mpz_t());
    if (val != 0) r.emplace_back(i, val);
  }
  return r;
}

SparseVec zrow_to_sparsevec(const ZRow& r, int dim) {
  SparseVec v(dim);
  v.entries.reserve(r.e.size());
  for (const auto& [c, val] : r.e) v.entries.emplace_back(c, Scalar(val));
  return v;
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

int rank_over_field(const SparseMat& m) {
  if (!m.ring.is_field()) throw RingError("rank_over_field: ring is not a field");
  if (m.ring.kind == RingKind::PrimeField) {
    FpEchelon ech(m.dim, m.ring.modulus);
    for (const auto& row : m.rows) ech.insert(to_fp_row(row, m.ring.modulus));
    return ech.rank();
  }
  QEchelon ech(m.dim);
  for (const auto& row : m.rows) ech.insert(to_zrow_cleared(row, m.ring));
  return ech.rank();
}

std::optional<std::vector<Scalar>> solve_in_rowspan(const SparseMat& m, const SparseVec& v) {
  if (!m.ring.is_field()) throw RingError("solve_in_rowspan: ring is not a field");
  const int n = static_cast<int>(m.rows.size());
  if (m.ring.kind == RingKind::PrimeField) {
    const std::uint64_t p = m.ring.modulus;
    FpEchelon ech(m.dim, p, /*track=*/true);
    for (int i = 0; i < n; ++i) ech.insert(to_fp_row(m.rows[i], p), i);
    auto sol = ech.solve(to_fp_row(v, p));
    if (!sol) return std::nullopt;
    std::vector<Scalar> out(n, Scalar());
    for (const auto& [t, val] : *sol) out[t] = Scalar(mpz_class(static_cast<unsigned long>(val)));
    return out;
  }
  QEchelon ech(m.dim, /*track=*/true);
  std::vector<mpq_class> scales(n);
  for (int i = 0; i < n; ++i) ech.insert(to_zrow_cleared(m.rows[i], m.ring, &scales[i]), i);
  mpq_class vscale;
  auto sol = ech.solve(to_zrow_cleared(v, m.ring, &vscale));
  if (!sol) return std::nullopt;
  // sum c_t * (scale_t * row_t) = vscale * v
  std::vector<Scalar> out(n, Scalar());
  for (const auto& [t, c] : *sol) {
    mpq_class coeff = c * scales[t] / vscale;
    coeff.canonicalize();
    out[t] = Scalar(coeff);
  }
  return out;
}

namespace {

// Dense integer matrix helpers shared by the HNF / SNF transforms.
using DenseMat = std::vector<std::vector<mpz_class>>;

DenseMat to_dense(const SparseMat& m) {
  DenseMat d(m.rows.size(), std::vector<mpz_class>(m.dim, mpz_class(0)));
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (const auto& [j, s] : m.rows[i].entries) d[i][j] = s.numerator();
  return d;
}

DenseMat identity_dense(std::size_t n) {
  DenseMat d(n, std::vector<mpz_class>(n, mpz_class(0)));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

SparseMat from_dense(const DenseMat& d, int dim) {
  SparseMat m(RingSpec::integers(), dim);
  for (const auto& row : d) {
    SparseVec v(dim);
    for (int j = 0; j < dim; ++j)
      if (row[j] != 0) v.entries.emplace_back(j, Scalar(row[j]));
    m.rows.push_back(std::move(v));
  }
  return m;
}

void dense_row_axpy(DenseMat& d, std::size_t dst, const mpz_class& c, std::size_t src) {
  auto& rd = d[dst];
  const auto& rs = d[src];
  for (std::size_t j = 0; j < rd.size(); ++j)
    if (rs[j] != 0) rd[j] += c * rs[j];
}

void dense_col_axpy(DenseMat& d, std::size_t dst, const mpz_class& c, std::size_t src) {
  for (auto& row : d)
    if (row[src] != 0) row[dst] += c * row[src];
}

DenseMat dense_mul(const DenseMat& a, const DenseMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  DenseMat r(n, std::vector<mpz_class>(m, mpz_class(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j)
          if (b[l][j] != 0) r[i][j] += a[i][l] * b[l][j];
  return r;
}

}  // namespace

NormalFormResult hermite_normal_form(const SparseMat& m) {
  require_ring(m, RingKind::Integers, "hermite_normal_form");
  const std::size_t n = m.rows.size();
  DenseMat w = to_dense(m);
  DenseMat u = identity_dense(n);

  std::size_t pivot_row = 0;
  for (int col = 0; col < m.dim && pivot_row < n; ++col) {
    // Euclidean reduction of the column among rows >= pivot_row.
    while (true) {
      std::size_t best = n;
      for (std::size_t i = pivot_row; i < n; ++i) {
        if (w[i][col] == 0) continue;
        if (best == n || mpz_cmpabs(w[i][col].get_mpz_t(), w[best][col].get_mpz_t()) < 0) best = i;
      }
      if (best == n) break;  // column clear below
      bool others = false;
      for (std::size_t i = pivot_row; i < n; ++i) {
        if (i == best || w[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w[i][col].get_mpz_t(), w[best][col].get_mpz_t());
        if (q != 0) {
          dense_row_axpy(w, i, -q, best);
          dense_row_axpy(u, i, -q, best);
        }
        if (w[i][col] != 0) others = true;
      }
      if (!others) {
        std::swap(w[pivot_row], w[best]);
        std::swap(u[pivot_row], u[best]);
        if (w[pivot_row][col] < 0) {
          for (auto& x : w[pivot_row]) x = -x;
          for (auto& x : u[pivot_row]) x = -x;
        }
        // reduce the entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < pivot_row; ++i) {
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), w[i][col].get_mpz_t(), w[pivot_row][col].get_mpz_t());
          if (q != 0) {
            dense_row_axpy(w, i, -q, pivot_row);
            dense_row_axpy(u, i, -q, pivot_row);
          }
        }
        ++pivot_row;
        break;
      }
    }
  }

  NormalFormResult res;
  res.h = from_dense(w, m.dim);
  res.h.ring = RingSpec::integers();
  res.transform_u = from_dense(u, static_cast<int>(n));

  // postcondition: U*A = H
  DenseMat check = dense_mul(u, to_dense(m));
  if (check != w) throw std::logic_error("hermite_normal_form: transform verification failed");
  return res;
}

std::vector<SparseVec> NormalFormResult::lattice_basis() const {
  std::vector<SparseVec> out;
  for (const auto& r : h.rows)
    if (!r.is_zero()) out.push_back(r);
  return out;
}

NormalFormResult smith_normal_form(const SparseMat& m) {
  require_ring(m, RingKind::Integers, "smith_normal_form");
  const std::size_t n = m.rows.size();
  const std::size_t cols = static_cast<std::size_t>(m.dim);
  DenseMat d = to_dense(m);
  DenseMat u = identity_dense(n);
  DenseMat v = identity_dense(cols);

  const std::size_t bound = std::min(n, cols);
  for (std::size_t s = 0; s < bound; ++s) {
    while (true) {
      // locate the minimal nonzero |entry| in the trailing submatrix
      std::size_t bi = n, bj = cols;
      for (std::size_t i = s; i < n; ++i)
        for (std::size_t j = s; j < cols; ++j) {
          if (d[i][j] == 0) continue;
          if (bi == n || mpz_cmpabs(d[i][j].get_mpz_t(), d[bi][bj].get_mpz_t()) < 0) {
            bi = i;
            bj = j;
          }
        }
      if (bi == n) {
        s = bound;  // trailing submatrix is zero
        break;
      }
      if (bi != s) {
        std::swap(d[bi], d[s]);
        std::swap(u[bi], u[s]);
      }
      if (bj != s) {
        for (auto& row : d) std::swap(row[bj], row[s]);
        for (auto& row : v) std::swap(row[bj], row[s]);
      }
      if (d[s][s] < 0) {
        for (auto& x : d[s]) x = -x;
        for (auto& x : u[s]) x = -x;
      }
      bool clean = true;
      for (std::size_t i = s + 1; i < n; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d[i][s].get_mpz_t(), d[s][s].get_mpz_t());
        if (q != 0) {
          dense_row_axpy(d, i, -q, s);
          dense_row_axpy(u, i, -q, s);
        }
        if (d[i][s] != 0) clean = false;
      }
      for (std::size_t j = s + 1; j < cols; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d[s][j].get_mpz_t(), d[s][s].get_mpz_t());
        if (q != 0) {
          dense_col_axpy(d, j, -q, s);
          dense_col_axpy(v, j, -q, s);
        }
        if (d[s][j] != 0) clean = false;
      }
      if (!clean) continue;
      // pivot divides every entry of the trailing submatrix?
      bool divides = true;
      for (std::size_t i = s + 1; i < n && divides; ++i)
        for (std::size_t j = s + 1; j < cols && divides; ++j)
          if (d[i][j] % d[s][s] != 0) {
            dense_row_axpy(d, s, mpz_class(1), i);
            dense_row_axpy(u, s, mpz_class(1), i);
            divides = false;
          }
      if (divides) break;
    }
    if (s >= bound) break;
  }

  NormalFormResult res;
  res.h = from_dense(d, m.dim);
  res.h.ring = RingSpec::integers();
  res.transform_u = from_dense(u, static_cast<int>(n));
  res.transform_v = from_dense(v, static_cast<int>(cols));
  for (std::size_t s = 0; s < bound; ++s)
    if (d[s][s] != 0) res.diagonal.push_back(d[s][s]);

  // postcondition: U*A*V = D
  DenseMat check = dense_mul(dense_mul(u, to_dense(m)), v);
  if (check != d) throw std::logic_error("smith_normal_form: transform verification failed");
  return res;
}

std::optional<mpz_class> torsion_index(const SparseMat& rows, const SparseVec& v) {
  require_ring(rows, RingKind::Integers, "torsion_index");
  ZEchelon ech(rows.dim);
  for (const auto& r : rows.rows) ech.insert(to_zrow_cleared(r, rows.ring));
  auto red = ech.reduce_rational(to_zrow_cleared(v, rows.ring));
  if (!red) return std::nullopt;
  mpz_class k = 1;
  for (const auto& [lead, q] : *red) mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), q.get_den().get_mpz_t());
  return k;
}

}  // namespace lienil
