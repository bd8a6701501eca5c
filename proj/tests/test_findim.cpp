#include "lienil/findim.hpp"

#include <doctest.h>

using namespace lienil;

namespace {

const RingSpec Q = RingSpec::rationals();

Element gen_named(const StructureAlgebra& a, const std::string& name) {
  for (const auto& [n, v] : a.generators())
    if (n == name) return v;
  throw std::runtime_error("no generator " + name);
}

// R*1 + full upper-triangular 2x2 matrices: 1, e11, e12, e22 would not be
// unital without 1; use basis {1, e11, e12} of the subalgebra spanned by
// the unit, a diagonal idempotent and the nilpotent part.
StructureAlgebra upper_triangular_2x2(const RingSpec& ring) {
  // basis: 0 -> 1 (identity), 1 -> e11, 2 -> e12
  // e11*e11 = e11, e11*e12 = e12, e12*e11 = 0, e12*e12 = 0
  const int dim = 3;
  std::vector<SparseVec> table(dim * dim, SparseVec(dim));
  auto set = [&](int i, int j, int k, long c) {
    table[i * dim + j].entries.emplace_back(k, scalar_from_long(ring, c));
  };
  for (int j = 0; j < dim; ++j) {
    set(0, j, j, 1);
    if (j != 0) set(j, 0, j, 1);
  }
  set(1, 1, 1, 1);
  set(1, 2, 2, 1);
  SparseVec unit(dim);
  unit.entries.emplace_back(0, scalar_from_long(ring, 1));
  SparseVec e11(dim), e12(dim);
  e11.entries.emplace_back(1, scalar_from_long(ring, 1));
  e12.entries.emplace_back(2, scalar_from_long(ring, 1));
  return StructureAlgebra(ring, dim, std::move(table), unit,
                          {{"1", unit}, {"e11", e11}, {"e12", e12}}, {"1", "e11", "e12"});
}

}  // namespace

TEST_CASE("finite-dimensional products") {
  StructureAlgebra a = example_algebra(ExampleKind::HeisenbergTruncated, 2, Q);
  Element av = gen_named(a, "a"), bv = gen_named(a, "b");
  CHECK(fd_mul(a, a.unit(), av) == av);
  Element c = fd_commutator(a, av, bv);
  CHECK(!c.is_zero());
  // c is central
  for (int i = 0; i < a.dim(); ++i)
    CHECK(fd_commutator(a, c, a.basis_element(i)).is_zero());

  StructureAlgebra comm = example_algebra(ExampleKind::CommutativeSeries, 3, Q);
  Element t = gen_named(comm, "t");
  CHECK(fd_commutator(comm, t, fd_mul(comm, t, t)).is_zero());
}

TEST_CASE("example algebra shapes") {
  // heisenberg_truncated(2): {1, a, b, c, a^2, ab, b^2}
  CHECK(example_algebra(ExampleKind::HeisenbergTruncated, 2, Q).dim() == 7);
  CHECK(example_algebra(ExampleKind::Grassmann, 2, Q).dim() == 4);
  CHECK(example_algebra(ExampleKind::UnitriangularPlusUnit, 3, Q).dim() == 4);
  CHECK(example_algebra(ExampleKind::CommutativeSeries, 4, Q).dim() == 4);
  CHECK_THROWS(example_algebra(ExampleKind::CommutativeSeries, 0, Q));

  // [e1, e2] = 2 e1e2 in the exterior algebra
  StructureAlgebra g2 = example_algebra(ExampleKind::Grassmann, 2, Q);
  Element e1 = gen_named(g2, "e1"), e2 = gen_named(g2, "e2");
  Element br = fd_commutator(g2, e1, e2);
  Element prod = fd_mul(g2, e1, e2);
  CHECK(br == fd_scalar_mul(g2, Scalar(2), prod));

  CHECK(example_algebra("heisenberg_truncated(3)", Q).dim() == 13);
  CHECK_THROWS(example_algebra("nonsense(3)", Q));
}

TEST_CASE("verify_via_theorem on the documented examples") {
  // commutative algebra: n = 2
  StructureAlgebra comm = example_algebra(ExampleKind::CommutativeSeries, 3, Q);
  CHECK(verify_via_theorem(comm, 2).nilpotent());

  // Grassmann on 3 generators: Lie nilpotent at n = 3
  StructureAlgebra g3 = example_algebra(ExampleKind::Grassmann, 3, Q);
  CHECK(!verify_via_theorem(g3, 2).nilpotent());
  CHECK(verify_via_theorem(g3, 3).nilpotent());

  // truncated Heisenberg at cap 4: witnesses exist at n = 3
  StructureAlgebra h4 = example_algebra(ExampleKind::HeisenbergTruncated, 4, Q);
  NilpotencyResult r = verify_via_theorem(h4, 3);
  CHECK(r.verdict == NilpotencyVerdict::NotLieNilpotent);
  CHECK(r.witness_names.size() == 3);
  CHECK(!r.witness_value.is_zero());

  // refusal over Z, and the force escape hatch
  StructureAlgebra hz = example_algebra(ExampleKind::HeisenbergTruncated, 3,
                                        RingSpec::integers());
  CHECK(verify_via_theorem(hz, 3).verdict == NilpotencyVerdict::Refused);
  CHECK(verify_via_theorem(hz, 3, /*force=*/true).verdict != NilpotencyVerdict::Refused);
}

TEST_CASE("brute-force oracle") {
  StructureAlgebra one = example_algebra(ExampleKind::CommutativeSeries, 1, Q);
  CHECK(lie_nilpotency_oracle(one, 2).nilpotent());

  // full upper-triangular 2x2: the chain stabilizes on the nilpotent line
  StructureAlgebra ut = upper_triangular_2x2(Q);
  CHECK(!lie_nilpotency_oracle(ut, 2).nilpotent());
  CHECK(!lie_nilpotency_oracle(ut, 5).nilpotent());
  NilpotencyResult r = lie_nilpotency_oracle(ut, 4);
  CHECK(r.witness_names.size() == 4);
  CHECK(!r.witness_value.is_zero());

  // unit + strictly upper 3x3: Lie nilpotent by n = 4
  StructureAlgebra u3 = example_algebra(ExampleKind::UnitriangularPlusUnit, 3, Q);
  CHECK(lie_nilpotency_oracle(u3, 4).nilpotent());
}

TEST_CASE("T^(n)(A) as a subspace") {
  StructureAlgebra comm = example_algebra(ExampleKind::CommutativeSeries, 4, Q);
  CHECK(tideal_findim(comm, 2).is_zero());

  StructureAlgebra g3 = example_algebra(ExampleKind::Grassmann, 3, Q);
  CHECK(tideal_findim(g3, 3).is_zero());
  CHECK(!tideal_findim(g3, 2).is_zero());

  // agreement with the oracle across examples and n
  for (int n = 2; n <= 5; ++n) {
    for (int param = 2; param <= 4; ++param) {
      StructureAlgebra a = example_algebra(ExampleKind::HeisenbergTruncated, param, Q);
      CHECK(tideal_findim(a, n).is_zero() == lie_nilpotency_oracle(a, n).nilpotent());
    }
  }
}

TEST_CASE("ideal closure from explicit generators") {
  StructureAlgebra h3 = example_algebra(ExampleKind::HeisenbergTruncated, 3, Q);
  // the unit generates everything
  SubspaceBasis full = ideal_from_gens_findim(h3, {h3.unit()});
  CHECK(full.rank() == h3.dim());
  // nothing generates nothing
  CHECK(ideal_from_gens_findim(h3, {}).is_zero());

  // evaluated S^(3) generates T^(3)(A)
  SubspaceBasis lhs = ideal_from_gens_findim(h3, evaluate_sn_family(h3, 3));
  SubspaceBasis rhs = tideal_findim(h3, 3);
  CHECK(lhs == rhs);
}

TEST_CASE("chain dimensions are monotone") {
  StructureAlgebra h5 = example_algebra(ExampleKind::HeisenbergTruncated, 5, Q);
  // M_{k+1} is spanned by brackets of M_k elements, so ranks cannot grow
  int prev = h5.dim();
  for (int n = 2; n <= 6; ++n) {
    SubspaceBasis t = tideal_findim(h5, n);
    CHECK(t.rank() <= prev);
    // not part of the chain itself, but the ideal ranks shrink with n too
    prev = t.rank();
  }
}

TEST_CASE("structure algebra validation rejects broken tables") {
  // a non-associative table: e1*e1 = e1 with unit e0, but e1*(e1*e1) tweaked
  const int dim = 3;
  std::vector<SparseVec> table(dim * dim, SparseVec(dim));
  auto set = [&](int i, int j, int k, long c) {
    table[i * dim + j].entries.emplace_back(k, Scalar(c));
  };
  for (int j = 0; j < dim; ++j) {
    set(0, j, j, 1);
    if (j != 0) set(j, 0, j, 1);
  }
  set(1, 1, 2, 1);
  set(1, 2, 1, 1);  // e1*(e1*e1) = e1, (e1*e1)*e1 = e2*e1 = 0: not associative
  SparseVec unit(dim);
  unit.entries.emplace_back(0, Scalar(1));
  CHECK_THROWS_AS(StructureAlgebra(Q, dim, std::move(table), unit, {{"e1", unit}}, {}),
                  ValidationError);
}

TEST_CASE("loading a structure algebra from the file format") {
  AlgebraFile f = parse_algebra_json(R"({
    "dim": 3,
    "ring": {"kind": "Q"},
    "sc": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[0,2,2,"1"],[2,0,2,"1"],[1,1,2,"1"]],
    "unit": ["1","0","0"],
    "generators": {"t": ["0","1","0"]}
  })");
  StructureAlgebra a = from_algebra_file(f);
  CHECK(a.dim() == 3);
  CHECK(verify_via_theorem(a, 2).nilpotent());  // commutative
  CHECK(lie_nilpotency_oracle(a, 2).nilpotent());
}
