#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "nielsen/lattice.hpp"

using namespace nielsen;

TEST_CASE("sublattice canonicalization and membership") {
  const auto l = Sublattice::from_generators(IntMat{{2, 4}, {0, 0}});
  CHECK(l.rank() == 1);
  CHECK(l.generators() == IntMat{{2}, {0}});
  CHECK(l.contains(IntVec{Int(4), Int(0)}));
  CHECK_FALSE(l.contains(IntVec{Int(1), Int(0)}));
  CHECK_FALSE(l.contains(IntVec{Int(2), Int(1)}));

  // same lattice from different generators compares equal
  const auto l2 = Sublattice::from_generators(IntMat{{4, 6}, {0, 0}});
  CHECK(l == l2);
}

TEST_CASE("saturation") {
  // span{(2,4)} saturates to span{(1,2)}
  const auto l = Sublattice::from_generators(IntMat{{2}, {4}});
  const auto s = saturate(l);
  CHECK(s.rank() == 1);
  CHECK(s.generators() == IntMat{{1}, {2}});
  // already saturated lattices are fixed points
  CHECK(saturate(s) == s);
  CHECK(saturate(Sublattice::full(3)) == Sublattice::full(3));
}

TEST_CASE("saturation is idempotent and monotone on random input") {
  testgen::Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = testgen::rand_in(rng, 1, 4);
    const std::size_t n = testgen::rand_in(rng, 1, 4);
    const auto l = Sublattice::from_generators(
        testgen::rand_int_matrix(rng, k, n, -6, 6));
    const auto s = saturate(l);
    CHECK(s.rank() == l.rank());
    CHECK(s.contains(l));
    CHECK(saturate(s) == s);
    // quotient of the saturation by the lattice is all torsion: the index
    // is finite whenever the ranks match (always here)
    CHECK(index_in(l, s).finite);
  }
}

TEST_CASE("index examples") {
  const auto z2 = Sublattice::full(2);
  const auto l = Sublattice::from_generators(IntMat{{2, 0}, {0, 3}});
  CHECK((index_in(l, z2) == ExtendedNat{true, 6}));
  CHECK((index_in(l, l) == ExtendedNat{true, 1}));
  const auto line = Sublattice::from_generators(IntMat{{1}, {0}});
  CHECK_FALSE(index_in(line, z2).finite);
  CHECK_THROWS_AS(index_in(z2, l), SemanticError);  // not contained
}

TEST_CASE("index is multiplicative in towers of sublattices") {
  testgen::Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = testgen::rand_in(rng, 1, 3);
    const IntMat a = testgen::rand_nonsingular(rng, k, -4, 4);
    const IntMat b = testgen::rand_nonsingular(rng, k, -4, 4);
    const auto outer = Sublattice::full(k);
    const auto mid = Sublattice::from_generators(a);
    // inner = a * b Z^k, contained in mid
    const auto inner = Sublattice::from_generators(a * b);
    const auto i1 = index_in(mid, outer);
    const auto i2 = index_in(inner, mid);
    const auto i3 = index_in(inner, outer);
    REQUIRE(i1.finite);
    REQUIRE(i2.finite);
    REQUIRE(i3.finite);
    CHECK(i1.value * i2.value == i3.value);
  }
}
