#include <catch2/catch_amalgamated.hpp>

#include "nielsen/morphism.hpp"
#include "nielsen/tower.hpp"

#include "generators.hpp"

using namespace nielsen;

namespace {

TowerSpec sol_tower() {
  TowerSpec t;
  t.ranks = {1, 2};
  t.gens = {{IntMat{{2, 1}, {1, 1}}}};
  return t;
}

// F_0 = [-1], F_1 the unit solving F_1 M = M^{-1} F_1.
TowerMorphism sol_morphism() {
  TowerMorphism m;
  m.chain.b = {IntMat{{1}}, IntMat::identity(2)};
  m.f = {to_rational(IntMat{{-1}}), to_rational(IntMat{{0, 1}, {-1, 0}})};
  return m;
}

TowerSpec heisenberg_tower() {
  TowerSpec t;
  t.ranks = {2, 1};
  t.gens = {{IntMat{{1}}, IntMat{{1}}}};
  return t;
}

}  // namespace

TEST_CASE("chain validation") {
  const TowerSpec t = sol_tower();
  CHECK(validate_chain(identity_chain(t), t).ok());

  SublatticeChain c;
  c.b = {IntMat{{2}}, IntMat{{3, 0}, {0, 3}}};
  CHECK(validate_chain(c, t).ok());
  CHECK(index_product(c) == 18);
  CHECK(index_product(identity_chain(t)) == 1);
  CHECK(index_product(scale_chain(identity_chain(t), Int(2))) == 8);  // 2 * 4

  c.b[1] = IntMat{{1, 1}, {1, 1}};
  CHECK_FALSE(validate_chain(c, t).ok());  // singular level

  c.b = {IntMat{{2}}};
  CHECK_FALSE(validate_chain(c, t).ok());  // missing level
}

TEST_CASE("morphism validation accepts the sol example") {
  const TowerSpec t = sol_tower();
  const TowerMorphism m = sol_morphism();
  CHECK(validate_morphism(m, t).ok());

  // The defining relation: F_1 M = M^{-1} F_1, checked by hand here as an
  // anchor for everything downstream.
  const IntMat big = t.gens[0][0];
  const IntMat f1{{0, 1}, {-1, 0}};
  CHECK(f1 * big == inverse_unimodular(big) * f1);
}

TEST_CASE("morphism validation rejects bad data") {
  const TowerSpec t = sol_tower();

  SECTION("incompatible upper matrix") {
    TowerMorphism m = sol_morphism();
    m.f[1] = to_rational(IntMat::identity(2));  // I M != M^{-1} I
    CHECK_FALSE(validate_morphism(m, t).ok());
  }
  SECTION("non-integral images of the chain") {
    TowerMorphism m = identity_morphism(t);
    m.f[0] = RatMat{{make_rat(1, 3)}};
    CHECK_FALSE(validate_morphism(m, t).ok());
  }
  SECTION("denominators cleared by the chain are accepted") {
    TowerMorphism m = identity_morphism(t);
    m.chain.b[0] = IntMat{{2}};
    m.f[0] = RatMat{{make_rat(1, 2)}};
    // F_0 B_0 = [1] integral; compatibility: F_1 mu(2) = mu(1) F_1 with
    // F_1 = I needs mu(2) = mu(1): false, so this must still fail...
    CHECK_FALSE(validate_morphism(m, t).ok());
    // ...but with the matching upper matrix it passes: F_1 M^2 = M F_1
    // has the solution F_1 = 0.
    m.f[1] = RatMat(2, 2);
    CHECK(validate_morphism(m, t).ok());
  }
  SECTION("wrong sizes") {
    TowerMorphism m = sol_morphism();
    m.f[1] = to_rational(IntMat{{1}});
    CHECK_FALSE(validate_morphism(m, t).ok());
    m = sol_morphism();
    m.f.pop_back();
    CHECK_FALSE(validate_morphism(m, t).ok());
  }
}

TEST_CASE("linearisation matrices from integer images") {
  const TowerSpec t = sol_tower();

  SECTION("identity chain recovers the matrices themselves") {
    const TowerMorphism m = linearisation_matrices(
        identity_chain(t), {IntMat{{-1}}, IntMat{{0, 1}, {-1, 0}}}, t);
    CHECK(m.f == sol_morphism().f);
  }
  SECTION("scaled chain divides out") {
    SublatticeChain chain;
    chain.b = {IntMat{{2}}, IntMat::identity(2) * Int(3)};
    const TowerMorphism m = linearisation_matrices(
        chain, {IntMat{{-2}}, IntMat{{0, 3}, {-3, 0}}}, t);
    CHECK(m.f == sol_morphism().f);
  }
  SECTION("fractional linearisation appears when images are finer") {
    TowerSpec torus;
    torus.ranks = {2};
    SublatticeChain chain;
    chain.b = {IntMat{{2, 0}, {0, 2}}};
    const TowerMorphism m =
        linearisation_matrices(chain, {IntMat{{1, 0}, {0, 1}}}, torus);
    CHECK(m.f[0] == RatMat{{make_rat(1, 2), Rat(0)}, {Rat(0), make_rat(1, 2)}});
  }
  SECTION("singular chain is rejected") {
    SublatticeChain chain;
    chain.b = {IntMat{{0}}, IntMat::identity(2)};
    CHECK_THROWS_AS(
        linearisation_matrices(chain, {IntMat{{0}}, IntMat::identity(2)}, t),
        SemanticError);
  }
  SECTION("incompatible images are rejected") {
    CHECK_THROWS_AS(
        linearisation_matrices(identity_chain(t),
                               {IntMat{{-1}}, IntMat::identity(2)}, t),
        SemanticError);
  }
  SECTION("random morphisms round-trip") {
    testgen::Rng rng(71);
    const TowerSpec h = heisenberg_tower();
    for (int rep = 0; rep < 80; ++rep) {
      TowerMorphism m;
      m.chain = identity_chain(h);
      m.f = {to_rational(testgen::rand_int_matrix(rng, 2, 2, -4, 4)),
             to_rational(testgen::rand_int_matrix(rng, 1, 1, -4, 4))};
      REQUIRE(validate_morphism(m, h).ok());
      std::vector<IntMat> images = {to_integral(m.f[0]), to_integral(m.f[1])};
      const TowerMorphism back =
          linearisation_matrices(identity_chain(h), images, h);
      CHECK(back.f == m.f);
    }
  }
}

TEST_CASE("holonomy twisting") {
  InfraSpec s;
  s.tower = sol_tower();
  s.holonomy.labels = {"e", "x"};
  s.holonomy.identity = 0;
  s.holonomy.table = {{0, 1}, {1, 0}};
  s.holonomy.action = {
      {IntMat{{1}}, IntMat::identity(2)},
      {IntMat{{-1}}, IntMat{{1, 0}, {-1, -1}}},
  };
  REQUIRE(validate_infra(s).ok());

  const TowerMorphism m = sol_morphism();
  const TowerMorphism te = twist_by_holonomy(m, s, 0);
  CHECK(te.f == m.f);  // identity label: no change

  const TowerMorphism tx = twist_by_holonomy(m, s, 1);
  CHECK(validate_morphism(tx, s.tower).ok());  // twisting preserves validity
  CHECK(tx.f[0] == to_rational(IntMat{{1}}));
  // The flip is an involution, so twisting twice restores the morphism.
  CHECK(twist_by_holonomy(tx, s, 1).f == m.f);

  CHECK_THROWS_AS(twist_by_holonomy(m, s, 2), SemanticError);
}

TEST_CASE("index product cross-checks determinants against lattice indices") {
  testgen::Rng rng(83);
  for (int rep = 0; rep < 60; ++rep) {
    SublatticeChain c;
    Int expected = 1;
    const std::size_t levels = 1 + rep % 3;
    for (std::size_t i = 0; i < levels; ++i) {
      const std::size_t n = 1 + (rep + i) % 3;
      const IntMat b = testgen::rand_nonsingular(rng, n, -4, 4);
      Int d = determinant(b);
      if (d < 0) d = -d;
      expected *= d;
      c.b.push_back(b);
    }
    CHECK(index_product(c) == expected);
  }
}

TEST_CASE("restriction invariance") {
  const TowerSpec t = sol_tower();
  const TowerMorphism m = sol_morphism();

  CHECK(restriction_invariance_check(m, scale_chain(m.chain, Int(2)), t).ok());
  CHECK(restriction_invariance_check(m, scale_chain(m.chain, Int(3)), t).ok());

  SECTION("non-scalar refinements also work") {
    SublatticeChain finer;
    finer.b = {IntMat{{5}}, IntMat{{2, 1}, {0, 1}}};
    CHECK(restriction_invariance_check(m, finer, t).ok());
  }
  SECTION("refinement must be contained in the chain") {
    TowerMorphism wide = m;
    wide.chain.b[0] = IntMat{{4}};
    REQUIRE(validate_morphism(wide, t).ok());
    SublatticeChain not_contained;
    not_contained.b = {IntMat{{2}}, IntMat::identity(2)};
    CHECK_THROWS_AS(restriction_invariance_check(wide, not_contained, t),
                    SemanticError);
  }
  SECTION("random scalar refinements of random morphisms") {
    testgen::Rng rng(97);
    const TowerSpec h = heisenberg_tower();
    for (int rep = 0; rep < 50; ++rep) {
      TowerMorphism m2;
      m2.chain = identity_chain(h);
      m2.f = {to_rational(testgen::rand_int_matrix(rng, 2, 2, -3, 3)),
              to_rational(testgen::rand_int_matrix(rng, 1, 1, -3, 3))};
      REQUIRE(validate_morphism(m2, h).ok());
      const Int s(testgen::rand_in(rng, 2, 5));
      CHECK(restriction_invariance_check(m2, scale_chain(m2.chain, s), h).ok());
    }
  }
}
