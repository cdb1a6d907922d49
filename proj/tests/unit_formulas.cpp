#include <catch2/catch_amalgamated.hpp>

#include "nielsen/formulas.hpp"

#include "generators.hpp"

using namespace nielsen;

namespace {

TowerSpec sol_tower() {
  TowerSpec t;
  t.ranks = {1, 2};
  t.gens = {{IntMat{{2, 1}, {1, 1}}}};
  return t;
}

TowerMorphism sol_morphism() {
  TowerMorphism m;
  m.chain.b = {IntMat{{1}}, IntMat::identity(2)};
  m.f = {to_rational(IntMat{{-1}}), to_rational(IntMat{{0, 1}, {-1, 0}})};
  return m;
}

// Z^2 extended by an order-4 rotation: not NR, so the independence
// hypothesis genuinely fails for suitable morphisms.
TowerSpec rotation_tower() {
  TowerSpec t;
  t.ranks = {1, 2};
  t.gens = {{IntMat{{0, -1}, {1, 0}}}};
  return t;
}

InfraSpec klein_bottle() {
  InfraSpec s;
  s.tower.ranks = {2};
  s.holonomy.labels = {"e", "b"};
  s.holonomy.identity = 0;
  s.holonomy.table = {{0, 1}, {1, 0}};
  s.holonomy.action = {{IntMat::identity(2)}, {IntMat{{-1, 0}, {0, 1}}}};
  return s;
}

InfraSpec sol_with_flip() {
  InfraSpec s;
  s.tower = sol_tower();
  s.holonomy.labels = {"e", "x"};
  s.holonomy.identity = 0;
  s.holonomy.table = {{0, 1}, {1, 0}};
  s.holonomy.action = {
      {IntMat{{1}}, IntMat::identity(2)},
      {IntMat{{-1}}, IntMat{{1, 0}, {-1, -1}}},
  };
  return s;
}

NValuedInput single_branch(const InfraSpec& s, const TowerMorphism& m) {
  NValuedInput in;
  in.infra = s;
  in.branches = {m};
  return in;
}

TowerMorphism flat_branch(const InfraSpec& s, const IntMat& f0) {
  TowerMorphism m;
  m.chain = identity_chain(s.tower);
  m.f = {to_rational(f0)};
  return m;
}

}  // namespace

TEST_CASE("torus coincidence count") {
  CHECK(torus_coincidence(IntMat::identity(2), IntMat::identity(2)) == 0);
  CHECK(torus_coincidence(IntMat(2, 2), IntMat::identity(2)) == 1);
  CHECK(torus_coincidence(IntMat{{2, 0}, {0, 3}}, IntMat::identity(2)) == 2);
  CHECK_THROWS_AS(torus_coincidence(IntMat(2, 2), IntMat(3, 3)), SemanticError);
}

TEST_CASE("upper-level coincidence product") {
  const RatMat i2 = to_rational(IntMat::identity(2));
  CHECK(nil_coincidence({{i2, i2}}) == 0);
  CHECK(nil_coincidence({{i2 * Rat(2), i2}}) == 1);
  CHECK(nil_coincidence({}) == 1);  // empty product
  // two levels with factors 2 and 3
  const RatMat a{{Rat(3), Rat(0)}, {Rat(0), Rat(2)}};
  const RatMat b{{Rat(4), Rat(0)}, {Rat(0), Rat(2)}};
  CHECK(nil_coincidence({{a, i2}, {b, i2}}) == 6);
}

TEST_CASE("full-tower coincidence with condition audit") {
  SECTION("identical maps are trivially satisfied") {
    CoincidenceInput in;
    in.tower = sol_tower();
    in.f = sol_morphism();
    in.g = sol_morphism();
    const SolvResult r = solv_coincidence(in, 3);
    CHECK(r.value == 0);
    CHECK(r.condition2 == Condition2::SatisfiedTrivially);
  }
  SECTION("sol example against the identity is certified") {
    CoincidenceInput in;
    in.tower = sol_tower();
    in.f = sol_morphism();
    in.g = identity_morphism(in.tower);
    const SolvResult r = solv_coincidence(in, 3);
    CHECK(r.value == 4);  // |det(1-(-1))| * |det(I - F_1)| = 2 * 2
    CHECK(r.condition2 == Condition2::Certified);
  }
  SECTION("general pair falls back to the box check") {
    // g = ([1], M) commutes with the exponent action; f is the sol
    // morphism.  Base determinant 2, upper determinant det(M - F_1) = 2.
    CoincidenceInput in;
    in.tower = sol_tower();
    in.f = sol_morphism();
    in.g.chain = identity_chain(in.tower);
    in.g.f = {to_rational(IntMat{{1}}), to_rational(IntMat{{2, 1}, {1, 1}})};
    REQUIRE(validate_morphism(in.g, in.tower).ok());
    const SolvResult r = solv_coincidence(in, 3);
    CHECK(r.value == 4);
    CHECK(r.condition2 == Condition2::BoxVerified);
  }
  SECTION("failing independence is reported as unverified") {
    // On the order-4 rotation tower, F = ([5], I) is a valid morphism
    // (M^5 = M), the base determinant is 4, but det(I - mu(v) F_1) cycles
    // through 0, 2, 4 — the hypothesis genuinely fails.
    CoincidenceInput in;
    in.tower = rotation_tower();
    in.f.chain = identity_chain(in.tower);
    in.f.f = {to_rational(IntMat{{5}}), to_rational(IntMat::identity(2))};
    REQUIRE(validate_morphism(in.f, in.tower).ok());
    in.g = identity_morphism(in.tower);
    const SolvResult r = solv_coincidence(in, 3);
    CHECK(r.value == 0);  // upper factor |det(I - I)| = 0
    CHECK(r.condition2 == Condition2::Unverified);
  }
  SECTION("c = 0 reduces to the torus count") {
    testgen::Rng rng(131);
    for (int rep = 0; rep < 40; ++rep) {
      const std::size_t k = 1 + rep % 3;
      TowerSpec t;
      t.ranks = {k};
      CoincidenceInput in;
      in.tower = t;
      in.f.chain = identity_chain(t);
      in.f.f = {to_rational(testgen::rand_int_matrix(rng, k, k, -3, 3))};
      in.g.chain = identity_chain(t);
      in.g.f = {to_rational(testgen::rand_int_matrix(rng, k, k, -3, 3))};
      const SolvResult r = solv_coincidence(in, 3);
      CHECK(r.value == Rat(torus_coincidence(to_integral(in.f.f[0]),
                                             to_integral(in.g.f[0]))));
      CHECK(r.condition2 == Condition2::SatisfiedTrivially);
    }
  }
}

TEST_CASE("independence certificate") {
  SECTION("sol morphism: certified spectrally") {
    const IndepResult r =
        independence_certificate(sol_tower(), sol_morphism(), 3);
    CHECK(r.status == IndepStatus::Certified);
  }
  SECTION("eigenvalue one at the base engages the box fallback") {
    TowerMorphism m;
    m.chain = identity_chain(sol_tower());
    m.f = {to_rational(IntMat{{1}}), RatMat(2, 2)};  // upper map zero
    const IndepResult r = independence_certificate(sol_tower(), m, 3);
    CHECK(r.status == IndepStatus::BoxVerified);
  }
  SECTION("genuine dependence is unverified") {
    TowerMorphism m;
    m.chain = identity_chain(rotation_tower());
    m.f = {to_rational(IntMat{{5}}), to_rational(IntMat::identity(2))};
    const IndepResult r = independence_certificate(rotation_tower(), m, 3);
    CHECK(r.status == IndepStatus::Unverified);
  }
}

TEST_CASE("projection coincidence and the two-path identity") {
  const TowerSpec t = sol_tower();
  const TowerMorphism m = sol_morphism();

  SECTION("sol example with the identity chain") {
    const ProjectionResult r =
        projection_coincidence(m, identity_chain(t), t, 3);
    CHECK(r.value == 4);
    CHECK(r.index == 1);
    CHECK(r.level_factors == std::vector<Int>{2, 2});
    CHECK(r.netness.overall() == NetStatus::Net);
    CHECK(r.independence.status == IndepStatus::Certified);
  }
  SECTION("sol example with an index-2 chain") {
    SublatticeChain chain;
    chain.b = {IntMat{{2}}, IntMat::identity(2)};
    const ProjectionResult r = projection_coincidence(m, chain, t, 3);
    CHECK(r.value == 8);
    CHECK(r.index == 2);
    CHECK(r.level_factors == std::vector<Int>{4, 2});
  }
  SECTION("the projection of the identity morphism is zero") {
    const ProjectionResult r =
        projection_coincidence(identity_morphism(t), identity_chain(t), t, 3);
    CHECK(r.value == 0);
  }
  SECTION("random two-path agreement on nilpotent towers") {
    testgen::Rng rng(139);
    TowerSpec h;
    h.ranks = {2, 1};
    h.gens = {{IntMat{{1}}, IntMat{{1}}}};
    for (int rep = 0; rep < 60; ++rep) {
      TowerMorphism f;
      f.chain = identity_chain(h);
      f.f = {to_rational(testgen::rand_int_matrix(rng, 2, 2, -3, 3)),
             to_rational(testgen::rand_int_matrix(rng, 1, 1, -3, 3))};
      SublatticeChain chain;
      chain.b = {testgen::rand_nonsingular(rng, 2, -3, 3),
                 testgen::rand_nonsingular(rng, 1, -3, 3)};
      // The call itself asserts the two-path identity internally.
      const ProjectionResult r = projection_coincidence(f, chain, h, 2);
      CHECK(Rat(r.value) == Rat(r.index) * r.unscaled_product);
    }
  }
}

TEST_CASE("averaged count for n-valued maps") {
  SECTION("klein bottle: the worked example") {
    const InfraSpec s = klein_bottle();
    const NValuedInput in =
        single_branch(s, flat_branch(s, IntMat{{2, 0}, {0, 3}}));
    const NielsenReport r = nvalued_nielsen(in, 3);
    CHECK(r.value == 4);
    CHECK(r.raw_sum == 8);
    CHECK(r.divisor == 2);
    REQUIRE(r.terms.size() == 2);
    CHECK(r.terms[0].product == 2);  // |det(I - diag(2,3))|
    CHECK(r.terms[1].product == 6);  // |det(I - diag(-2,3))|
    CHECK(r.warnings.empty());
    CHECK_FALSE(r.conditional);
  }
  SECTION("klein bottle: identity map has no essential classes") {
    const InfraSpec s = klein_bottle();
    const NValuedInput in = single_branch(s, flat_branch(s, IntMat::identity(2)));
    CHECK(nvalued_nielsen(in, 3).value == 0);
  }
  SECTION("two-valued torus map") {
    InfraSpec s;
    s.tower.ranks = {2};
    s.holonomy = trivial_holonomy(s.tower);
    NValuedInput in;
    in.infra = s;
    in.branches = {flat_branch(s, IntMat{{2, 0}, {0, 2}}),
                   flat_branch(s, IntMat{{2, 1}, {0, 2}})};
    const NielsenReport r = nvalued_nielsen(in, 3);
    CHECK(r.value == 2);  // 1 + 1
    REQUIRE(r.terms.size() == 2);
    CHECK(r.terms[0].product == 1);
    CHECK(r.terms[1].product == 1);
  }
  SECTION("sol with the orientation flip") {
    const InfraSpec s = sol_with_flip();
    const NValuedInput in = single_branch(s, sol_morphism());
    const NielsenReport r = nvalued_nielsen(in, 3);
    CHECK(r.value == 2);  // (4 + 0) / 2
    CHECK(r.raw_sum == 4);
    CHECK_FALSE(r.conditional);
  }
  SECTION("inconsistent branch data fails the integrality gate") {
    // The swap action with F = diag(1,2): term for e is 0, term for the
    // swap is 1; the sum 1 is not divisible by |Q| = 2.  No single map
    // has this data, and the hard error says so.
    InfraSpec s;
    s.tower.ranks = {2};
    s.holonomy.labels = {"e", "w"};
    s.holonomy.identity = 0;
    s.holonomy.table = {{0, 1}, {1, 0}};
    s.holonomy.action = {{IntMat::identity(2)}, {IntMat{{0, 1}, {1, 0}}}};
    REQUIRE(validate_infra(s).ok());
    const NValuedInput in =
        single_branch(s, flat_branch(s, IntMat{{1, 0}, {0, 2}}));
    CHECK_THROWS_AS(nvalued_nielsen(in, 3), ComputationError);
  }
  SECTION("not-NR towers produce a flagged result") {
    InfraSpec s;
    s.tower = rotation_tower();
    s.holonomy = trivial_holonomy(s.tower);
    TowerMorphism m;
    m.chain = identity_chain(s.tower);
    m.f = {to_rational(IntMat{{5}}), to_rational(IntMat::identity(2))};
    const NielsenReport r = nvalued_nielsen(single_branch(s, m), 3);
    CHECK(r.conditional);
    CHECK_FALSE(r.warnings.empty());
  }
}

TEST_CASE("single-valued reduction") {
  SECTION("circle of degree three") {
    InfraSpec s;
    s.tower.ranks = {1};
    s.holonomy = trivial_holonomy(s.tower);
    const NValuedInput in = single_branch(s, flat_branch(s, IntMat{{3}}));
    const NielsenReport r = single_valued_nielsen(in, 3);
    CHECK(r.value == 2);
    REQUIRE(r.product_form.has_value());
    CHECK(*r.product_form == 2);
  }
  SECTION("product formula asserted on the sol example with trivial holonomy") {
    InfraSpec s;
    s.tower = sol_tower();
    s.holonomy = trivial_holonomy(s.tower);
    const NielsenReport r =
        single_valued_nielsen(single_branch(s, sol_morphism()), 3);
    CHECK(r.value == 4);
    REQUIRE(r.product_form.has_value());
    CHECK(*r.product_form == 4);
  }
  SECTION("branch count must be one") {
    InfraSpec s;
    s.tower.ranks = {1};
    s.holonomy = trivial_holonomy(s.tower);
    NValuedInput in;
    in.infra = s;
    in.branches = {flat_branch(s, IntMat{{2}}), flat_branch(s, IntMat{{3}})};
    CHECK_THROWS_AS(single_valued_nielsen(in, 3), SemanticError);
  }
}

TEST_CASE("representative invariance of the averaged count") {
  // Replacing A_i(q) by mu_i(v) A_i(q) at the upper levels models a
  // different coset representative.  Terms with nonzero base factor are
  // untouched; terms with zero base factor stay zero; the value is
  // invariant.
  const InfraSpec s = sol_with_flip();
  const NValuedInput in = single_branch(s, sol_morphism());
  const NielsenReport base = nvalued_nielsen(in, 3);

  for (long v = -3; v <= 3; ++v) {
    NValuedInput mod = in;
    mod.infra.holonomy.action[1][1] =
        mu_apply(s.tower, 1, {Int(v)}) * mod.infra.holonomy.action[1][1];
    REQUIRE(validate_infra(mod.infra).ok());
    const NielsenReport moved = nvalued_nielsen(mod, 3);
    CHECK(moved.value == base.value);
    REQUIRE(moved.terms.size() == base.terms.size());
    for (std::size_t i = 0; i < base.terms.size(); ++i)
      CHECK(moved.terms[i].product == base.terms[i].product);
  }
}

TEST_CASE("reduction coherence between the formula layers") {
  // The full-tower product equals the base factor times the upper-level
  // product, and with one branch and trivial holonomy the averaged count
  // equals the full-tower product against the identity.
  CoincidenceInput in;
  in.tower = sol_tower();
  in.f = sol_morphism();
  in.g = identity_morphism(in.tower);
  const SolvResult solv = solv_coincidence(in, 3);
  const Rat base_factor = [&] {
    Rat d = determinant(in.g.f[0] - in.f.f[0]);
    return d < 0 ? Rat(-d) : d;
  }();
  CHECK(solv.value == base_factor * nil_coincidence({{in.f.f[1], in.g.f[1]}}));

  InfraSpec s;
  s.tower = in.tower;
  s.holonomy = trivial_holonomy(s.tower);
  CHECK(Rat(nvalued_nielsen(single_branch(s, in.f), 3).value) == solv.value);
}
