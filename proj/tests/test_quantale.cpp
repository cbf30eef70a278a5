#include "doctest.h"
#include "gqtk/search.hpp"
#include "support.hpp"

using namespace gqtk;
using namespace gqtk::testing;

namespace {

QuantaleData one_element() { return {1, {}, {{0}}, {0}, 0}; }

// {0 < e}: the two-element chain with e the unit.
QuantaleData two_chain() { return {2, {{0, 1}}, {{0, 0}, {0, 1}}, {0, 1}, 1}; }

}  // namespace

TEST_CASE("the one-element quantale passes every check") {
  const FiniteQuantale q = validate_quantale(one_element());
  CHECK(q.size() == 1);
  CHECK(check_quantale_axioms(q).ok());
  CHECK(check_sg(q).holds);
  CHECK(check_sgf(q).all());
  CHECK(primes_of_qe(q).empty());
}

TEST_CASE("the two-element chain is SG and SGF") {
  const FiniteQuantale q = validate_quantale(two_chain());
  CHECK(check_sg(q).holds);
  CHECK(check_sgf(q).all());
  CHECK(check_qe_frame(q).holds);
  CHECK(check_inverse_monoid(q).holds);
  const PartialUnitSet pu = partial_units(q);
  CHECK(pu.partial_units == std::vector<Index>{0, 1});
  CHECK(pu.qe == std::vector<Index>{0, 1});
  CHECK(check_inverse_quantal_frame(q).holds());
}

TEST_CASE("lattice and shape errors") {
  SUBCASE("not antisymmetric") {
    QuantaleData d = two_chain();
    d.leq.push_back({1, 0});
    CHECK_THROWS_AS(quantale_from_data(d), ValidationError);
  }
  SUBCASE("two maximal elements have no join") {
    QuantaleData d{3, {{0, 1}, {0, 2}}, {{0, 0, 0}, {0, 1, 2}, {0, 2, 2}}, {0, 1, 2}, 1};
    try {
      quantale_from_data(d);
      FAIL("expected NotLattice");
    } catch (const ValidationError& e) {
      CHECK(e.code() == "NotLattice");
    }
  }
  SUBCASE("ragged product") {
    QuantaleData d = two_chain();
    d.product.pop_back();
    CHECK_THROWS_AS(quantale_from_data(d), InputError);
  }
  SUBCASE("out of range") {
    QuantaleData d = two_chain();
    d.product[1][1] = 5;
    CHECK_THROWS_AS(quantale_from_data(d), InputError);
  }
}

TEST_CASE("axiom failures carry witnesses") {
  SUBCASE("unit") {
    QuantaleData d = two_chain();
    d.unit = 0;
    try {
      validate_quantale(d);
      FAIL("expected a failure");
    } catch (const ValidationError& e) {
      bool unit = false;
      for (const auto& v : e.violations()) unit |= v.code == "UnitFail" && !v.witness.empty();
      CHECK(unit);
    }
  }
  SUBCASE("zero law") {
    QuantaleData d = two_chain();
    d.product[0][1] = 1;
    const QuantaleReport r = check_quantale_axioms(quantale_from_data(d));
    CHECK_FALSE(r.ok());
    REQUIRE(r.first_failure() != nullptr);
    CHECK_FALSE(r.first_failure()->verdict.witness.empty());
  }
}

TEST_CASE("frames of opens are quantales with every classifier true") {
  for (const char* name : {"etale", "non-etale"}) {
    const FiniteSpace s = parse_space(find_fixture(name).doc.at("space"));
    const FiniteQuantale q = frame_quantale(s);
    CHECK(q.size() == 5);
    CHECK(check_quantale_axioms(q, {true}).ok());
    CHECK(check_sgf(q).all());
    CHECK(check_inverse_quantal_frame(q).holds());
    CHECK(is_distributive_lattice(q).holds);
    CHECK(primes_of_qe(q).size() == 3);
    CHECK(check_unit_identities(q).empty());
  }
}

TEST_CASE("groupoid quantales of the fixtures") {
  const FixtureRun e = run_fixture("etale");
  const FixtureRun n = run_fixture("non-etale");
  CHECK(e.gq.quantale.size() == 17);
  CHECK(n.gq.quantale.size() == 23);
  for (const FixtureRun* r : {&e, &n}) {
    const FiniteQuantale& q = r->gq.quantale;
    CHECK(check_quantale_axioms(q, {true}).ok());
    CHECK(check_sg(q).holds);
    CHECK(check_sgf(q).all());
    CHECK(check_qe_frame(q).holds);
    CHECK(check_inverse_monoid(q).holds);
    CHECK(partial_units(q).qe.size() == 5);
    const auto findings = check_unit_identities(q);
    CHECK_MESSAGE(findings.empty(), describe(findings));
  }
  CHECK(partial_units(e.gq.quantale).partial_units.size() == 8);
  CHECK(partial_units(n.gq.quantale).partial_units.size() == 9);
  CHECK(is_distributive_lattice(e.gq.quantale).holds);
  CHECK(check_inverse_quantal_frame(e.gq.quantale).holds());
  CHECK_FALSE(is_distributive_lattice(n.gq.quantale).holds);
  CHECK_FALSE(check_inverse_quantal_frame(n.gq.quantale).holds());
}

TEST_CASE("conjugation") {
  const FixtureRun e = run_fixture("etale");
  const FiniteQuantale& q = e.gq.quantale;
  const Index h = listed_member(e, "H"), phi = listed_member(e, "phi");
  CHECK(conjugate(q, h, phi) == h);
  CHECK(conjugate(q, h, q.unit()) == h);
  CHECK(conjugate(q, listed_member(e, "P1"), phi) == listed_member(e, "P2"));
  CHECK_THROWS_AS(conjugate(q, phi, phi), Error);
  CHECK_THROWS_AS(conjugate(q, h, q.top()), Error);
  try {
    conjugate(q, phi, phi);
  } catch (const Error& err) {
    CHECK(err.code() == "ArgumentsOutOfDomain");
  }
}

TEST_CASE("binary distributivity agrees with the subset oracles on small models") {
  SearchOptions opts;
  opts.max_size = 4;
  const SearchResult res = search_models(opts);
  for (const auto& m : res.models) {
    const FiniteQuantale& q = m.quantale;
    const bool binary = distributive_binary(q, Side::Left).holds && distributive_binary(q, Side::Right).holds;
    const bool exhaustive = distributive_exhaustive(q, Side::Left).holds && distributive_exhaustive(q, Side::Right).holds;
    CHECK(binary == exhaustive);
    CHECK(binary == distributive_oracle(q));
  }
}

TEST_CASE("a non-distributive product is caught by both checks") {
  // Diamond 0 < a, b < 1 with a product that is not join-preserving on the right.
  QuantaleData d{4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}, {}, {0, 1, 2, 3}, 3};
  d.product = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 1}};
  const FiniteQuantale q = quantale_from_data(d);
  CHECK(distributive_binary(q, Side::Left).holds == distributive_exhaustive(q, Side::Left).holds);
  CHECK_FALSE(distributive_oracle(q));
  CHECK_FALSE(check_quantale_axioms(q).ok());
}
