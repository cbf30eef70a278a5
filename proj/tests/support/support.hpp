#pragma once

#include <random>
#include <string>
#include <vector>

#include "gqtk/fixtures.hpp"
#include "gqtk/groupoid.hpp"
#include "gqtk/incidence.hpp"
#include "gqtk/io.hpp"
#include "gqtk/quantale.hpp"
#include "gqtk/selection_base.hpp"
#include "gqtk/topology.hpp"

namespace gqtk::testing {

// ---- oracles written straight from the definitions, sharing no code with the library ----

/// Closure of p as the intersection of all closed sets containing it.
Mask closure_oracle(const FiniteSpace& s, std::size_t p);
/// Distinct points are separated by some open.
bool t0_oracle(const FiniteSpace& s);
/// Y is a union of sets U ∩ C (U open, C closed) lying inside Y.
bool locally_closed_union_oracle(const FiniteSpace& s, Mask y);
/// Lattice-theoretic primes of the frame of opens.
std::vector<Mask> prime_opens_oracle(const FiniteSpace& s);
/// a·∨X = ∨(a·X) and (∨X)·a = ∨(X·a) for every subset X, by direct summation.
bool distributive_oracle(const FiniteQuantale& q);
/// Direct definition: some h in Q_e with h <= d(f)∧d(g), h ≰ p, hf <= pf ∨ g.
bool incident_oracle(const FiniteQuantale& q, Index p, Index f, Index g);

// ---- small groups and random instances ----

struct GroupTable {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::size_t> mult;  // row-major, g*k+h
  std::size_t identity = 0;
};

const std::vector<GroupTable>& small_groups();  // Z2, Z3, S3

inline constexpr std::size_t kMaxRandomQuantale = 1100;

struct Instance {
  std::string label;
  std::size_t rejected = 0;  // draws skipped for exceeding the quantale size bound
  GroupAction action;
  FiniteGroupoid groupoid;
  std::vector<Mask> base;
};

/// A group from small_groups() acting on a union of coset spaces (at most
/// max_points points) by automorphisms of a random invariant partial order.
/// The topology is the down-sets of that order, so the space is sober.
/// Draws whose groupoid quantale would exceed max_quantale elements are redrawn.
Instance random_instance(std::mt19937_64& rng, std::size_t max_points = 5, std::size_t max_quantale = kMaxRandomQuantale);

/// Down-set topology of a partial order given as leq[x][y].
FiniteSpace downset_space(const std::vector<std::vector<bool>>& leq);

/// The fixture pipeline: parsed groupoid, validated base, built quantale.
struct FixtureRun {
  const Fixture* fixture;
  BaseInput input;
  SelectionBase base;
  GroupoidQuantale gq;
};
FixtureRun run_fixture(const std::string& name);

/// Element of a quantale built from a fixture, by base-listing name.
Index listed_member(const FixtureRun& run, const std::string& name);
/// u[G0 \ closure(p)] for a point name.
Index prime_element(const FixtureRun& run, const std::string& point);

// ---- theorem checks; each returns the failures found, empty when all hold ----

struct Finding {
  std::string law;
  std::string witness;
};

/// Quantale identities on I(Q) and Q_e: the ff* criterion for comparable
/// functional elements, hf = f·h^f and f*h = h^f·f*, h <= ff* implies
/// h = f·h^f·f*, (h^f)^g = h^(fg), d/r algebra, and the transport isomorphism
/// between the down-sets of d(f) and r(f).
std::vector<Finding> check_unit_identities(const FiniteQuantale& q);

/// Properties of transport and incidence: the f[p] items, compatibility with
/// product and involution, upward closure, the obstruction characterization,
/// spatiality of Q_e and α on partial units.
std::vector<Finding> check_incidence_laws(const IncidenceAnalysis& a);

/// Everything above on one analysis.
std::vector<Finding> check_all_laws(const IncidenceAnalysis& a);

std::string describe(const std::vector<Finding>& findings, std::size_t limit = 3);

}  // namespace gqtk::testing
