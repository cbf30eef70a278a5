#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqtk/common.hpp"

namespace gqtk {

/// A finite topological space. Points are indexed in input order; opens are
/// stored as point masks in canonical order (see canonical_less).
class FiniteSpace {
 public:
  FiniteSpace() = default;

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& name(std::size_t p) const { return points_.at(p); }
  const std::vector<Mask>& opens() const { return opens_; }
  Mask full() const { return full_mask(points_.size()); }

  bool is_open(Mask m) const;
  bool is_closed(Mask m) const { return is_open(full() & ~m); }

  /// Intersection of all opens containing p.
  Mask minimal_open(std::size_t p) const { return minimal_open_.at(p); }
  /// Smallest closed set containing p.
  Mask closure_of(std::size_t p) const { return closure_.at(p); }

  std::size_t index_of(std::string_view name) const;
  std::string format(Mask m) const;

  friend FiniteSpace validate_space(std::vector<std::string> points, const std::vector<Mask>& opens);

 private:
  std::vector<std::string> points_;
  std::vector<Mask> opens_;
  std::vector<Mask> minimal_open_;
  std::vector<Mask> closure_;
};

struct ClosedSet {
  Mask carrier = 0;
  friend bool operator==(const ClosedSet&, const ClosedSet&) = default;
};

/// Checks that `opens` contains the empty set and the whole space and is closed
/// under binary union and intersection. Throws ValidationError listing
/// MissingEmptyOrTop / NotClosedUnderUnion / NotClosedUnderIntersection.
FiniteSpace validate_space(std::vector<std::string> points, const std::vector<Mask>& opens);

/// Throws InputError("UnknownPoint") for an out-of-range index.
ClosedSet closure(const FiniteSpace& space, std::size_t point);

/// Nonempty closed sets C such that C ⊆ K1 ∪ K2 (K1, K2 closed) forces C ⊆ K1 or C ⊆ K2.
std::vector<ClosedSet> irreducible_closed_sets(const FiniteSpace& space);

struct SobrietyResult {
  bool sober = true;
  std::optional<ClosedSet> offending;           // irreducible set that is no point closure
  std::vector<std::size_t> duplicate_points;    // distinct points with one closure
};

SobrietyResult is_sober(const FiniteSpace& space);

bool is_t0(const FiniteSpace& space);
bool is_t1(const FiniteSpace& space);

/// A prime open: complement of the closure of its generating point.
struct PrimeOpen {
  Mask open = 0;
  std::size_t point = 0;
};

/// Ordered by generating point. Throws Error("NotSober").
std::vector<PrimeOpen> prime_opens(const FiniteSpace& space);

/// Whether `subset` is a union of locally closed sets. Uses the minimal-open
/// test; with `verify_oracles` it also runs the (open, closed)-pair scan and
/// throws Error("OracleMismatch") if the two disagree.
bool is_union_of_locally_closed(const FiniteSpace& space, Mask subset, bool verify_oracles = false);

/// Exhaustive scan over (open, closed) pairs.
bool is_union_of_locally_closed_brute_force(const FiniteSpace& space, Mask subset);

}  // namespace gqtk
