#include "gqtk/topology.hpp"

#include <algorithm>
#include <unordered_set>

namespace gqtk {

bool FiniteSpace::is_open(Mask m) const {
  return std::binary_search(opens_.begin(), opens_.end(), m, canonical_less);
}

std::size_t FiniteSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == name) return i;
  throw InputError("UnknownPoint", std::string(name));
}

std::string FiniteSpace::format(Mask m) const {
  std::string s = "{";
  bool first = true;
  for_each_bit(m, [&](std::size_t i) {
    if (!first) s += ",";
    s += points_[i];
    first = false;
  });
  return s + "}";
}

FiniteSpace validate_space(std::vector<std::string> points, const std::vector<Mask>& opens) {
  const std::size_t n = points.size();
  if (n > kMaxCarrier) throw InputError("TooLarge", "spaces are limited to 64 points");
  {
    std::unordered_set<std::string> seen;
    for (const auto& p : points)
      if (!seen.insert(p).second) throw InputError("DuplicatePoint", p);
  }
  const Mask top = full_mask(n);
  for (Mask m : opens)
    if (!is_subset(m, top)) throw InputError("UnknownPoint", "open set mentions a point outside the space");

  std::vector<Mask> sorted(opens);
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto contains = [&](Mask m) { return std::binary_search(sorted.begin(), sorted.end(), m, canonical_less); };

  FiniteSpace tmp;
  tmp.points_ = points;
  auto fmt = [&](Mask m) { return tmp.format(m); };

  std::vector<Violation> violations;
  if (!contains(0)) violations.push_back({"MissingEmptyOrTop", "empty set is not open"});
  if (!contains(top)) violations.push_back({"MissingEmptyOrTop", "whole space is not open"});
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const Mask a = sorted[i], b = sorted[j];
      if (!contains(a | b))
        violations.push_back({"NotClosedUnderUnion", fmt(a) + " ∪ " + fmt(b) + " = " + fmt(a | b)});
      if (!contains(a & b))
        violations.push_back({"NotClosedUnderIntersection", fmt(a) + " ∩ " + fmt(b) + " = " + fmt(a & b)});
    }
  }
  if (!violations.empty()) throw ValidationError("InvalidSpace", std::move(violations));

  FiniteSpace s;
  s.points_ = std::move(points);
  s.opens_ = std::move(sorted);
  s.minimal_open_.assign(n, top);
  s.closure_.assign(n, top);
  for (std::size_t p = 0; p < n; ++p) {
    Mask avoid = 0;
    for (Mask u : s.opens_) {
      if (u & bit(p))
        s.minimal_open_[p] &= u;
      else
        avoid |= u;
    }
    s.closure_[p] = top & ~avoid;
  }
  return s;
}

ClosedSet closure(const FiniteSpace& space, std::size_t point) {
  if (point >= space.size()) throw InputError("UnknownPoint", "point index " + std::to_string(point));
  return {space.closure_of(point)};
}

std::vector<ClosedSet> irreducible_closed_sets(const FiniteSpace& space) {
  std::vector<Mask> closed;
  for (Mask u : space.opens()) closed.push_back(space.full() & ~u);
  std::sort(closed.begin(), closed.end(), canonical_less);

  std::vector<ClosedSet> out;
  for (Mask c : closed) {
    if (c == 0) continue;
    bool irreducible = true;
    for (std::size_t i = 0; i < closed.size() && irreducible; ++i) {
      for (std::size_t j = i; j < closed.size(); ++j) {
        const Mask k1 = closed[i], k2 = closed[j];
        if (is_subset(c, k1 | k2) && !is_subset(c, k1) && !is_subset(c, k2)) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) out.push_back({c});
  }
  return out;
}

SobrietyResult is_sober(const FiniteSpace& space) {
  SobrietyResult res;
  for (const ClosedSet& c : irreducible_closed_sets(space)) {
    std::vector<std::size_t> generators;
    for (std::size_t p = 0; p < space.size(); ++p)
      if (space.closure_of(p) == c.carrier) generators.push_back(p);
    if (generators.size() == 1) continue;
    res.sober = false;
    res.offending = c;
    res.duplicate_points = std::move(generators);
    break;
  }
  return res;
}

bool is_t0(const FiniteSpace& space) {
  for (std::size_t p = 0; p < space.size(); ++p)
    for (std::size_t q = p + 1; q < space.size(); ++q)
      if (space.closure_of(p) == space.closure_of(q)) return false;
  return true;
}

bool is_t1(const FiniteSpace& space) {
  for (std::size_t p = 0; p < space.size(); ++p)
    if (space.closure_of(p) != bit(p)) return false;
  return true;
}

std::vector<PrimeOpen> prime_opens(const FiniteSpace& space) {
  const SobrietyResult sober = is_sober(space);
  if (!sober.sober)
    throw Error("NotSober", "irreducible closed set " + space.format(sober.offending->carrier) +
                                " is not the closure of a unique point");
  std::vector<PrimeOpen> out;
  for (std::size_t p = 0; p < space.size(); ++p) out.push_back({space.full() & ~space.closure_of(p), p});
  return out;
}

bool is_union_of_locally_closed_brute_force(const FiniteSpace& space, Mask subset) {
  bool ok = true;
  for_each_bit(subset, [&](std::size_t y) {
    if (!ok) return;
    bool found = false;
    for (Mask u : space.opens()) {
      if (!(u & bit(y))) continue;
      for (Mask v : space.opens()) {
        const Mask c = space.full() & ~v;
        if ((c & bit(y)) && is_subset(u & c, subset)) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    ok = found;
  });
  return ok;
}

bool is_union_of_locally_closed(const FiniteSpace& space, Mask subset, bool verify_oracles) {
  bool fast = true;
  for_each_bit(subset, [&](std::size_t y) {
    if (!is_subset(space.minimal_open(y) & space.closure_of(y), subset)) fast = false;
  });
  if (verify_oracles && fast != is_union_of_locally_closed_brute_force(space, subset))
    throw Error("OracleMismatch", "locally-closed test disagrees on " + space.format(subset));
  return fast;
}

}  // namespace gqtk
