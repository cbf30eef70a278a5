#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gqtk/groupoid.hpp"
#include "gqtk/quantale.hpp"

namespace gqtk {

/// map[a] is the image in the target of element a of the source.
struct QuantaleIso {
  std::vector<Index> map;
};

struct GroupoidIso {
  std::vector<std::size_t> points;
  std::vector<std::size_t> arrows;
};

/// A named invariant whose values differ between the two structures.
struct NotIsomorphic {
  std::string invariant;
  std::string left, right;
};

using QuantaleIsoResult = std::variant<QuantaleIso, NotIsomorphic>;
using GroupoidIsoResult = std::variant<GroupoidIso, NotIsomorphic>;

inline constexpr std::size_t kDefaultIsoBudget = std::size_t{1} << 24;

/// Backtracking over elements with invariant signatures, unit first, propagating
/// every forced value through join, meet, product and involution. A returned
/// certificate has been verified. Throws BudgetExceeded after `budget` search nodes.
QuantaleIsoResult quantale_isomorphic(const FiniteQuantale& a, const FiniteQuantale& b,
                                      std::size_t budget = kDefaultIsoBudget);

/// Bijection preserving and reflecting <=, product, involution and unit.
Verdict verify_quantale_iso(const FiniteQuantale& a, const FiniteQuantale& b, const QuantaleIso& iso);

/// Points are matched by an isomorphism of specialization orders (a homeomorphism
/// of finite spaces), then arrows fiberwise with product and inverse propagation.
GroupoidIsoResult groupoid_isomorphic(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                      std::size_t budget = kDefaultIsoBudget);

/// Homeomorphism on units and a bijection on arrows commuting with d, r, u, product and inverse.
Verdict verify_groupoid_iso(const FiniteGroupoid& a, const FiniteGroupoid& b, const GroupoidIso& iso);

}  // namespace gqtk
