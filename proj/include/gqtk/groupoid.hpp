#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gqtk/common.hpp"
#include "gqtk/topology.hpp"

namespace gqtk {

inline constexpr int kUndefined = -1;

/// Raw groupoid tables prior to validation. `product` is a dense
/// arrows x arrows table holding kUndefined off the composable pairs.
struct GroupoidData {
  FiniteSpace space;
  std::vector<std::string> arrows;
  std::vector<std::size_t> d, r;  // arrow -> point
  std::vector<std::size_t> u;     // point -> arrow
  std::vector<int> product;
  std::vector<std::size_t> inverse;
};

/// A set groupoid over a finite space of units. Only obtainable through
/// validate_groupoid or the constructors below, so G2-G5 always hold.
class FiniteGroupoid {
 public:
  const FiniteSpace& space() const { return data_.space; }
  std::size_t arrow_count() const { return data_.arrows.size(); }
  const std::vector<std::string>& arrows() const { return data_.arrows; }
  const std::string& arrow_name(std::size_t x) const { return data_.arrows.at(x); }

  std::size_t d(std::size_t x) const { return data_.d[x]; }
  std::size_t r(std::size_t x) const { return data_.r[x]; }
  std::size_t u(std::size_t p) const { return data_.u[p]; }
  std::size_t inverse(std::size_t x) const { return data_.inverse[x]; }
  /// kUndefined unless r(x) = d(y).
  int compose(std::size_t x, std::size_t y) const { return data_.product[x * arrow_count() + y]; }

  Mask all_arrows() const { return full_mask(arrow_count()); }
  /// E = u[G0].
  Mask units() const { return units_; }
  /// u[U] for a point set U.
  Mask unit_image(Mask points) const;
  /// Arrows with d(x) = p.
  Mask d_fiber(std::size_t p) const { return d_fiber_[p]; }
  Mask d_image(Mask arrows) const;
  Mask r_image(Mask arrows) const;

  std::size_t arrow_index(std::string_view name) const;
  std::string format(Mask arrows) const;

  const GroupoidData& data() const { return data_; }

  friend FiniteGroupoid validate_groupoid(GroupoidData data);

 private:
  GroupoidData data_;
  Mask units_ = 0;
  std::vector<Mask> d_fiber_;
};

/// Violations of G2-G5 (code = "G2".."G5", or "Shape" for inconsistent table sizes).
std::vector<Violation> groupoid_violations(const GroupoidData& data);

/// Throws ValidationError("AxiomViolation") with the per-axiom list.
FiniteGroupoid validate_groupoid(GroupoidData data);

/// Arrows are the pairs of the relation named "(x,y)" in lexicographic index order.
/// Throws Error("NotEquivalence").
FiniteGroupoid from_equivalence_relation(const FiniteSpace& space,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& relation);

/// A finite group acting on the points of a space by homeomorphisms.
struct GroupAction {
  FiniteSpace space;
  std::vector<std::string> elements;
  std::vector<std::size_t> mult;                 // elements x elements, row-major: mult[g*k+h] = gh
  std::size_t identity = 0;
  std::vector<std::vector<std::size_t>> act;     // act[g][x] = g.x

  std::size_t order() const { return elements.size(); }
  std::size_t times(std::size_t g, std::size_t h) const { return mult[g * order() + h]; }
  std::size_t apply(std::size_t g, std::size_t x) const { return act[g][x]; }
};

/// Group axioms, action laws, and that each element acts as a homeomorphism.
/// Throws ValidationError("InvalidAction").
void validate_action(const GroupAction& action);

/// G1 = G x X with d(g,x) = x, r(g,x) = gx, u(x) = (e,x), (g,x)(h,gx) = (hg,x).
FiniteGroupoid action_groupoid(const GroupAction& action);

/// The equivalence relation x ~ gx as a groupoid.
FiniteGroupoid orbit_relation_groupoid(const GroupAction& action);

/// Image of a local bisection: d restricted to `carrier` is a bijection onto the
/// open `domain`, and the induced p -> r(s(p)) is a homeomorphism onto the open `codomain`.
struct BisectionImage {
  Mask carrier = 0;
  Mask domain = 0;
  Mask codomain = 0;
  friend bool operator==(const BisectionImage&, const BisectionImage&) = default;
};

std::optional<BisectionImage> is_bisection_image(const FiniteGroupoid& g, Mask arrows);

/// For a bisection image, the arrow chosen over point p, or kUndefined.
int section_at(const FiniteGroupoid& g, Mask image, std::size_t p);

/// All bisection images in canonical order. Sections are enumerated over each
/// open domain; throws BudgetExceeded once more than `section_budget` sections are tried.
std::vector<BisectionImage> enumerate_bisection_images(const FiniteGroupoid& g,
                                                       std::size_t section_budget = std::size_t{1} << 22);

/// Whether the family covers G1.
bool is_sp(const FiniteGroupoid& g, std::span<const Mask> family);

/// {xy | x in a, y in b, r(x) = d(y)}.
Mask lift_product(const FiniteGroupoid& g, Mask a, Mask b);
/// {x^-1 | x in a}.
Mask lift_involution(const FiniteGroupoid& g, Mask a);

}  // namespace gqtk
