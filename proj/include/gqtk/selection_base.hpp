#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gqtk/groupoid.hpp"
#include "gqtk/quantale.hpp"

namespace gqtk {

struct SelectionBaseReport {
  /// Members that are not bisection images (precondition), then SB1..SB5.
  Verdict members;
  std::array<Verdict, 5> sb;
  bool ok() const;
};

/// A validated selection base. Members are distinct bisection images in canonical order.
class SelectionBase {
 public:
  const FiniteGroupoid& groupoid() const { return groupoid_; }
  const std::vector<BisectionImage>& members() const { return members_; }
  std::vector<Mask> carriers() const;
  const SelectionBaseReport& report() const { return report_; }

  friend SelectionBase validate_selection_base(FiniteGroupoid groupoid, std::vector<Mask> family,
                                               const CheckOptions& opts);

 private:
  FiniteGroupoid groupoid_;
  std::vector<BisectionImage> members_;
  SelectionBaseReport report_;
};

/// Per-axiom verdicts. SB3 uses binary compatible unions plus the empty set;
/// SB4 tests every member pair's agreement set for being a union of locally
/// closed sets. With verify_oracles, SB3 and the locally-closed test are
/// cross-checked against their exhaustive forms (Error "OracleMismatch").
SelectionBaseReport check_selection_base(const FiniteGroupoid& g, std::span<const Mask> family,
                                         const CheckOptions& opts = {});

/// Throws ValidationError("SelectionBase") listing failed axioms.
SelectionBase validate_selection_base(FiniteGroupoid groupoid, std::vector<Mask> family,
                                      const CheckOptions& opts = {});

/// SB3 by enumerating every pairwise-compatible subfamily. Limited to 20 members.
Verdict sb3_exhaustive(const FiniteGroupoid& g, std::span<const Mask> family);

/// {p | s(p) and t(p) both defined and equal}.
Mask agreement_set(const FiniteGroupoid& g, Mask s, Mask t);

/// Bisection images of the orbit relation groupoid that are locally of the form
/// x -> (x, g.x): every point of the domain has an open neighbourhood inside the
/// domain on which a single group element induces the section.
/// Throws Error("ValidationFailed") if the result is not a selection base.
std::vector<Mask> canonical_base_from_action(const GroupAction& action, const FiniteGroupoid& relation_groupoid);

struct GroupoidQuantale {
  FiniteQuantale quantale;
  SelectionBase base;
};

inline constexpr std::size_t kDefaultSizeBudget = std::size_t{1} << 20;

/// All unions of members (including the empty union) by worklist fixpoint.
/// Throws BudgetExceeded("SizeBudgetExceeded") past `budget` elements.
std::vector<Mask> union_closure(std::span<const Mask> generators, std::size_t budget = kDefaultSizeBudget);

/// Same set by filtering every subset X of the carrier with X = union{s in S : s ⊆ X}.
std::vector<Mask> union_closure_naive(std::span<const Mask> generators, std::size_t carrier_size);

/// Q(G,S): union closure of the members with lifted product and involution, unit u[G0].
GroupoidQuantale build_gq(const SelectionBase& base, std::size_t budget = kDefaultSizeBudget);

struct RecoveryReport {
  Verdict partial_units;  // I(Q) equals the members
  Verdict qe_opens;       // downset of E equals {u[U]}
  Verdict primes;         // primes of Q_e are u[G0 \ closure(p)]
  bool ok() const { return partial_units.holds && qe_opens.holds && primes.holds; }
};

RecoveryReport check_recovery(const GroupoidQuantale& gq);

/// Every point of every pairwise intersection lies in a member inside that intersection.
/// The witness names the arrow and the two members.
Verdict is_topological_base(const SelectionBase& base);

}  // namespace gqtk
