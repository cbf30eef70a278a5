#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gqtk/groupoid.hpp"
#include "gqtk/iso.hpp"
#include "gqtk/quantale.hpp"
#include "gqtk/selection_base.hpp"

namespace gqtk {

/// Non-top p in Q_e with h∧k <= p implying h <= p or k <= p, in index order.
std::vector<Index> primes_of_qe(const FiniteQuantale& q);

/// Some h in Q_e with h <= d(f)∧d(g), h ≰ p and hf <= pf ∨ g. Exhaustive over Q_e.
bool incident(const FiniteQuantale& q, Index p, Index f, Index g);

struct IncidencePair {
  Index p = 0;
  Index f = 0;
  friend bool operator==(const IncidencePair&, const IncidencePair&) = default;
  friend auto operator<=>(const IncidencePair&, const IncidencePair&) = default;
};

struct IncidenceClass {
  IncidencePair rep;  // lexicographically least member
  std::vector<IncidencePair> members;
};

struct ReconstructedGroupoid {
  FiniteGroupoid groupoid;
  std::vector<Index> point_prime;         // point -> prime element
  std::vector<IncidencePair> arrow_rep;   // arrow -> class representative
};

struct SpatialReport {
  Verdict spq1, spq2;
  /// Elements lying below no I_[p,f]; their meet is taken as the top.
  std::vector<Index> empty_meets;
  bool ok() const { return spq1.holds && spq2.holds; }
};

struct AlphaReport {
  Verdict joins, embedding, product, involution, units;
  bool ok() const { return joins.holds && embedding.holds && product.holds && involution.holds && units.holds; }
};

/// Incidence data of a quantale: primes of Q_e, partial units, incidence
/// pairs, the classes of ∼ and the transports f[p]. Construction computes
/// everything eagerly; it throws Error("NotEquivalence") when ∼ fails to be an
/// equivalence and Error("NoTransport"/"NonUniqueTransport") when f[p] is
/// missing or ambiguous. Both only happen for quantales that are not SGF.
class IncidenceAnalysis {
 public:
  explicit IncidenceAnalysis(FiniteQuantale q);

  const FiniteQuantale& quantale() const { return q_; }
  const std::vector<Index>& primes() const { return primes_; }
  const std::vector<Index>& partial_units() const { return units_; }
  const std::vector<Index>& qe() const { return qe_; }
  const std::vector<IncidencePair>& pairs() const { return pairs_; }
  const std::vector<IncidenceClass>& classes() const { return classes_; }

  Index d(Index f) const { return q_.mul(f, q_.star(f)); }
  Index r(Index f) const { return q_.mul(q_.star(f), f); }
  bool is_pair(Index p, Index f) const;
  bool incident(Index p, Index f, Index g) const;
  /// Throws Error("NotAPair").
  std::size_t class_of(Index p, Index f) const;
  /// f[p]. Throws Error("NotAPair").
  Index transport(Index p, Index f) const;
  /// I_[p,f] = join{g in I(Q) : d(g) <= p or not g ∼_p f}.
  Index class_obstruction(Index p, Index f) const;

  SpatialReport check_spatial() const;

  /// G(Q). Points are the primes, arrows the classes ordered by representative.
  /// Throws ValidationError if the tables fail G2-G5 and Error("TooLarge") past 64 primes or classes.
  const ReconstructedGroupoid& groupoid() const;

  /// α(a) as a set of arrows of groupoid().
  Mask alpha(Index a) const;
  AlphaReport check_alpha_theorem() const;

 private:
  std::size_t prime_pos(Index p) const;
  std::size_t unit_pos(Index f) const;

  FiniteQuantale q_;
  std::vector<Index> primes_, units_, qe_;
  std::vector<IncidencePair> pairs_;
  std::vector<int> prime_pos_, unit_pos_;             // element -> position or -1
  std::vector<std::vector<int>> pair_id_;             // [prime][unit] -> pair index or -1
  std::vector<std::vector<bool>> incident_;           // [pair][unit], defined when both are pairs at p
  std::vector<std::size_t> class_of_pair_;
  std::vector<IncidenceClass> classes_;
  std::vector<std::size_t> transport_;                // pair -> prime position
  std::vector<Index> obstruction_;                    // class -> I_[p,f]
  mutable std::optional<ReconstructedGroupoid> groupoid_;
};

struct EtaleResult {
  bool skipped = false;  // Q is not an inverse quantal frame
  Verdict verdict;
};

/// For every f ∼_p g, some k <= d(f)∧d(g) in Q_e with k ≰ p and kf = kg.
EtaleResult check_etale_lemma(const IncidenceAnalysis& a);

struct RoundTripReport {
  bool ok = false;
  std::string direction;  // "quantale" or "groupoid"
  std::string stage;      // failing stage, empty on success
  std::string detail;
  std::optional<QuantaleIso> quantale_iso;
  std::optional<GroupoidIso> groupoid_iso;
};

/// Q -> G(Q), α[I(Q)] -> Q(G(Q), α[I(Q)]) and an isomorphism back to Q.
RoundTripReport roundtrip_quantale(const FiniteQuantale& q, std::size_t budget = kDefaultSizeBudget);

/// (G,S) -> Q(G,S) -> G(Q(G,S)) and an isomorphism back to G.
RoundTripReport roundtrip_groupoid(const SelectionBase& base, std::size_t budget = kDefaultSizeBudget);

}  // namespace gqtk
