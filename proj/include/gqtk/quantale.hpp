#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gqtk/common.hpp"
#include "gqtk/groupoid.hpp"
#include "gqtk/topology.hpp"

namespace gqtk {

using Index = std::uint32_t;

/// Abstract quantale input. `leq` lists pairs (i, j) meaning i <= j; reflexive
/// pairs are implied. `product[a][b]` is the index of a·b.
struct QuantaleData {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  std::vector<std::vector<std::size_t>> product;
  std::vector<std::size_t> involution;
  std::size_t unit = 0;
};

/// A finite complete lattice with a product table, an involution and a unit.
/// The lattice structure is checked on construction; the quantale axioms are
/// checked separately (check_quantale_axioms) so that failing tables can still
/// be inspected and reported on.
class FiniteQuantale {
 public:
  using Bits = boost::dynamic_bitset<>;

  /// Throws ValidationError("NotLattice") when `leq` is not a partial order or
  /// some pair lacks a join or meet, and InputError on out-of-range entries.
  static FiniteQuantale from_tables(std::size_t n, const std::vector<std::vector<bool>>& leq,
                                    std::vector<Index> product, std::vector<Index> involution, Index unit,
                                    std::vector<Mask> carriers = {});

  std::size_t size() const { return n_; }
  bool leq(Index a, Index b) const { return up_[a][pos_[b]]; }
  Index join(Index a, Index b) const { return join_[a * n_ + b]; }
  Index meet(Index a, Index b) const { return meet_[a * n_ + b]; }
  Index mul(Index a, Index b) const { return product_[a * n_ + b]; }
  Index star(Index a) const { return involution_[a]; }
  Index unit() const { return unit_; }
  Index bottom() const { return bottom_; }
  Index top() const { return top_; }

  Index join_of(std::span<const Index> xs) const;
  /// Empty meet is the top.
  Index meet_of(std::span<const Index> xs) const;

  /// Elements ordered by a linear extension of <=, bottom first.
  const std::vector<Index>& linear_order() const { return order_; }

  bool has_carriers() const { return !carriers_.empty(); }
  Mask carrier(Index a) const { return carriers_.at(a); }
  const std::vector<Mask>& carriers() const { return carriers_; }
  std::optional<Index> find(Mask carrier) const;

  /// Tables in the abstract input format.
  QuantaleData to_data() const;

 private:
  std::size_t n_ = 0;
  std::vector<Index> pos_, order_;
  std::vector<Bits> up_;       // up_[a][pos[c]]   iff a <= c
  std::vector<Bits> down_;     // down_[a][n-1-pos[c]] iff c <= a
  std::vector<Index> join_, meet_, product_, involution_;
  Index unit_ = 0, bottom_ = 0, top_ = 0;
  std::vector<Mask> carriers_;
  std::unordered_map<Mask, Index> carrier_index_;
};

struct AxiomCheck {
  std::string axiom;
  Verdict verdict;
};

struct QuantaleReport {
  std::vector<AxiomCheck> checks;
  bool ok() const;
  /// First failing axiom, or nullptr.
  const AxiomCheck* first_failure() const;
};

struct CheckOptions {
  /// Also run the exhaustive-subset distributivity oracle and compare.
  bool verify_oracles = false;
};

/// Associativity, D1/D2 (binary joins plus zero law), U, I1, I2, I3.
QuantaleReport check_quantale_axioms(const FiniteQuantale& q, const CheckOptions& opts = {});

/// Builds the lattice only (reflexive pairs added); quantale axioms are not checked.
/// Throws ValidationError("NotLattice") or InputError("Shape").
FiniteQuantale quantale_from_data(const QuantaleData& data);

/// Builds the lattice and runs every axiom; throws ValidationError with the
/// failing axioms (NotLattice, NotAssociative, DistributivityFail, UnitFail, InvolutionFail).
FiniteQuantale validate_quantale(const QuantaleData& data, const CheckOptions& opts = {});

enum class Side { Left, Right };

/// a·(b∨c) = ab∨ac (Left) or (b∨c)·a = ba∨ca (Right), plus a·0 = 0 / 0·a = 0.
Verdict distributive_binary(const FiniteQuantale& q, Side side);
/// Same law against every subset of elements. Exponential; for n <= 20.
Verdict distributive_exhaustive(const FiniteQuantale& q, Side side);

/// Elements of a union- and operation-closed family of arrow sets, ordered by inclusion.
/// Throws ValidationError("NotUnionClosed" / "NotOperationClosed").
FiniteQuantale from_subset_family(const FiniteGroupoid& g, std::vector<Mask> family);

/// A frame of opens viewed as a quantale: product = meet, trivial involution, unit = top.
FiniteQuantale frame_quantale(const FiniteSpace& space);

struct PartialUnitSet {
  std::vector<Index> functional;     // f*f <= e
  std::vector<Index> partial_units;  // I(Q)
  std::vector<Index> qe;             // downset of e
};

PartialUnitSet partial_units(const FiniteQuantale& q);

/// a <= a a* a for every a.
Verdict check_sg(const FiniteQuantale& q);

struct SgfReport {
  Verdict sgf1, sgf2, sgf3;
  bool all() const { return sgf1.holds && sgf2.holds && sgf3.holds; }
};

SgfReport check_sgf(const FiniteQuantale& q);

/// On Q_e the involution is the identity and the product is the binary meet.
Verdict check_qe_frame(const FiniteQuantale& q);

/// I(Q) has unique inverses f*, its idempotents are exactly Q_e, and they commute.
Verdict check_inverse_monoid(const FiniteQuantale& q);

/// h^f = f* h f. Throws Error("ArgumentsOutOfDomain") unless h <= e and f is a partial unit.
Index conjugate(const FiniteQuantale& q, Index h, Index f);

Verdict is_distributive_lattice(const FiniteQuantale& q);

struct InverseQuantalFrameReport {
  Verdict distributive, sgf1, support;
  bool holds() const { return distributive.holds && sgf1.holds && support.holds; }
};

/// Distributive lattice, join-generated by partial units, and the candidate
/// support s(a) = join{ff* : f partial unit, f <= a} satisfies s(a) <= aa*,
/// a <= s(a)a and preserves joins.
InverseQuantalFrameReport check_inverse_quantal_frame(const FiniteQuantale& q);

std::string element_name(const FiniteQuantale& q, Index a);

}  // namespace gqtk
