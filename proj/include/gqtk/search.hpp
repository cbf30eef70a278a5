#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gqtk/quantale.hpp"

namespace gqtk {

inline constexpr std::size_t kDefaultSearchCap = 5;

struct SearchOptions {
  std::size_t max_size = 4;
  std::size_t cap = kDefaultSearchCap;
  /// Candidate product tables tried before giving up (partial results are kept).
  std::size_t budget = std::size_t{1} << 26;
  unsigned threads = 1;
};

/// Axiom profile of a model. SPQ1/SPQ2 are only evaluated on SGF models.
struct ModelProfile {
  bool sg = false, sgf1 = false, sgf2 = false, sgf3 = false;
  std::optional<bool> spq1, spq2;
  bool distributive = false, inverse_quantal_frame = false;

  std::string key() const;
  friend auto operator<=>(const ModelProfile&, const ModelProfile&) = default;
};

struct Model {
  FiniteQuantale quantale;
  ModelProfile profile;
};

struct SearchResult {
  std::vector<Model> models;  // up to isomorphism, ordered by size then discovery
  std::map<std::size_t, std::size_t> lattices_by_size;
  std::map<std::size_t, std::size_t> models_by_size;
  std::size_t candidates = 0;
  bool complete = true;
};

/// Lattices of `n` elements up to isomorphism, as <= matrices.
std::vector<std::vector<std::vector<bool>>> enumerate_lattices(std::size_t n);

/// Unital involutive quantales with 1..max_size elements, up to isomorphism.
/// Throws InputError("SizeAboveCap") when max_size exceeds the cap. Running out
/// of budget sets complete = false instead of throwing.
SearchResult search_models(const SearchOptions& opts);

ModelProfile classify(const FiniteQuantale& q);

/// On SG models: Q_e is a frame, f <= g functional has f = g iff ff* = gg*,
/// and I(Q) is an inverse monoid with idempotents Q_e.
Verdict check_sg_consequences(const FiniteQuantale& q);

}  // namespace gqtk
