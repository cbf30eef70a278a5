#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gqtk/groupoid.hpp"
#include "gqtk/quantale.hpp"
#include "gqtk/selection_base.hpp"

namespace gqtk {

using Json = nlohmann::ordered_json;

/// Malformed JSON or a document of the wrong shape raises InputError("ParseError").
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);

/// {"points": [names], "opens": [[names], ...]}
FiniteSpace parse_space(const Json& doc);
Json space_to_json(const FiniteSpace& space);

/// {"space": .., "group": {"elements", "mult", "identity"}, "action": {g: {p: q}}}.
/// `mult` is a table of element names with mult[g][h] = gh. Elements missing from
/// "action" other than the identity are an error; the identity may be omitted.
GroupAction parse_action(const Json& doc);

struct GroupoidInput {
  FiniteGroupoid groupoid;
  std::optional<GroupAction> action;  // present when the groupoid came from an action
};

/// One of
///   {"space", "relation": [[x, y], ...]}                         equivalence relation
///   {"space", "group", "action"[, "action_groupoid": true]}       orbit relation (or G x X)
///   {"space", "arrows": [{"name","d","r"}], "units": {p: a},
///    "product": [[x, y, xy], ...], "inverse": {a: b}}             explicit tables
/// or any of these nested under "groupoid".
GroupoidInput parse_groupoid(const Json& doc);
Json groupoid_to_json(const FiniteGroupoid& g);

/// {"n", "leq": [[i, j]], "product": [[..]], "involution": [..], "unit"}
QuantaleData parse_quantale(const Json& doc);
Json quantale_to_json(const FiniteQuantale& q);

struct BaseInput {
  GroupoidInput groupoid;
  std::vector<Mask> family;
  std::string selector;  // "canonical", "all", "listing" or "explicit"
};

/// A groupoid document with "base": "canonical" (needs an action), "all"
/// (every bisection image), "listing" (uses "base_listing") or a list of members.
/// Members are lists of arrow names or [d, r] point-name pairs.
BaseInput parse_base(const Json& doc);

/// Resolves an arrow reference: a name, or a [d, r] pair naming a relation arrow "(d,r)".
std::size_t parse_arrow_ref(const FiniteGroupoid& g, const Json& ref);

}  // namespace gqtk
