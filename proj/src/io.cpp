#include "gqtk/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gqtk {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InputError("ParseError", msg); }

const Json& need(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

std::string as_string(const Json& v, const char* what) {
  if (!v.is_string()) bad(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::size_t as_index(const Json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

const Json& array_at(const Json& doc, const char* key) {
  const Json& v = need(doc, key);
  if (!v.is_array()) bad(std::string("\"") + key + "\" must be an array");
  return v;
}

// Unwraps {"groupoid": {...}} and {"action": {"space", ...}} nestings.
const Json& groupoid_doc(const Json& doc) {
  if (doc.is_object() && doc.contains("groupoid") && doc.at("groupoid").is_object()) return doc.at("groupoid");
  if (doc.is_object() && !doc.contains("group") && doc.contains("action") && doc.at("action").is_object() &&
      doc.at("action").contains("group"))
    return doc.at("action");
  return doc;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("ParseError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

FiniteSpace parse_space(const Json& doc) {
  std::vector<std::string> points;
  for (const auto& p : array_at(doc, "points")) points.push_back(as_string(p, "point"));
  std::vector<Mask> opens;
  const Json& os = array_at(doc, "opens");
  // Point names are resolved against the raw list so unknown names surface as InputError.
  for (const auto& o : os) {
    if (!o.is_array()) bad("each open must be an array of point names");
    Mask m = 0;
    for (const auto& n : o) {
      const std::string name = as_string(n, "point");
      auto it = std::find(points.begin(), points.end(), name);
      if (it == points.end()) throw InputError("UnknownPoint", name);
      const auto i = static_cast<std::size_t>(it - points.begin());
      if (i >= kMaxCarrier) throw InputError("TooLarge", "more than 64 points");
      m |= bit(i);
    }
    opens.push_back(m);
  }
  return validate_space(std::move(points), opens);
}

Json space_to_json(const FiniteSpace& space) {
  Json opens = Json::array();
  for (Mask u : space.opens()) {
    Json o = Json::array();
    for_each_bit(u, [&](std::size_t p) { o.push_back(space.name(p)); });
    opens.push_back(o);
  }
  return {{"points", space.points()}, {"opens", opens}};
}

GroupAction parse_action(const Json& doc) {
  GroupAction a;
  a.space = parse_space(need(doc, "space"));
  const Json& group = need(doc, "group");
  for (const auto& e : array_at(group, "elements")) a.elements.push_back(as_string(e, "group element"));
  const std::size_t k = a.elements.size();
  auto element = [&](const Json& v) {
    const std::string name = as_string(v, "group element");
    auto it = std::find(a.elements.begin(), a.elements.end(), name);
    if (it == a.elements.end()) throw InputError("UnknownElement", name);
    return static_cast<std::size_t>(it - a.elements.begin());
  };
  const Json& mult = array_at(group, "mult");
  if (mult.size() != k) bad("mult must have one row per element");
  for (const auto& row : mult) {
    if (!row.is_array() || row.size() != k) bad("mult must be a square table");
    for (const auto& v : row) a.mult.push_back(element(v));
  }
  a.identity = element(need(group, "identity"));
  const Json& act = need(doc, "action");
  if (!act.is_object()) bad("\"action\" must map elements to point maps");
  a.act.assign(k, {});
  for (std::size_t g = 0; g < k; ++g) {
    if (!act.contains(a.elements[g])) {
      if (g != a.identity) bad("action of " + a.elements[g] + " missing");
      for (std::size_t x = 0; x < a.space.size(); ++x) a.act[g].push_back(x);
      continue;
    }
    const Json& m = act.at(a.elements[g]);
    if (!m.is_object()) bad("action of " + a.elements[g] + " must be an object");
    for (std::size_t x = 0; x < a.space.size(); ++x) {
      if (!m.contains(a.space.name(x))) bad("action of " + a.elements[g] + " misses " + a.space.name(x));
      a.act[g].push_back(a.space.index_of(as_string(m.at(a.space.name(x)), "point")));
    }
  }
  for (auto it = act.begin(); it != act.end(); ++it) element(Json(it.key()));
  validate_action(a);
  return a;
}

GroupoidInput parse_groupoid(const Json& raw) {
  const Json& doc = groupoid_doc(raw);
  if (doc.contains("group")) {
    GroupAction a = parse_action(doc);
    const bool full = doc.contains("action_groupoid") && doc.at("action_groupoid").is_boolean() &&
                      doc.at("action_groupoid").get<bool>();
    FiniteGroupoid g = full ? action_groupoid(a) : orbit_relation_groupoid(a);
    return {std::move(g), std::move(a)};
  }
  FiniteSpace space = parse_space(need(doc, "space"));
  if (doc.contains("relation")) {
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (const auto& pr : array_at(doc, "relation")) {
      if (!pr.is_array() || pr.size() != 2) bad("relation entries must be [x, y] pairs");
      rel.emplace_back(space.index_of(as_string(pr[0], "point")), space.index_of(as_string(pr[1], "point")));
    }
    return {from_equivalence_relation(space, rel), std::nullopt};
  }
  GroupoidData data;
  data.space = std::move(space);
  const Json& arrows = array_at(doc, "arrows");
  if (arrows.size() > kMaxCarrier) throw InputError("TooLarge", "more than 64 arrows");
  for (const auto& a : arrows) {
    data.arrows.push_back(as_string(need(a, "name"), "arrow name"));
    data.d.push_back(data.space.index_of(as_string(need(a, "d"), "point")));
    data.r.push_back(data.space.index_of(as_string(need(a, "r"), "point")));
  }
  auto arrow = [&](const Json& v) {
    const std::string name = as_string(v, "arrow");
    auto it = std::find(data.arrows.begin(), data.arrows.end(), name);
    if (it == data.arrows.end()) throw InputError("UnknownArrow", name);
    return static_cast<std::size_t>(it - data.arrows.begin());
  };
  const std::size_t n = data.arrows.size();
  const Json& units = need(doc, "units");
  for (std::size_t p = 0; p < data.space.size(); ++p) {
    if (!units.contains(data.space.name(p))) bad("unit of " + data.space.name(p) + " missing");
    data.u.push_back(arrow(units.at(data.space.name(p))));
  }
  data.product.assign(n * n, kUndefined);
  for (const auto& t : array_at(doc, "product")) {
    if (!t.is_array() || t.size() != 3) bad("product entries must be [x, y, xy] triples");
    data.product[arrow(t[0]) * n + arrow(t[1])] = static_cast<int>(arrow(t[2]));
  }
  const Json& inv = need(doc, "inverse");
  for (std::size_t x = 0; x < n; ++x) {
    if (!inv.contains(data.arrows[x])) bad("inverse of " + data.arrows[x] + " missing");
    data.inverse.push_back(arrow(inv.at(data.arrows[x])));
  }
  return {validate_groupoid(std::move(data)), std::nullopt};
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  const FiniteSpace& s = g.space();
  Json arrows = Json::array(), units = Json::object(), product = Json::array(), inverse = Json::object();
  for (std::size_t x = 0; x < g.arrow_count(); ++x) {
    arrows.push_back({{"name", g.arrow_name(x)}, {"d", s.name(g.d(x))}, {"r", s.name(g.r(x))}});
    inverse[g.arrow_name(x)] = g.arrow_name(g.inverse(x));
    for (std::size_t y = 0; y < g.arrow_count(); ++y)
      if (const int xy = g.compose(x, y); xy != kUndefined)
        product.push_back({g.arrow_name(x), g.arrow_name(y), g.arrow_name(static_cast<std::size_t>(xy))});
  }
  for (std::size_t p = 0; p < s.size(); ++p) units[s.name(p)] = g.arrow_name(g.u(p));
  return {{"space", space_to_json(s)}, {"arrows", arrows}, {"units", units}, {"product", product}, {"inverse", inverse}};
}

QuantaleData parse_quantale(const Json& doc) {
  QuantaleData d;
  d.n = as_index(need(doc, "n"), "n");
  for (const auto& pr : array_at(doc, "leq")) {
    if (!pr.is_array() || pr.size() != 2) bad("leq entries must be [i, j] pairs");
    d.leq.emplace_back(as_index(pr[0], "leq index"), as_index(pr[1], "leq index"));
  }
  for (const auto& row : array_at(doc, "product")) {
    if (!row.is_array()) bad("product rows must be arrays");
    std::vector<std::size_t> r;
    for (const auto& v : row) r.push_back(as_index(v, "product entry"));
    d.product.push_back(std::move(r));
  }
  for (const auto& v : array_at(doc, "involution")) d.involution.push_back(as_index(v, "involution entry"));
  d.unit = as_index(need(doc, "unit"), "unit");
  return d;
}

Json quantale_to_json(const FiniteQuantale& q) {
  const QuantaleData d = q.to_data();
  Json leq = Json::array();
  for (auto [i, j] : d.leq) leq.push_back({i, j});
  return {{"n", d.n}, {"leq", leq}, {"product", d.product}, {"involution", d.involution}, {"unit", d.unit}};
}

std::size_t parse_arrow_ref(const FiniteGroupoid& g, const Json& ref) {
  if (ref.is_string()) return g.arrow_index(ref.get<std::string>());
  if (ref.is_array() && ref.size() == 2)
    return g.arrow_index("(" + as_string(ref[0], "point") + "," + as_string(ref[1], "point") + ")");
  bad("an arrow reference is a name or a [d, r] pair");
}

BaseInput parse_base(const Json& doc) {
  BaseInput in{parse_groupoid(doc), {}, {}};
  const FiniteGroupoid& g = in.groupoid.groupoid;
  const Json& sel = need(doc, "base");
  auto members = [&](const Json& list) {
    if (!list.is_array()) bad("a base listing must be an array of members");
    for (const auto& m : list) {
      const Json& arrows = m.is_object() ? need(m, "arrows") : m;
      if (!arrows.is_array()) bad("a base member must be an array of arrow references");
      Mask s = 0;
      for (const auto& ref : arrows) s |= bit(parse_arrow_ref(g, ref));
      in.family.push_back(s);
    }
  };
  if (sel.is_string()) {
    in.selector = sel.get<std::string>();
    if (in.selector == "canonical") {
      if (!in.groupoid.action) bad("\"canonical\" needs a group action");
      if (doc.contains("action_groupoid") && doc.at("action_groupoid") == true)
        bad("\"canonical\" is defined for the orbit relation groupoid");
      in.family = canonical_base_from_action(*in.groupoid.action, g);
    } else if (in.selector == "all") {
      for (const auto& b : enumerate_bisection_images(g)) in.family.push_back(b.carrier);
    } else if (in.selector == "listing") {
      members(need(doc, "base_listing"));
    } else {
      bad("unknown base selector \"" + in.selector + "\"");
    }
  } else {
    in.selector = "explicit";
    members(sel);
  }
  return in;
}

}  // namespace gqtk
