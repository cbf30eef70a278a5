#include "doctest.h"
#include "support.hpp"

using namespace gqtk;
using namespace gqtk::testing;

namespace {

template <typename Fn>
std::string error_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("malformed JSON is a ParseError") {
  CHECK(error_code([] { parse_json("{\"points\": [}"); }) == "ParseError");
  CHECK(error_code([] { load_json_file("/nonexistent/file.json"); }) == "ParseError");
}

TEST_CASE("space documents") {
  const Json doc = parse_json(R"({"points": ["p0","p1","p2"], "opens": [[],["p0"],["p0","p2"],["p0","p1"],["p0","p1","p2"]]})");
  const FiniteSpace s = parse_space(doc);
  CHECK(s.size() == 3);
  CHECK(s.opens().size() == 5);
  CHECK(parse_space(space_to_json(s)).opens() == s.opens());
  // Input order of opens is irrelevant.
  Json shuffled = doc;
  shuffled["opens"] = parse_json(R"([["p0","p1","p2"], ["p0","p1"], [], ["p0"], ["p0","p2"]])");
  CHECK(parse_space(shuffled).opens() == s.opens());

  CHECK(error_code([] { parse_space(parse_json(R"({"points": ["a"], "opens": [[], ["b"]]})")); }) == "UnknownPoint");
  CHECK(error_code([] { parse_space(parse_json(R"({"points": ["a"]})")); }) == "ParseError");
  CHECK(error_code([] { parse_space(parse_json(R"({"points": [1], "opens": []})")); }) == "ParseError");
  CHECK(error_code([] { parse_space(parse_json(R"({"points": ["a","b"], "opens": [["a"]]})")); }) == "InvalidSpace");
}

TEST_CASE("groupoid documents in every form agree") {
  const Json& doc = find_fixture("non-etale").doc;
  const FiniteGroupoid from_action = parse_groupoid(doc).groupoid;
  const FiniteGroupoid from_relation =
      parse_groupoid(Json{{"space", doc.at("space")}, {"relation", doc.at("relation")}}).groupoid;
  const FiniteGroupoid from_tables = parse_groupoid(groupoid_to_json(from_action)).groupoid;
  const FiniteGroupoid nested = parse_groupoid(Json{{"groupoid", groupoid_to_json(from_action)}}).groupoid;
  for (const FiniteGroupoid* g : {&from_relation, &from_tables, &nested}) {
    CHECK(g->arrows() == from_action.arrows());
    CHECK(g->data().product == from_action.data().product);
    CHECK(g->data().inverse == from_action.data().inverse);
  }
  Json full = doc;
  full["action_groupoid"] = true;
  CHECK(parse_groupoid(full).groupoid.arrow_count() == 6);
}

TEST_CASE("action documents are validated") {
  Json doc = find_fixture("etale").doc;
  doc["action"]["phi"]["p1"] = "p1";
  CHECK(error_code([&] { parse_action(doc); }) == "InvalidAction");
  Json missing = find_fixture("etale").doc;
  missing["action"].erase("phi");
  CHECK(error_code([&] { parse_action(missing); }) == "ParseError");
  Json identity_omitted = find_fixture("etale").doc;
  identity_omitted["action"].erase("id");
  CHECK_NOTHROW(parse_action(identity_omitted));
  Json unknown = find_fixture("etale").doc;
  unknown["group"]["identity"] = "nope";
  CHECK(error_code([&] { parse_action(unknown); }) == "UnknownElement");
}

TEST_CASE("quantale documents round trip") {
  const FiniteQuantale& q = run_fixture("etale").gq.quantale;
  const Json doc = quantale_to_json(q);
  const FiniteQuantale back = validate_quantale(parse_quantale(doc));
  CHECK(back.size() == q.size());
  for (Index a = 0; a < q.size(); ++a)
    for (Index b = 0; b < q.size(); ++b) {
      CHECK(back.leq(a, b) == q.leq(a, b));
      CHECK(back.mul(a, b) == q.mul(a, b));
    }
  CHECK(error_code([] { parse_quantale(parse_json(R"({"n": -1, "leq": [], "product": [], "involution": [], "unit": 0})")); }) ==
        "ParseError");
}

TEST_CASE("base selectors") {
  const Json& doc = find_fixture("etale").doc;
  CHECK(parse_base(doc).selector == "listing");
  Json canonical = doc;
  canonical["base"] = "canonical";
  const BaseInput c = parse_base(canonical);
  CHECK(c.selector == "canonical");
  CHECK(c.family.size() == 8);
  Json all = doc;
  all["base"] = "all";
  CHECK(parse_base(all).family.size() == 8);
  Json listed = doc;
  listed["base"] = parse_json(R"j([[["p0", "p0"]], [], ["(p1,p1)"]])j");
  CHECK(parse_base(listed).family.size() == 3);
  Json bad = doc;
  bad["base"] = "nonsense";
  CHECK(error_code([&] { parse_base(bad); }) == "ParseError");
  Json relation_only{{"space", doc.at("space")}, {"relation", doc.at("relation")}, {"base", "canonical"}};
  CHECK(error_code([&] { parse_base(relation_only); }) == "ParseError");
}

TEST_CASE("fixtures are found by name and alias") {
  CHECK(find_fixture("etale").name == "etale");
  CHECK(find_fixture("8.1").name == "etale");
  CHECK(find_fixture("8.2").name == "non-etale");
  CHECK(error_code([] { find_fixture("nope"); }) == "UnknownFixture");
  CHECK(builtin_fixtures().size() == 2);
}

TEST_CASE("arrow references") {
  const FiniteGroupoid g = parse_groupoid(find_fixture("etale").doc).groupoid;
  CHECK(parse_arrow_ref(g, Json("(p1,p2)")) == parse_arrow_ref(g, Json::array({"p1", "p2"})));
  CHECK_THROWS_AS(parse_arrow_ref(g, Json(3)), InputError);
  CHECK_THROWS(parse_arrow_ref(g, Json("(p0,p1)")));
}
