#include "gqtk/fixtures.hpp"

#include <algorithm>

namespace gqtk {

// Defined in the generated fixtures_data.cpp.
extern const char* const kFixtureSources[];
extern const std::size_t kFixtureCount;

const std::vector<Fixture>& builtin_fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> out;
    for (std::size_t i = 0; i < kFixtureCount; ++i) {
      Json doc = parse_json(kFixtureSources[i]);
      Fixture f{doc.at("name").get<std::string>(), {}, doc};
      if (doc.contains("aliases")) f.aliases = doc.at("aliases").get<std::vector<std::string>>();
      out.push_back(std::move(f));
    }
    return out;
  }();
  return all;
}

const Fixture& find_fixture(std::string_view name) {
  for (const auto& f : builtin_fixtures())
    if (f.name == name || std::find(f.aliases.begin(), f.aliases.end(), name) != f.aliases.end()) return f;
  throw InputError("UnknownFixture", std::string(name));
}

}  // namespace gqtk
