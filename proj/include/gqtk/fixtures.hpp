#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gqtk/io.hpp"

namespace gqtk {

/// A worked example shipped with the library: a space, a Z2 action, its orbit
/// relation, a verbatim listing of the selection base and the expected facts.
struct Fixture {
  std::string name;
  std::vector<std::string> aliases;
  Json doc;
};

const std::vector<Fixture>& builtin_fixtures();

/// By name or alias. Throws InputError("UnknownFixture").
const Fixture& find_fixture(std::string_view name);

}  // namespace gqtk
