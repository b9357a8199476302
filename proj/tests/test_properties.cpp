#include <catch_amalgamated.hpp>

#include "properties.hpp"

using namespace mcg;

TEST_CASE("fuzzed property suites", "[properties]")
{
  for (auto const &o : props::all()) {
    CAPTURE(o.name, o.counterexample);
    CHECK(o.cases >= props::kCases);
    CHECK(o.ok());
  }
}

TEST_CASE("property harness reports counterexamples", "[properties]")
{
  auto const o = props::run("always fails on odd draws", 100, 3, [](props::Rng &rng) {
    return rng() % 2 ? std::string("odd") : std::string();
  });
  CHECK(o.failures > 0);
  CHECK(o.failures < 100);
  CHECK(o.counterexample == "odd");
}
