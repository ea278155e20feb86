#include <doctest.h>

#include "multicat/error.hpp"
#include "multicat/fixtures.hpp"
#include "multicat/reversors.hpp"

using namespace multicat;

namespace {

ReversorStructure pair_groupoid_reversor() {
  const auto g = fixtures::codiscrete(2, 1, 1);
  ReversorStructure r{g.base, 0, ReversorKind::Minimal, {}};
  r.chains[{make_color({1}), {1}}] = {CellTable{{"00", "00"}, {"01", "10"}, {"10", "01"}, {"11", "11"}}};
  return r;
}

}  // namespace

TEST_CASE("vacuous when m reaches the dimension bound") {
  const auto g = fixtures::codiscrete(2, 1, 1);
  CHECK(validate_reversors(ReversorStructure{g.base, 1, ReversorKind::Minimal, {}}).ok());
  CHECK(search_reversors(g, 1, ReversorKind::Minimal).size() == 1);
  CHECK(search_reversors(fixtures::arrow(), 3, ReversorKind::Maximal).size() == 1);
}

TEST_CASE("edge inversion on the pair groupoid") {
  const auto r = pair_groupoid_reversor();
  CHECK(validate_reversors(r).ok());
  auto fixed = r;
  fixed.chains.begin()->second[0]["01"] = "01";
  const auto report = validate_reversors(fixed);
  CHECK(report.has("SWAP-END"));
  CHECK(report.count("SWAP-END") == 2);
  auto missing = r;
  missing.chains.clear();
  CHECK(validate_reversors(missing).has("COVER"));
  auto partial = r;
  partial.chains.begin()->second[0].erase("11");
  CHECK(validate_reversors(partial).has("REV-TOTAL"));
}

TEST_CASE("reversor morphisms") {
  const auto r = pair_groupoid_reversor();
  CHECK(validate_reversor_morphism(identity_morphism(r.base), r, r).ok());

  MsMorphism swap{r.base, r.base, {}};
  swap.map[Color{}] = {{"0", "1"}, {"1", "0"}};
  swap.map[make_color({1})] = {{"00", "11"}, {"01", "10"}, {"10", "01"}, {"11", "00"}};
  CHECK(validate_morphism(swap).ok());
  CHECK(validate_reversor_morphism(swap, r, r).ok());

  const auto z2 = fixtures::z2_loop();
  ReversorStructure trivial{z2.base, 0, ReversorKind::Minimal, {}};
  trivial.chains[{make_color({1}), {1}}] = {CellTable{{"e", "e"}, {"g", "g"}}};
  CHECK(validate_reversors(trivial).ok());
  MsMorphism collapse{r.base, z2.base, {}};
  collapse.map[Color{}] = {{"0", "*"}, {"1", "*"}};
  collapse.map[make_color({1})] = {{"00", "e"}, {"01", "g"}, {"10", "e"}, {"11", "e"}};
  CHECK(validate_morphism(collapse).ok());
  const auto report = validate_reversor_morphism(collapse, r, trivial);
  CHECK(report.has("REV-MOR"));
  CHECK(report.violations()[0].color == make_color({1}));
}

TEST_CASE("search on codiscrete groupoids finds exactly one structure") {
  for (auto [n, d] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}}) {
    const auto g = fixtures::codiscrete(n, d, d);
    for (auto kind : {ReversorKind::Minimal, ReversorKind::Maximal}) {
      const auto found = search_reversors(g, 0, kind);
      REQUIRE(found.size() == 1);
      CHECK(validate_reversors(found[0]).ok());
    }
  }
}

TEST_CASE("maximal chains commute serially before swapping") {
  const auto g = fixtures::codiscrete(2, 2, 2);
  const auto found = search_reversors(g, 0, ReversorKind::Maximal);
  REQUIRE(found.size() == 1);
  const auto& maps = found[0].chains.at({make_color({1, 2}), {1, 2}});
  REQUIRE(maps.size() == 2);
  // Corner order (00,10,01,11) over entries (1,2); the top map reverses the 2-edges.
  CHECK(maps[0].at("0001") == "0100");
  auto broken = found[0];
  broken.chains.at({make_color({1, 2}), {1, 2}})[0]["0001"] = "0001";
  CHECK(validate_reversors(broken).has("SERIAL"));
}

TEST_CASE("no reversor exists on a non-invertible edge") {
  CHECK(search_reversors(fixtures::arrow(), 0, ReversorKind::Minimal).empty());
  const auto p = free_strict(fixtures::path2(), 1, 10);
  CHECK(search_reversors(quotient_to_category(p).category, 0, ReversorKind::Minimal).empty());
}

TEST_CASE("swap triangles alone do not pin down the reversor of a group") {
  const auto z2 = fixtures::z2_loop();
  CHECK(search_reversors(z2, 0, ReversorKind::Minimal).size() == 4);
  const auto inverse = search_reversors(z2, 0, ReversorKind::Minimal, SearchOptions{0, true});
  REQUIRE(inverse.size() == 1);
  CHECK(inverse[0].chains.begin()->second[0].at("g") == "g");
}

TEST_CASE("search respects its budget") {
  const auto g = fixtures::codiscrete(3, 2, 2);
  CHECK_THROWS_AS(search_reversors(g, 0, ReversorKind::Minimal, SearchOptions{10, false}), Error);
}

TEST_CASE("formal reversors of a presentation form a truncated minimal structure") {
  const auto p = free_strict(fixtures::path2(), 1, 6, 0);
  const auto t = truncated_category(p);
  const auto r = presentation_reversors(p, t);
  CHECK(validate_reversors(r, &t.truncation).ok());
  CHECK(validate_strict_all(t.category, &t.truncation).ok());
}
