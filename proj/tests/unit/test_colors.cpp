#include <doctest.h>

#include "multicat/color.hpp"
#include "multicat/error.hpp"

using namespace multicat;

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("make_color accepts increasing positive sequences") {
  Color c = make_color({1, 3, 5});
  CHECK(c.dim() == 3);
  CHECK(c.to_string() == "[1,3,5]");
  CHECK(make_color({}).empty());
}

TEST_CASE("make_color names the offending position") {
  try {
    make_color({1, 3, 3});
    FAIL("accepted a repeated entry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotStrictlyIncreasing);
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
  CHECK(code_of([] { make_color({0, 2}); }) == ErrorCode::NonPositiveEntry);
}

TEST_CASE("minus and add") {
  CHECK(minus(make_color({1, 3, 5}), 3) == make_color({1, 5}));
  CHECK(minus(make_color({2}), 2).empty());
  CHECK(code_of([] { minus(make_color({1, 3}), 2); }) == ErrorCode::EntryAbsent);
  CHECK(add(make_color({1, 3}), 2) == make_color({1, 2, 3}));
  CHECK(add(Color{}, 4) == make_color({4}));
  CHECK(code_of([] { add(make_color({1, 2}), 2); }) == ErrorCode::EntryPresent);
  CHECK(code_of([] { add(make_color({1, 2}), 0); }) == ErrorCode::NonPositiveEntry);
}

TEST_CASE("k_colors enumerates subsequences") {
  auto two = k_colors(make_color({1, 2, 3}), 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == make_color({1, 2}));
  CHECK(two[1] == make_color({1, 3}));
  CHECK(two[2] == make_color({2, 3}));
  auto none = k_colors(make_color({1, 2}), 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());
  const Color four = make_color({1, 2, 3, 4});
  auto three = k_colors(four, 3);
  CHECK(three.size() == 4);
  for (const auto& c : three) CHECK(c == minus(four, difference(four, c).entries()[0]));
  CHECK(code_of([&] { k_colors(four, 5); }) == ErrorCode::KOutOfRange);
}

TEST_CASE("color laws over every color up to dimension 8") {
  for (const auto& c : all_colors(8, 8)) {
    for (int k = 0; k <= static_cast<int>(c.dim()); ++k)
      CHECK(static_cast<long>(k_colors(c, k).size()) == binomial(static_cast<int>(c.dim()), k));
    for (int d : c.entries()) CHECK(add(minus(c, d), d) == c);
    for (int l = 1; l <= 9; ++l)
      if (!c.contains(l)) CHECK(minus(add(c, l), l) == c);
    for (int a : c.entries())
      for (int b : c.entries())
        if (a != b) CHECK(minus(minus(c, a), b) == minus(minus(c, b), a));
  }
}

TEST_CASE("all_colors orders by dimension then lexicographically") {
  auto cs = all_colors(3, 2);
  REQUIRE(cs.size() == 7);
  CHECK(cs[0].empty());
  CHECK(cs[3] == make_color({3}));
  CHECK(cs[6] == make_color({2, 3}));
}
