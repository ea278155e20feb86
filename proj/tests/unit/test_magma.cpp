#include <doctest.h>

#include "multicat/error.hpp"
#include "multicat/fixtures.hpp"

using namespace multicat;

TEST_CASE("hand-built strict fixtures pass every layer") {
  for (const auto& cat : {fixtures::codiscrete(2, 1, 1), fixtures::codiscrete(2, 2, 2), fixtures::codiscrete(3, 2, 1),
                          fixtures::z2_loop(), fixtures::arrow(), fixtures::discrete_point(2, 2)}) {
    CHECK(validate_strict_all(cat).ok());
  }
}

TEST_CASE("compose follows the pullback") {
  const auto cat = fixtures::arrow();
  const Color e = make_color({1});
  CHECK(compose(cat, e, "f", "1a", 1) == "f");
  CHECK(compose(cat, e, "1b", "f", 1) == "f");
  try {
    compose(cat, e, "1a", "f", 1);
    FAIL("composed across a gap");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotComposable);
    CHECK(std::string(err.what()).find("s_1(1a)=a") != std::string::npos);
  }
  CHECK_THROWS_AS(compose(cat, e, "g", "f", 1), Error);
}

TEST_CASE("composites of the codiscrete groupoid sit in the right place") {
  const auto cat = fixtures::codiscrete(2, 1, 1);
  const Color e = make_color({1});
  // Corner order is (source, target); "10" o "01" glues 0 -> 1 -> 0.
  const CellId r = compose(cat, e, "10", "01", 1);
  CHECK(face(cat.base, e, r, 1, Polarity::Source) == face(cat.base, e, "01", 1, Polarity::Source));
  CHECK(face(cat.base, e, r, 1, Polarity::Target) == face(cat.base, e, "10", 1, Polarity::Target));
  CHECK(compose(cat, e, "01", cat.refl.at({Color{}, 1}).at("0"), 1) == "01");
}

TEST_CASE("retargeting a composite is a POS1 violation") {
  auto cat = fixtures::codiscrete(2, 1, 1);
  cat.comp[{make_color({1}), 1}][{"10", "01"}] = "01";
  CHECK(validate_magma(cat).has("POS1"));
}

TEST_CASE("an undefined face composite is a POS2 violation") {
  auto cat = fixtures::codiscrete(2, 2, 2);
  const Color e1 = make_color({1});
  cat.comp[{e1, 1}].erase({"10", "01"});
  const auto report = validate_magma(cat);
  CHECK(report.has("POS2"));
  CHECK(report.has("COMP-TOTAL"));
  bool undefined = false;
  for (const auto& v : report.violations()) undefined = undefined || v.detail.find("undefined") != std::string::npos;
  CHECK(undefined);
}

TEST_CASE("rewiring a degeneracy breaks distribution") {
  auto cat = fixtures::codiscrete(2, 2, 2);
  cat.refl[{make_color({1}), 2}]["01"] = "0000";
  const auto report = validate_reflexive_magma(cat);
  CHECK(report.has("REFL-DIST"));
  bool named = false;
  for (const auto& v : report.violations()) named = named || v.detail.find("k=2") != std::string::npos;
  CHECK(named);
}

TEST_CASE("no composable pairs is vacuously fine") {
  MagmaStructure m{fixtures::square(), {}, {}};
  m.base = MultipleSet(2, 2);
  CHECK(validate_magma(m).ok());
  CHECK(validate_reflexive_magma(m).ok());
}

TEST_CASE("strict axioms are each detectable") {
  auto broken_unit = fixtures::z2_loop();
  broken_unit.comp[{make_color({1}), 1}][{"g", "e"}] = "e";
  CHECK(validate_strict(broken_unit).has("UNIT"));
  CHECK(validate_strict(broken_unit).has("ASSOC"));
}
