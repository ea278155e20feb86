#include <doctest.h>

#include "multicat/document.hpp"
#include "multicat/error.hpp"
#include "multicat/fixtures.hpp"

using namespace multicat;

namespace {

void round_trips(const Document& d) {
  const std::string once = serialize(d);
  const Document back = parse_document(once);
  CHECK(serialize(back) == once);
  CHECK(back.structure == d.structure);
  CHECK(validate_document(back).render() == validate_document(d).render());
}

std::string parse_error_of(std::string_view text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("documents round-trip") {
  round_trips(multiple_set_document(fixtures::square()));
  round_trips(multiple_set_document(fixtures::square_broken_st()));
  round_trips(multiple_set_document(MultipleSet(2, 2)));
  round_trips(strict_document(fixtures::codiscrete(2, 2, 2)));
  round_trips(strict_document(fixtures::z2_loop()));

  StrictPresentation p = free_strict(fixtures::path2(), 1, 6);
  TabulatedCategory q = truncated_category(p);
  round_trips(strict_document(q.category, q.truncation));

  FreeWeakResult w = free_weak(fixtures::path2(), 0, 1, 3, 1);
  Document weak = weak_document(w);
  round_trips(weak);
  Document back = parse_document(serialize(weak));
  REQUIRE(back.stretching);
  CHECK(back.stretching->pi == w.stretching.pi);
  CHECK(back.stretching->brackets == w.stretching.brackets);
  CHECK(back.stretching->m_reversors == w.stretching.m_reversors);
  CHECK(back.stretching->c_truncation->open == w.stretching.c_truncation->open);
  CHECK(back.stage_log.size() == w.log.size());
  CHECK(validate_document(back).ok());

  Document rev;
  rev.kind = DocumentKind::Reversors;
  rev.structure = fixtures::codiscrete(2, 1, 1);
  rev.reversors = search_reversors(rev.structure, 0, ReversorKind::Minimal).at(0);
  round_trips(rev);
  CHECK(validate_document(rev).ok());
}

TEST_CASE("canonical bytes ignore construction order") {
  MultipleSet a(1, 1), b(1, 1);
  a.add_cell(Color{}, "x");
  a.add_cell(Color{}, "y");
  b.add_cell(Color{}, "y");
  b.add_cell(Color{}, "x");
  CHECK(serialize(multiple_set_document(a)) == serialize(multiple_set_document(b)));
}

TEST_CASE("validation follows the kind") {
  Document d = multiple_set_document(fixtures::square_broken_st());
  ValidationReport r = validate_document(d);
  REQUIRE(r.violations().size() == 1);
  CHECK(r.violations()[0].axiom == "ST");

  Document z = strict_document(fixtures::z2_loop());
  CHECK(validate_document(z).ok());
  z.structure.comp.at({make_color({1}), 1}).at({"e", "e"}) = "g";
  CHECK_FALSE(validate_document(z).ok());
  CHECK(validate_document(z, {DocumentKind::MultipleSet, {}, {}}).ok());
}

TEST_CASE("parse errors carry positions") {
  CHECK(parse_error_of("{\n  \"kind\": ,\n}").find("line 2 column 11") != std::string::npos);
  CHECK(parse_error_of("").find("line 1 column 1") != std::string::npos);
  CHECK(parse_error_of("{\"format_version\": 1}").find("$: missing key 'kind'") != std::string::npos);
  CHECK(parse_error_of("{\"format_version\": 2, \"kind\": \"strict\"}").find("unsupported version") != std::string::npos);
  CHECK(parse_error_of(R"({"format_version": 1, "kind": "multiple-set", "universe_bound": 1, "dim_bound": 1,
                          "cells": {"[2,1]": ["x"]}, "faces": {}})")
            .find("$.cells.[2,1]") != std::string::npos);
  CHECK(parse_error_of(R"({"format_version": 1, "kind": "multiple-set", "universe_bound": 1, "dim_bound": 1,
                          "cells": {}, "faces": {"[1]": {"x": {"1": ["a"]}}}})")
            .find("expected [source, target]") != std::string::npos);
  CHECK_THROWS_AS(read_document("/nonexistent/file.mset"), Error);
}
