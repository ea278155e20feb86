#include <doctest.h>

#include "multicat/error.hpp"
#include "multicat/fixtures.hpp"
#include "multicat/stretching.hpp"
#include "oracles/stage_oracle.hpp"

using namespace multicat;

namespace {

Color C(std::initializer_list<int> e) { return make_color(e); }

ValidationReport all_layers(const FreeWeakResult& w) {
  const Stretching& e = w.stretching;
  const Truncation* t = e.m_truncation ? &*e.m_truncation : nullptr;
  ValidationReport r = validate_multiple_set(e.M.base);
  r.merge(validate_reflexive(e.M.reflexive_part(), {}, t));
  r.merge(validate_magma(e.M, t));
  r.merge(validate_reflexive_magma(e.M, t));
  r.merge(validate_strict_all(e.C, e.c_truncation ? &*e.c_truncation : nullptr));
  if (e.m_reversors) r.merge(validate_reversors(*e.m_reversors, t));
  if (e.c_reversors) r.merge(validate_reversors(*e.c_reversors, e.c_truncation ? &*e.c_truncation : nullptr));
  r.merge(validate_stretching(e));
  return r.canonicalize();
}

std::size_t at(const std::map<std::pair<Color, int>, std::size_t>& m, const std::pair<Color, int>& k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

void check_against_oracle(const MultipleSet& x, int n, int s, int stages, int oracle_size) {
  FreeWeakResult w = free_weak(x, std::nullopt, n, s, stages);
  oracle::StageOracle o(x, n, s, stages, oracle_size);
  REQUIRE(w.log.size() == o.log.size());
  for (std::size_t k = 0; k < w.log.size(); ++k) {
    CAPTURE(k);
    CHECK(w.log[k].cells == o.log[k].cells);
    CHECK(w.log[k].pairs == o.log[k].pairs);
    CHECK(w.log[k].brackets == o.log[k].brackets);
  }
  std::map<Color, std::set<CellId>> names;
  for (const auto& [key, t] : o.cells()) names[t.color].insert(key);
  CHECK(w.stretching.M.base.all_cells() == names);
  CHECK(all_layers(w).render() == "");
}

}  // namespace

TEST_CASE("one object: stage 1 adds the reflexion and one bracket") {
  MultipleSet x(1, 1);
  x.add_cell(Color{}, "p");
  FreeWeakResult w = free_weak(x, std::nullopt, 1, 1, 1);
  const Stretching& e = w.stretching;
  CHECK(e.M.base.cells(C({1})) == std::set<CellId>{"1_1(p)", "[p;p]_1"});
  CHECK(e.pi.at(C({1})).at("1_1(p)") == "1_1(p)");
  CHECK(e.pi.at(C({1})).at("[p;p]_1") == "1_1(p)");
  CHECK(find_bracket(e.brackets, Color{}, 1, "p", "p") == "[p;p]_1");
  CHECK(all_layers(w).render() == "");
  CHECK(validate_morphism(w.unit).ok());
}

TEST_CASE("stage 0 is X alone and fails totality") {
  FreeWeakResult w = free_weak(fixtures::path2(), std::nullopt, 1, 3, 0);
  CHECK(w.stretching.M.base == fixtures::path2());
  ValidationReport r = validate_stretching(w.stretching);
  CHECK(r.has("BR-TOTAL"));
  CHECK(validate_reflexive(w.stretching.M.reflexive_part()).has("REFL-TOTAL"));
}

TEST_CASE("parallel edges: brackets only join cells pi identifies") {
  FreeWeakResult w = free_weak(fixtures::parallel_edges(), std::nullopt, 2, 1, 1);
  const Stretching& e = w.stretching;
  CHECK(e.pi.at(C({1})).at("alpha") != e.pi.at(C({1})).at("beta"));
  CHECK(find_bracket(e.brackets, C({1}), 2, "alpha", "alpha"));
  CHECK(find_bracket(e.brackets, C({1}), 2, "beta", "beta"));
  CHECK_FALSE(find_bracket(e.brackets, C({1}), 2, "alpha", "beta"));
  CHECK(e.brackets.at({C({1}), 2}).size() == 2);
  CHECK(w.log[1].brackets.at({C({1}), 2}) == 2);
  CHECK(all_layers(w).render() == "");
}

TEST_CASE("bracket counts match the previous stage's pi-equal pairs") {
  const std::vector<std::tuple<MultipleSet, int, int, int>> cases = {
      {fixtures::point(), 2, 1, 2},
      {fixtures::point(), 2, 3, 1},
      {fixtures::path2(), 1, 3, 2},
      {fixtures::parallel_edges(), 2, 1, 2},
      {fixtures::arrow().base, 1, 3, 1},
  };
  for (const auto& [x, n, s, k] : cases) {
    FreeWeakResult w = free_weak(x, std::nullopt, n, s, k);
    for (std::size_t i = 1; i < w.log.size(); ++i) {
      CAPTURE(i);
      std::set<std::pair<Color, int>> keys;
      for (const auto& [key, v] : w.log[i].pairs) keys.insert(key);
      for (const auto& [key, v] : w.log[i].brackets) keys.insert(key);
      for (const auto& key : keys) CHECK(at(w.log[i].brackets, key) == at(w.log[i].pairs, key));
    }
  }
}

TEST_CASE("stage simulation oracle agrees") {
  MultipleSet one(1, 1);
  one.add_cell(Color{}, "p");
  check_against_oracle(one, 1, 3, 2, 6);
  check_against_oracle(fixtures::point(), 2, 1, 2, 5);
  check_against_oracle(fixtures::path2(), 1, 3, 1, 6);
  check_against_oracle(fixtures::parallel_edges(), 2, 1, 2, 4);
  check_against_oracle(fixtures::point(), 2, 3, 1, 7);
  check_against_oracle(fixtures::parallel_edges(), 2, 3, 1, 7);
}

TEST_CASE("every bracket projects to a degeneracy") {
  FreeWeakResult w = free_weak(fixtures::parallel_edges(), std::nullopt, 2, 1, 2);
  const Stretching& e = w.stretching;
  std::size_t checked = 0;
  for (const auto& [key, table] : e.brackets) {
    const auto& [c, r] = key;
    for (const auto& [ab, g] : table) {
      const CellId& pa = e.pi.at(c).at(ab.first);
      CHECK(pa == e.pi.at(c).at(ab.second));
      CHECK(e.pi.at(add(c, r)).at(g) == *find_reflexion(e.C.refl, c, pa, r));
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("wrong bracket source is reported") {
  FreeWeakResult w = free_weak(fixtures::path2(), std::nullopt, 1, 1, 1);
  Stretching e = w.stretching;
  REQUIRE(validate_stretching(e).ok());
  e.M.base.set_face(C({1}), "[a;a]_1", 1, Polarity::Source, "b");
  ValidationReport r = validate_stretching(e);
  REQUIRE(r.count("BR-END") == 1);
  const Violation& v = r.violations().front();
  CHECK(v.axiom == "BR-END");
  CHECK(v.color == Color{});
  CHECK(v.cells == std::vector<std::string>{"a", "a", "[a;a]_1"});
  CHECK(v.detail == "r=1 source");
}

TEST_CASE("bracket and projection mutations") {
  FreeWeakResult w = free_weak(fixtures::parallel_edges(), std::nullopt, 2, 1, 1);
  SUBCASE("pi moved off a degeneracy") {
    Stretching e = w.stretching;
    e.pi[C({1, 2})]["[alpha;alpha]_2"] = e.pi.at(C({1, 2})).at("1_1(1_2(a))");
    CHECK(validate_stretching(e).has("BR-PI"));
  }
  SUBCASE("bracket removed") {
    Stretching e = w.stretching;
    e.brackets[{Color{}, 1}].erase({"a", "a"});
    e.m_truncation.reset();
    CHECK(validate_stretching(e).has("BR-TOTAL"));
  }
  SUBCASE("bracket of non-identified pair") {
    Stretching e = w.stretching;
    e.brackets[{C({1}), 2}][{"alpha", "beta"}] = "[alpha;alpha]_2";
    CHECK(validate_stretching(e).has("BR-SHAPE"));
  }
  SUBCASE("face bracket rewired") {
    Stretching e = w.stretching;
    e.M.base.set_face(C({1, 2}), "[alpha;alpha]_2", 1, Polarity::Source, "1_2(b)");
    CHECK(validate_stretching(e).has("BR-FACE"));
  }
  SUBCASE("pi breaks a face") {
    Stretching e = w.stretching;
    e.pi[Color{}]["a"] = "b";
    CHECK(validate_stretching(e).has("PI-FACE"));
  }
}

TEST_CASE("identity stretching") {
  for (const StrictCategory& k : {fixtures::codiscrete(2, 1, 1), fixtures::codiscrete(2, 2, 2), fixtures::z2_loop()}) {
    Stretching e = identity_stretching(k);
    CHECK(validate_stretching(e).render() == "");
    CellMap id;
    for (const auto& [c, ids] : k.base.all_cells())
      for (const auto& x : ids) id[c][x] = x;
    CHECK(validate_stretching_morphism(e, e, id, id).render() == "");
  }
}

TEST_CASE("projection into the identity stretching of C is a morphism") {
  FreeWeakResult w = free_weak(fixtures::path2(), std::nullopt, 1, 3, 1);
  const Stretching& e = w.stretching;
  Stretching target = identity_stretching(e.C);
  target.m_truncation = e.c_truncation;
  target.c_truncation = e.c_truncation;
  CellMap id;
  for (const auto& [c, ids] : e.C.base.all_cells())
    for (const auto& x : ids) id[c][x] = x;
  CHECK(validate_stretching_morphism(e, target, e.pi, id).render() == "");
  const MsMorphism eta = w.unit;
  for (const auto& [c, table] : eta.map)
    for (const auto& [x, y] : table) CHECK(e.pi.at(c).at(y) == x);

  CellMap broken = e.pi;
  broken[C({1})]["y"] = "1_1(b)";
  ValidationReport r = validate_stretching_morphism(e, target, broken, id);
  CHECK(r.has("SQUARE"));
  bool named = false;
  for (const auto& v : r.violations())
    if (v.axiom == "SQUARE") named = named || (v.color == C({1}) && v.cells == std::vector<std::string>{"y"});
  CHECK(named);
}

TEST_CASE("algebra unit law") {
  const StrictCategory k = fixtures::codiscrete(2, 1, 1);
  FreeWeakResult w = free_weak(k.base, std::nullopt, 1, 3, 1);
  MsMorphism h = collapse_into(w, k);
  CHECK(validate_morphism(h).ok());
  CHECK(validate_magma_morphism(w.stretching.M, k, h.map).render() == "");
  CHECK(algebra_unit_check(w, h).ok());

  MsMorphism moved = h;
  moved.map[Color{}]["0"] = "1";
  ValidationReport r = algebra_unit_check(w, moved);
  REQUIRE(r.count("ALG-UNIT") == 1);
  CHECK(r.violations().front().cells == std::vector<std::string>{"0", "1"});

  FreeWeakResult empty = free_weak(MultipleSet(1, 1), std::nullopt, 1, 3, 1);
  CHECK(algebra_unit_check(empty, collapse_into(empty, k)).ok());
}

TEST_CASE("formal reversors in the free stretching") {
  FreeWeakResult w = free_weak(fixtures::path2(), 0, 1, 3, 1);
  const Stretching& e = w.stretching;
  REQUIRE(e.m_reversors);
  REQUIRE(e.c_reversors);
  CHECK(e.m_reversors->chains.at({C({1}), {1}}).at(0).at("y") == "j_1(y)");
  CHECK(e.M.base.find_face(C({1}), "j_1(y)", 1, Polarity::Source) == "b");
  CHECK(all_layers(w).render() == "");

  Stretching bad = e;
  bad.pi[C({1})]["j_1(y)"] = bad.pi.at(C({1})).at("y");
  CHECK(validate_stretching(bad).has("PI-REV"));
}

TEST_CASE("free_weak rejects bad input") {
  CHECK_THROWS_AS(free_weak(fixtures::square_broken_st(), std::nullopt, 2, 3, 1), Error);
  CHECK_THROWS_AS(free_weak(fixtures::point(), std::nullopt, 2, 0, 1), Error);
}
