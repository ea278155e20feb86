#include "multicat/fixtures.hpp"

#include <string>

namespace multicat::fixtures {

namespace {

constexpr Polarity S = Polarity::Source;
constexpr Polarity T = Polarity::Target;

void edge(MultipleSet& ms, int d, const CellId& x, const CellId& from, const CellId& to) {
  const Color c = make_color({d});
  ms.add_cell(c, x);
  ms.set_face(c, x, d, S, from);
  ms.set_face(c, x, d, T, to);
}

// Bit i of a corner index is the position along the i-th entry of the color.
std::string restrict_corners(const std::string& cell, int bit, int side) {
  std::string out;
  for (std::size_t corner = 0; corner < cell.size(); ++corner)
    if (((corner >> bit) & 1U) == static_cast<unsigned>(side)) out.push_back(cell[corner]);
  return out;
}

std::string duplicate_corners(const std::string& cell, int bit) {
  std::string out(cell.size() * 2, '?');
  for (std::size_t corner = 0; corner < out.size(); ++corner) {
    const std::size_t low = corner & ((1U << bit) - 1);
    const std::size_t high = corner >> (bit + 1);
    out[corner] = cell[(high << bit) | low];
  }
  return out;
}

std::string glue_corners(const std::string& a, const std::string& b, int bit) {
  std::string out(a.size(), '?');
  for (std::size_t corner = 0; corner < a.size(); ++corner) out[corner] = ((corner >> bit) & 1U) ? a[corner] : b[corner];
  return out;
}

int position(const Color& c, int d) {
  const auto& es = c.entries();
  int i = 0;
  while (es[i] != d) ++i;
  return i;
}

}  // namespace

MultipleSet square() {
  MultipleSet ms(2, 2);
  for (const char* p : {"p00", "p10", "p01", "p11"}) ms.add_cell(Color{}, p);
  edge(ms, 2, "e1", "p00", "p01");
  edge(ms, 2, "e2", "p10", "p11");
  edge(ms, 1, "e3", "p00", "p10");
  edge(ms, 1, "e4", "p01", "p11");
  const Color sq = make_color({1, 2});
  ms.add_cell(sq, "A");
  ms.set_face(sq, "A", 1, S, "e1");
  ms.set_face(sq, "A", 1, T, "e2");
  ms.set_face(sq, "A", 2, S, "e3");
  ms.set_face(sq, "A", 2, T, "e4");
  return ms;
}

MultipleSet square_broken_st() {
  MultipleSet ms = square();
  ms.set_face(make_color({2}), "e1", 2, T, "p10");
  return ms;
}

MultipleSet point() {
  MultipleSet ms(2, 2);
  ms.add_cell(Color{}, "p");
  return ms;
}

MultipleSet path2() {
  MultipleSet ms(1, 1);
  for (const char* p : {"a", "b", "c"}) ms.add_cell(Color{}, p);
  edge(ms, 1, "y", "a", "b");
  edge(ms, 1, "x", "b", "c");
  return ms;
}

MultipleSet parallel_edges() {
  MultipleSet ms(2, 2);
  ms.add_cell(Color{}, "a");
  ms.add_cell(Color{}, "b");
  edge(ms, 1, "alpha", "a", "b");
  edge(ms, 1, "beta", "a", "b");
  return ms;
}

MultipleSet terminal(int universe_bound, int dim_bound) {
  MultipleSet ms(universe_bound, dim_bound);
  for (const auto& c : all_colors(universe_bound, dim_bound)) {
    ms.add_cell(c, "*");
    for (int d : c.entries()) {
      ms.set_face(c, "*", d, S, "*");
      ms.set_face(c, "*", d, T, "*");
    }
  }
  return ms;
}

MultipleSet grid(int cols, int rows) {
  MultipleSet ms(2, 2);
  auto v = [](int x, int y) { return "v" + std::to_string(x) + "_" + std::to_string(y); };
  for (int x = 0; x <= cols; ++x)
    for (int y = 0; y <= rows; ++y) ms.add_cell(Color{}, v(x, y));
  auto h = [](int x, int y) { return "h" + std::to_string(x) + "_" + std::to_string(y); };
  auto w = [](int x, int y) { return "w" + std::to_string(x) + "_" + std::to_string(y); };
  for (int x = 0; x < cols; ++x)
    for (int y = 0; y <= rows; ++y) edge(ms, 1, h(x, y), v(x, y), v(x + 1, y));
  for (int x = 0; x <= cols; ++x)
    for (int y = 0; y < rows; ++y) edge(ms, 2, w(x, y), v(x, y), v(x, y + 1));
  const Color sq = make_color({1, 2});
  for (int x = 0; x < cols; ++x) {
    for (int y = 0; y < rows; ++y) {
      const CellId q = "q" + std::to_string(x) + "_" + std::to_string(y);
      ms.add_cell(sq, q);
      ms.set_face(sq, q, 1, S, w(x, y));
      ms.set_face(sq, q, 1, T, w(x + 1, y));
      ms.set_face(sq, q, 2, S, h(x, y));
      ms.set_face(sq, q, 2, T, h(x, y + 1));
    }
  }
  return ms;
}

StrictCategory codiscrete(int objects, int universe_bound, int dim_bound) {
  StrictCategory cat;
  cat.base = MultipleSet(universe_bound, dim_bound);
  MultipleSet& ms = cat.base;
  for (const auto& c : all_colors(universe_bound, dim_bound)) {
    const std::size_t corners = std::size_t{1} << c.dim();
    std::size_t total = 1;
    for (std::size_t i = 0; i < corners; ++i) total *= static_cast<std::size_t>(objects);
    for (std::size_t code = 0; code < total; ++code) {
      std::string cell(corners, '0');
      std::size_t rest = code;
      for (std::size_t i = 0; i < corners; ++i, rest /= objects) cell[i] = static_cast<char>('0' + rest % objects);
      ms.add_cell(c, cell);
      for (int d : c.entries()) {
        const int bit = position(c, d);
        ms.set_face(c, cell, d, S, restrict_corners(cell, bit, 0));
        ms.set_face(c, cell, d, T, restrict_corners(cell, bit, 1));
      }
      for (int l = 1; l <= universe_bound; ++l) {
        if (!admissible_reflexion(ms, c, l)) continue;
        cat.refl[{c, l}][cell] = duplicate_corners(cell, position(add(c, l), l));
      }
    }
  }
  for (const auto& [c, ids] : ms.all_cells()) {
    for (int d : c.entries()) {
      const int bit = position(c, d);
      for (const auto& a : ids)
        for (const auto& b : ids)
          if (composable(ms, c, a, b, d)) cat.comp[{c, d}][{a, b}] = glue_corners(a, b, bit);
    }
  }
  return cat;
}

StrictCategory z2_loop() {
  StrictCategory cat;
  cat.base = MultipleSet(1, 1);
  cat.base.add_cell(Color{}, "*");
  for (const char* g : {"e", "g"}) edge(cat.base, 1, g, "*", "*");
  cat.refl[{Color{}, 1}]["*"] = "e";
  auto& table = cat.comp[{make_color({1}), 1}];
  table[{"e", "e"}] = "e";
  table[{"e", "g"}] = "g";
  table[{"g", "e"}] = "g";
  table[{"g", "g"}] = "e";
  return cat;
}

StrictCategory arrow() {
  StrictCategory cat;
  cat.base = MultipleSet(1, 1);
  cat.base.add_cell(Color{}, "a");
  cat.base.add_cell(Color{}, "b");
  edge(cat.base, 1, "1a", "a", "a");
  edge(cat.base, 1, "1b", "b", "b");
  edge(cat.base, 1, "f", "a", "b");
  cat.refl[{Color{}, 1}] = {{"a", "1a"}, {"b", "1b"}};
  auto& table = cat.comp[{make_color({1}), 1}];
  table[{"1a", "1a"}] = "1a";
  table[{"1b", "1b"}] = "1b";
  table[{"f", "1a"}] = "f";
  table[{"1b", "f"}] = "f";
  return cat;
}

StrictCategory discrete_point(int universe_bound, int dim_bound) {
  return codiscrete(1, universe_bound, dim_bound);
}

}  // namespace multicat::fixtures
