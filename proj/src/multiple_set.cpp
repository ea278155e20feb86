#include "multicat/multiple_set.hpp"

#include <functional>
#include <random>

#include "multicat/error.hpp"

namespace multicat {

namespace {

const std::set<CellId> kNoCells;

std::string entry_detail(int j, int k) { return "j=" + std::to_string(j) + " k=" + std::to_string(k); }

bool within_bounds(const MultipleSet& ms, const Color& c) {
  return static_cast<int>(c.dim()) <= ms.dim_bound() && c.max_entry() <= ms.universe_bound();
}

}  // namespace

bool MultipleSet::has_cell(const Color& c, const CellId& x) const {
  auto it = cells_.find(c);
  return it != cells_.end() && it->second.count(x) > 0;
}

const std::set<CellId>& MultipleSet::cells(const Color& c) const {
  auto it = cells_.find(c);
  return it == cells_.end() ? kNoCells : it->second;
}

std::size_t MultipleSet::cell_count() const {
  std::size_t n = 0;
  for (const auto& [c, ids] : cells_) n += ids.size();
  return n;
}

std::optional<CellId> MultipleSet::find_face(const Color& c, const CellId& x, int d, Polarity p) const {
  auto table = faces_.find(FaceKey{c, d, p});
  if (table == faces_.end()) return std::nullopt;
  auto it = table->second.find(x);
  if (it == table->second.end()) return std::nullopt;
  return it->second;
}

CellId face(const MultipleSet& ms, const Color& c, const CellId& x, int d, Polarity p) {
  if (!c.contains(d)) throw Error(ErrorCode::EntryAbsent, std::to_string(d) + " not in " + c.to_string());
  if (!ms.has_cell(c, x)) throw Error(ErrorCode::UnknownCell, x + " at " + c.to_string());
  auto f = ms.find_face(c, x, d, p);
  if (!f) throw Error(ErrorCode::UnknownCell, "no " + std::string(to_string(p)) + " face of " + x);
  return *f;
}

CellKey iterated_face(const MultipleSet& ms, const Color& c, const CellId& x, const std::vector<FaceStep>& steps) {
  Color color = c;
  CellId cell = x;
  for (const auto& step : steps) {
    cell = face(ms, color, cell, step.direction, step.polarity);
    color = minus(color, step.direction);
  }
  return {color, cell};
}

ValidationReport validate_multiple_set(const MultipleSet& ms) {
  ValidationReport report;

  for (const auto& [c, ids] : ms.all_cells()) {
    if (!within_bounds(ms, c)) report.add("SHAPE", c, {}, "color outside bounds");
  }
  for (const auto& [key, table] : ms.face_tables()) {
    if (!key.color.contains(key.direction)) {
      report.add("SHAPE", key.color, {}, "face table for absent entry " + std::to_string(key.direction));
      continue;
    }
    const Color lower = minus(key.color, key.direction);
    for (const auto& [x, y] : table) {
      if (!ms.has_cell(key.color, x)) {
        report.add("SHAPE", key.color, {x}, "face entry for unknown cell");
      } else if (!ms.has_cell(lower, y)) {
        report.add("FACE-RANGE", key.color, {x, y},
                   "entry=" + std::to_string(key.direction) + " " + to_string(key.polarity));
      }
    }
  }

  for (const auto& [c, ids] : ms.all_cells()) {
    for (const auto& x : ids) {
      for (int d : c.entries()) {
        for (Polarity p : {Polarity::Source, Polarity::Target}) {
          if (!ms.find_face(c, x, d, p)) {
            report.add("FACE-TOTAL", c, {x}, "entry=" + std::to_string(d) + " " + to_string(p));
          }
        }
      }
    }
  }

  // Looks up face_b(face_a(x)); nullopt if any table entry is missing.
  auto twice = [&](const Color& c, const CellId& x, int a, Polarity pa, int b, Polarity pb) -> std::optional<CellId> {
    auto first = ms.find_face(c, x, a, pa);
    if (!first) return std::nullopt;
    return ms.find_face(minus(c, a), *first, b, pb);
  };

  for (const auto& [c, ids] : ms.all_cells()) {
    if (c.dim() < 2) continue;
    const auto& es = c.entries();
    for (const auto& x : ids) {
      for (std::size_t a = 0; a < es.size(); ++a) {
        for (std::size_t b = 0; b < es.size(); ++b) {
          if (a == b) continue;
          const int j = es[a], k = es[b];
          if (a < b) {
            auto l = twice(c, x, j, Polarity::Source, k, Polarity::Source);
            auto r = twice(c, x, k, Polarity::Source, j, Polarity::Source);
            if (l && r && *l != *r) report.add("SS", c, {x, *l, *r}, entry_detail(j, k));
            l = twice(c, x, j, Polarity::Target, k, Polarity::Target);
            r = twice(c, x, k, Polarity::Target, j, Polarity::Target);
            if (l && r && *l != *r) report.add("TT", c, {x, *l, *r}, entry_detail(j, k));
          }
          // t_k(s_j x) = s_j(t_k x)
          auto l = twice(c, x, j, Polarity::Source, k, Polarity::Target);
          auto r = twice(c, x, k, Polarity::Target, j, Polarity::Source);
          if (l && r && *l != *r) report.add("ST", c, {x, *l, *r}, entry_detail(j, k));
        }
      }
    }
  }
  return report.canonicalize();
}

const CellId& MsMorphism::operator()(const Color& c, const CellId& x) const {
  auto table = map.find(c);
  if (table != map.end()) {
    auto it = table->second.find(x);
    if (it != table->second.end()) return it->second;
  }
  throw Error(ErrorCode::UnknownCell, "no image for " + x + " at " + c.to_string());
}

ValidationReport validate_morphism(const MsMorphism& f) {
  ValidationReport report;
  auto image = [&](const Color& c, const CellId& x) -> std::optional<CellId> {
    auto t = f.map.find(c);
    if (t == f.map.end()) return std::nullopt;
    auto it = t->second.find(x);
    if (it == t->second.end()) return std::nullopt;
    return it->second;
  };

  for (const auto& [c, ids] : f.source.all_cells()) {
    for (const auto& x : ids) {
      auto fx = image(c, x);
      if (!fx) {
        report.add("MOR-TOTAL", c, {x});
      } else if (!f.target.has_cell(c, *fx)) {
        report.add("MOR-RANGE", c, {x, *fx});
      }
    }
  }
  for (const auto& [c, ids] : f.source.all_cells()) {
    for (const auto& x : ids) {
      auto fx = image(c, x);
      if (!fx) continue;
      for (int d : c.entries()) {
        for (Polarity p : {Polarity::Source, Polarity::Target}) {
          auto fx_face = f.target.find_face(c, *fx, d, p);
          auto x_face = f.source.find_face(c, x, d, p);
          if (!fx_face || !x_face) continue;
          auto f_x_face = image(minus(c, d), *x_face);
          if (!f_x_face || *f_x_face != *fx_face) {
            report.add("MOR-FACE", c, {x, f_x_face.value_or("?"), *fx_face},
                       "entry=" + std::to_string(d) + " " + to_string(p));
          }
        }
      }
    }
  }
  return report.canonicalize();
}

MsMorphism identity_morphism(const MultipleSet& ms) {
  MsMorphism f{ms, ms, {}};
  for (const auto& [c, ids] : ms.all_cells()) {
    for (const auto& x : ids) f.map[c][x] = x;
  }
  return f;
}

MsMorphism compose(const MsMorphism& g, const MsMorphism& f) {
  MsMorphism out{f.source, g.target, {}};
  for (const auto& [c, table] : f.map) {
    for (const auto& [x, y] : table) out.map[c][x] = g(c, y);
  }
  return out;
}

MultipleSet random_multiple_set(int universe_bound, int dim_bound, SizeProfile profile, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  // Cells of the free cube on a generator g at color c are indexed by partial
  // polarity assignments P on entries of c; the face in direction d is P + {d:p}.
  struct Cell {
    Color color;
    std::string name;
    std::map<int, Polarity> assigned;
    int generator;
  };
  std::vector<Cell> cells;
  std::map<std::tuple<int, std::map<int, Polarity>>, int> index;
  std::map<Color, std::vector<int>> by_color;

  auto name_of = [](int g, const std::map<int, Polarity>& assigned) {
    std::string n = "g" + std::to_string(g);
    if (!assigned.empty()) n += '/';
    for (const auto& [d, p] : assigned) n += (p == Polarity::Source ? "s" : "t") + std::to_string(d);
    return n;
  };

  const auto colors = all_colors(universe_bound, dim_bound);
  int generator = 0;
  for (const auto& c : colors) {
    for (int n = 0; n < profile.generators_per_color; ++n, ++generator) {
      const auto& es = c.entries();
      // Every subset of entries, every polarity pattern on it.
      for (std::size_t mask = 0; mask < (std::size_t{1} << es.size()); ++mask) {
        std::vector<int> chosen;
        for (std::size_t i = 0; i < es.size(); ++i)
          if (mask & (std::size_t{1} << i)) chosen.push_back(es[i]);
        for (std::size_t pol = 0; pol < (std::size_t{1} << chosen.size()); ++pol) {
          std::map<int, Polarity> assigned;
          for (std::size_t i = 0; i < chosen.size(); ++i)
            assigned[chosen[i]] = (pol & (std::size_t{1} << i)) ? Polarity::Target : Polarity::Source;
          Color color = c;
          for (int d : chosen) color = minus(color, d);
          int id = static_cast<int>(cells.size());
          cells.push_back({color, name_of(generator, assigned), assigned, generator});
          index[{generator, assigned}] = id;
          by_color[color].push_back(id);
        }
      }
    }
  }

  auto face_of = [&](int id, int d, Polarity p) {
    auto assigned = cells[id].assigned;
    assigned[d] = p;
    return index.at({cells[id].generator, assigned});
  };

  std::vector<int> parent(cells.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };

  // Merging two cells forces their faces to merge too, so faces stay well defined.
  auto merge = [&](int a, int b) {
    std::vector<std::pair<int, int>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (cells[y].name < cells[x].name) std::swap(x, y);
      parent[y] = x;
      for (int d : cells[x].color.entries()) {
        for (Polarity p : {Polarity::Source, Polarity::Target}) work.push_back({face_of(x, d, p), face_of(y, d, p)});
      }
    }
  };

  for (const auto& c : colors) {
    auto it = by_color.find(c);
    if (it == by_color.end() || it->second.size() < 2) continue;
    for (int n = 0; n < profile.merges_per_color; ++n) {
      merge(it->second[pick(it->second.size())], it->second[pick(it->second.size())]);
    }
  }

  MultipleSet ms(universe_bound, dim_bound);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
    const auto& cell = cells[i];
    ms.add_cell(cell.color, cell.name);
    for (int d : cell.color.entries()) {
      for (Polarity p : {Polarity::Source, Polarity::Target}) {
        ms.set_face(cell.color, cell.name, d, p, cells[find(face_of(static_cast<int>(i), d, p))].name);
      }
    }
  }
  return ms;
}

}  // namespace multicat
