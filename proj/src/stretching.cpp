#include "multicat/stretching.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "multicat/error.hpp"

namespace multicat {

namespace {

const CellId* lookup(const CellMap& m, const Color& c, const CellId& x) {
  auto t = m.find(c);
  if (t == m.end()) return nullptr;
  auto it = t->second.find(x);
  return it == t->second.end() ? nullptr : &it->second;
}

std::string path_suffix(const std::vector<std::pair<int, Polarity>>& path) {
  std::string s = "|";
  for (const auto& [d, p] : path) s += (p == Polarity::Source ? "s" : "t") + std::to_string(d);
  return s;
}

bool bracket_admissible(const MultipleSet& ms, const Color& c, int r) { return admissible_reflexion(ms, c, r); }

using Kind = WeakCell::Kind;

struct Atom {
  Kind kind;
  Color color;
  CellId gen;
  int a = -1;  // bracket source or reversed cell
  int b = -1;  // bracket target
  int dir = 0;
  std::vector<std::pair<int, Polarity>> path;
  std::string name;
  TermId pi = -1;
};
using AtomKey = std::tuple<Kind, Color, CellId, int, int, int, std::vector<std::pair<int, Polarity>>>;

struct Cell {
  bool comp = false;
  int atom = -1;
  Color added;
  int dir = 0;
  int left = -1, right = -1;
  Color color;
  int size = 1;
  int stage = 0;
  std::string name;
  TermId pi = -1;
  std::vector<int> faces;  // slot 2(d-1)+p
};
using CellIndexKey = std::tuple<bool, int, Color, int, int, int>;

class WeakBuilder {
 public:
  WeakBuilder(const MultipleSet& x, std::optional<int> m, int dim_bound, int size_bound, StrictPresentation& p)
      : x_(x), m_(m), dims_(dim_bound), size_(size_bound), p_(p), shape_(x.universe_bound(), dim_bound) {}

  void seed() {
    for (const auto& [c, ids] : x_.all_cells())
      for (const auto& id : ids) leaf(generator_atom(c, id), Color{});
  }

  void run_stage(int k) {
    stage_ = k;
    const std::size_t before = cells_.size();
    std::vector<int> prev;
    for (std::size_t i = 0; i < before; ++i)
      if (cells_[i].stage < k) prev.push_back(static_cast<int>(i));
    if (m_) {
      for (int i : prev) {
        if (static_cast<int>(cells_[i].color.dim()) <= *m_) continue;
        for (int e : cells_[i].color.entries()) leaf(reversor_atom(e, i), Color{});
      }
    }
    while (true) {
      bool added = false;
      for (auto& group : pi_groups(prev)) {
        const Color c = cells_[group.front()].color;
        for (int r = 1; r <= x_.universe_bound(); ++r) {
          if (!bracket_admissible(shape_, c, r)) continue;
          for (int a : group)
            for (int b : group) {
              if (atom_index_.count(bracket_key(a, b, r))) continue;
              leaf(bracket_atom(a, b, r), Color{});
              added = true;
            }
        }
      }
      close_cells();
      p_.saturate();
      if (!added) break;
    }
  }

  StageRecord record(int k) const {
    StageRecord rec;
    rec.stage = k;
    for (const auto& cell : cells_) ++rec.cells[cell.color];
    std::vector<int> prev;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i].stage < k) prev.push_back(static_cast<int>(i));
    for (const auto& group : pi_groups(prev)) {
      const Color c = cells_[group.front()].color;
      for (int r = 1; r <= x_.universe_bound(); ++r)
        if (bracket_admissible(shape_, c, r)) rec.pairs[{c, r}] += group.size() * group.size();
    }
    for (const auto& atom : atoms_)
      if (atom.kind == Kind::Bracket) ++rec.brackets[{cells_[atom.a].color, atom.dir}];
    return rec;
  }

  FreeWeakResult finish(int stages) {
    FreeWeakResult out;
    out.stages = stages;
    out.dim_bound = dims_;
    out.size_bound = size_;
    out.m = m_;
    Stretching& e = out.stretching;
    TabulatedCategory tab = truncated_category(p_);
    e.C = tab.category;
    e.c_truncation = tab.truncation;
    if (m_) e.c_reversors = presentation_reversors(p_, tab);

    MultipleSet& ms = e.M.base;
    ms = shape_;
    for (const auto& cell : cells_) ms.add_cell(cell.color, cell.name);
    for (const auto& cell : cells_) {
      for (int d : cell.color.entries())
        for (Polarity p : {Polarity::Source, Polarity::Target})
          ms.set_face(cell.color, cell.name, d, p, cells_[cell.faces[slot(d, p)]].name);
      e.pi[cell.color][cell.name] = tab.cell_of.at(p_.find(cell.pi)).second;
      if (cell.comp)
        e.M.comp[{cell.color, cell.dir}][{cells_[cell.left].name, cells_[cell.right].name}] = cell.name;
    }
    for (const auto& [key, target] : refl_) e.M.refl[{cells_[key.first].color, key.second}][cells_[key.first].name] = cells_[target].name;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const Atom& a = atoms_[i];
      if (a.kind != Kind::Bracket) continue;
      const Cell& alpha = cells_[a.a];
      e.brackets[{alpha.color, a.dir}][{alpha.name, cells_[a.b].name}] = cells_[leaf_of(static_cast<int>(i))].name;
    }
    if (m_) {
      ReversorStructure r{ms, *m_, ReversorKind::Minimal, {}};
      for (const auto& key : required_chains(x_.universe_bound(), dims_, *m_, ReversorKind::Minimal)) r.chains[key].resize(1);
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (a.kind != Kind::Reversor) continue;
        const Cell& xc = cells_[a.a];
        r.chains[{xc.color, {a.dir}}][0][xc.name] = cells_[leaf_of(static_cast<int>(i))].name;
      }
      e.m_reversors = std::move(r);
    }
    if (stages >= 1) {
      Truncation t;
      t.size_bound = size_;
      t.unary_cost = 0;
      for (const auto& cell : cells_) {
        t.size[{cell.color, cell.name}] = cell.size;
        if (cell.stage == stages) t.open.insert({cell.color, cell.name});
      }
      e.m_truncation = std::move(t);
    }

    for (const auto& cell : cells_) {
      WeakCell w;
      w.size = cell.size;
      w.stage = cell.stage;
      if (cell.comp) {
        w.kind = Kind::Composite;
        w.base_color = cell.color;
        w.left = cells_[cell.left].name;
        w.right = cells_[cell.right].name;
        w.dir = cell.dir;
      } else {
        const Atom& a = atoms_[cell.atom];
        w.kind = a.kind;
        w.added = cell.added;
        w.dir = a.dir;
        w.path = a.path;
        switch (a.kind) {
          case Kind::Generator: w.generator = a.gen; w.base_color = a.color; break;
          case Kind::Bracket:
            w.base_color = cells_[a.a].color;
            w.left = cells_[a.a].name;
            w.right = cells_[a.b].name;
            break;
          default: w.base_color = cells_[a.a].color; w.left = cells_[a.a].name; break;
        }
      }
      out.provenance[{cell.color, cell.name}] = std::move(w);
    }
    out.unit = MsMorphism{x_, ms, {}};
    for (const auto& [c, ids] : x_.all_cells())
      for (const auto& id : ids) out.unit.map[c][id] = id;
    return out;
  }

 private:
  int slot(int d, Polarity p) const { return 2 * (d - 1) + (p == Polarity::Target ? 1 : 0); }

  std::vector<std::vector<int>> pi_groups(const std::vector<int>& ids) const {
    std::map<std::pair<Color, ClassId>, std::vector<int>> groups;
    for (int i : ids) groups[{cells_[i].color, p_.find(cells_[i].pi)}].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    return out;
  }

  AtomKey bracket_key(int a, int b, int r) const { return {Kind::Bracket, cells_[a].color, {}, a, b, r, {}}; }

  int add_atom(AtomKey key, Atom atom) {
    auto it = atom_index_.find(key);
    if (it != atom_index_.end()) return it->second;
    atoms_.push_back(std::move(atom));
    const int id = static_cast<int>(atoms_.size()) - 1;
    atom_index_.emplace(std::move(key), id);
    return id;
  }

  int generator_atom(const Color& c, const CellId& x) {
    AtomKey key{Kind::Generator, c, x, -1, -1, 0, {}};
    if (auto it = atom_index_.find(key); it != atom_index_.end()) return it->second;
    Atom a{Kind::Generator, c, x, -1, -1, 0, {}, x, *p_.generator_class(c, x)};
    return add_atom(std::move(key), std::move(a));
  }

  int bracket_atom(int alpha, int beta, int r) {
    AtomKey key = bracket_key(alpha, beta, r);
    if (auto it = atom_index_.find(key); it != atom_index_.end()) return it->second;
    const Color c = add(cells_[alpha].color, r);
    Atom a{Kind::Bracket, c, {}, alpha, beta, r, {}, "[" + cells_[alpha].name + ";" + cells_[beta].name + "]_" + std::to_string(r), -1};
    a.pi = p_.extend(TermKind::Refl, r, p_.find(cells_[alpha].pi));
    return add_atom(std::move(key), std::move(a));
  }

  int reversor_atom(int e, int x) {
    AtomKey key{Kind::Reversor, cells_[x].color, {}, x, -1, e, {}};
    if (auto it = atom_index_.find(key); it != atom_index_.end()) return it->second;
    Atom a{Kind::Reversor, cells_[x].color, {}, x, -1, e, {}, "j_" + std::to_string(e) + "(" + cells_[x].name + ")", -1};
    a.pi = p_.extend(TermKind::Rev, e, p_.find(cells_[x].pi));
    return add_atom(std::move(key), std::move(a));
  }

  int reversor_face_atom(int e, int x, std::vector<std::pair<int, Polarity>> path) {
    std::sort(path.begin(), path.end());
    Color c = cells_[x].color;
    for (const auto& step : path) c = minus(c, step.first);
    AtomKey key{Kind::ReversorFace, c, {}, x, -1, e, path};
    if (auto it = atom_index_.find(key); it != atom_index_.end()) return it->second;
    const int whole = reversor_atom(e, x);
    TermId t = atoms_[whole].pi;
    for (const auto& [d, p] : path) t = p_.face_of(t, d, p);
    Atom a{Kind::ReversorFace, c, {}, x, -1, e, path, atoms_[whole].name + path_suffix(path), t};
    return add_atom(std::move(key), std::move(a));
  }

  int leaf_of(int atom) const { return cell_index_.at(CellIndexKey{false, atom, Color{}, 0, -1, -1}); }

  int leaf(int atom, const Color& added) {
    CellIndexKey key{false, atom, added, 0, -1, -1};
    if (auto it = cell_index_.find(key); it != cell_index_.end()) return it->second;
    Cell cell;
    cell.atom = atom;
    cell.added = added;
    cell.color = disjoint_union(atoms_[atom].color, added);
    cell.name = degeneracy_name(atoms_[atom].name, added);
    TermId t = atoms_[atom].pi;
    for (int l : added.entries()) t = p_.extend(TermKind::Refl, l, p_.find(t));
    cell.pi = t;
    return store(std::move(key), std::move(cell));
  }

  int composite(int d, int a, int b) {
    CellIndexKey key{true, -1, Color{}, d, a, b};
    if (auto it = cell_index_.find(key); it != cell_index_.end()) return it->second;
    Cell cell;
    cell.comp = true;
    cell.dir = d;
    cell.left = a;
    cell.right = b;
    cell.color = cells_[a].color;
    cell.size = cells_[a].size + cells_[b].size + 1;
    cell.name = "(" + cells_[a].name + " o" + std::to_string(d) + " " + cells_[b].name + ")";
    cell.pi = p_.extend(TermKind::Comp, d, p_.find(cells_[a].pi), p_.find(cells_[b].pi));
    return store(std::move(key), std::move(cell));
  }

  int store(CellIndexKey key, Cell cell) {
    cell.stage = stage_;
    cells_.push_back(std::move(cell));
    const int id = static_cast<int>(cells_.size()) - 1;
    cell_index_.emplace(std::move(key), id);
    std::vector<int> faces(2 * x_.universe_bound(), -1);
    const Color c = cells_[id].color;
    for (int d : c.entries())
      for (Polarity p : {Polarity::Source, Polarity::Target}) faces[slot(d, p)] = compute_face(id, d, p);
    cells_[id].faces = std::move(faces);
    return id;
  }

  int face(int cell, int d, Polarity p) { return cells_[cell].faces[slot(d, p)]; }

  int face_along(int cell, const std::vector<std::pair<int, Polarity>>& path) {
    for (const auto& [d, p] : path) cell = face(cell, d, p);
    return cell;
  }

  int compute_face(int id, int d, Polarity p) {
    const Cell cell = cells_[id];
    if (cell.comp) {
      if (d == cell.dir) return p == Polarity::Source ? face(cell.right, d, p) : face(cell.left, d, p);
      return composite(cell.dir, face(cell.left, d, p), face(cell.right, d, p));
    }
    if (cell.added.contains(d)) return leaf(cell.atom, minus(cell.added, d));
    return reflect_all(atom_face(cell.atom, d, p), cell.added);
  }

  int atom_face(int atom_id, int d, Polarity p) {
    const Atom a = atoms_[atom_id];
    switch (a.kind) {
      case Kind::Generator:
        return leaf(generator_atom(minus(a.color, d), multicat::face(x_, a.color, a.gen, d, p)), Color{});
      case Kind::Bracket:
        if (d == a.dir) return p == Polarity::Source ? a.a : a.b;
        return leaf(bracket_atom(face(a.a, d, p), face(a.b, d, p), a.dir), Color{});
      case Kind::Reversor:
        if (d == a.dir) return face(a.a, d, flip(p));
        return leaf(reversor_face_atom(a.dir, a.a, {{d, p}}), Color{});
      case Kind::ReversorFace: {
        if (d == a.dir) return face_along(face(a.a, d, flip(p)), a.path);
        auto path = a.path;
        path.emplace_back(d, p);
        return leaf(reversor_face_atom(a.dir, a.a, std::move(path)), Color{});
      }
      case Kind::Composite: break;
    }
    throw Error(ErrorCode::InvalidBase, "composite is not an atom");
  }

  int reflect(int id, int l) {
    if (auto it = refl_.find({id, l}); it != refl_.end()) return it->second;
    const Cell cell = cells_[id];
    const int out = cell.comp ? composite(cell.dir, reflect(cell.left, l), reflect(cell.right, l))
                              : leaf(cell.atom, add(cell.added, l));
    refl_[{id, l}] = out;
    return out;
  }

  int reflect_all(int id, const Color& added) {
    for (int l : added.entries()) id = reflect(id, l);
    return id;
  }

  void close_cells() {
    std::size_t seen = 0;
    while (true) {
      for (std::size_t i = 0; i < cells_.size(); ++i)
        for (int l = 1; l <= x_.universe_bound(); ++l)
          if (admissible_reflexion(shape_, cells_[i].color, l)) reflect(static_cast<int>(i), l);
      if (cells_.size() == seen) break;
      seen = cells_.size();
      // Composites owed within the size bound, by (color, d, shared face).
      std::map<std::tuple<Color, int, int>, std::vector<int>> by_target;
      for (std::size_t i = 0; i < cells_.size(); ++i)
        for (int d : cells_[i].color.entries())
          by_target[{cells_[i].color, d, face(static_cast<int>(i), d, Polarity::Target)}].push_back(static_cast<int>(i));
      const std::size_t n = cells_.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Color c = cells_[i].color;
        for (int d : c.entries()) {
          auto it = by_target.find({c, d, face(static_cast<int>(i), d, Polarity::Source)});
          if (it == by_target.end()) continue;
          for (int b : it->second)
            if (cells_[i].size + cells_[b].size + 1 <= size_) composite(d, static_cast<int>(i), b);
        }
      }
      if (cells_.size() == seen) break;
    }
  }

  const MultipleSet& x_;
  std::optional<int> m_;
  int dims_;
  int size_;
  StrictPresentation& p_;
  MultipleSet shape_;
  int stage_ = 0;
  std::vector<Atom> atoms_;
  std::map<AtomKey, int> atom_index_;
  std::vector<Cell> cells_;
  std::map<CellIndexKey, int> cell_index_;
  std::map<std::pair<int, int>, int> refl_;
};

}  // namespace

std::optional<CellId> find_bracket(const BracketTable& b, const Color& c, int r, const CellId& alpha,
                                   const CellId& beta) {
  auto t = b.find({c, r});
  if (t == b.end()) return std::nullopt;
  auto it = t->second.find({alpha, beta});
  if (it == t->second.end()) return std::nullopt;
  return it->second;
}

ValidationReport validate_stretching(const Stretching& e) {
  ValidationReport report;
  const MultipleSet& ms = e.M.base;
  const MultipleSet& cs = e.C.base;
  const Truncation* mt = e.m_truncation ? &*e.m_truncation : nullptr;
  const Truncation* ct = e.c_truncation ? &*e.c_truncation : nullptr;
  auto pi = [&](const Color& c, const CellId& x) { return lookup(e.pi, c, x); };

  for (const auto& [c, ids] : ms.all_cells()) {
    for (const auto& x : ids) {
      const CellId* px = pi(c, x);
      if (!px) {
        report.add("PI-TOTAL", c, {x});
        continue;
      }
      if (!cs.has_cell(c, *px)) {
        report.add("PI-TOTAL", c, {x, *px}, "image not in C");
        continue;
      }
      for (int d : c.entries()) {
        for (Polarity p : {Polarity::Source, Polarity::Target}) {
          auto fx = ms.find_face(c, x, d, p);
          auto fpx = cs.find_face(c, *px, d, p);
          if (!fx || !fpx) continue;
          const CellId* pfx = pi(minus(c, d), *fx);
          if (pfx && *pfx != *fpx)
            report.add("PI-FACE", c, {x, *pfx, *fpx}, "d=" + std::to_string(d) + " " + to_string(p));
        }
      }
    }
  }

  for (const auto& [key, table] : e.M.refl) {
    const auto& [c, l] = key;
    for (const auto& [x, y] : table) {
      const CellId* px = pi(c, x);
      const CellId* py = pi(add(c, l), y);
      if (!px || !py) continue;
      auto want = find_reflexion(e.C.refl, c, *px, l);
      if (!want) {
        if (!ct || ct->unary_required(c, *px)) report.add("PI-REFL", c, {x, *px}, "l=" + std::to_string(l) + " undefined in C");
      } else if (*want != *py) {
        report.add("PI-REFL", c, {x, *py, *want}, "l=" + std::to_string(l));
      }
    }
  }

  for (const auto& [key, table] : e.M.comp) {
    const auto& [c, d] = key;
    for (const auto& [ab, y] : table) {
      const CellId* pa = pi(c, ab.first);
      const CellId* pb = pi(c, ab.second);
      const CellId* py = pi(c, y);
      if (!pa || !pb || !py) continue;
      auto want = find_composite(e.C.comp, c, d, *pa, *pb);
      if (!want) {
        if (!ct || ct->composite_required(c, *pa, *pb))
          report.add("PI-COMP", c, {ab.first, ab.second}, "d=" + std::to_string(d) + " undefined in C");
      } else if (*want != *py) {
        report.add("PI-COMP", c, {ab.first, ab.second, *py, *want}, "d=" + std::to_string(d));
      }
    }
  }

  if (e.m_reversors && e.c_reversors) {
    for (const auto& [key, maps] : e.m_reversors->chains) {
      auto other = e.c_reversors->chains.find(key);
      for (std::size_t p = 0; p < maps.size(); ++p) {
        const Color level = chain_level(key, p);
        for (const auto& [x, y] : maps[p]) {
          const CellId* px = pi(level, x);
          const CellId* py = pi(level, y);
          if (!px || !py) continue;
          const CellId* want = nullptr;
          if (other != e.c_reversors->chains.end() && p < other->second.size()) {
            auto it = other->second[p].find(*px);
            if (it != other->second[p].end()) want = &it->second;
          }
          if (!want) {
            if (!ct || ct->unary_required(level, *px)) report.add("PI-REV", level, {x, *px}, "undefined in C");
          } else if (*want != *py) {
            report.add("PI-REV", level, {x, *py, *want});
          }
        }
      }
    }
  }

  for (const auto& [key, table] : e.brackets) {
    const auto& [c, r] = key;
    const std::string rs = "r=" + std::to_string(r);
    if (!bracket_admissible(ms, c, r)) {
      report.add("BR-SHAPE", c, {}, "inadmissible " + rs);
      continue;
    }
    const Color up = add(c, r);
    for (const auto& [ab, g] : table) {
      const auto& [a, b] = ab;
      const CellId* pa = pi(c, a);
      const CellId* pb = pi(c, b);
      if (!ms.has_cell(c, a) || !ms.has_cell(c, b) || !ms.has_cell(up, g)) {
        report.add("BR-SHAPE", c, {a, b, g}, rs + " unknown cell");
        continue;
      }
      if (!pa || !pb || *pa != *pb) {
        report.add("BR-SHAPE", c, {a, b, g}, rs + " pair not identified by pi");
        continue;
      }
      if (ms.find_face(up, g, r, Polarity::Source) != a) report.add("BR-END", c, {a, b, g}, rs + " source");
      if (ms.find_face(up, g, r, Polarity::Target) != b) report.add("BR-END", c, {a, b, g}, rs + " target");
      for (int s : c.entries()) {
        for (Polarity p : {Polarity::Source, Polarity::Target}) {
          auto fg = ms.find_face(up, g, s, p);
          auto fa = ms.find_face(c, a, s, p);
          auto fb = ms.find_face(c, b, s, p);
          if (!fg || !fa || !fb) continue;
          const Color low = minus(c, s);
          auto want = find_bracket(e.brackets, low, r, *fa, *fb);
          const std::string detail = rs + " s=" + std::to_string(s) + " " + to_string(p);
          if (!want) {
            if (!mt || mt->bracket_required(low, *fa, *fb)) report.add("BR-FACE", c, {a, b, g}, detail + " missing");
          } else if (*want != *fg) {
            report.add("BR-FACE", c, {a, b, g, *fg, *want}, detail);
          }
        }
      }
      const CellId* pg = pi(up, g);
      auto want = find_reflexion(e.C.refl, c, *pa, r);
      if (!want) {
        if (!ct || ct->unary_required(c, *pa)) report.add("BR-PI", c, {a, b, g}, rs + " reflexion undefined in C");
      } else if (pg && *pg != *want) {
        report.add("BR-PI", c, {a, b, g, *pg, *want}, rs);
      }
    }
  }

  for (const auto& [c, ids] : ms.all_cells()) {
    std::map<CellId, std::vector<CellId>> groups;
    for (const auto& x : ids)
      if (const CellId* px = pi(c, x)) groups[*px].push_back(x);
    for (int r = 1; r <= ms.universe_bound(); ++r) {
      if (!bracket_admissible(ms, c, r)) continue;
      for (const auto& [img, group] : groups)
        for (const auto& a : group)
          for (const auto& b : group)
            if (!find_bracket(e.brackets, c, r, a, b) && (!mt || mt->bracket_required(c, a, b)))
              report.add("BR-TOTAL", c, {a, b}, "r=" + std::to_string(r));
    }
  }
  return report.canonicalize();
}

Stretching identity_stretching(const StrictCategory& c) {
  Stretching e;
  e.M = c;
  e.C = c;
  for (const auto& [color, ids] : c.base.all_cells()) {
    for (const auto& x : ids) {
      e.pi[color][x] = x;
      for (int r = 1; r <= c.base.universe_bound(); ++r) {
        if (!admissible_reflexion(c.base, color, r)) continue;
        if (auto one = find_reflexion(c.refl, color, x, r)) e.brackets[{color, r}][{x, x}] = *one;
      }
    }
  }
  return e;
}

ValidationReport validate_stretching_morphism(const Stretching& from, const Stretching& to, const CellMap& m,
                                              const CellMap& c) {
  ValidationReport report = validate_magma_morphism(from.M, to.M, m);
  report.merge(validate_magma_morphism(from.C, to.C, c));
  for (const auto& [color, ids] : from.M.base.all_cells()) {
    for (const auto& x : ids) {
      const CellId* mx = lookup(m, color, x);
      const CellId* px = lookup(from.pi, color, x);
      if (!mx || !px) continue;
      const CellId* left = lookup(to.pi, color, *mx);
      const CellId* right = lookup(c, color, *px);
      if (!left || !right || *left != *right)
        report.add("SQUARE", color, {x}, std::string("pi'(m x)=") + (left ? *left : "?") + " c(pi x)=" + (right ? *right : "?"));
    }
  }
  for (const auto& [key, table] : from.brackets) {
    const auto& [color, r] = key;
    for (const auto& [ab, g] : table) {
      const CellId* mg = lookup(m, add(color, r), g);
      const CellId* ma = lookup(m, color, ab.first);
      const CellId* mb = lookup(m, color, ab.second);
      if (!mg || !ma || !mb) continue;
      auto want = find_bracket(to.brackets, color, r, *ma, *mb);
      if (!want || *want != *mg) report.add("BR-MORPH", color, {ab.first, ab.second, g}, "r=" + std::to_string(r));
    }
  }
  return report.canonicalize();
}

FreeWeakResult free_weak(const MultipleSet& x, std::optional<int> m, int dim_bound, int size_bound, int stages,
                         std::optional<std::size_t> budget) {
  if (stages < 0) throw Error(ErrorCode::BoundsTooSmall, "negative stage count");
  StrictPresentation p = free_strict(x, dim_bound, size_bound, m, budget);
  WeakBuilder builder(x, m, dim_bound, size_bound, p);
  builder.seed();
  std::vector<StageRecord> log;
  p.saturate();
  log.push_back(builder.record(0));
  for (int k = 1; k <= stages; ++k) {
    builder.run_stage(k);
    log.push_back(builder.record(k));
  }
  FreeWeakResult out = builder.finish(stages);
  out.log = std::move(log);
  return out;
}

MsMorphism collapse_into(const FreeWeakResult& w, const StrictCategory& k) {
  MsMorphism h{w.stretching.M.base, k.base, {}};
  std::map<CellKey, CellId> memo;
  std::function<CellId(const Color&, const CellId&)> eval = [&](const Color& c, const CellId& x) -> CellId {
    if (auto it = memo.find({c, x}); it != memo.end()) return it->second;
    const WeakCell& cell = w.provenance.at({c, x});
    CellId out;
    Color at = cell.base_color;
    switch (cell.kind) {
      case Kind::Generator: out = cell.generator; break;
      case Kind::Bracket:
        out = eval(cell.base_color, cell.left);
        {
          auto one = find_reflexion(k.refl, at, out, cell.dir);
          if (!one) throw Error(ErrorCode::UndefinedComposite, "no reflexion of " + out + " in the target");
          out = *one;
        }
        at = add(at, cell.dir);
        break;
      case Kind::Composite:
        out = compose(k, c, eval(c, cell.left), eval(c, cell.right), cell.dir);
        break;
      default: throw Error(ErrorCode::InvalidBase, "reversor cells need a reversor structure on the target");
    }
    for (int l : cell.added.entries()) {
      auto one = find_reflexion(k.refl, at, out, l);
      if (!one) throw Error(ErrorCode::UndefinedComposite, "no reflexion of " + out + " in the target");
      out = *one;
      at = add(at, l);
    }
    memo[{c, x}] = out;
    return out;
  };
  for (const auto& [c, ids] : w.stretching.M.base.all_cells())
    for (const auto& x : ids) h.map[c][x] = eval(c, x);
  return h;
}

ValidationReport algebra_unit_check(const FreeWeakResult& w, const MsMorphism& h) {
  ValidationReport report;
  for (const auto& [c, table] : w.unit.map) {
    for (const auto& [x, ex] : table) {
      const CellId* hx = lookup(h.map, c, ex);
      if (!hx) report.add("ALG-UNIT", c, {x}, "h undefined on the unit image");
      else if (*hx != x) report.add("ALG-UNIT", c, {x, *hx});
    }
  }
  return report.canonicalize();
}

}  // namespace multicat
