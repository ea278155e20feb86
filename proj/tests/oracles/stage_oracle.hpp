#pragma once

// Reference simulation of the staged free stretching (no reversors). Cells
// are value trees keyed by their printed form; pi-equality is decided by the
// brute-force strict oracle at a larger size bound.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles/strict_oracle.hpp"

namespace oracle {

struct WTree {
  char kind;  // 'g' generator leaf, 'b' bracket leaf, 'c' composite
  Color color;
  Color gen_color;
  std::string gen;
  Color added;
  int dir = 0;
  std::string left, right;
  int size = 1;
  int stage = 0;
};

struct StageCounts {
  std::map<Color, std::size_t> cells;
  std::map<std::pair<Color, int>, std::size_t> pairs;
  std::map<std::pair<Color, int>, std::size_t> brackets;
};

class StageOracle {
 public:
  StageOracle(const multicat::MultipleSet& x, int dim_bound, int size_bound, int stages, int oracle_size)
      : x_(x), n_(dim_bound), s_(size_bound), strict_(x, dim_bound, oracle_size) {
    for (const auto& [c, ids] : x.all_cells())
      for (const auto& id : ids) insert(WTree{'g', c, c, id, {}, 0, {}, {}, 1, 0});
    log.push_back(counts(0));
    for (int k = 1; k <= stages; ++k) {
      stage_ = k;
      std::map<std::pair<Color, std::string>, std::vector<std::string>> groups;
      for (const auto& [key, t] : cells_)
        if (t.stage < k) groups[{t.color, cls(key)}].push_back(key);
      for (const auto& [g, members] : groups)
        for (int r = 1; r <= x_.universe_bound(); ++r) {
          if (!admissible(g.first, r)) continue;
          for (const auto& a : members)
            for (const auto& b : members) insert(WTree{'b', multicat::add(g.first, r), {}, {}, {}, r, a, b, 1, k});
        }
      close();
      log.push_back(counts(k));
    }
  }

  std::vector<StageCounts> log;
  const std::map<std::string, WTree>& cells() const { return cells_; }

 private:
  bool admissible(const Color& c, int l) const {
    return l >= 1 && l <= x_.universe_bound() && !c.contains(l) && static_cast<int>(c.dim()) + 1 <= n_;
  }

  static std::string print(const WTree& t) {
    std::string s;
    if (t.kind == 'c') return "(" + t.left + " o" + std::to_string(t.dir) + " " + t.right + ")";
    s = t.kind == 'g' ? t.gen : "[" + t.left + ";" + t.right + "]_" + std::to_string(t.dir);
    const auto& es = t.added.entries();
    for (auto it = es.rbegin(); it != es.rend(); ++it) s = "1_" + std::to_string(*it) + "(" + s + ")";
    return s;
  }

  std::string insert(WTree t) {
    t.stage = stage_;
    std::string k = print(t);
    cells_.emplace(k, std::move(t));
    return k;
  }

  std::string refl(const std::string& key, int l) {
    WTree t = cells_.at(key);
    if (t.kind == 'c') {
      t.left = refl(t.left, l);
      t.right = refl(t.right, l);
    } else {
      t.added = multicat::add(t.added, l);
    }
    t.color = multicat::add(t.color, l);
    return insert(t);
  }

  std::string face(const std::string& key, int d, Polarity p) {
    WTree t = cells_.at(key);
    if (t.kind == 'c') {
      if (d == t.dir) return p == Polarity::Source ? face(t.right, d, p) : face(t.left, d, p);
      t.left = face(t.left, d, p);
      t.right = face(t.right, d, p);
      t.color = multicat::minus(t.color, d);
      t.size = cells_.at(t.left).size + cells_.at(t.right).size + 1;
      return insert(t);
    }
    if (t.added.contains(d)) {
      t.added = multicat::minus(t.added, d);
      t.color = multicat::minus(t.color, d);
      return insert(t);
    }
    std::string low;
    if (t.kind == 'g') {
      low = insert(WTree{'g', multicat::minus(t.gen_color, d), multicat::minus(t.gen_color, d),
                         multicat::face(x_, t.gen_color, t.gen, d, p), {}, 0, {}, {}, 1, 0});
    } else if (d == t.dir) {
      low = p == Polarity::Source ? t.left : t.right;
    } else {
      const Color base = multicat::minus(difference(t.color, t.added), d);
      low = insert(WTree{'b', base, {}, {}, {}, t.dir, face(t.left, d, p), face(t.right, d, p), 1, 0});
    }
    for (int l : t.added.entries()) low = refl(low, l);
    return low;
  }

  static Color difference(const Color& a, const Color& b) { return multicat::difference(a, b); }

  multicat::TermExpr pi(const std::string& key) const {
    const WTree& t = cells_.at(key);
    using multicat::TermExpr;
    if (t.kind == 'c') return TermExpr::comp(t.dir, pi(t.left), pi(t.right));
    TermExpr e = t.kind == 'g' ? TermExpr::gen(t.gen_color, t.gen) : TermExpr::refl(t.dir, pi(t.left));
    for (int l : t.added.entries()) e = TermExpr::refl(l, e);
    return e;
  }

  std::string cls(const std::string& key) const {
    auto k = strict_.class_key(pi(key));
    if (!k) throw std::runtime_error("stage oracle: image of " + key + " outside the reference universe");
    return *k;
  }

  void close() {
    while (true) {
      const std::size_t before = cells_.size();
      std::vector<std::string> keys;
      for (const auto& [k, t] : cells_) keys.push_back(k);
      for (const auto& k : keys) {
        const Color c = cells_.at(k).color;
        for (int d : c.entries())
          for (Polarity p : {Polarity::Source, Polarity::Target}) face(k, d, p);
        for (int l = 1; l <= x_.universe_bound(); ++l)
          if (admissible(c, l)) refl(k, l);
      }
      keys.clear();
      for (const auto& [k, t] : cells_) keys.push_back(k);
      for (const auto& a : keys)
        for (const auto& b : keys) {
          const WTree& ta = cells_.at(a);
          const WTree& tb = cells_.at(b);
          if (ta.color != tb.color || ta.size + tb.size + 1 > s_) continue;
          for (int d : ta.color.entries())
            if (face(a, d, Polarity::Source) == face(b, d, Polarity::Target)) {
              const WTree& ta2 = cells_.at(a);
              insert(WTree{'c', ta2.color, {}, {}, {}, d, a, b, ta2.size + cells_.at(b).size + 1, 0});
            }
        }
      if (cells_.size() == before) break;
    }
  }

  StageCounts counts(int k) const {
    StageCounts out;
    std::map<std::pair<Color, std::string>, std::size_t> groups;
    for (const auto& [key, t] : cells_) {
      ++out.cells[t.color];
      if (t.stage < k) ++groups[{t.color, cls(key)}];
      if (t.kind == 'b' && t.added.empty()) ++out.brackets[{multicat::minus(t.color, t.dir), t.dir}];
    }
    for (const auto& [g, n] : groups)
      for (int r = 1; r <= x_.universe_bound(); ++r)
        if (admissible(g.first, r)) out.pairs[{g.first, r}] += n * n;
    return out;
  }

  const multicat::MultipleSet& x_;
  int n_;
  int s_;
  int stage_ = 0;
  StrictOracle strict_;
  std::map<std::string, WTree> cells_;
};

}  // namespace oracle
