#include "multicat/magma.hpp"

#include "multicat/error.hpp"

namespace multicat {

namespace {

std::string dk(int d, int k) { return "d=" + std::to_string(d) + " k=" + std::to_string(k); }

// Result -> every (a, b) with a o_d b = result, for one (color, direction).
using Decompositions = std::map<CellId, std::vector<CompositionKey>>;

Decompositions decompositions(const std::map<CompositionKey, CellId>& table) {
  Decompositions out;
  for (const auto& [ab, r] : table) out[r].push_back(ab);
  return out;
}

const std::map<CompositionKey, CellId>& table_at(const CompositionTable& comp, const Color& c, int d) {
  static const std::map<CompositionKey, CellId> kEmpty;
  auto it = comp.find({c, d});
  return it == comp.end() ? kEmpty : it->second;
}

}  // namespace

bool composable(const MultipleSet& ms, const Color& c, const CellId& a, const CellId& b, int d) {
  auto sa = ms.find_face(c, a, d, Polarity::Source);
  auto tb = ms.find_face(c, b, d, Polarity::Target);
  return sa && tb && *sa == *tb;
}

std::optional<CellId> find_composite(const CompositionTable& comp, const Color& c, int d, const CellId& a,
                                     const CellId& b) {
  const auto& table = table_at(comp, c, d);
  auto it = table.find({a, b});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

CellId compose(const MagmaStructure& m, const Color& c, const CellId& a, const CellId& b, int d) {
  const CellId sa = face(m.base, c, a, d, Polarity::Source);
  const CellId tb = face(m.base, c, b, d, Polarity::Target);
  if (sa != tb) {
    throw Error(ErrorCode::NotComposable, "s_" + std::to_string(d) + "(" + a + ")=" + sa + " but t_" +
                                              std::to_string(d) + "(" + b + ")=" + tb);
  }
  auto r = find_composite(m.comp, c, d, a, b);
  if (!r) throw Error(ErrorCode::UndefinedComposite, a + " o" + std::to_string(d) + " " + b);
  return *r;
}

ValidationReport validate_magma(const MagmaStructure& m, const Truncation* truncation) {
  ValidationReport report;
  const MultipleSet& ms = m.base;

  for (const auto& [key, table] : m.comp) {
    const auto& [c, d] = key;
    if (!c.contains(d)) {
      report.add("COMP-SHAPE", c, {}, "table for absent entry " + std::to_string(d));
      continue;
    }
    for (const auto& [ab, r] : table) {
      const auto& [a, b] = ab;
      if (!ms.has_cell(c, a) || !ms.has_cell(c, b)) {
        report.add("COMP-SHAPE", c, {a, b}, "unknown operand");
        continue;
      }
      if (!composable(ms, c, a, b, d)) {
        report.add("COMP-SHAPE", c, {a, b}, "not composable d=" + std::to_string(d));
        continue;
      }
      if (!ms.has_cell(c, r)) {
        report.add("COMP-RANGE", c, {a, b, r}, "d=" + std::to_string(d));
        continue;
      }
      auto sr = ms.find_face(c, r, d, Polarity::Source);
      auto tr = ms.find_face(c, r, d, Polarity::Target);
      if (sr != ms.find_face(c, b, d, Polarity::Source)) report.add("POS1", c, {a, b, r}, "source d=" + std::to_string(d));
      if (tr != ms.find_face(c, a, d, Polarity::Target)) report.add("POS1", c, {a, b, r}, "target d=" + std::to_string(d));

      for (int k : c.entries()) {
        if (k == d) continue;
        const Color lower = minus(c, k);
        for (Polarity p : {Polarity::Source, Polarity::Target}) {
          auto fr = ms.find_face(c, r, k, p);
          auto fa = ms.find_face(c, a, k, p);
          auto fb = ms.find_face(c, b, k, p);
          if (!fr || !fa || !fb) continue;
          auto rhs = find_composite(m.comp, lower, d, *fa, *fb);
          if (!rhs) {
            if (!truncation || truncation->composite_required(lower, *fa, *fb))
              report.add("POS2", c, {a, b, r}, dk(d, k) + " " + to_string(p) + " composite undefined");
          } else if (*rhs != *fr) {
            report.add("POS2", c, {a, b, r}, dk(d, k) + " " + to_string(p));
          }
        }
      }
    }
  }

  for (const auto& [c, ids] : ms.all_cells()) {
    for (int d : c.entries()) {
      const auto& table = table_at(m.comp, c, d);
      std::map<CellId, std::vector<CellId>> by_target;
      for (const auto& b : ids) {
        if (auto tb = ms.find_face(c, b, d, Polarity::Target)) by_target[*tb].push_back(b);
      }
      for (const auto& a : ids) {
        auto sa = ms.find_face(c, a, d, Polarity::Source);
        if (!sa) continue;
        auto it = by_target.find(*sa);
        if (it == by_target.end()) continue;
        for (const auto& b : it->second) {
          if (table.count({a, b})) continue;
          if (truncation && !truncation->composite_required(c, a, b)) continue;
          report.add("COMP-TOTAL", c, {a, b}, "d=" + std::to_string(d));
        }
      }
    }
  }
  return report.canonicalize();
}

ValidationReport validate_reflexive_magma(const MagmaStructure& m, const Truncation* truncation) {
  ValidationReport report;
  const MultipleSet& ms = m.base;
  for (const auto& [key, table] : m.comp) {
    const auto& [c, d] = key;
    for (const auto& [ab, r] : table) {
      const auto& [a, b] = ab;
      for (int k = 1; k <= ms.universe_bound(); ++k) {
        if (!admissible_reflexion(ms, c, k)) continue;
        auto ka = find_reflexion(m.refl, c, a, k);
        auto kb = find_reflexion(m.refl, c, b, k);
        auto kr = find_reflexion(m.refl, c, r, k);
        if (!ka || !kb || !kr) continue;
        const Color up = add(c, k);
        auto rhs = find_composite(m.comp, up, d, *ka, *kb);
        if (!rhs) {
          if (!truncation || truncation->composite_required(up, *ka, *kb))
            report.add("REFL-DIST", c, {a, b, *kr}, dk(d, k) + " composite undefined");
        } else if (*rhs != *kr) {
          report.add("REFL-DIST", c, {a, b, *kr, *rhs}, dk(d, k));
        }
      }
    }
  }
  return report.canonicalize();
}

ValidationReport validate_strict(const StrictCategory& cat, const Truncation* truncation) {
  (void)truncation;  // instances with an undefined side are skipped; totality is checked elsewhere
  ValidationReport report;
  const MultipleSet& ms = cat.base;

  for (const auto& [key, table] : cat.comp) {
    const auto& [c, d] = key;
    std::map<CellId, std::vector<std::pair<CellId, CellId>>> by_left;
    for (const auto& [ab, r] : table) by_left[ab.first].push_back({ab.second, r});
    for (const auto& [ab, x] : table) {
      const auto& [a, b] = ab;
      auto it = by_left.find(b);
      if (it == by_left.end()) continue;
      for (const auto& [cc, y] : it->second) {
        auto lhs = find_composite(cat.comp, c, d, x, cc);
        auto rhs = find_composite(cat.comp, c, d, a, y);
        if (lhs && rhs && *lhs != *rhs)
          report.add("ASSOC", c, {a, b, cc}, "d=" + std::to_string(d) + " " + *lhs + " vs " + *rhs);
      }
    }
  }

  for (const auto& [c, ids] : ms.all_cells()) {
    for (int d : c.entries()) {
      const Color lower = minus(c, d);
      for (const auto& a : ids) {
        auto sa = ms.find_face(c, a, d, Polarity::Source);
        auto ta = ms.find_face(c, a, d, Polarity::Target);
        if (sa) {
          if (auto u = find_reflexion(cat.refl, lower, *sa, d)) {
            auto r = find_composite(cat.comp, c, d, a, *u);
            if (r && *r != a) report.add("UNIT", c, {a, *u, *r}, "right d=" + std::to_string(d));
          }
        }
        if (ta) {
          if (auto u = find_reflexion(cat.refl, lower, *ta, d)) {
            auto r = find_composite(cat.comp, c, d, *u, a);
            if (r && *r != a) report.add("UNIT", c, {*u, a, *r}, "left d=" + std::to_string(d));
          }
        }
      }
    }
  }

  // (a o_j b) o_k (c o_j d) = (a o_k c) o_j (b o_k d), read once per j < k.
  for (const auto& [c, ids] : ms.all_cells()) {
    for (int j : c.entries()) {
      const auto decomp = decompositions(table_at(cat.comp, c, j));
      for (int k : c.entries()) {
        if (k <= j) continue;
        for (const auto& [xy, z] : table_at(cat.comp, c, k)) {
          auto dx = decomp.find(xy.first);
          auto dy = decomp.find(xy.second);
          if (dx == decomp.end() || dy == decomp.end()) continue;
          for (const auto& [a, b] : dx->second) {
            for (const auto& [cc, dd] : dy->second) {
              auto ac = find_composite(cat.comp, c, k, a, cc);
              auto bd = find_composite(cat.comp, c, k, b, dd);
              if (!ac || !bd) continue;
              auto r = find_composite(cat.comp, c, j, *ac, *bd);
              if (r && *r != z) {
                report.add("MFI", c, {a, b, cc, dd}, "j=" + std::to_string(j) + " k=" + std::to_string(k) + " " + z +
                                                         " vs " + *r);
              }
            }
          }
        }
      }
    }
  }
  return report.canonicalize();
}

ValidationReport validate_strict_all(const StrictCategory& c, const Truncation* truncation) {
  ValidationReport report = validate_multiple_set(c.base);
  report.merge(validate_reflexive(c.reflexive_part(), {}, truncation));
  report.merge(validate_magma(c, truncation));
  report.merge(validate_reflexive_magma(c, truncation));
  report.merge(validate_strict(c, truncation));
  return report.canonicalize();
}

ValidationReport validate_magma_morphism(const MagmaStructure& from, const MagmaStructure& to, const CellMap& map) {
  ValidationReport report = validate_morphism(MsMorphism{from.base, to.base, map});
  auto image = [&](const Color& c, const CellId& x) -> std::optional<CellId> {
    auto t = map.find(c);
    if (t == map.end()) return std::nullopt;
    auto it = t->second.find(x);
    if (it == t->second.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& [key, table] : from.refl) {
    const auto& [c, l] = key;
    for (const auto& [x, y] : table) {
      auto fx = image(c, x);
      auto fy = image(add(c, l), y);
      if (!fx || !fy) continue;
      auto lfx = find_reflexion(to.refl, c, *fx, l);
      if (!lfx || *lfx != *fy) report.add("MOR-REFL", c, {x, y}, "l=" + std::to_string(l));
    }
  }
  for (const auto& [key, table] : from.comp) {
    const auto& [c, d] = key;
    for (const auto& [ab, r] : table) {
      auto fa = image(c, ab.first);
      auto fb = image(c, ab.second);
      auto fr = image(c, r);
      if (!fa || !fb || !fr) continue;
      auto rhs = find_composite(to.comp, c, d, *fa, *fb);
      if (!rhs || *rhs != *fr) report.add("MOR-COMP", c, {ab.first, ab.second, r}, "d=" + std::to_string(d));
    }
  }
  return report.canonicalize();
}

}  // namespace multicat
