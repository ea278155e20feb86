#include "multicat/reflexive.hpp"

#include "multicat/error.hpp"

namespace multicat {

bool admissible_reflexion(const MultipleSet& ms, const Color& c, int l) {
  return l >= 1 && l <= ms.universe_bound() && !c.contains(l) && static_cast<int>(c.dim()) + 1 <= ms.dim_bound();
}

std::optional<CellId> find_reflexion(const ReflexionTable& refl, const Color& c, const CellId& x, int l) {
  auto t = refl.find({c, l});
  if (t == refl.end()) return std::nullopt;
  auto it = t->second.find(x);
  if (it == t->second.end()) return std::nullopt;
  return it->second;
}

ValidationReport validate_reflexive(const ReflexiveStructure& r, ReflexiveOptions options,
                                    const Truncation* truncation) {
  ValidationReport report;
  const MultipleSet& ms = r.base;
  auto one = [&](const Color& c, const CellId& x, int l) { return find_reflexion(r.refl, c, x, l); };
  auto fc = [&](const Color& c, const CellId& x, int d, Polarity p) { return ms.find_face(c, x, d, p); };

  for (const auto& [key, table] : r.refl) {
    const auto& [c, l] = key;
    if (!admissible_reflexion(ms, c, l)) {
      report.add("REFL-SHAPE", c, {}, "inadmissible direction " + std::to_string(l));
      continue;
    }
    const Color up = add(c, l);
    for (const auto& [x, y] : table) {
      if (!ms.has_cell(c, x)) report.add("REFL-SHAPE", c, {x}, "unknown cell");
      else if (!ms.has_cell(up, y)) report.add("REFL-RANGE", c, {x, y}, "l=" + std::to_string(l));
    }
  }

  for (const auto& [c, ids] : ms.all_cells()) {
    for (int l = 1; l <= ms.universe_bound(); ++l) {
      if (!admissible_reflexion(ms, c, l)) continue;
      const Color up = add(c, l);
      for (const auto& x : ids) {
        auto lx = one(c, x, l);
        if (!lx) {
          if (!truncation || truncation->unary_required(c, x))
            report.add("REFL-TOTAL", c, {x}, "l=" + std::to_string(l));
          continue;
        }
        if (options.require_section) {
          for (Polarity p : {Polarity::Source, Polarity::Target}) {
            auto back = fc(up, *lx, l, p);
            if (back && *back != x)
              report.add("REFL-SECT", c, {x, *lx, *back}, "l=" + std::to_string(l) + " " + to_string(p));
          }
        }
        for (int k : c.entries()) {
          for (Polarity p : {Polarity::Source, Polarity::Target}) {
            auto lhs = fc(up, *lx, k, p);
            auto xk = fc(c, x, k, p);
            if (!lhs || !xk) continue;
            auto rhs = one(minus(c, k), *xk, l);
            if (!rhs) continue;
            if (*lhs != *rhs) {
              report.add(p == Polarity::Source ? "REFL-S" : "REFL-T", c, {x, *lhs, *rhs},
                         "k=" + std::to_string(k) + " l=" + std::to_string(l));
            }
          }
        }
        for (int k = l + 1; k <= ms.universe_bound(); ++k) {
          if (!admissible_reflexion(ms, up, k)) continue;
          auto kx = one(c, x, k);
          if (!kx) continue;
          auto lhs = one(up, *lx, k);
          auto rhs = one(add(c, k), *kx, l);
          if (lhs && rhs && *lhs != *rhs) {
            report.add("REFL-X", c, {x, *lhs, *rhs}, "k=" + std::to_string(k) + " l=" + std::to_string(l));
          }
        }
      }
    }
  }
  return report.canonicalize();
}

CellId degeneracy_name(const CellId& generator, const Color& added, const std::string& marker) {
  CellId name = generator;
  const auto& es = added.entries();
  for (auto it = es.rbegin(); it != es.rend(); ++it) name = marker + "_" + std::to_string(*it) + "(" + name + ")";
  return name;
}

FreeReflexive free_reflexive(const MultipleSet& ms, int dim_bound, const std::string& marker) {
  if (!validate_multiple_set(ms).ok()) throw Error(ErrorCode::InvalidBase, "base multiple set does not validate");
  if (dim_bound < ms.dim_bound()) {
    throw Error(ErrorCode::InvalidBase, "dimension bound below the base bound " + std::to_string(ms.dim_bound()));
  }
  const int universe = ms.universe_bound();
  FreeReflexive out;
  out.marker = marker;
  out.structure.base = MultipleSet(universe, dim_bound);
  out.unit = MsMorphism{ms, {}, {}};
  MultipleSet& free = out.structure.base;

  const auto colors = all_colors(universe, dim_bound);
  for (const auto& [c0, ids] : ms.all_cells()) {
    for (const auto& added : colors) {
      bool fits = static_cast<int>(c0.dim() + added.dim()) <= dim_bound;
      for (int l : added.entries()) fits = fits && !c0.contains(l);
      if (!fits) continue;
      const Color c = disjoint_union(c0, added);
      for (const auto& x : ids) {
        CellId name = degeneracy_name(x, added, marker);
        free.add_cell(c, name);
        out.provenance[{c, name}] = Degeneracy{c0, x, added};
      }
    }
  }

  for (const auto& [key, deg] : out.provenance) {
    const auto& [c, name] = key;
    for (int k : c.entries()) {
      for (Polarity p : {Polarity::Source, Polarity::Target}) {
        CellId f = deg.added.contains(k) ? degeneracy_name(deg.generator, minus(deg.added, k), marker)
                                         : degeneracy_name(face(ms, deg.generator_color, deg.generator, k, p), deg.added, marker);
        free.set_face(c, name, k, p, f);
      }
    }
    for (int l = 1; l <= universe; ++l) {
      if (!admissible_reflexion(free, c, l)) continue;
      out.structure.refl[{c, l}][name] = degeneracy_name(deg.generator, add(deg.added, l), marker);
    }
  }

  for (const auto& [c, ids] : ms.all_cells())
    for (const auto& x : ids) out.unit.map[c][x] = x;
  out.unit.target = free;
  return out;
}

MsMorphism free_reflexive_map(const MsMorphism& f, const FreeReflexive& from, const FreeReflexive& to) {
  MsMorphism out{from.structure.base, to.structure.base, {}};
  for (const auto& [key, deg] : from.provenance) {
    const CellId& image = f(deg.generator_color, deg.generator);
    out.map[key.first][key.second] = degeneracy_name(image, deg.added, to.marker);
  }
  return out;
}

MsMorphism reflexive_monad_multiply(const FreeReflexive& outer, const FreeReflexive& inner) {
  const MultipleSet& once = inner.structure.base;
  const MultipleSet& twice = outer.structure.base;
  if (twice.dim_bound() != once.dim_bound() || twice.universe_bound() != once.universe_bound()) {
    throw Error(ErrorCode::BoundMismatch, "layers built at different bounds");
  }
  if (outer.unit.source != once) throw Error(ErrorCode::BoundMismatch, "outer layer is not built on the inner one");

  MsMorphism mu{twice, once, {}};
  for (const auto& [key, outer_deg] : outer.provenance) {
    const auto& inner_deg = inner.provenance.at({outer_deg.generator_color, outer_deg.generator});
    const CellId flat = degeneracy_name(inner_deg.generator, disjoint_union(inner_deg.added, outer_deg.added), inner.marker);
    if (!once.has_cell(key.first, flat)) throw Error(ErrorCode::BoundMismatch, "flattened cell " + flat + " missing");
    mu.map[key.first][key.second] = flat;
  }
  return mu;
}

}  // namespace multicat
