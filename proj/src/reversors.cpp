#include "multicat/reversors.hpp"

#include <algorithm>
#include <set>

#include "multicat/error.hpp"

namespace multicat {

namespace {

constexpr Polarity S = Polarity::Source;
constexpr Polarity T = Polarity::Target;

std::string chain_detail(const ChainKey& key, std::size_t p) {
  std::string out = "chain=";
  for (std::size_t i = 0; i < key.second.size(); ++i) out += (i ? "," : "") + std::to_string(key.second[i]);
  return out + " map=" + std::to_string(p);
}

std::optional<CellId> lookup(const CellTable& t, const CellId& x) {
  auto it = t.find(x);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

bool shape_ok(const ChainKey& key, int m, ReversorKind kind) {
  const auto& [c, es] = key;
  const int k = static_cast<int>(c.dim());
  const int len = static_cast<int>(es.size());
  if (k <= m || len < 1) return false;
  std::set<int> seen;
  for (int e : es)
    if (!c.contains(e) || !seen.insert(e).second) return false;
  switch (kind) {
    case ReversorKind::Minimal: return len == 1;
    case ReversorKind::Maximal: return len == k - m && std::is_sorted(es.begin(), es.end() - 1);
    case ReversorKind::General: return len <= k - m;
  }
  return false;
}

// Sequences of distinct entries of c starting with `first`, of length 1..max_len.
void general_chains(const Color& c, std::vector<int>& prefix, int max_len, std::vector<ChainKey>& out) {
  out.push_back({c, prefix});
  if (static_cast<int>(prefix.size()) == max_len) return;
  for (int e : c.entries()) {
    if (std::find(prefix.begin(), prefix.end(), e) != prefix.end()) continue;
    prefix.push_back(e);
    general_chains(c, prefix, max_len, out);
    prefix.pop_back();
  }
}

}  // namespace

const char* to_string(ReversorKind k) {
  switch (k) {
    case ReversorKind::Minimal: return "minimal";
    case ReversorKind::Maximal: return "maximal";
    case ReversorKind::General: return "general";
  }
  return "minimal";
}

std::optional<ReversorKind> parse_reversor_kind(const std::string& s) {
  if (s == "minimal") return ReversorKind::Minimal;
  if (s == "maximal") return ReversorKind::Maximal;
  if (s == "general") return ReversorKind::General;
  return std::nullopt;
}

Color chain_level(const ChainKey& key, std::size_t p) {
  Color c = key.first;
  for (std::size_t i = 0; i < p; ++i) c = minus(c, key.second[i]);
  return c;
}

std::vector<ChainKey> required_chains(int universe_bound, int dim_bound, int m, ReversorKind kind) {
  std::vector<ChainKey> out;
  for (const auto& c : all_colors(universe_bound, dim_bound)) {
    const int k = static_cast<int>(c.dim());
    if (k <= m) continue;
    switch (kind) {
      case ReversorKind::Minimal:
        for (int e : c.entries()) out.push_back({c, {e}});
        break;
      case ReversorKind::Maximal:
        for (const auto& sub : k_colors(c, k - m - 1)) {
          const Color rest = difference(c, sub);
          for (int f : rest.entries()) {
            std::vector<int> es = sub.entries();
            es.push_back(f);
            out.push_back({c, es});
          }
        }
        break;
      case ReversorKind::General:
        for (int e : c.entries()) {
          std::vector<int> prefix{e};
          general_chains(c, prefix, k - m, out);
        }
        break;
    }
  }
  return out;
}

ValidationReport validate_reversors(const ReversorStructure& r, const Truncation* truncation) {
  ValidationReport report;
  const MultipleSet& ms = r.base;

  for (const auto& [key, maps] : r.chains) {
    if (!shape_ok(key, r.m, r.kind) || maps.size() != key.second.size()) {
      report.add("REV-SHAPE", key.first, {}, chain_detail(key, 0) + " kind=" + to_string(r.kind));
      continue;
    }
    for (std::size_t p = 0; p < maps.size(); ++p) {
      const Color level = chain_level(key, p);
      const int e = key.second[p];
      const bool terminal = p + 1 == maps.size();
      for (const auto& [x, y] : maps[p])
        if (!ms.has_cell(level, x) || !ms.has_cell(level, y)) report.add("REV-RANGE", level, {x, y}, chain_detail(key, p));
      for (const auto& x : ms.cells(level)) {
        auto jx = lookup(maps[p], x);
        if (!jx) {
          if (!truncation || truncation->unary_required(level, x)) report.add("REV-TOTAL", level, {x}, chain_detail(key, p));
          continue;
        }
        if (!ms.has_cell(level, *jx)) continue;
        for (Polarity pol : {S, T}) {
          auto fjx = ms.find_face(level, *jx, e, pol);
          if (terminal) {
            auto want = ms.find_face(level, x, e, flip(pol));
            if (fjx != want) {
              report.add("SWAP-END", level, {x, *jx},
                         chain_detail(key, p) + " e=" + std::to_string(e) + " " + to_string(pol));
            }
          } else {
            auto fx = ms.find_face(level, x, e, pol);
            if (!fx || !fjx) continue;
            auto next = lookup(maps[p + 1], *fx);
            if (!next) continue;
            if (*next != *fjx) {
              report.add("SERIAL", level, {x, *jx},
                         chain_detail(key, p) + " e=" + std::to_string(e) + " " + to_string(pol));
            }
          }
        }
      }
    }
  }

  if (r.kind == ReversorKind::General) {
    std::set<std::pair<Color, int>> covered;
    for (const auto& [key, maps] : r.chains)
      if (shape_ok(key, r.m, r.kind)) covered.insert({key.first, key.second.front()});
    for (const auto& c : all_colors(ms.universe_bound(), ms.dim_bound())) {
      if (static_cast<int>(c.dim()) <= r.m) continue;
      for (int e : c.entries())
        if (!covered.count({c, e})) report.add("COVER", c, {}, "first entry " + std::to_string(e));
    }
  } else {
    for (const auto& key : required_chains(ms.universe_bound(), ms.dim_bound(), r.m, r.kind))
      if (!r.chains.count(key)) report.add("COVER", key.first, {}, chain_detail(key, 0));
  }
  return report.canonicalize();
}

ValidationReport validate_reversor_morphism(const MsMorphism& f, const ReversorStructure& r,
                                            const ReversorStructure& r2) {
  ValidationReport report;
  for (const auto& [key, maps] : r.chains) {
    auto it = r2.chains.find(key);
    if (it == r2.chains.end() || it->second.size() != maps.size()) {
      report.add("REV-MOR-MISSING", key.first, {}, chain_detail(key, 0));
      continue;
    }
    for (std::size_t p = 0; p < maps.size(); ++p) {
      const Color level = chain_level(key, p);
      for (const auto& [x, jx] : maps[p]) {
        auto fx = f.map.count(level) ? lookup(f.map.at(level), x) : std::nullopt;
        auto fjx = f.map.count(level) ? lookup(f.map.at(level), jx) : std::nullopt;
        if (!fx || !fjx) continue;
        auto jfx = lookup(it->second[p], *fx);
        if (!jfx || *jfx != *fjx)
          report.add("REV-MOR", level, {x, *fjx}, chain_detail(key, p) + " e=" + std::to_string(key.second[p]));
      }
    }
  }
  return report.canonicalize();
}

namespace {

class ChainSearch {
 public:
  ChainSearch(const StrictCategory& cat, SearchOptions options, std::size_t budget)
      : cat_(cat), options_(options), budget_(budget) {}

  // Every list of maps for this chain that passes SWAP-END and SERIAL.
  std::vector<std::vector<CellTable>> run(const ChainKey& key) {
    std::vector<std::vector<CellTable>> out;
    std::vector<CellTable> maps(key.second.size());
    fill(key, static_cast<int>(key.second.size()) - 1, maps, out);
    return out;
  }

 private:
  std::vector<CellId> candidates(const ChainKey& key, std::size_t p, const CellId& x, const std::vector<CellTable>& maps) {
    const MultipleSet& ms = cat_.base;
    const Color level = chain_level(key, p);
    const int e = key.second[p];
    const bool terminal = p + 1 == key.second.size();
    std::vector<CellId> out;
    for (const auto& y : ms.cells(level)) {
      tick();
      bool ok = true;
      for (Polarity pol : {S, T}) {
        auto fy = ms.find_face(level, y, e, pol);
        if (terminal) {
          ok = ok && fy == ms.find_face(level, x, e, flip(pol));
        } else {
          auto fx = ms.find_face(level, x, e, pol);
          ok = ok && fx && fy && lookup(maps[p + 1], *fx) == fy;
        }
      }
      if (ok && terminal && options_.inverse_laws) ok = inverse_ok(level, e, x, y);
      if (ok) out.push_back(y);
    }
    return out;
  }

  bool inverse_ok(const Color& level, int e, const CellId& x, const CellId& y) {
    const MultipleSet& ms = cat_.base;
    const Color lower = minus(level, e);
    auto tx = ms.find_face(level, x, e, T);
    auto sx = ms.find_face(level, x, e, S);
    auto one_t = tx ? find_reflexion(cat_.refl, lower, *tx, e) : std::nullopt;
    auto one_s = sx ? find_reflexion(cat_.refl, lower, *sx, e) : std::nullopt;
    auto xy = find_composite(cat_.comp, level, e, x, y);
    auto yx = find_composite(cat_.comp, level, e, y, x);
    return one_t && one_s && xy == one_t && yx == one_s;
  }

  void fill(const ChainKey& key, int p, std::vector<CellTable>& maps, std::vector<std::vector<CellTable>>& out) {
    if (p < 0) {
      out.push_back(maps);
      return;
    }
    const Color level = chain_level(key, p);
    std::vector<CellId> cells(cat_.base.cells(level).begin(), cat_.base.cells(level).end());
    std::vector<std::vector<CellId>> options;
    for (const auto& x : cells) {
      options.push_back(candidates(key, p, x, maps));
      if (options.back().empty()) return;
    }
    // Cells are independent given the next map: walk the product.
    std::vector<std::size_t> pick(cells.size(), 0);
    while (true) {
      tick();
      maps[p].clear();
      for (std::size_t i = 0; i < cells.size(); ++i) maps[p][cells[i]] = options[i][pick[i]];
      fill(key, p - 1, maps, out);
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    maps[p].clear();
  }

  void tick() {
    if (++work_ > budget_) throw Error(ErrorCode::BudgetExceeded, "reversor search budget " + std::to_string(budget_));
  }

  const StrictCategory& cat_;
  SearchOptions options_;
  std::size_t budget_;
  std::size_t work_ = 0;
};

}  // namespace

std::vector<ReversorStructure> search_reversors(const StrictCategory& c, int m, ReversorKind kind,
                                                SearchOptions options) {
  const std::size_t budget = options.budget ? options.budget : work_budget();
  ChainSearch search(c, options, budget);
  const MultipleSet& ms = c.base;

  // Slots: each is a list of alternative (chain, maps) choices; a structure picks one per slot.
  std::vector<std::vector<std::pair<ChainKey, std::vector<CellTable>>>> slots;
  const auto chains = required_chains(ms.universe_bound(), ms.dim_bound(), m, kind);
  if (kind == ReversorKind::General) {
    std::map<std::pair<Color, int>, std::vector<ChainKey>> by_first;
    for (const auto& key : chains) by_first[{key.first, key.second.front()}].push_back(key);
    for (const auto& [first, keys] : by_first) {
      slots.emplace_back();
      for (const auto& key : keys)
        for (auto& maps : search.run(key)) slots.back().push_back({key, std::move(maps)});
    }
  } else {
    for (const auto& key : chains) {
      slots.emplace_back();
      for (auto& maps : search.run(key)) slots.back().push_back({key, std::move(maps)});
    }
  }

  std::vector<ReversorStructure> out;
  for (const auto& slot : slots)
    if (slot.empty()) return out;
  std::size_t total = 1;
  for (const auto& slot : slots) {
    total *= slot.size();
    if (total > budget) throw Error(ErrorCode::BudgetExceeded, "too many reversor structures to list");
  }
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    ReversorStructure r{ms, m, kind, {}};
    for (std::size_t i = 0; i < slots.size(); ++i) r.chains[slots[i][pick[i]].first] = slots[i][pick[i]].second;
    out.push_back(std::move(r));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == slots[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

ReversorStructure presentation_reversors(const StrictPresentation& p, const TabulatedCategory& q) {
  ReversorStructure r{q.category.base, p.reversor_floor().value_or(0), ReversorKind::Minimal, {}};
  if (!p.reversor_floor()) return r;
  for (const auto& key : required_chains(p.universe_bound(), p.dim_bound(), *p.reversor_floor(), ReversorKind::Minimal))
    r.chains[key].resize(1);
  for (const auto& [cls, cell] : q.cell_of) {
    const auto& [color, name] = cell;
    if (static_cast<int>(color.dim()) <= r.m) continue;
    for (int e : color.entries())
      if (auto j = p.class_rev(cls, e)) r.chains[{color, {e}}][0][name] = q.cell_of.at(*j).second;
  }
  return r;
}

}  // namespace multicat
