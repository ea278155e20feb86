#include "multicat/strict.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

#include "multicat/error.hpp"

namespace multicat {

TermExpr TermExpr::gen(Color c, CellId x) {
  TermExpr t;
  t.kind = TermKind::Gen;
  t.color = std::move(c);
  t.cell = std::move(x);
  return t;
}

TermExpr TermExpr::refl(int l, TermExpr t) {
  TermExpr out;
  out.kind = TermKind::Refl;
  out.dir = l;
  out.kids.push_back(std::move(t));
  return out;
}

TermExpr TermExpr::comp(int d, TermExpr a, TermExpr b) {
  TermExpr out;
  out.kind = TermKind::Comp;
  out.dir = d;
  out.kids.push_back(std::move(a));
  out.kids.push_back(std::move(b));
  return out;
}

TermExpr TermExpr::rev(int e, TermExpr t) {
  TermExpr out;
  out.kind = TermKind::Rev;
  out.dir = e;
  out.kids.push_back(std::move(t));
  return out;
}

std::size_t work_budget(std::size_t fallback) {
  if (const char* env = std::getenv("MULTICAT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

StrictPresentation::StrictPresentation(MultipleSet generators, int dim_bound, int size_bound, std::optional<int> m,
                                       std::size_t budget)
    : generators_(std::move(generators)), dim_bound_(dim_bound), size_bound_(size_bound), m_(m), budget_(budget) {
  for (const auto& [c, ids] : generators_.all_cells()) {
    for (const auto& x : ids) intern(Node{TermKind::Gen, c, 0, x, {}, -1, -1, 1});
  }
}

ClassId StrictPresentation::find(TermId t) const {
  TermId root = t;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[t] != root) {
    TermId next = parent_[t];
    parent_[t] = root;
    t = next;
  }
  return root;
}

bool StrictPresentation::unite(TermId a, TermId b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (a > b) std::swap(a, b);
  parent_[b] = a;
  return true;
}

TermId StrictPresentation::intern(Node node) {
  NodeKey key{node.kind, node.color, node.dir, node.gen, node.path, node.a, node.b};
  if (auto it = interned_.find(key); it != interned_.end()) return it->second;
  if (nodes_.size() >= budget_) {
    throw Error(ErrorCode::BudgetExceeded, "term budget " + std::to_string(budget_) + " exhausted");
  }
  const TermId id = static_cast<TermId>(nodes_.size());
  const Color color = node.color;
  nodes_.push_back(std::move(node));
  parent_.push_back(id);
  faces_.emplace_back(2 * std::max(1, universe_bound()), -1);
  interned_.emplace(std::move(key), id);
  for (int d : color.entries()) {
    for (Polarity p : {Polarity::Source, Polarity::Target}) {
      const TermId f = face_term(id, d, p);
      faces_[id][face_slot(d, p)] = f;
    }
  }
  return id;
}

TermId StrictPresentation::face_term(TermId t, int d, Polarity p) {
  const Node n = nodes_[t];
  const Color lower = minus(n.color, d);
  switch (n.kind) {
    case TermKind::Gen: {
      CellId x = face(generators_, n.color, n.gen, d, p);
      return intern(Node{TermKind::Gen, lower, 0, std::move(x), {}, -1, -1, 1});
    }
    case TermKind::Refl: {
      if (d == n.dir) return n.a;
      const TermId fa = faces_[n.a][face_slot(d, p)];
      return intern(Node{TermKind::Refl, lower, n.dir, {}, {}, fa, -1, 1 + nodes_[fa].size});
    }
    case TermKind::Comp: {
      if (d == n.dir) return p == Polarity::Source ? faces_[n.b][face_slot(d, p)] : faces_[n.a][face_slot(d, p)];
      const TermId fa = faces_[n.a][face_slot(d, p)];
      const TermId fb = faces_[n.b][face_slot(d, p)];
      return intern(Node{TermKind::Comp, lower, n.dir, {}, {}, fa, fb, 1 + nodes_[fa].size + nodes_[fb].size});
    }
    case TermKind::Rev: {
      if (d == n.dir) return faces_[n.a][face_slot(d, flip(p))];
      return intern(Node{TermKind::RevFace, lower, n.dir, {}, {{d, p}}, n.a, -1, n.size});
    }
    case TermKind::RevFace: {
      if (d == n.dir) {
        TermId x = faces_[n.a][face_slot(d, flip(p))];
        for (const auto& [dd, pp] : n.path) x = faces_[x][face_slot(dd, pp)];
        return x;
      }
      auto path = n.path;
      path.emplace_back(d, p);
      std::sort(path.begin(), path.end());
      return intern(Node{TermKind::RevFace, lower, n.dir, {}, std::move(path), n.a, -1, n.size});
    }
  }
  return -1;
}

void StrictPresentation::rebuild_indices() {
  members_.clear();
  min_size_.clear();
  smallest_.clear();
  refl_.clear();
  rev_.clear();
  comp_.clear();
  decomp_.clear();
  by_left_.clear();
  for (TermId t = 0; t < static_cast<TermId>(nodes_.size()); ++t) {
    const ClassId c = find(t);
    members_[c].push_back(t);
    const Node& n = nodes_[t];
    auto [it, fresh] = min_size_.emplace(c, n.size);
    if (fresh || n.size < it->second) {
      it->second = n.size;
      smallest_[c] = t;
    }
    switch (n.kind) {
      case TermKind::Refl: refl_[{find(n.a), n.dir}] = c; break;
      case TermKind::Rev: rev_[{find(n.a), n.dir}] = c; break;
      case TermKind::Comp: comp_[{n.dir, find(n.a), find(n.b)}] = c; break;
      default: break;
    }
  }
  for (const auto& [key, x] : comp_) {
    const auto& [d, a, b] = key;
    decomp_[{d, x}].emplace_back(a, b);
    by_left_[{d, a}].emplace_back(b, x);
  }
}

std::size_t StrictPresentation::close_pass() {
  std::size_t merges = 0;

  std::map<NodeKey, TermId> signature;
  for (TermId t = 0; t < static_cast<TermId>(nodes_.size()); ++t) {
    const Node& n = nodes_[t];
    NodeKey key{n.kind, n.color, n.dir, n.gen, n.path, n.a < 0 ? -1 : find(n.a), n.b < 0 ? -1 : find(n.b)};
    auto [it, fresh] = signature.emplace(std::move(key), t);
    if (!fresh) merges += unite(t, it->second);
  }
  for (TermId t = 0; t < static_cast<TermId>(nodes_.size()); ++t) {
    const TermId r = find(t);
    if (r == t) continue;
    for (int d : nodes_[t].color.entries())
      for (Polarity p : {Polarity::Source, Polarity::Target})
        merges += unite(faces_[t][face_slot(d, p)], faces_[r][face_slot(d, p)]);
  }

  rebuild_indices();
  std::vector<std::pair<ClassId, ClassId>> equal;
  auto comp = [&](int d, ClassId a, ClassId b) -> std::optional<ClassId> {
    auto it = comp_.find({d, a, b});
    if (it == comp_.end()) return std::nullopt;
    return it->second;
  };
  auto refl = [&](ClassId a, int l) -> std::optional<ClassId> {
    auto it = refl_.find({a, l});
    if (it == refl_.end()) return std::nullopt;
    return it->second;
  };

  for (const auto& [key, x] : comp_) {
    const auto& [d, a, b] = key;
    // ASSOC
    if (auto it = by_left_.find({d, b}); it != by_left_.end()) {
      for (const auto& [c, y] : it->second) {
        auto lhs = comp(d, x, c);
        auto rhs = comp(d, a, y);
        if (lhs && rhs) equal.emplace_back(*lhs, *rhs);
      }
    }
    // REFL-DIST
    const Color color = nodes_[a].color;
    for (int k = 1; k <= universe_bound(); ++k) {
      if (color.contains(k) || static_cast<int>(color.dim()) + 1 > dim_bound_) continue;
      auto ka = refl(a, k);
      auto kb = refl(b, k);
      auto kx = refl(x, k);
      if (!ka || !kb || !kx) continue;
      if (auto y = comp(d, *ka, *kb)) equal.emplace_back(*kx, *y);
    }
    // MFI, reading this entry as the outer k-composite with j < k.
    const int k = d;
    for (int j : color.entries()) {
      if (j >= k) continue;
      auto dx = decomp_.find({j, a});
      auto dy = decomp_.find({j, b});
      if (dx == decomp_.end() || dy == decomp_.end()) continue;
      for (const auto& [aa, bb] : dx->second) {
        for (const auto& [cc, dd] : dy->second) {
          auto ac = comp(k, aa, cc);
          auto bd = comp(k, bb, dd);
          if (!ac || !bd) continue;
          if (auto r = comp(j, *ac, *bd)) equal.emplace_back(x, *r);
        }
      }
    }
  }

  for (const auto& [c, ts] : members_) {
    const Color& color = nodes_[c].color;
    for (int d : color.entries()) {
      // UNIT
      const ClassId src = find(faces_[c][face_slot(d, Polarity::Source)]);
      const ClassId tgt = find(faces_[c][face_slot(d, Polarity::Target)]);
      if (auto u = refl(src, d))
        if (auto r = comp(d, c, *u)) equal.emplace_back(*r, c);
      if (auto u = refl(tgt, d))
        if (auto r = comp(d, *u, c)) equal.emplace_back(*r, c);
    }
  }
  // REFL-X
  for (const auto& [key, ka] : refl_) {
    const auto& [a, k] = key;
    for (int l = k + 1; l <= universe_bound(); ++l) {
      auto lka = refl(ka, l);
      auto la = refl(a, l);
      if (!lka || !la) continue;
      if (auto kla = refl(*la, k)) equal.emplace_back(*lka, *kla);
    }
  }

  for (const auto& [a, b] : equal) merges += unite(a, b);
  return merges;
}

std::size_t StrictPresentation::close() {
  std::size_t total = 0;
  while (std::size_t merges = close_pass()) total += merges;
  return total;
}

std::size_t StrictPresentation::materialize() {
  std::vector<Node> pending;
  std::map<Color, std::vector<ClassId>> by_color;
  for (const auto& [c, size] : min_size_) {
    const Color& color = nodes_[c].color;
    by_color[color].push_back(c);
    if (size + 1 > size_bound_) continue;
    const TermId t = smallest_.at(c);
    for (int l = 1; l <= universe_bound(); ++l) {
      if (color.contains(l) || static_cast<int>(color.dim()) + 1 > dim_bound_ || refl_.count({c, l})) continue;
      pending.push_back(Node{TermKind::Refl, add(color, l), l, {}, {}, t, -1, size + 1});
    }
    if (m_ && static_cast<int>(color.dim()) > *m_) {
      for (int e : color.entries()) {
        if (rev_.count({c, e})) continue;
        pending.push_back(Node{TermKind::Rev, color, e, {}, {}, t, -1, size + 1});
      }
    }
  }
  for (const auto& [color, cs] : by_color) {
    for (int d : color.entries()) {
      std::map<ClassId, std::vector<ClassId>> left, right;  // keyed by the shared face
      for (ClassId c : cs) {
        left[find(faces_[c][face_slot(d, Polarity::Source)])].push_back(c);
        right[find(faces_[c][face_slot(d, Polarity::Target)])].push_back(c);
      }
      for (const auto& [f, as] : left) {
        auto it = right.find(f);
        if (it == right.end()) continue;
        for (ClassId a : as) {
          for (ClassId b : it->second) {
            const int size = min_size_.at(a) + min_size_.at(b) + 1;
            if (size > size_bound_ || comp_.count({d, a, b})) continue;
            pending.push_back(Node{TermKind::Comp, color, d, {}, {}, smallest_.at(a), smallest_.at(b), size});
          }
        }
      }
    }
  }
  const std::size_t before = nodes_.size();
  for (auto& n : pending) intern(std::move(n));
  return nodes_.size() - before;
}

std::size_t StrictPresentation::saturate() {
  std::size_t total = 0;
  while (true) {
    total += close();
    ++rounds_;
    const std::size_t added = materialize();
    total += added;
    if (added == 0) break;
  }
  compute_canonical();
  return total;
}

void StrictPresentation::compute_canonical() {
  canonical_.clear();
  rendering_.clear();
  std::vector<ClassId> order;
  for (const auto& [c, ts] : members_) order.push_back(c);
  std::stable_sort(order.begin(), order.end(), [&](ClassId a, ClassId b) { return min_size_.at(a) < min_size_.at(b); });

  auto shape_size = [&](const Shape& s) {
    int size = 1;
    for (ClassId k : s.kids) size += min_size_.at(k);
    return size;
  };
  // Recursive comparison of canonical representatives.
  std::function<int(ClassId, ClassId)> compare_classes;
  auto compare_shapes = [&](const Shape& x, const Shape& y) {
    const int sx = shape_size(x), sy = shape_size(y);
    if (sx != sy) return sx < sy ? -1 : 1;
    auto head = [](const Shape& s) { return std::tie(s.kind, s.color, s.dir, s.gen, s.path); };
    if (head(x) != head(y)) return head(x) < head(y) ? -1 : 1;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
      if (int r = compare_classes(x.kids[i], y.kids[i])) return r;
    return 0;
  };
  compare_classes = [&](ClassId a, ClassId b) {
    if (a == b) return 0;
    return compare_shapes(canonical_.at(a), canonical_.at(b));
  };

  for (ClassId c : order) {
    std::vector<Shape> candidates = shapes(c);
    int best_size = 1 << 30;
    for (const auto& s : candidates) best_size = std::min(best_size, shape_size(s));
    std::optional<Shape> best;
    for (auto& s : candidates) {
      if (shape_size(s) != best_size) continue;
      if (!best || compare_shapes(s, *best) < 0) best = s;
    }
    canonical_[c] = *best;
    const Shape& s = *best;
    std::string r;
    switch (s.kind) {
      case TermKind::Gen: r = s.gen; break;
      case TermKind::Refl: r = "1_" + std::to_string(s.dir) + "(" + rendering_.at(s.kids[0]) + ")"; break;
      case TermKind::Comp:
        r = "(" + rendering_.at(s.kids[0]) + " o" + std::to_string(s.dir) + " " + rendering_.at(s.kids[1]) + ")";
        break;
      case TermKind::Rev: r = "j_" + std::to_string(s.dir) + "(" + rendering_.at(s.kids[0]) + ")"; break;
      case TermKind::RevFace:
        r = "j_" + std::to_string(s.dir) + "(" + rendering_.at(s.kids[0]) + ")|";
        for (const auto& [d, p] : s.path) r += (p == Polarity::Source ? "s" : "t") + std::to_string(d);
        break;
    }
    rendering_[c] = std::move(r);
  }
}

std::vector<StrictPresentation::Shape> StrictPresentation::shapes(ClassId c) const {
  std::set<Shape> out;
  for (TermId t : members_.at(find(c))) {
    const Node& n = nodes_[t];
    Shape s{n.kind, n.color, n.dir, n.gen, n.path, {}};
    if (n.a >= 0) s.kids.push_back(find(n.a));
    if (n.b >= 0) s.kids.push_back(find(n.b));
    out.insert(std::move(s));
  }
  return {out.begin(), out.end()};
}

const StrictPresentation::Shape& StrictPresentation::canonical_shape(ClassId c) const { return canonical_.at(find(c)); }

std::vector<ClassId> StrictPresentation::classes() const {
  std::vector<ClassId> out;
  for (const auto& [c, ts] : members_) out.push_back(c);
  std::sort(out.begin(), out.end(), [&](ClassId a, ClassId b) {
    return std::tie(nodes_[a].color, rendering_.at(a)) < std::tie(nodes_[b].color, rendering_.at(b));
  });
  return out;
}

std::map<Color, std::size_t> StrictPresentation::class_counts() const {
  std::map<Color, std::size_t> out;
  for (const auto& [c, ts] : members_) ++out[nodes_[c].color];
  return out;
}

Color StrictPresentation::color_of(ClassId c) const { return nodes_[find(c)].color; }
int StrictPresentation::min_size(ClassId c) const { return min_size_.at(find(c)); }
std::string StrictPresentation::render(ClassId c) const { return rendering_.at(find(c)); }

ClassId StrictPresentation::class_face(ClassId c, int d, Polarity p) const {
  c = find(c);
  if (!nodes_[c].color.contains(d)) throw Error(ErrorCode::EntryAbsent, std::to_string(d) + " not in " + nodes_[c].color.to_string());
  return find(faces_[c][face_slot(d, p)]);
}

std::optional<ClassId> StrictPresentation::class_refl(ClassId c, int l) const {
  auto it = refl_.find({find(c), l});
  if (it == refl_.end()) return std::nullopt;
  return find(it->second);
}

std::optional<ClassId> StrictPresentation::class_comp(int d, ClassId a, ClassId b) const {
  auto it = comp_.find({d, find(a), find(b)});
  if (it == comp_.end()) return std::nullopt;
  return find(it->second);
}

std::optional<ClassId> StrictPresentation::class_rev(ClassId c, int e) const {
  auto it = rev_.find({find(c), e});
  if (it == rev_.end()) return std::nullopt;
  return find(it->second);
}

std::optional<ClassId> StrictPresentation::generator_class(const Color& c, const CellId& x) const {
  auto it = interned_.find(NodeKey{TermKind::Gen, c, 0, x, {}, -1, -1});
  if (it == interned_.end()) return std::nullopt;
  return find(it->second);
}

bool StrictPresentation::composable(int d, ClassId a, ClassId b) const {
  return color_of(a) == color_of(b) && color_of(a).contains(d) &&
         class_face(a, d, Polarity::Source) == class_face(b, d, Polarity::Target);
}

std::optional<ClassId> StrictPresentation::lookup(const TermExpr& t) const {
  std::vector<ClassId> kids;
  for (const auto& k : t.kids) {
    auto c = lookup(k);
    if (!c) return std::nullopt;
    kids.push_back(*c);
  }
  switch (t.kind) {
    case TermKind::Gen: return generator_class(t.color, t.cell);
    case TermKind::Refl: return class_refl(kids[0], t.dir);
    case TermKind::Comp: return class_comp(t.dir, kids[0], kids[1]);
    case TermKind::Rev: return class_rev(kids[0], t.dir);
    case TermKind::RevFace: return std::nullopt;
  }
  return std::nullopt;
}

ClassId StrictPresentation::class_of(const TermExpr& t) const {
  auto c = lookup(t);
  if (!c) throw Error(ErrorCode::TermNotMaterialized, "term not present at size bound " + std::to_string(size_bound_));
  return *c;
}

TermId StrictPresentation::intern_expr(const TermExpr& t) {
  std::vector<TermId> kids;
  for (const auto& k : t.kids) kids.push_back(intern_expr(k));
  switch (t.kind) {
    case TermKind::Gen: {
      if (!generators_.has_cell(t.color, t.cell)) throw Error(ErrorCode::UnknownCell, t.cell + " at " + t.color.to_string());
      return intern(Node{TermKind::Gen, t.color, 0, t.cell, {}, -1, -1, 1});
    }
    case TermKind::Refl: {
      const Color& c = nodes_[kids[0]].color;
      if (c.contains(t.dir)) throw Error(ErrorCode::EntryPresent, std::to_string(t.dir) + " in " + c.to_string());
      if (t.dir < 1 || t.dir > universe_bound() || static_cast<int>(c.dim()) + 1 > dim_bound_)
        throw Error(ErrorCode::BoundMismatch, "reflexion 1_" + std::to_string(t.dir) + " leaves the bounds");
      return intern(Node{TermKind::Refl, add(c, t.dir), t.dir, {}, {}, kids[0], -1, 1 + nodes_[kids[0]].size});
    }
    case TermKind::Comp: {
      const Color& c = nodes_[kids[0]].color;
      if (c != nodes_[kids[1]].color || !c.contains(t.dir) || !composable(t.dir, kids[0], kids[1]))
        throw Error(ErrorCode::NotComposable, "composite in direction " + std::to_string(t.dir));
      return intern(Node{TermKind::Comp, c, t.dir, {}, {}, kids[0], kids[1],
                         1 + nodes_[kids[0]].size + nodes_[kids[1]].size});
    }
    case TermKind::Rev: {
      const Color& c = nodes_[kids[0]].color;
      if (!c.contains(t.dir)) throw Error(ErrorCode::EntryAbsent, std::to_string(t.dir) + " not in " + c.to_string());
      if (!m_ || static_cast<int>(c.dim()) <= *m_) throw Error(ErrorCode::BoundMismatch, "no reversor at " + c.to_string());
      return intern(Node{TermKind::Rev, c, t.dir, {}, {}, kids[0], -1, 1 + nodes_[kids[0]].size});
    }
    case TermKind::RevFace: break;
  }
  throw Error(ErrorCode::TermNotMaterialized, "reversor faces are not user terms");
}

TermId StrictPresentation::extend(TermKind kind, int dir, ClassId a, ClassId b) {
  a = find(a);
  const Color c = nodes_[a].color;
  switch (kind) {
    case TermKind::Refl: {
      if (auto r = class_refl(a, dir)) return *r;
      if (c.contains(dir) || static_cast<int>(c.dim()) + 1 > dim_bound_)
        throw Error(ErrorCode::BoundMismatch, "reflexion 1_" + std::to_string(dir) + " leaves the bounds");
      return intern(Node{TermKind::Refl, add(c, dir), dir, {}, {}, a, -1, 1 + nodes_[a].size});
    }
    case TermKind::Rev: {
      if (auto r = class_rev(a, dir)) return *r;
      return intern(Node{TermKind::Rev, c, dir, {}, {}, a, -1, 1 + nodes_[a].size});
    }
    case TermKind::Comp: {
      b = find(b);
      if (auto r = class_comp(dir, a, b)) return *r;
      if (!composable(dir, a, b)) {
        close();
        a = find(a);
        b = find(b);
        if (auto r = class_comp(dir, a, b)) return *r;
        if (!composable(dir, a, b)) throw Error(ErrorCode::NotComposable, "composite in direction " + std::to_string(dir));
      }
      return intern(Node{TermKind::Comp, c, dir, {}, {}, a, b, 1 + nodes_[a].size + nodes_[b].size});
    }
    default: break;
  }
  throw Error(ErrorCode::TermNotMaterialized, "only Refl, Comp and Rev extend");
}

std::vector<TermId> StrictPresentation::intern_all(const std::vector<TermExpr>& ts) {
  std::vector<TermId> out;
  for (const auto& t : ts) {
    out.push_back(intern_expr(t));
    close();
  }
  saturate();
  return out;
}

ClassId StrictPresentation::evaluate(const TermExpr& t) { return find(intern_all({t}).front()); }

StrictPresentation free_strict(const MultipleSet& ms, int dim_bound, int size_bound, std::optional<int> m,
                               std::optional<std::size_t> budget) {
  if (!validate_multiple_set(ms).ok()) throw Error(ErrorCode::InvalidBase, "generators do not validate");
  if (dim_bound < ms.dim_bound()) throw Error(ErrorCode::InvalidBase, "dimension bound below the generators' bound");
  if (size_bound < 1) throw Error(ErrorCode::BoundsTooSmall, "size bound must admit the generators");
  StrictPresentation p(ms, dim_bound, size_bound, m, budget.value_or(work_budget()));
  p.saturate();
  return p;
}

bool term_equal(const StrictPresentation& p, const TermExpr& a, const TermExpr& b) {
  return p.class_of(a) == p.class_of(b);
}

namespace {

TabulatedCategory tabulate(const StrictPresentation& p, bool require_all) {
  TabulatedCategory out;
  StrictCategory& cat = out.category;
  cat.base = MultipleSet(p.universe_bound(), p.dim_bound());
  out.truncation.size_bound = p.size_bound();
  out.truncation.unary_cost = 1;

  const auto classes = p.classes();
  std::map<Color, std::vector<ClassId>> by_color;
  for (ClassId c : classes) {
    const Color color = p.color_of(c);
    const CellId name = p.render(c);
    out.cell_of[c] = {color, name};
    cat.base.add_cell(color, name);
    out.truncation.size[{color, name}] = p.min_size(c);
    by_color[color].push_back(c);
  }
  auto name = [&](ClassId c) { return out.cell_of.at(p.find(c)).second; };
  for (ClassId c : classes) {
    const Color color = p.color_of(c);
    for (int d : color.entries())
      for (Polarity pol : {Polarity::Source, Polarity::Target})
        cat.base.set_face(color, name(c), d, pol, name(p.class_face(c, d, pol)));
    for (int l = 1; l <= p.universe_bound(); ++l) {
      if (!admissible_reflexion(cat.base, color, l)) continue;
      if (auto r = p.class_refl(c, l)) {
        cat.refl[{color, l}][name(c)] = name(*r);
      } else if (require_all) {
        throw Error(ErrorCode::BoundsTooSmall, "missing reflexion 1_" + std::to_string(l) + "(" + name(c) + ")");
      }
    }
  }
  for (const auto& [color, cs] : by_color) {
    for (int d : color.entries()) {
      for (ClassId a : cs) {
        for (ClassId b : cs) {
          if (!p.composable(d, a, b)) continue;
          if (auto r = p.class_comp(d, a, b)) {
            cat.comp[{color, d}][{name(a), name(b)}] = name(*r);
          } else if (require_all) {
            throw Error(ErrorCode::BoundsTooSmall,
                        "missing composite (" + name(a) + " o" + std::to_string(d) + " " + name(b) + ")");
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

TabulatedCategory quotient_to_category(const StrictPresentation& p) { return tabulate(p, true); }

TabulatedCategory truncated_category(const StrictPresentation& p) { return tabulate(p, false); }

MsMorphism generator_embedding(const StrictPresentation& p, const TabulatedCategory& q) {
  MsMorphism out{p.generators(), q.category.base, {}};
  for (const auto& [c, ids] : p.generators().all_cells())
    for (const auto& x : ids) out.map[c][x] = q.cell_of.at(*p.generator_class(c, x)).second;
  return out;
}

FunctorExtension extend_to_functor(const StrictPresentation& p, const TabulatedCategory& q,
                                   const StrictCategory& target, const MsMorphism& f) {
  FunctorExtension out;
  std::map<ClassId, CellId> value;

  auto evaluate_shape = [&](const StrictPresentation::Shape& s) -> std::optional<CellId> {
    std::vector<CellId> kids;
    for (ClassId k : s.kids) {
      auto it = value.find(k);
      if (it == value.end()) return std::nullopt;
      kids.push_back(it->second);
    }
    switch (s.kind) {
      case TermKind::Gen: {
        auto t = f.map.find(s.color);
        if (t == f.map.end() || !t->second.count(s.gen)) return std::nullopt;
        return t->second.at(s.gen);
      }
      case TermKind::Refl: return find_reflexion(target.refl, p.color_of(s.kids[0]), kids[0], s.dir);
      case TermKind::Comp: return find_composite(target.comp, s.color, s.dir, kids[0], kids[1]);
      default: return std::nullopt;
    }
  };

  auto classes = p.classes();
  std::stable_sort(classes.begin(), classes.end(), [&](ClassId a, ClassId b) { return p.min_size(a) < p.min_size(b); });
  for (ClassId c : classes) {
    const auto& [color, cell] = q.cell_of.at(c);
    auto v = evaluate_shape(p.canonical_shape(c));
    if (!v) {
      out.report.add("EXT-UNDEFINED", color, {cell});
      continue;
    }
    value[c] = *v;
    out.map[color][cell] = *v;
  }
  for (ClassId c : classes) {
    auto it = value.find(c);
    if (it == value.end()) continue;
    const auto& [color, cell] = q.cell_of.at(c);
    for (const auto& s : p.shapes(c)) {
      auto v = evaluate_shape(s);
      if (v && *v != it->second) out.report.add("EXT-WELLDEF", color, {cell, it->second, *v});
    }
  }
  out.report.merge(validate_magma_morphism(q.category, target, out.map));
  out.report.canonicalize();
  return out;
}

}  // namespace multicat
