#pragma once

// Brute-force reference for the free strict construction. Every term up to
// the size bound is enumerated as a string; classes are recomputed from
// scratch on each pass. Slow on purpose: it shares no code with the library
// beyond reading the generator tables.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multicat/strict.hpp"

namespace oracle {

using multicat::Color;
using multicat::Polarity;

struct OTerm {
  char kind;  // 'g', 'r', 'c'
  Color color;
  int dir = 0;
  std::string gen;
  std::vector<std::string> kids;
  int size = 1;
};

class StrictOracle {
 public:
  StrictOracle(const multicat::MultipleSet& ms, int dim_bound, int size_bound)
      : ms_(ms), n_(dim_bound), s_(size_bound) {
    run();
  }

  std::map<Color, std::size_t> class_counts() const {
    std::map<Color, std::size_t> out;
    std::set<std::string> roots;
    for (const auto& [k, t] : terms_)
      if (roots.insert(find(k)).second) ++out[t.color];
    return out;
  }

  std::optional<std::string> key_of(const multicat::TermExpr& e) const {
    std::vector<std::string> kids;
    for (const auto& k : e.kids) {
      auto kk = key_of(k);
      if (!kk) return std::nullopt;
      kids.push_back(*kk);
    }
    std::string key;
    switch (e.kind) {
      case multicat::TermKind::Gen: key = gen_key(e.color, e.cell); break;
      case multicat::TermKind::Refl: key = "1_" + std::to_string(e.dir) + "(" + kids[0] + ")"; break;
      case multicat::TermKind::Comp:
        key = "(" + kids[0] + " o" + std::to_string(e.dir) + " " + kids[1] + ")";
        break;
      default: return std::nullopt;
    }
    if (!terms_.count(key)) return std::nullopt;
    return key;
  }

  std::optional<bool> equal(const multicat::TermExpr& a, const multicat::TermExpr& b) const {
    auto ka = key_of(a), kb = key_of(b);
    if (!ka || !kb) return std::nullopt;
    return find(*ka) == find(*kb);
  }

  /// The class representative of a term in the universe.
  std::optional<std::string> class_key(const multicat::TermExpr& a) const {
    auto k = key_of(a);
    if (!k) return std::nullopt;
    return find(*k);
  }

  std::optional<Color> color_of(const multicat::TermExpr& a) const {
    auto k = key_of(a);
    if (!k) return std::nullopt;
    return terms_.at(*k).color;
  }

  /// Every term in the universe, as an expression.
  std::vector<multicat::TermExpr> all_terms() const {
    std::vector<multicat::TermExpr> out;
    for (const auto& [k, t] : terms_) out.push_back(expr(k));
    return out;
  }

  std::size_t universe_size() const { return terms_.size(); }

 private:
  std::string gen_key(const Color& c, const std::string& x) const { return "g" + c.to_string() + x; }

  multicat::TermExpr expr(const std::string& key) const {
    const OTerm& t = terms_.at(key);
    switch (t.kind) {
      case 'g': return multicat::TermExpr::gen(t.color, t.gen);
      case 'r': return multicat::TermExpr::refl(t.dir, expr(t.kids[0]));
      default: return multicat::TermExpr::comp(t.dir, expr(t.kids[0]), expr(t.kids[1]));
    }
  }

  std::string add_term(OTerm t) {
    std::string key;
    switch (t.kind) {
      case 'g': key = gen_key(t.color, t.gen); break;
      case 'r': key = "1_" + std::to_string(t.dir) + "(" + t.kids[0] + ")"; break;
      default: key = "(" + t.kids[0] + " o" + std::to_string(t.dir) + " " + t.kids[1] + ")"; break;
    }
    if (!terms_.count(key)) {
      terms_.emplace(key, t);
      parent_[key] = key;
    }
    return key;
  }

  std::string face(const std::string& key, int d, Polarity p) {
    const OTerm t = terms_.at(key);
    if (t.kind == 'g') {
      OTerm g{'g', multicat::minus(t.color, d), 0, multicat::face(ms_, t.color, t.gen, d, p), {}, 1};
      return add_term(g);
    }
    if (t.kind == 'r') {
      if (t.dir == d) return t.kids[0];
      std::string f = face(t.kids[0], d, p);
      return add_term(OTerm{'r', multicat::minus(t.color, d), t.dir, {}, {f}, terms_.at(f).size + 1});
    }
    if (t.dir == d) return p == Polarity::Source ? face(t.kids[1], d, p) : face(t.kids[0], d, p);
    std::string fa = face(t.kids[0], d, p), fb = face(t.kids[1], d, p);
    return add_term(OTerm{'c', multicat::minus(t.color, d), t.dir, {}, {fa, fb},
                          terms_.at(fa).size + terms_.at(fb).size + 1});
  }

  std::string find(const std::string& k) const {
    std::string r = k;
    while (parent_.at(r) != r) r = parent_.at(r);
    return r;
  }

  bool unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
    return true;
  }

  bool typable(const std::string& a, const std::string& b, int d) {
    return find(face(a, d, Polarity::Source)) == find(face(b, d, Polarity::Target));
  }

  // One sweep: add every term up to the bound whose composites are typable now.
  bool grow() {
    const std::size_t before = terms_.size();
    for (const auto& [c, ids] : ms_.all_cells())
      for (const auto& x : ids) add_term(OTerm{'g', c, 0, x, {}, 1});
    for (int size = 2; size <= s_; ++size) {
      std::vector<std::string> keys;
      for (const auto& [k, t] : terms_) keys.push_back(k);
      for (const auto& k : keys) {
        const OTerm t = terms_.at(k);
        if (t.size != size - 1) continue;
        for (int l = 1; l <= ms_.universe_bound(); ++l) {
          if (t.color.contains(l) || static_cast<int>(t.color.dim()) + 1 > n_) continue;
          add_term(OTerm{'r', multicat::add(t.color, l), l, {}, {k}, size});
        }
      }
      for (const auto& a : keys) {
        for (const auto& b : keys) {
          const OTerm ta = terms_.at(a), tb = terms_.at(b);
          if (ta.size + tb.size + 1 != size || ta.color != tb.color) continue;
          for (int d : ta.color.entries())
            if (typable(a, b, d)) add_term(OTerm{'c', ta.color, d, {}, {a, b}, size});
        }
      }
    }
    std::vector<std::string> keys;
    for (const auto& [k, t] : terms_) keys.push_back(k);
    for (const auto& k : keys)
      for (int d : terms_.at(k).color.entries())
        for (Polarity p : {Polarity::Source, Polarity::Target}) face(k, d, p);
    return terms_.size() != before;
  }

  bool close_once() {
    bool merged = false;
    // Congruence and face congruence.
    std::map<std::string, std::string> sig;
    for (const auto& [k, t] : terms_) {
      std::string s = std::string(1, t.kind) + t.color.to_string() + std::to_string(t.dir) + "|" + t.gen;
      for (const auto& kid : t.kids) s += "|" + find(kid);
      auto [it, fresh] = sig.emplace(s, k);
      if (!fresh) merged |= unite(k, it->second);
    }
    std::vector<std::string> keys;
    for (const auto& [k, t] : terms_) keys.push_back(k);
    std::map<std::string, std::string> first_member;
    for (const auto& k : keys) {
      auto [it, fresh] = first_member.emplace(find(k), k);
      if (fresh) continue;
      for (int d : terms_.at(k).color.entries())
        for (Polarity p : {Polarity::Source, Polarity::Target}) merged |= unite(face(k, d, p), face(it->second, d, p));
    }

    // Axiom instances over classes.
    std::map<std::tuple<int, std::string, std::string>, std::string> comp;
    std::map<std::pair<std::string, int>, std::string> refl;
    for (const auto& [k, t] : terms_) {
      if (t.kind == 'c') comp[{t.dir, find(t.kids[0]), find(t.kids[1])}] = find(k);
      if (t.kind == 'r') refl[{find(t.kids[0]), t.dir}] = find(k);
    }
    auto C = [&](int d, const std::string& a, const std::string& b) -> std::optional<std::string> {
      auto it = comp.find({d, a, b});
      if (it == comp.end()) return std::nullopt;
      return it->second;
    };
    auto R = [&](const std::string& a, int l) -> std::optional<std::string> {
      auto it = refl.find({a, l});
      if (it == refl.end()) return std::nullopt;
      return it->second;
    };
    std::vector<std::pair<std::string, std::string>> eq;
    for (const auto& [k1, x] : comp) {
      const auto& [d, a, b] = k1;
      for (const auto& [k2, y] : comp) {
        const auto& [d2, b2, c] = k2;
        if (d2 == d && b2 == b) {
          auto l = C(d, x, c), r = C(d, a, y);
          if (l && r) eq.emplace_back(*l, *r);
        }
      }
    }
    for (const auto& [k1, z] : comp) {
      const auto& [k, x, y] = k1;
      for (const auto& [ka, xa] : comp) {
        const auto& [j, a, b] = ka;
        if (j >= k || xa != x) continue;
        for (const auto& [kc, yc] : comp) {
          const auto& [j2, c, d] = kc;
          if (j2 != j || yc != y) continue;
          auto ac = C(k, a, c), bd = C(k, b, d);
          if (!ac || !bd) continue;
          if (auto r = C(j, *ac, *bd)) eq.emplace_back(z, *r);
        }
      }
    }
    for (const auto& [k1, x] : comp) {
      const auto& [d, a, b] = k1;
      for (int k = 1; k <= ms_.universe_bound(); ++k) {
        auto ka = R(a, k), kb = R(b, k), kx = R(x, k);
        if (ka && kb && kx)
          if (auto y = C(d, *ka, *kb)) eq.emplace_back(*kx, *y);
      }
    }
    for (const auto& k : keys) {
      const std::string a = find(k);
      for (int d : terms_.at(k).color.entries()) {
        if (auto u = R(find(face(k, d, Polarity::Source)), d))
          if (auto r = C(d, a, *u)) eq.emplace_back(*r, a);
        if (auto u = R(find(face(k, d, Polarity::Target)), d))
          if (auto r = C(d, *u, a)) eq.emplace_back(*r, a);
      }
    }
    for (const auto& [k1, ka] : refl) {
      const auto& [a, k] = k1;
      for (int l = k + 1; l <= ms_.universe_bound(); ++l) {
        auto lka = R(ka, l), la = R(a, l);
        if (lka && la)
          if (auto kla = R(*la, k)) eq.emplace_back(*lka, *kla);
      }
    }
    for (const auto& [a, b] : eq) merged |= unite(a, b);
    return merged;
  }

  void run() {
    do {
      while (close_once()) {
      }
    } while (grow());
    while (close_once()) {
    }
  }

  multicat::MultipleSet ms_;
  int n_;
  int s_;
  std::map<std::string, OTerm> terms_;
  std::map<std::string, std::string> parent_;
};

}  // namespace oracle
