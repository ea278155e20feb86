#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "multicat/reversors.hpp"
#include "multicat/strict.hpp"

namespace multicat {

/// (c, r) -> (alpha, beta) -> [alpha;beta]_r in add(c, r).
using BracketTable = std::map<std::pair<Color, int>, std::map<CompositionKey, CellId>>;

/// A reflexive magma M over a strict category C through pi, with a bracket
/// cell joining any two cells of M that pi identifies.
struct Stretching {
  MagmaStructure M;
  StrictCategory C;
  CellMap pi;
  BracketTable brackets;
  std::optional<ReversorStructure> m_reversors;
  std::optional<ReversorStructure> c_reversors;
  std::optional<Truncation> m_truncation;
  std::optional<Truncation> c_truncation;
};

std::optional<CellId> find_bracket(const BracketTable& b, const Color& c, int r, const CellId& alpha,
                                   const CellId& beta);

/// PI-TOTAL, PI-FACE, PI-REFL, PI-COMP, PI-REV, BR-SHAPE, BR-TOTAL, BR-FACE,
/// BR-END and BR-PI. The layers of M and C are checked separately.
ValidationReport validate_stretching(const Stretching& e);

/// M = C, pi = id, [a;a]_r = 1_r(a).
Stretching identity_stretching(const StrictCategory& c);

/// SQUARE (pi' m = c pi) and BR-MORPH (m[a;b] = [m a; m b]'), plus the magma
/// morphism checks of m and c.
ValidationReport validate_stretching_morphism(const Stretching& from, const Stretching& to, const CellMap& m,
                                              const CellMap& c);

/// How a cell of a free weak M is built.
struct WeakCell {
  enum class Kind { Generator, Bracket, Reversor, ReversorFace, Composite };
  Kind kind = Kind::Generator;
  Color added;  // reflexions pushed onto the atom (empty for composites)
  CellId generator;
  Color base_color;  // color of generator, bracket pair, or reversed cell
  CellId left, right;  // bracket pair, reversed cell, or composite factors
  int dir = 0;          // bracket r, reversed e, or composition direction
  std::vector<std::pair<int, Polarity>> path;  // reversor faces
  int size = 1;
  int stage = 0;
};

struct StageRecord {
  int stage = 0;
  std::map<Color, std::size_t> cells;  // cumulative
  /// Ordered pi-equal pairs among cells of earlier stages, per (c, r).
  std::map<std::pair<Color, int>, std::size_t> pairs;
  std::map<std::pair<Color, int>, std::size_t> brackets;  // cumulative
};

struct FreeWeakResult {
  Stretching stretching;
  MsMorphism unit;
  std::map<CellKey, WeakCell> provenance;
  std::vector<StageRecord> log;
  int stages = 0;
  int dim_bound = 0;
  int size_bound = 0;
  std::optional<int> m;
};

/// Bounded free stretching on X. Stage k adjoins brackets for pi-equal pairs
/// of cells from stages before k (and formal reversors of those cells when m
/// is given), then closes under reflexions and composites of size <= S.
/// Cells of the last stage are left open. Throws InvalidBase, BoundsTooSmall.
FreeWeakResult free_weak(const MultipleSet& x, std::optional<int> m, int dim_bound, int size_bound, int stages,
                         std::optional<std::size_t> budget = std::nullopt);

/// Evaluates generators in `k` (by name) and every bracket as the identity
/// on its source. Requires X = k.base.
MsMorphism collapse_into(const FreeWeakResult& w, const StrictCategory& k);

/// ALG-UNIT wherever h(eta(x)) != x.
ValidationReport algebra_unit_check(const FreeWeakResult& w, const MsMorphism& h);

}  // namespace multicat
