#pragma once

#include <map>
#include <utility>

#include "multicat/reflexive.hpp"
#include "multicat/truncation.hpp"

namespace multicat {

using CompositionKey = std::pair<CellId, CellId>;

/// (c, d) -> partial table (a, b) -> a o_d b, defined where s_d(a) = t_d(b).
using CompositionTable = std::map<std::pair<Color, int>, std::map<CompositionKey, CellId>>;

/// A multiple magma; `refl` is empty unless the magma is reflexive.
struct MagmaStructure {
  MultipleSet base;
  ReflexionTable refl;
  CompositionTable comp;

  ReflexiveStructure reflexive_part() const { return {base, refl}; }
  bool operator==(const MagmaStructure&) const = default;
};

/// A strict multiple category is a reflexive magma passing validate_strict.
using StrictCategory = MagmaStructure;

/// s_d(a) = t_d(b): a o_d b reads "a after b".
bool composable(const MultipleSet& ms, const Color& c, const CellId& a, const CellId& b, int d);

std::optional<CellId> find_composite(const CompositionTable& comp, const Color& c, int d, const CellId& a,
                                     const CellId& b);

/// Throws UnknownCell, EntryAbsent, NotComposable (naming both faces) or UndefinedComposite.
CellId compose(const MagmaStructure& m, const Color& c, const CellId& a, const CellId& b, int d);

/// COMP-SHAPE, COMP-RANGE, COMP-TOTAL, POS1, POS2. With a truncation, missing
/// composites are reported only where the truncation requires them.
ValidationReport validate_magma(const MagmaStructure& m, const Truncation* truncation = nullptr);

/// REFL-DIST: 1_k(a o_d b) = 1_k(a) o_d 1_k(b) for every admissible k.
ValidationReport validate_reflexive_magma(const MagmaStructure& m, const Truncation* truncation = nullptr);

/// ASSOC, UNIT and MFI on top of the magma and reflexive layers (not rerun here).
ValidationReport validate_strict(const StrictCategory& c, const Truncation* truncation = nullptr);

/// Every layer: multiple set, reflexive, magma, reflexive magma, strict.
ValidationReport validate_strict_all(const StrictCategory& c, const Truncation* truncation = nullptr);

/// A morphism of reflexive magmas is a multiple-set morphism that also
/// commutes with reflexions and composites (MOR-REFL, MOR-COMP).
ValidationReport validate_magma_morphism(const MagmaStructure& from, const MagmaStructure& to, const CellMap& map);

}  // namespace multicat
