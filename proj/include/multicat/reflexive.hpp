#pragma once

#include <map>
#include <utility>

#include "multicat/multiple_set.hpp"
#include "multicat/truncation.hpp"

namespace multicat {

/// (c, l) -> table from cells(c) to cells(add(c, l)).
using ReflexionTable = std::map<std::pair<Color, int>, CellTable>;

struct ReflexiveStructure {
  MultipleSet base;
  ReflexionTable refl;

  bool operator==(const ReflexiveStructure&) const = default;
};

/// l is a fresh direction within the universe and the result stays within the dimension bound.
bool admissible_reflexion(const MultipleSet& ms, const Color& c, int l);

std::optional<CellId> find_reflexion(const ReflexionTable& refl, const Color& c, const CellId& x, int l);

struct ReflexiveOptions {
  /// REFL-SECT: s_l(1_l x) = t_l(1_l x) = x. On by default; see README.
  bool require_section = true;
};

ValidationReport validate_reflexive(const ReflexiveStructure& r, ReflexiveOptions options = {},
                                    const Truncation* truncation = nullptr);

/// Where a cell of a free reflexive multiple set came from: a generator plus
/// the set of directions it was degenerated along.
struct Degeneracy {
  Color generator_color;
  CellId generator;
  Color added;
  auto operator<=>(const Degeneracy&) const = default;
};

/// `1_a1(1_a2(...(x)))` with a1 < a2 < ..., or `x` itself. `marker` replaces
/// the leading "1" so that iterated free constructions get distinct names.
CellId degeneracy_name(const CellId& generator, const Color& added, const std::string& marker = "1");

struct FreeReflexive {
  std::string marker;
  ReflexiveStructure structure;
  std::map<CellKey, Degeneracy> provenance;
  MsMorphism unit;  // the monad unit, generators into the free structure
};

/// Left adjoint to the forgetful functor, realized directly: cells are
/// (generator, added-direction set) pairs, which builds the exchange law into
/// the representation. Apply it to its own output with a different `marker`
/// (e.g. "1'") to keep cell names injective.
FreeReflexive free_reflexive(const MultipleSet& ms, int dim_bound, const std::string& marker = "1");

/// The functor on morphisms: (x, A) |-> (f x, A).
MsMorphism free_reflexive_map(const MsMorphism& f, const FreeReflexive& from, const FreeReflexive& to);

/// Monad multiplication R(R(X)) -> R(X): ((x, A), B) |-> (x, A u B).
/// `outer` must be free_reflexive(inner.structure.base) at the same bounds.
MsMorphism reflexive_monad_multiply(const FreeReflexive& outer, const FreeReflexive& inner);

}  // namespace multicat
