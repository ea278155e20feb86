#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "multicat/color.hpp"
#include "multicat/validation.hpp"

namespace multicat {

using CellId = std::string;

enum class Polarity : std::uint8_t { Source, Target };

inline Polarity flip(Polarity p) { return p == Polarity::Source ? Polarity::Target : Polarity::Source; }
inline const char* to_string(Polarity p) { return p == Polarity::Source ? "source" : "target"; }

/// A cell is named by its color and its id within that color.
using CellKey = std::pair<Color, CellId>;

/// A per-color function between cell sets.
using CellTable = std::map<CellId, CellId>;
using CellMap = std::map<Color, CellTable>;

struct FaceKey {
  Color color;  // color of the cells being faced
  int direction;
  Polarity polarity;
  auto operator<=>(const FaceKey&) const = default;
  bool operator==(const FaceKey&) const = default;
};

/// Finite tabulated multiple set: cell sets per color (the empty color holds
/// objects) and one source and one target table per (color, entry).
class MultipleSet {
 public:
  MultipleSet() = default;
  MultipleSet(int universe_bound, int dim_bound) : universe_bound_(universe_bound), dim_bound_(dim_bound) {}

  int universe_bound() const noexcept { return universe_bound_; }
  int dim_bound() const noexcept { return dim_bound_; }
  void set_bounds(int universe_bound, int dim_bound) {
    universe_bound_ = universe_bound;
    dim_bound_ = dim_bound;
  }

  void add_cell(const Color& c, CellId id) { cells_[c].insert(std::move(id)); }
  void set_face(const Color& c, const CellId& x, int d, Polarity p, CellId face) {
    faces_[FaceKey{c, d, p}][x] = std::move(face);
  }

  bool has_cell(const Color& c, const CellId& x) const;
  const std::set<CellId>& cells(const Color& c) const;
  const std::map<Color, std::set<CellId>>& all_cells() const noexcept { return cells_; }
  std::size_t cell_count() const;

  std::optional<CellId> find_face(const Color& c, const CellId& x, int d, Polarity p) const;

  const std::map<FaceKey, CellTable>& face_tables() const noexcept { return faces_; }
  /// Raw access for fixture surgery and mutation tests.
  std::map<FaceKey, CellTable>& face_tables_mut() noexcept { return faces_; }
  std::map<Color, std::set<CellId>>& cells_mut() noexcept { return cells_; }

  bool operator==(const MultipleSet&) const = default;

 private:
  int universe_bound_ = 0;
  int dim_bound_ = 0;
  std::map<Color, std::set<CellId>> cells_;
  std::map<FaceKey, CellTable> faces_;
};

/// The tabulated face of `x` (throws UnknownCell / EntryAbsent).
CellId face(const MultipleSet& ms, const Color& c, const CellId& x, int d, Polarity p);

struct FaceStep {
  int direction;
  Polarity polarity;
};

/// Applies the steps in order; returns the final color and cell.
CellKey iterated_face(const MultipleSet& ms, const Color& c, const CellId& x, const std::vector<FaceStep>& steps);

/// Shape checks plus the SS, TT and ST commutation axioms.
ValidationReport validate_multiple_set(const MultipleSet& ms);

struct MsMorphism {
  MultipleSet source;
  MultipleSet target;
  CellMap map;

  /// Throws UnknownCell if `x` has no image.
  const CellId& operator()(const Color& c, const CellId& x) const;
};

ValidationReport validate_morphism(const MsMorphism& f);

MsMorphism identity_morphism(const MultipleSet& ms);

/// g after f. Requires f.target == g.source up to cell sets (not rechecked).
MsMorphism compose(const MsMorphism& g, const MsMorphism& f);

struct SizeProfile {
  int generators_per_color = 1;
  int merges_per_color = 1;
};

/// Builds free "cubes" on random generators and quotients them by random
/// face-closed merges, so the result always satisfies the commutation axioms.
MultipleSet random_multiple_set(int universe_bound, int dim_bound, SizeProfile profile, std::uint64_t seed);

}  // namespace multicat
