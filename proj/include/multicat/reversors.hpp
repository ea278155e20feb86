#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multicat/strict.hpp"

namespace multicat {

enum class ReversorKind { Minimal, Maximal, General };

const char* to_string(ReversorKind k);
std::optional<ReversorKind> parse_reversor_kind(const std::string& s);

/// (top color, entries e_1..e_L). Map p acts on color - e_1 - ... - e_p in
/// direction e_{p+1}; only the last map swaps source and target.
using ChainKey = std::pair<Color, std::vector<int>>;

Color chain_level(const ChainKey& key, std::size_t p);

struct ReversorStructure {
  MultipleSet base;
  int m = 0;
  ReversorKind kind = ReversorKind::Minimal;
  std::map<ChainKey, std::vector<CellTable>> chains;

  bool operator==(const ReversorStructure&) const = default;
};

/// REV-SHAPE, REV-TOTAL, REV-RANGE, COVER, SWAP-END, SERIAL. Under a
/// truncation, maps may skip cells the truncation does not require.
ValidationReport validate_reversors(const ReversorStructure& r, const Truncation* truncation = nullptr);

/// f o j = j' o f on every chain of r (REV-MOR, REV-MOR-MISSING).
ValidationReport validate_reversor_morphism(const MsMorphism& f, const ReversorStructure& r,
                                            const ReversorStructure& r2);

struct SearchOptions {
  std::size_t budget = 0;  // 0: work_budget()
  /// Also demand x o_e j(x) = 1_e(t_e x) and j(x) o_e x = 1_e(s_e x) at chain ends.
  bool inverse_laws = false;
};

/// Every structure of the given kind on c, one chain per required slot (for
/// the general kind, one chain per (color, first entry)). Throws BudgetExceeded.
std::vector<ReversorStructure> search_reversors(const StrictCategory& c, int m, ReversorKind kind,
                                                SearchOptions options = {});

/// The chain keys a structure of this kind must (minimal, maximal) or may
/// (general) contain on bounds (D, N).
std::vector<ChainKey> required_chains(int universe_bound, int dim_bound, int m, ReversorKind kind);

/// Minimal structure read off the formal reversors of a presentation, on its tabulation.
ReversorStructure presentation_reversors(const StrictPresentation& p, const TabulatedCategory& q);

}  // namespace multicat
