#include "multicat/color.hpp"

#include <algorithm>
#include <sstream>

#include "multicat/error.hpp"

namespace multicat {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::EntryAbsent: return "EntryAbsent";
    case ErrorCode::EntryPresent: return "EntryPresent";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::UndefinedComposite: return "UndefinedComposite";
    case ErrorCode::InvalidBase: return "InvalidBase";
    case ErrorCode::BoundMismatch: return "BoundMismatch";
    case ErrorCode::BoundsTooSmall: return "BoundsTooSmall";
    case ErrorCode::TermNotMaterialized: return "TermNotMaterialized";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool Color::contains(int d) const noexcept {
  return std::binary_search(entries_.begin(), entries_.end(), d);
}

std::string Color::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ',';
    out << entries_[i];
  }
  out << ']';
  return out.str();
}

Color make_color(std::span<const int> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 1) {
      throw Error(ErrorCode::NonPositiveEntry,
                  "entry " + std::to_string(entries[i]) + " at position " + std::to_string(i));
    }
    if (i > 0 && entries[i] <= entries[i - 1]) {
      throw Error(ErrorCode::NotStrictlyIncreasing, "at position " + std::to_string(i));
    }
  }
  return Color::from_sorted(std::vector<int>(entries.begin(), entries.end()));
}

Color make_color(std::initializer_list<int> entries) {
  return make_color(std::span<const int>(entries.begin(), entries.size()));
}

Color minus(const Color& c, int d) {
  std::vector<int> out = c.entries();
  auto it = std::lower_bound(out.begin(), out.end(), d);
  if (it == out.end() || *it != d) {
    throw Error(ErrorCode::EntryAbsent, std::to_string(d) + " not in " + c.to_string());
  }
  out.erase(it);
  return Color::from_sorted(std::move(out));
}

Color add(const Color& c, int l) {
  if (l < 1) throw Error(ErrorCode::NonPositiveEntry, "entry " + std::to_string(l));
  std::vector<int> out = c.entries();
  auto it = std::lower_bound(out.begin(), out.end(), l);
  if (it != out.end() && *it == l) {
    throw Error(ErrorCode::EntryPresent, std::to_string(l) + " already in " + c.to_string());
  }
  out.insert(it, l);
  return Color::from_sorted(std::move(out));
}

Color disjoint_union(const Color& a, const Color& b) {
  Color out = a;
  for (int l : b.entries()) out = add(out, l);
  return out;
}

Color difference(const Color& a, const Color& b) {
  std::vector<int> out;
  for (int d : a.entries())
    if (!b.contains(d)) out.push_back(d);
  return Color::from_sorted(std::move(out));
}

std::vector<Color> k_colors(const Color& c, int k) {
  const int n = static_cast<int>(c.dim());
  if (k < 0 || k > n) {
    throw Error(ErrorCode::KOutOfRange, "k=" + std::to_string(k) + " for dimension " + std::to_string(n));
  }
  std::vector<Color> out;
  std::vector<int> pick(k);
  // Lexicographic enumeration of index combinations.
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::vector<int> entries;
    entries.reserve(k);
    for (int i : pick) entries.push_back(c.entries()[i]);
    out.push_back(Color::from_sorted(std::move(entries)));
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<Color> all_colors(int universe_bound, int dim_bound) {
  std::vector<int> universe;
  for (int d = 1; d <= universe_bound; ++d) universe.push_back(d);
  const Color top = Color::from_sorted(universe);
  std::vector<Color> out;
  for (int n = 0; n <= std::min<int>(dim_bound, universe_bound); ++n) {
    auto layer = k_colors(top, n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace multicat
