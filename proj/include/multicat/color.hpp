#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace multicat {

/// A strictly increasing sequence of positive direction indices. The empty
/// color indexes objects; a color of length n indexes n-dimensional cells.
class Color {
 public:
  Color() = default;

  /// Unchecked; callers must already hold a strictly increasing positive sequence.
  static Color from_sorted(std::vector<int> entries) {
    Color c;
    c.entries_ = std::move(entries);
    return c;
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<int>& entries() const noexcept { return entries_; }
  bool contains(int d) const noexcept;
  int max_entry() const noexcept { return entries_.empty() ? 0 : entries_.back(); }

  std::string to_string() const;

  auto operator<=>(const Color&) const = default;
  bool operator==(const Color&) const = default;

 private:
  std::vector<int> entries_;
};

/// Validates `entries`. Throws NotStrictlyIncreasing / NonPositiveEntry naming
/// the first offending (0-based) position.
Color make_color(std::span<const int> entries);
Color make_color(std::initializer_list<int> entries);

/// Deletes direction `d` (throws EntryAbsent).
Color minus(const Color& c, int d);

/// Sorted insertion of `l`; indices are never renumbered.
Color add(const Color& c, int l);

/// Union of two colors with no common entry (throws EntryPresent otherwise).
Color disjoint_union(const Color& a, const Color& b);

/// Entries of `a` not in `b`.
Color difference(const Color& a, const Color& b);

/// All length-k subsequences of `c`, in lexicographic order.
std::vector<Color> k_colors(const Color& c, int k);

/// Every color with entries in [1, universe_bound] and dimension <= dim_bound,
/// ordered by dimension, then lexicographically.
std::vector<Color> all_colors(int universe_bound, int dim_bound);

}  // namespace multicat
