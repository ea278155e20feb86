#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "multicat/color.hpp"

namespace multicat {

struct Violation {
  std::string axiom;  // e.g. "SS", "POS2", "BR-END"
  Color color;
  std::vector<std::string> cells;
  std::string detail;

  auto operator<=>(const Violation&) const = default;
  bool operator==(const Violation&) const = default;

  /// `AXIOM color=[..] cells=a,b detail`
  std::string render() const;
};

/// Validators never throw on axiom failures; they collect them here.
class ValidationReport {
 public:
  void add(Violation v) { violations_.push_back(std::move(v)); }
  void add(std::string axiom, Color color, std::vector<std::string> cells, std::string detail = {}) {
    violations_.push_back({std::move(axiom), std::move(color), std::move(cells), std::move(detail)});
  }
  void merge(const ValidationReport& other);

  bool ok() const noexcept { return violations_.empty(); }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  std::size_t count(std::string_view axiom) const;
  bool has(std::string_view axiom) const { return count(axiom) > 0; }

  /// Sorts and deduplicates so output does not depend on traversal order.
  ValidationReport& canonicalize();

  std::string render() const;

 private:
  std::vector<Violation> violations_;
};

}  // namespace multicat
