#include "multicat/validation.hpp"

#include <algorithm>
#include <sstream>

namespace multicat {

std::string Violation::render() const {
  std::ostringstream out;
  out << axiom << " color=" << color.to_string() << " cells=";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  if (!detail.empty()) out << ' ' << detail;
  return out.str();
}

void ValidationReport::merge(const ValidationReport& other) {
  violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
}

std::size_t ValidationReport::count(std::string_view axiom) const {
  return static_cast<std::size_t>(
      std::count_if(violations_.begin(), violations_.end(), [&](const Violation& v) { return v.axiom == axiom; }));
}

ValidationReport& ValidationReport::canonicalize() {
  std::sort(violations_.begin(), violations_.end());
  violations_.erase(std::unique(violations_.begin(), violations_.end()), violations_.end());
  return *this;
}

std::string ValidationReport::render() const {
  std::string out;
  for (const auto& v : violations_) {
    out += v.render();
    out += '\n';
  }
  return out;
}

}  // namespace multicat
