#pragma once

#include <map>
#include <set>

#include "multicat/multiple_set.hpp"

namespace multicat {

/// Describes which operations a bounded free construction is allowed to leave
/// undefined. Composites are owed only within the size bound; brackets and
/// reversors are owed only for cells that are not on the open frontier.
struct Truncation {
  std::map<CellKey, int> size;
  int size_bound = 0;
  int unary_cost = 1;  // size added by a reflexion or reversor
  std::set<CellKey> open;

  int size_of(const Color& c, const CellId& x) const {
    auto it = size.find({c, x});
    return it == size.end() ? 0 : it->second;
  }
  bool is_open(const Color& c, const CellId& x) const { return open.count({c, x}) > 0; }

  bool composite_required(const Color& c, const CellId& a, const CellId& b) const {
    return size_of(c, a) + size_of(c, b) + 1 <= size_bound;
  }
  bool unary_required(const Color& c, const CellId& x) const {
    return !is_open(c, x) && size_of(c, x) + unary_cost <= size_bound;
  }
  bool bracket_required(const Color& c, const CellId& a, const CellId& b) const {
    return !is_open(c, a) && !is_open(c, b);
  }
};

}  // namespace multicat
