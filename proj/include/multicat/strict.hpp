#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "multicat/magma.hpp"

namespace multicat {

enum class TermKind : std::uint8_t { Gen, Refl, Comp, Rev, RevFace };

using TermId = int;
using ClassId = int;

/// A term as a plain value, for asking questions of a presentation.
struct TermExpr {
  TermKind kind = TermKind::Gen;
  Color color;  // generator color
  CellId cell;  // generator name
  int dir = 0;  // added entry, composition direction, or reversed direction
  std::vector<TermExpr> kids;

  static TermExpr gen(Color c, CellId x);
  static TermExpr refl(int l, TermExpr t);
  static TermExpr comp(int d, TermExpr a, TermExpr b);
  static TermExpr rev(int e, TermExpr t);
};

/// Work cap for saturation and search: MULTICAT_BUDGET if set, else `fallback`.
std::size_t work_budget(std::size_t fallback = 2'000'000);

/// Terms over the generators of a multiple set modulo the congruence generated
/// by the strict axioms, restricted to terms of at most `size_bound` nodes.
///
/// Term kinds are Gen, Refl(l, t), Comp(d, a, b) and, when `m` is given,
/// formal reversors Rev(e, t) for colors of dimension above m. The faces of a
/// reversor in directions other than e are fresh cells, RevFace(e, t, P).
/// Faces are computed syntactically: s_d(a o_d b) = s_d b, t_d(a o_d b) = t_d a,
/// s_l 1_l(x) = t_l 1_l(x) = x, s_e j_e(x) = t_e x, t_e j_e(x) = s_e x, and
/// faces distribute otherwise.
class StrictPresentation {
 public:
  StrictPresentation(MultipleSet generators, int dim_bound, int size_bound, std::optional<int> m,
                     std::size_t budget);

  const MultipleSet& generators() const noexcept { return generators_; }
  int universe_bound() const noexcept { return generators_.universe_bound(); }
  int dim_bound() const noexcept { return dim_bound_; }
  int size_bound() const noexcept { return size_bound_; }
  std::optional<int> reversor_floor() const noexcept { return m_; }
  std::size_t term_count() const noexcept { return nodes_.size(); }
  std::size_t rounds() const noexcept { return rounds_; }

  ClassId find(TermId t) const;
  /// All classes, ordered by (color, canonical rendering).
  std::vector<ClassId> classes() const;
  std::map<Color, std::size_t> class_counts() const;

  Color color_of(ClassId c) const;
  int min_size(ClassId c) const;
  /// The least member under (size, kind, color, direction, children).
  std::string render(ClassId c) const;

  ClassId class_face(ClassId c, int d, Polarity p) const;
  std::optional<ClassId> class_refl(ClassId c, int l) const;
  std::optional<ClassId> class_comp(int d, ClassId a, ClassId b) const;
  std::optional<ClassId> class_rev(ClassId c, int e) const;
  std::optional<ClassId> generator_class(const Color& c, const CellId& x) const;
  bool composable(int d, ClassId a, ClassId b) const;

  /// Class of a term already present (up to congruence); nullopt otherwise.
  std::optional<ClassId> lookup(const TermExpr& t) const;
  /// As lookup, throwing TermNotMaterialized.
  ClassId class_of(const TermExpr& t) const;

  /// Adds a term regardless of the size bound and re-saturates. Throws
  /// NotComposable for an ill-typed composite.
  ClassId evaluate(const TermExpr& t);
  /// Batch form of evaluate: interns first, saturates once.
  std::vector<TermId> intern_all(const std::vector<TermExpr>& ts);
  /// Adds Refl(dir, a), Comp(dir, a, b) or Rev(dir, a) over existing classes,
  /// ignoring the size bound and deferring saturation. Reuses a present node
  /// when the class-level index has one. Call saturate() after a batch.
  TermId extend(TermKind kind, int dir, ClassId a, ClassId b = -1);
  /// The syntactic face of a term (always present).
  TermId face_of(TermId t, int d, Polarity p) const { return faces_[t][face_slot(d, p)]; }

  /// Runs closure and materialization to a fixpoint; returns merges plus new terms.
  std::size_t saturate();

  /// (kind, direction, child classes) for each distinct shape in a class.
  struct Shape {
    TermKind kind;
    Color color;
    int dir;
    CellId gen;
    std::vector<std::pair<int, Polarity>> path;
    std::vector<ClassId> kids;
    auto operator<=>(const Shape&) const = default;
  };
  std::vector<Shape> shapes(ClassId c) const;
  const Shape& canonical_shape(ClassId c) const;

 private:
  struct Node {
    TermKind kind;
    Color color;
    int dir = 0;
    CellId gen;
    std::vector<std::pair<int, Polarity>> path;
    TermId a = -1;
    TermId b = -1;
    int size = 1;
  };
  using NodeKey = std::tuple<TermKind, Color, int, CellId, std::vector<std::pair<int, Polarity>>, TermId, TermId>;

  TermId intern(Node node);
  TermId face_term(TermId t, int d, Polarity p);
  TermId intern_expr(const TermExpr& t);
  bool unite(TermId a, TermId b);
  std::size_t close();
  std::size_t close_pass();
  std::size_t materialize();
  void rebuild_indices();
  void compute_canonical();
  int face_slot(int d, Polarity p) const { return 2 * (d - 1) + (p == Polarity::Target ? 1 : 0); }

  MultipleSet generators_;
  int dim_bound_;
  int size_bound_;
  std::optional<int> m_;
  std::size_t budget_;
  std::size_t rounds_ = 0;

  std::vector<Node> nodes_;
  std::map<NodeKey, TermId> interned_;
  std::vector<std::vector<TermId>> faces_;
  mutable std::vector<TermId> parent_;

  // Class-level indices, rebuilt after each closure pass.
  std::map<ClassId, std::vector<TermId>> members_;
  std::map<ClassId, int> min_size_;
  std::map<ClassId, TermId> smallest_;
  std::map<std::pair<ClassId, int>, ClassId> refl_;
  std::map<std::pair<ClassId, int>, ClassId> rev_;
  std::map<std::tuple<int, ClassId, ClassId>, ClassId> comp_;
  std::map<std::pair<int, ClassId>, std::vector<std::pair<ClassId, ClassId>>> decomp_;
  std::map<std::pair<int, ClassId>, std::vector<std::pair<ClassId, ClassId>>> by_left_;
  std::map<ClassId, Shape> canonical_;
  std::map<ClassId, std::string> rendering_;
};

/// The free strict multiple category at bounds (N, S), optionally with formal
/// reversors above dimension m. Throws InvalidBase or BoundsTooSmall.
StrictPresentation free_strict(const MultipleSet& ms, int dim_bound, int size_bound, std::optional<int> m = std::nullopt,
                               std::optional<std::size_t> budget = std::nullopt);

/// Same class. Throws TermNotMaterialized when either side is absent.
bool term_equal(const StrictPresentation& p, const TermExpr& a, const TermExpr& b);

/// Classes tabulated as cells named by their canonical rendering.
struct TabulatedCategory {
  StrictCategory category;
  Truncation truncation;  // sizes of canonical representatives, bound S
  std::map<ClassId, CellKey> cell_of;
};

/// Full quotient: every reflexion and every composable pair must be present,
/// otherwise BoundsTooSmall names the first missing one.
TabulatedCategory quotient_to_category(const StrictPresentation& p);

/// Whatever is materialized, with a truncation describing what is owed.
TabulatedCategory truncated_category(const StrictPresentation& p);

/// The unit: generator x |-> the class of x.
MsMorphism generator_embedding(const StrictPresentation& p, const TabulatedCategory& q);

struct FunctorExtension {
  CellMap map;  // quotient cell -> target cell
  ValidationReport report;
};

/// Extends f : generators -> U(target) along every member of every class and
/// reports EXT-UNDEFINED / EXT-WELLDEF plus the functor checks.
FunctorExtension extend_to_functor(const StrictPresentation& p, const TabulatedCategory& q,
                                   const StrictCategory& target, const MsMorphism& f);

}  // namespace multicat
