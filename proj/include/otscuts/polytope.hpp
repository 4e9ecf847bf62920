#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otscuts/rational.hpp"

namespace otscuts {

/// Dense row-major rational matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  static RatMatrix from_rows(const std::vector<RatVector>& rows);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact rank by Gaussian elimination.
std::size_t rank(RatMatrix m);

/// Unique solution of the square system A x = b, or nullopt when A is singular.
std::optional<RatVector> solve(RatMatrix a, RatVector b);

/// Rank of { p_k - p_0 }.
std::size_t affine_rank(const std::vector<RatVector>& points);

Rational dot(const RatVector& a, const RatVector& b);

/// a . x <= b
struct HalfSpace {
  RatVector a;
  Rational b;
  std::string label;
};

/// { x : a_i . x <= b_i for every row }.
struct HPolytope {
  std::size_t dimension = 0;
  std::vector<HalfSpace> rows;

  explicit HPolytope(std::size_t dim = 0) : dimension(dim) {}

  void add(RatVector a, Rational b, std::string label = {});
  /// lower <= x_var <= upper as two rows
  void add_box(std::size_t var, const Rational& lower, const Rational& upper, const std::string& label = {});
  bool contains(const RatVector& x) const;
  /// Index of the first violated row, if any.
  std::optional<std::size_t> first_violated(const RatVector& x) const;
};

struct VertexCaps {
  std::size_t max_dimension = 12;
  std::size_t max_rows = 40;
};

/// All vertices of a bounded polytope, lexicographically sorted. Uses the
/// double-description method on the homogenized cone. Throws CapExceeded
/// beyond `caps` and UnboundedError when the polyhedron has a ray or line.
std::vector<RatVector> enumerate_vertices(const HPolytope& p, VertexCaps caps = {});

enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RatVector point;
};

/// Exact two-phase primal simplex over free variables with Bland's rule.
LpResult rational_simplex(const HPolytope& p, const RatVector& objective, Sense sense);

/// Fourier-Motzkin step: every row pair bounding `var` from opposite sides
/// is combined so the variable cancels. The column stays (all zero).
/// Rows are scaled to a unit leading coefficient and deduplicated.
HPolytope fourier_motzkin(const HPolytope& p, std::size_t var);

/// Drops rows implied by the remaining ones (one LP per row, in order) and
/// zero rows with b >= 0. Labels of surviving rows are kept.
HPolytope drop_redundant(const HPolytope& p);

/// The rows re-expressed over `vars` only; every other column must be zero.
HPolytope restrict_to(const HPolytope& p, const std::vector<std::size_t>& vars);

}  // namespace otscuts
