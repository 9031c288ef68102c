#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace episig {

enum class Relation { kEq, kLt, kLe, kGt, kGe };

const char* symbol(Relation r);

/// coeffs . v + constant  REL  0
template <int N>
struct LinearConstraint {
  using Vector = Eigen::Matrix<double, N, 1>;

  Vector coeffs = Vector::Zero();
  double constant = 0.0;
  Relation relation = Relation::kEq;
  std::string label;

  double value(const Vector& v) const { return coeffs.dot(v) + constant; }

  bool is_strict() const { return relation == Relation::kLt || relation == Relation::kGt; }

  /// Signed slack: non-negative when satisfied (for equalities, minus the residual).
  double slack(const Vector& v) const {
    double f = value(v);
    switch (relation) {
      case Relation::kEq: return -std::abs(f);
      case Relation::kLt:
      case Relation::kLe: return -f;
      case Relation::kGt:
      case Relation::kGe: return f;
    }
    return 0.0;
  }

  /// Equalities within `tol`, weak inequalities within `tol`, strict ones with margin `tol`.
  bool satisfied(const Vector& v, double tol) const {
    double s = slack(v);
    if (relation == Relation::kEq) return s >= -tol;
    if (is_strict()) return s >= tol;
    return s >= -tol;
  }

  /// Same constraint with strict inequalities relaxed to weak ones.
  LinearConstraint closure() const {
    LinearConstraint c = *this;
    if (c.relation == Relation::kLt) c.relation = Relation::kLe;
    if (c.relation == Relation::kGt) c.relation = Relation::kGe;
    return c;
  }
};

using SenderConstraint = LinearConstraint<2>;
using ReceiverConstraint = LinearConstraint<4>;

/// Closure of a convex feasible set inside the unit square, described by its
/// vertices (counter-clockwise for polygons, extreme points for segments).
struct ConvexRegion {
  std::vector<Eigen::Vector2d> vertices;

  bool empty() const { return vertices.empty(); }
  /// 0 for a point, 1 for a segment, 2 for a polygon; -1 when empty.
  int dimension() const;
  /// Point, segment midpoint, or vertex centroid.
  Eigen::Vector2d center() const;
};

/// Closure of { v in [0,1]^2 : constraints } by vertex enumeration.
ConvexRegion feasible_region(const std::vector<SenderConstraint>& constraints);

/// L-infinity distance from p to a (closed) convex region.
double linf_distance(const Eigen::Vector2d& p, const ConvexRegion& region);

/// L-infinity distance from p to the segment [a, b].
double linf_distance_to_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                                const Eigen::Vector2d& b);

/// Evenly spread points covering the region (vertices, edge samples, center).
std::vector<Eigen::Vector2d> sample_region(const ConvexRegion& region, int per_edge);

/// Clip the line a.x + b.y = c to the unit square; empty when it misses.
ConvexRegion clip_line_to_unit_square(double a, double b, double c);

}  // namespace episig
