#include "episig/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace episig {

const char* symbol(Relation r) {
  switch (r) {
    case Relation::kEq: return "==";
    case Relation::kLt: return "<";
    case Relation::kLe: return "<=";
    case Relation::kGt: return ">";
    case Relation::kGe: return ">=";
  }
  return "?";
}

namespace {

constexpr double kVertexTol = 1e-10;

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

std::vector<SenderConstraint> with_unit_box(const std::vector<SenderConstraint>& constraints) {
  std::vector<SenderConstraint> all;
  all.reserve(constraints.size() + 4);
  for (const auto& c : constraints) all.push_back(c.closure());
  auto bound = [&](double ax, double ay, double b) {
    SenderConstraint c;
    c.coeffs << ax, ay;
    c.constant = b;
    c.relation = Relation::kGe;
    all.push_back(c);
  };
  bound(1, 0, 0);   // x >= 0
  bound(-1, 0, 1);  // x <= 1
  bound(0, 1, 0);   // y >= 0
  bound(0, -1, 1);  // y <= 1
  return all;
}

bool inside_all(const Eigen::Vector2d& v, const std::vector<SenderConstraint>& closed) {
  for (const auto& c : closed) {
    double scale = std::max(1.0, c.coeffs.lpNorm<Eigen::Infinity>());
    if (c.slack(v) < -kVertexTol * scale) return false;
  }
  return true;
}

}  // namespace

int ConvexRegion::dimension() const {
  if (vertices.empty()) return -1;
  if (vertices.size() == 1) return 0;
  if (vertices.size() == 2) return 1;
  return 2;
}

Eigen::Vector2d ConvexRegion::center() const {
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  for (const auto& v : vertices) sum += v;
  return sum / static_cast<double>(vertices.size());
}

ConvexRegion feasible_region(const std::vector<SenderConstraint>& constraints) {
  auto closed = with_unit_box(constraints);

  std::vector<Eigen::Vector2d> points;
  auto add_point = [&](const Eigen::Vector2d& p) {
    for (const auto& q : points)
      if ((p - q).lpNorm<Eigen::Infinity>() < kVertexTol) return;
    points.push_back(p);
  };

  for (std::size_t i = 0; i < closed.size(); ++i) {
    for (std::size_t j = i + 1; j < closed.size(); ++j) {
      Eigen::Matrix2d a;
      a.row(0) = closed[i].coeffs.transpose();
      a.row(1) = closed[j].coeffs.transpose();
      double det = a.determinant();
      if (std::abs(det) <= 1e-14 * a.row(0).norm() * a.row(1).norm()) continue;
      Eigen::Vector2d p = a.partialPivLu().solve(Eigen::Vector2d(-closed[i].constant,
                                                                 -closed[j].constant));
      if (inside_all(p, closed)) add_point(p.cwiseMax(0.0).cwiseMin(1.0));
    }
  }

  ConvexRegion region;
  if (points.size() <= 1) {
    region.vertices = points;
    return region;
  }

  // Farthest pair gives the principal direction; collinear sets reduce to it.
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double d = (points[i] - points[j]).squaredNorm();
      if (d > best) best = d, bi = i, bj = j;
    }
  Eigen::Vector2d dir = (points[bj] - points[bi]).normalized();
  bool collinear = std::all_of(points.begin(), points.end(), [&](const Eigen::Vector2d& p) {
    return std::abs(cross(dir, p - points[bi])) < kVertexTol;
  });
  if (collinear) {
    Eigen::Vector2d a = points[bi], b = points[bj];
    if (b.x() < a.x() || (b.x() == a.x() && b.y() < a.y())) std::swap(a, b);
    region.vertices = {a, b};
    return region;
  }

  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : points) c += p;
  c /= static_cast<double>(points.size());
  std::sort(points.begin(), points.end(), [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  region.vertices = std::move(points);
  return region;
}

double linf_distance_to_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                                const Eigen::Vector2d& b) {
  Eigen::Vector2d u = p - a;
  Eigen::Vector2d d = b - a;
  // max(|u - t d|) is convex piecewise linear in t; its minimum sits on a kink.
  std::vector<double> ts{0.0, 1.0};
  auto push_ratio = [&](double num, double den) {
    if (std::abs(den) > 1e-300) ts.push_back(num / den);
  };
  push_ratio(u.x(), d.x());
  push_ratio(u.y(), d.y());
  push_ratio(u.x() - u.y(), d.x() - d.y());
  push_ratio(u.x() + u.y(), d.x() + d.y());
  double best = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, (u - t * d).lpNorm<Eigen::Infinity>());
  }
  return best;
}

double linf_distance(const Eigen::Vector2d& p, const ConvexRegion& region) {
  switch (region.dimension()) {
    case -1: return std::numeric_limits<double>::infinity();
    case 0: return (p - region.vertices[0]).lpNorm<Eigen::Infinity>();
    case 1: return linf_distance_to_segment(p, region.vertices[0], region.vertices[1]);
    default: break;
  }
  const auto& v = region.vertices;
  bool inside = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    if (cross(b - a, p - a) < -1e-14) inside = false;
  }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    best = std::min(best, linf_distance_to_segment(p, v[i], v[(i + 1) % v.size()]));
  return best;
}

std::vector<Eigen::Vector2d> sample_region(const ConvexRegion& region, int per_edge) {
  std::vector<Eigen::Vector2d> out;
  const auto& v = region.vertices;
  if (v.empty()) return out;
  if (v.size() == 1) return v;
  std::size_t edges = v.size() == 2 ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    for (int k = 0; k < per_edge; ++k) out.push_back(a + (b - a) * (double(k) / per_edge));
  }
  if (v.size() == 2) out.push_back(v[1]);
  out.push_back(region.center());
  return out;
}

ConvexRegion clip_line_to_unit_square(double a, double b, double c) {
  SenderConstraint line;
  line.coeffs << a, b;
  line.constant = -c;
  line.relation = Relation::kEq;
  return feasible_region({line});
}

}  // namespace episig
