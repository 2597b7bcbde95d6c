// Copyright 2026 The rhulloid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rhulloid/errors.hpp"
#include "rhulloid/geometry.hpp"
#include "rhulloid/sampling.hpp"

namespace rhulloid {

/// R-cone with vertex p: the complement of the union of the open balls
/// B(p + R v, R) over a finite set of unit directions v.
template <int D>
class RCone {
 public:
  RCone(const Point<D>& vertex, std::vector<Point<D>> directions, double radius, double geom_tol = 1e-9)
      : vertex_(vertex), directions_(std::move(directions)), radius_(radius), geom_tol_(geom_tol) {
    if (!(radius_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "R-cone radius must be positive");
    if (directions_.empty()) throw Error(ErrorKind::InvalidArgument, "R-cone needs at least one direction");
    for (const auto& v : directions_)
      if (std::abs(v.norm() - 1.0) > geom_tol_) throw Error(ErrorKind::InvalidArgument, "R-cone directions must be unit vectors");
    for (std::size_t a = 0; a < directions_.size(); ++a)
      for (std::size_t b = a + 1; b < directions_.size(); ++b) {
        const double cosang = std::clamp(directions_[a].dot(directions_[b]), -1.0, 1.0);
        if (std::acos(cosang) <= 1e-9) throw Error(ErrorKind::InvalidArgument, "R-cone directions must be pairwise distinct");
      }
  }

  const Point<D>& vertex() const { return vertex_; }
  const std::vector<Point<D>>& directions() const { return directions_; }
  double radius() const { return radius_; }

  /// min_v |x - (p + R v)| - R; nonnegative on the cone.
  double clearance(const Point<D>& x) const {
    double c = std::numeric_limits<double>::infinity();
    for (const auto& v : directions_) c = std::min(c, (x - (vertex_ + radius_ * v)).norm() - radius_);
    return c;
  }

  bool contains(const Point<D>& x) const { return clearance(x) >= -geom_tol_ * radius_; }

 private:
  Point<D> vertex_;
  std::vector<Point<D>> directions_;
  double radius_;
  double geom_tol_;
};

/// y in K* for the cone K generated by `directions`.
template <int D>
bool dual_contains(std::span<const Point<D>> directions, const Point<D>& y, double eps = 1e-9) {
  if (directions.empty()) throw Error(ErrorKind::InvalidArgument, "dual cone of an empty direction set");
  return std::ranges::all_of(directions, [&](const Point<D>& v) { return y.dot(v) >= -eps; });
}

template <int D>
struct TangentCheckReport {
  int sampled = 0;
  int asserted = 0;        // directions bounded away from the boundary of -K*
  int interior = 0;        // of those, directions inside -K*
  double min_interior_clearance = std::numeric_limits<double>::infinity();
};

/// Samples unit directions u and compares p + t u (t = t_scale R) in C_K
/// against -u in K*, skipping directions within theta_margin of a bounding
/// hyperplane of -K*. Directions strictly inside -K* must also clear every
/// excluded ball. Throws PropertyViolation with the offending direction.
template <int D>
TangentCheckReport<D> tangent_check(const RCone<D>& cone, int n_dirs, double t_scale, std::uint64_t seed, double theta_margin = 1e-3) {
  std::mt19937_64 rng(seed);
  const double t = t_scale * cone.radius();
  const double margin = std::sin(theta_margin);
  TangentCheckReport<D> report;
  auto fail = [&](const Point<D>& u, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << what << " for direction [";
    for (int k = 0; k < D; ++k) os << (k ? ", " : "") << u[k];
    os << "]";
    throw Error(ErrorKind::PropertyViolation, os.str());
  };
  for (int k = 0; k < n_dirs; ++k) {
    const Point<D> u = random_unit_vector<D>(rng);
    ++report.sampled;
    double closest = std::numeric_limits<double>::infinity();
    for (const auto& v : cone.directions()) closest = std::min(closest, std::abs(u.dot(v)));
    if (closest < margin) continue;
    ++report.asserted;
    const Point<D> x = cone.vertex() + t * u;
    const bool in_tangent = dual_contains<D>(cone.directions(), Point<D>(-u), 0.0);
    if (cone.contains(x) != in_tangent) fail(u, in_tangent ? "tangent direction leaves the cone" : "non-tangent direction stays in the cone");
    if (in_tangent) {
      ++report.interior;
      const double clear = cone.clearance(x);
      if (!(clear > 0.0)) fail(u, "tangent direction touches an excluded ball");
      report.min_interior_clearance = std::min(report.min_interior_clearance, clear);
    }
  }
  return report;
}

/// Looks for y with |y - p*| < neighborhood_eps outside the closure of every
/// ball, moving from p* along directions of -K* where K is spanned by the
/// inner normals at p*.
template <int D>
std::optional<Point<D>> find_common_point_witness(std::span<const Sphere<D>> balls, const Point<D>& p_star, double neighborhood_eps,
                                                  int budget = 256, std::uint64_t seed = 0) {
  if (balls.empty()) throw Error(ErrorKind::InvalidArgument, "no balls given");
  if (balls.size() > static_cast<std::size_t>(D)) throw Error(ErrorKind::InvalidArgument, "at most d balls");
  const double rho = balls.front().radius;
  for (const auto& b : balls) {
    if (std::abs(b.radius - rho) > 1e-9 * rho) throw Error(ErrorKind::InvalidArgument, "balls must share one radius");
    if (std::abs((p_star - b.center).norm() - rho) > 1e-9 * rho) throw Error(ErrorKind::InvalidArgument, "p* must lie on every sphere");
  }
  std::vector<Point<D>> normals;
  for (const auto& b : balls) normals.push_back((b.center - p_star).normalized());

  auto clearance = [&](const Point<D>& y) {
    double c = std::numeric_limits<double>::infinity();
    for (const auto& b : balls) c = std::min(c, (y - b.center).norm() - b.radius);
    return c;
  };
  auto try_direction = [&](Point<D> w) -> std::optional<Point<D>> {
    if (w.norm() < 1e-12) return std::nullopt;
    w.normalize();
    if (!dual_contains<D>(normals, Point<D>(-w), 0.0)) return std::nullopt;
    const Point<D> y = p_star + 0.5 * neighborhood_eps * w;
    if (clearance(y) > 0.0) return y;
    return std::nullopt;
  };

  Point<D> sum = Point<D>::Zero();
  for (const auto& u : normals) sum += u;
  if (auto y = try_direction(-sum)) return y;
  if (normals.size() == static_cast<std::size_t>(D)) {
    Eigen::Matrix<double, D, D> m;
    for (int k = 0; k < D; ++k) m.row(k) = normals[static_cast<std::size_t>(k)].transpose();
    Eigen::FullPivLU<Eigen::Matrix<double, D, D>> lu(m);
    if (lu.isInvertible())
      if (auto y = try_direction(-lu.solve(Point<D>::Ones()))) return y;
  }
  // Directions orthogonal to every normal (opposite or repeated balls).
  Eigen::Matrix<double, Eigen::Dynamic, D> rows(static_cast<Eigen::Index>(normals.size()), D);
  for (std::size_t k = 0; k < normals.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = normals[k].transpose();
  Eigen::FullPivLU<Eigen::Matrix<double, Eigen::Dynamic, D>> rank(rows);
  rank.setThreshold(1e-12);
  const Eigen::Matrix<double, D, Eigen::Dynamic> kernel = rank.kernel();
  if (rank.rank() < D)
    for (Eigen::Index c = 0; c < kernel.cols(); ++c)
      for (double sign : {1.0, -1.0})
        if (auto y = try_direction(sign * Point<D>(kernel.col(c)))) return y;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < budget; ++k)
    if (auto y = try_direction(random_unit_vector<D>(rng))) return y;
  return std::nullopt;
}

template <int D>
bool common_point_nonempty_check(std::span<const Sphere<D>> balls, const Point<D>& p_star, double neighborhood_eps, int budget = 256,
                                 std::uint64_t seed = 0) {
  if (find_common_point_witness<D>(balls, p_star, neighborhood_eps, budget, seed)) return true;
  throw Error(ErrorKind::PropertyViolation, "no point of positive distance from the balls found near p*");
}

}  // namespace rhulloid
