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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rhulloid/errors.hpp"
#include "rhulloid/tolerances.hpp"

namespace rhulloid {

template <int D>
concept SupportedDim = (D == 2 || D == 3);

template <int D>
using Point = Eigen::Matrix<double, D, 1>;

template <int D>
struct Sphere {
  Point<D> center = Point<D>::Zero();
  double radius = 0.0;
};

namespace detail {

template <int D>
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, D + 1, D + 1>;
template <int D>
using EdgeMatrix = Eigen::Matrix<double, D, Eigen::Dynamic, 0, D, D + 1>;
template <int D>
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, D + 1, 1>;

template <int D>
double max_pairwise_distance(std::span<const Point<D>> pts) {
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::max(best, (pts[a] - pts[b]).norm());
  return best;
}

template <int D>
EdgeMatrix<D> edges_from_first(std::span<const Point<D>> pts) {
  EdgeMatrix<D> e(D, static_cast<Eigen::Index>(pts.size()) - 1);
  for (std::size_t j = 1; j < pts.size(); ++j) e.col(static_cast<Eigen::Index>(j) - 1) = pts[j] - pts[0];
  return e;
}

// True when the k+1 points span a k-dimensional affine subspace, judged by
// the k-volume of the edge parallelotope against L^k, where L is the larger
// of the longest edge and `length_scale`.
template <int D>
bool affinely_independent(std::span<const Point<D>> pts, double degen_tol, double length_scale = 0.0) {
  if (pts.size() < 2) return false;
  const auto e = edges_from_first<D>(pts);
  const SmallMatrix<D> gram = e.transpose() * e;
  const double vol = std::sqrt(std::max(gram.determinant(), 0.0));
  const double scale = std::max(max_pairwise_distance<D>(pts), length_scale);
  if (!(scale > 0.0) || !std::isfinite(vol)) return false;
  return vol > degen_tol * std::pow(scale, static_cast<double>(pts.size() - 1));
}

// Orthogonal projection of x onto the affine hull of pts.
template <int D>
Point<D> project_affine(std::span<const Point<D>> pts, const Point<D>& x) {
  if (pts.size() == 1) return pts[0];
  const auto e = edges_from_first<D>(pts);
  const SmallMatrix<D> gram = e.transpose() * e;
  const SmallVector<D> coeffs = gram.ldlt().solve(e.transpose() * (x - pts[0]));
  return pts[0] + e * coeffs;
}

}  // namespace detail

/// Circumsphere of k+1 affinely independent points (1 <= k <= D). The center
/// is solved inside the affine hull of the inputs via the Gram system
/// 2 (E^T E) a = diag(E^T E), so lower-dimensional faces never produce a
/// rank-deficient D x D system. A positive `length_scale` makes the
/// degeneracy test absolute, so clusters much smaller than it are rejected.
template <int D>
Sphere<D> circumsphere(std::span<const Point<D>> pts, const Tolerances& tol = {}, double length_scale = 0.0) {
  if (pts.size() < 2 || pts.size() > static_cast<std::size_t>(D + 1))
    throw Error(ErrorKind::InvalidArgument, "circumsphere needs between 2 and D+1 points");
  if (!detail::affinely_independent<D>(pts, tol.degen, length_scale))
    throw Error(ErrorKind::DegenerateInput, "points are not affinely independent");
  const auto e = detail::edges_from_first<D>(pts);
  const detail::SmallMatrix<D> gram = e.transpose() * e;
  const detail::SmallVector<D> rhs = 0.5 * gram.diagonal();
  const detail::SmallVector<D> a = gram.partialPivLu().solve(rhs);
  Sphere<D> out;
  out.center = pts[0] + e * a;
  double r = 0.0;
  for (const auto& p : pts) r += (p - out.center).norm();
  out.radius = r / static_cast<double>(pts.size());
  return out;
}

/// Geometry of the facet opposite vertex `index`: the hyperplane H_i, its
/// outward unit normal (pointing away from the opposite vertex) and the
/// circumsphere of the facet inside H_i.
template <int D>
struct FacetData {
  int index = 0;
  Point<D> opposite = Point<D>::Zero();
  std::array<Point<D>, D> vertices{};
  Point<D> normal = Point<D>::Zero();
  double offset = 0.0;  // <normal, x> = offset on H_i
  Point<D> circumcenter = Point<D>::Zero();
  double circumradius = 0.0;
  Point<D> reflected_circumcenter = Point<D>::Zero();
  double apex_height = 0.0;  // distance from the opposite vertex to H_i

  /// Signed distance to H_i, positive on the side of the opposite vertex.
  double inner_distance(const Point<D>& x) const { return offset - normal.dot(x); }
};

template <int D>
  requires SupportedDim<D>
class Simplex {
 public:
  static constexpr int kDim = D;
  static constexpr int kVertices = D + 1;
  using Vertices = std::array<Point<D>, D + 1>;

  explicit Simplex(const Vertices& vertices, const Tolerances& tol = {}) : vertices_(vertices), tol_(tol) {
    for (const auto& v : vertices_)
      if (!v.allFinite()) throw Error(ErrorKind::InvalidArgument, "vertex coordinates must be finite");
    diameter_ = detail::max_pairwise_distance<D>(vertices_);
    if (!detail::affinely_independent<D>(vertices_, tol_.degen))
      throw Error(ErrorKind::DegenerateInput, "simplex vertices are (nearly) affinely dependent");

    Eigen::Matrix<double, D, D> edges;
    for (int j = 1; j <= D; ++j) edges.col(j - 1) = vertices_[j] - vertices_[0];
    inverse_edges_ = edges.inverse();
    circumsphere_ = rhulloid::circumsphere<D>(vertices_, tol_);
    for (int i = 0; i <= D; ++i) facets_[i] = make_facet(i);
  }

  const Vertices& vertices() const { return vertices_; }
  const Point<D>& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  double diameter() const { return diameter_; }
  const Sphere<D>& circumsphere() const { return circumsphere_; }
  const Point<D>& circumcenter() const { return circumsphere_.center; }
  double circumradius() const { return circumsphere_.radius; }
  const FacetData<D>& facet(int i) const { return facets_[static_cast<std::size_t>(i)]; }
  const Tolerances& tolerances() const { return tol_; }

  Point<D> centroid() const {
    Point<D> c = Point<D>::Zero();
    for (const auto& v : vertices_) c += v;
    return c / static_cast<double>(D + 1);
  }

  std::array<double, D + 1> barycentric(const Point<D>& x) const {
    const Point<D> tail = inverse_edges_ * (x - vertices_[0]);
    std::array<double, D + 1> lambda{};
    lambda[0] = 1.0 - tail.sum();
    for (int j = 0; j < D; ++j) lambda[static_cast<std::size_t>(j) + 1] = tail[j];
    return lambda;
  }

 private:
  FacetData<D> make_facet(int i) const {
    FacetData<D> f;
    f.index = i;
    f.opposite = vertex(i);
    for (int j = 0, k = 0; j <= D; ++j)
      if (j != i) f.vertices[static_cast<std::size_t>(k++)] = vertex(j);

    const std::span<const Point<D>> fv(f.vertices);
    const Point<D> foot = detail::project_affine<D>(fv, f.opposite);
    const Point<D> away = foot - f.opposite;
    f.apex_height = away.norm();
    f.normal = away / f.apex_height;
    f.offset = f.normal.dot(f.vertices[0]);

    const Sphere<D> fs = rhulloid::circumsphere<D>(fv, tol_);
    f.circumcenter = fs.center;
    f.circumradius = fs.radius;
    const Point<D>& c = circumsphere_.center;
    f.reflected_circumcenter = c - 2.0 * (c - f.circumcenter).dot(f.normal) * f.normal;
    return f;
  }

  Vertices vertices_;
  Tolerances tol_;
  double diameter_ = 0.0;
  Eigen::Matrix<double, D, D> inverse_edges_;
  Sphere<D> circumsphere_;
  std::array<FacetData<D>, D + 1> facets_{};
};

enum class Containment { Open, Closed };

template <int D>
std::array<double, D + 1> barycentric(const Simplex<D>& s, const Point<D>& x) {
  return s.barycentric(x);
}

template <int D>
bool contains(const Simplex<D>& s, const Point<D>& x, Containment mode) {
  const double eps = s.tolerances().geom;
  const auto lambda = s.barycentric(x);
  if (mode == Containment::Closed) return std::ranges::all_of(lambda, [eps](double l) { return l >= -eps; });
  return std::ranges::all_of(lambda, [eps](double l) { return l > eps; });
}

template <int D>
const FacetData<D>& facet_data(const Simplex<D>& s, int i) {
  if (i < 0 || i > D) throw Error(ErrorKind::InvalidArgument, "facet index out of range");
  return s.facet(i);
}

template <int D>
bool is_well_centered(const Simplex<D>& s) {
  return contains(s, s.circumcenter(), Containment::Open);
}

/// Index of the vertex within geom * diameter of x, or -1.
template <int D>
int vertex_index(const Simplex<D>& s, const Point<D>& x) {
  const double eps = s.tolerances().geom * s.diameter();
  for (int i = 0; i <= D; ++i)
    if ((s.vertex(i) - x).norm() <= eps) return i;
  return -1;
}

/// Euclidean distance from x to the closed simplex, by exhausting its faces.
template <int D>
double distance_to_simplex(const Simplex<D>& s, const Point<D>& x) {
  if (contains(s, x, Containment::Closed)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << (D + 1)); ++mask) {
    std::vector<Point<D>> face;
    for (int j = 0; j <= D; ++j)
      if (mask & (1u << j)) face.push_back(s.vertex(j));
    if (face.size() == static_cast<std::size_t>(D + 1)) continue;
    const std::span<const Point<D>> fs(face);
    const Point<D> p = detail::project_affine<D>(fs, x);
    bool inside = true;
    if (face.size() > 1) {
      const auto e = detail::edges_from_first<D>(fs);
      const detail::SmallMatrix<D> gram = e.transpose() * e;
      const detail::SmallVector<D> coeffs = gram.ldlt().solve(e.transpose() * (p - face[0]));
      inside = (coeffs.array() >= 0.0).all() && coeffs.sum() <= 1.0;
    }
    if (inside) best = std::min(best, (p - x).norm());
  }
  return best;
}

/// Common points of D spheres in R^D (generically zero or two points). A
/// tangency within geom * radius is reported as a single point.
template <int D>
std::vector<Point<D>> intersect_spheres(std::span<const Sphere<D>> spheres, double rel_tol = 1e-9) {
  if (spheres.size() != static_cast<std::size_t>(D))
    throw Error(ErrorKind::InvalidArgument, "intersect_spheres needs exactly D spheres");
  const Point<D>& c0 = spheres[0].center;
  const double r0 = spheres[0].radius;
  // Radical hyperplanes, written relative to c0: <d_k, y> = (|d_k|^2 + r0^2 - r_k^2) / 2.
  Eigen::Matrix<double, D - 1, D> a;
  Eigen::Matrix<double, D - 1, 1> b;
  for (int k = 1; k < D; ++k) {
    const Point<D> dk = spheres[static_cast<std::size_t>(k)].center - c0;
    const double rk = spheres[static_cast<std::size_t>(k)].radius;
    a.row(k - 1) = dk.transpose();
    b[k - 1] = 0.5 * (dk.squaredNorm() + r0 * r0 - rk * rk);
  }
  const Eigen::Matrix<double, D - 1, D - 1> aat = a * a.transpose();
  if (std::abs(aat.determinant()) <= 1e-24 * std::pow(aat.norm(), D - 1)) return {};
  const Point<D> particular = a.transpose() * aat.partialPivLu().solve(b);
  Point<D> dir;
  if constexpr (D == 2) {
    dir << -a(0, 1), a(0, 0);
  } else {
    dir = a.row(0).transpose().cross(a.row(1).transpose());
  }
  dir.normalize();
  const double t2 = r0 * r0 - particular.squaredNorm();
  const double tangency = rel_tol * r0;
  if (t2 < -tangency * tangency) return {};
  if (t2 <= tangency * tangency) return {c0 + particular};
  const double t = std::sqrt(t2);
  return {c0 + particular - t * dir, c0 + particular + t * dir};
}

}  // namespace rhulloid
