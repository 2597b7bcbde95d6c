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
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "rhulloid/errors.hpp"
#include "rhulloid/geometry.hpp"
#include "rhulloid/sampling.hpp"
#include "rhulloid/search.hpp"

namespace rhulloid {

/// The d+1 supporting balls B_i(rho) = B(o_i(rho), rho). Each o_i lies on the
/// line through the facet circumcenter c_i orthogonal to H_i, at signed
/// offset `offsets[i]` along the outward normal n_i.
template <int D>
struct SupportFamily {
  double rho = 0.0;
  std::array<Point<D>, D + 1> centers{};
  std::array<double, D + 1> offsets{};
};

struct VerticesOnly {};

template <int D>
struct VerticesPlusPoint {
  Point<D> o_star;
};

template <int D>
struct FullHulloid {
  SupportFamily<D> support;
};

template <int D>
struct HulloidDescription {
  double rho = 0.0;
  std::variant<VerticesOnly, VerticesPlusPoint<D>, FullHulloid<D>> shape;
};

namespace detail {

// |x - o|^2 - rho^2 for o = c_i + t n_i and t^2 = rho^2 - r_i^2, expanded so
// that rho^2 never appears (no cancellation when rho is large).
template <int D>
double support_power(const FacetData<D>& f, double t, const Point<D>& x) {
  const Point<D> d = x - f.circumcenter;
  return (d.squaredNorm() - f.circumradius * f.circumradius) - 2.0 * t * d.dot(f.normal);
}

template <int D>
void require_above_circumradius(const Simplex<D>& s, double rho) {
  if (!(rho > s.circumradius() * (1.0 + s.tolerances().radius)))
    throw Error(ErrorKind::RadiusTooSmall, "rho must exceed the circumradius r(V) = " + std::to_string(s.circumradius()));
}

}  // namespace detail

/// Signed offset t of o_i(rho) = c_i + t n_i. Of the two points on l_i at
/// distance rho from the facet vertices, o_i is the one whose ball excludes
/// the opposite vertex.
template <int D>
double support_offset(const Simplex<D>& s, int i, double rho) {
  detail::require_above_circumradius(s, rho);
  const FacetData<D>& f = facet_data(s, i);
  const double h = std::sqrt(std::max(rho * rho - f.circumradius * f.circumradius, 0.0));
  const double tie = s.tolerances().root * s.diameter() * s.diameter();
  const bool plus_ok = detail::support_power(f, h, f.opposite) >= -tie;
  const bool minus_ok = detail::support_power(f, -h, f.opposite) >= -tie;
  if (plus_ok == minus_ok)
    throw Error(ErrorKind::AmbiguousSelection, "cannot single out o_" + std::to_string(i) + " at rho = " + std::to_string(rho));
  return plus_ok ? h : -h;
}

template <int D>
Point<D> support_center(const Simplex<D>& s, int i, double rho) {
  const FacetData<D>& f = facet_data(s, i);
  return f.circumcenter + support_offset(s, i, rho) * f.normal;
}

template <int D>
SupportFamily<D> support_family(const Simplex<D>& s, double rho) {
  SupportFamily<D> fam;
  fam.rho = rho;
  for (int i = 0; i <= D; ++i) {
    fam.offsets[static_cast<std::size_t>(i)] = support_offset(s, i, rho);
    fam.centers[static_cast<std::size_t>(i)] = s.facet(i).circumcenter + fam.offsets[static_cast<std::size_t>(i)] * s.facet(i).normal;
  }
  return fam;
}

/// Signed distance from x to the sphere bd B_i(rho); positive outside the ball.
template <int D>
double support_margin(const Simplex<D>& s, const SupportFamily<D>& fam, int i, const Point<D>& x) {
  const auto k = static_cast<std::size_t>(i);
  const double power = detail::support_power(s.facet(i), fam.offsets[k], x);
  return power / ((x - fam.centers[k]).norm() + fam.rho);
}

/// min over the supporting spheres and the facet planes of the signed
/// distance; positive exactly on the interior of co(V) minus the balls.
template <int D>
double formula_clearance(const Simplex<D>& s, const SupportFamily<D>& fam, const Point<D>& x) {
  double c = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= D; ++i) {
    c = std::min(c, support_margin(s, fam, i, x));
    c = std::min(c, s.facet(i).inner_distance(x));
  }
  return c;
}

/// Membership in co_rho(V) = co(V) \ U B_i(rho), the closed set obtained
/// by removing the open supporting balls.
template <int D>
bool membership(const Simplex<D>& s, const SupportFamily<D>& fam, const Point<D>& x) {
  if (vertex_index(s, x) >= 0) return true;
  if (!contains(s, x, Containment::Closed)) return false;
  const double eps = s.tolerances().root * s.diameter();
  for (int i = 0; i <= D; ++i)
    if (support_margin(s, fam, i, x) < -eps) return false;
  return true;
}

template <int D>
bool membership(const Simplex<D>& s, double rho, const Point<D>& x) {
  if (vertex_index(s, x) >= 0) return true;
  if (rho <= s.circumradius() * (1.0 + s.tolerances().radius)) return false;
  return membership(s, support_family(s, rho), x);
}

/// Lower bound on the distance from x to the boundary of co_rho(V): the
/// boundary is contained in the supporting spheres and facet planes (or is
/// V itself when rho <= r(V)).
template <int D>
double boundary_distance(const Simplex<D>& s, double rho, const Point<D>& x) {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= D; ++i) d = std::min(d, (x - s.vertex(i)).norm());
  if (rho <= s.circumradius() * (1.0 + s.tolerances().radius)) return d;
  const SupportFamily<D> fam = support_family(s, rho);
  for (int i = 0; i <= D; ++i) {
    d = std::min(d, std::abs(support_margin(s, fam, i, x)));
    d = std::min(d, std::abs(s.facet(i).inner_distance(x)));
  }
  return d;
}

template <int D>
int vertex_nearest(const Simplex<D>& s, const Point<D>& x) {
  int best = 0;
  for (int i = 1; i <= D; ++i)
    if ((s.vertex(i) - x).norm() < (s.vertex(best) - x).norm()) best = i;
  return best;
}

template <int D>
struct InteriorWitness {
  Point<D> point;
  double clearance = 0.0;
};

struct WitnessOptions {
  int samples = 10000;
  int refine = 24;
  std::uint64_t seed = 0;
  double min_clearance_rel = 64.0 * std::numeric_limits<double>::epsilon();
};

/// Searches int(co_rho(V)) for a point of positive clearance: Sobol samples
/// of T, the corners where d supporting spheres meet, the circumcenter of the
/// support centers, and points creeping away from each vertex seed a pattern
/// search on formula_clearance. Returns nothing when co_rho(V) is not full
/// (as far as the search can tell).
template <int D>
std::optional<InteriorWitness<D>> interior_witness(const Simplex<D>& s, double rho, const WitnessOptions& opt = {}) {
  if (rho <= s.circumradius() * (1.0 + s.tolerances().radius)) return std::nullopt;
  const SupportFamily<D> fam = support_family(s, rho);
  auto clearance = [&](const Point<D>& x) { return formula_clearance(s, fam, x); };

  std::vector<Point<D>> starts;
  starts.reserve(static_cast<std::size_t>(opt.samples) + 64);
  std::array<Sphere<D>, D + 1> spheres;
  for (int i = 0; i <= D; ++i) spheres[static_cast<std::size_t>(i)] = {fam.centers[static_cast<std::size_t>(i)], rho};
  for (int skip = 0; skip <= D; ++skip) {
    std::array<Sphere<D>, D> subset;
    for (int i = 0, k = 0; i <= D; ++i)
      if (i != skip) subset[static_cast<std::size_t>(k++)] = spheres[static_cast<std::size_t>(i)];
    for (const auto& p : intersect_spheres<D>(subset)) starts.push_back(p);
  }
  try {
    starts.push_back(circumsphere<D>(fam.centers, s.tolerances()).center);
  } catch (const Error&) {
    // coplanar centers carry no useful start
  }
  const Point<D> g = s.centroid();
  starts.push_back(g);
  for (int i = 0; i <= D; ++i)
    for (double t = 1e-1; t > 1e-9; t *= 0.1) starts.push_back(s.vertex(i) + t * (g - s.vertex(i)));
  SobolSequence<D> sobol(opt.seed);
  for (int k = 0; k < opt.samples; ++k) starts.push_back(from_barycentric(s, cube_to_barycentric<D>(sobol.next())));

  std::vector<std::pair<double, std::size_t>> ranked(starts.size());
  for (std::size_t k = 0; k < starts.size(); ++k) ranked[k] = {clearance(starts[k]), k};
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::mt19937_64 rng(opt.seed);
  PatternSearchOptions ps;
  ps.min_step = 1e-16 * s.diameter();
  ps.max_iterations = 600;
  std::optional<InteriorWitness<D>> best;
  const std::size_t n_refine = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(std::max(opt.refine, 1)));
  for (std::size_t k = 0; k < n_refine; ++k) {
    const Point<D>& x0 = starts[ranked[k].second];
    ps.initial_step = 1e-2 * std::max((x0 - s.vertex(vertex_nearest(s, x0))).norm(), 1e-6 * s.diameter());
    const auto r = pattern_maximize<D>(clearance, x0, ps, rng);
    if (!best || r.value > best->clearance) best = InteriorWitness<D>{r.x, r.value};
  }
  if (best && best->clearance > opt.min_clearance_rel * s.diameter()) return best;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Planar hulloid

/// Arc of bd B(center, radius) traversed counter-clockwise from start_angle
/// to end_angle; `edge` is the index of the opposite vertex.
struct PlanarArc {
  int edge = 0;
  Point<2> center = Point<2>::Zero();
  double radius = 0.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  Point<2> start = Point<2>::Zero();
  Point<2> end = Point<2>::Zero();
};

struct PlanarHulloid {
  double rho = 0.0;
  std::array<Point<2>, 3> vertices{};
  std::vector<PlanarArc> arcs;
  std::vector<Point<2>> corners;
};

namespace detail {

inline double wrap_into(double angle, double lo) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  while (angle < lo) angle += two_pi;
  while (angle >= lo + two_pi) angle -= two_pi;
  return angle;
}

}  // namespace detail

/// Boundary of the curvilinear triangle co_rho(V) \ V for a triangle and
/// rho > r(V). Each arc lies on one supporting circle; the parts of the
/// circle that leave T or enter another supporting disk are clipped away.
/// Sub-arcs shorter than 1e-9 rad are dropped.
inline PlanarHulloid planar_hulloid(const Simplex<2>& s, double rho) {
  detail::require_above_circumradius(s, rho);
  const SupportFamily<2> fam = support_family(s, rho);
  const double eps = s.tolerances().geom * s.diameter();
  PlanarHulloid out;
  out.rho = rho;
  out.vertices = s.vertices();

  for (int i = 0; i < 3; ++i) {
    const FacetData<2>& f = s.facet(i);
    const Point<2>& o = fam.centers[static_cast<std::size_t>(i)];
    // The part of the circle on the inner side of the edge is the arc around
    // direction -n_i with half-angle asin(r_i / rho).
    const double mid = std::atan2(-f.normal.y(), -f.normal.x());
    const double half = std::asin(std::min(1.0, f.circumradius / rho));
    const double lo = mid - half;
    const double hi = mid + half;

    std::vector<double> cuts{lo, hi};
    auto add_cut = [&](const Point<2>& p) {
      const double a = detail::wrap_into(std::atan2(p.y() - o.y(), p.x() - o.x()), lo);
      if (a > lo && a < hi) cuts.push_back(a);
    };
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      const std::array<Sphere<2>, 2> pair{Sphere<2>{o, rho}, Sphere<2>{fam.centers[static_cast<std::size_t>(j)], rho}};
      for (const auto& p : intersect_spheres<2>(pair)) add_cut(p);
      // edge line of facet j
      const FacetData<2>& g = s.facet(j);
      const Point<2> dir = (g.vertices[1] - g.vertices[0]).normalized();
      const Point<2> foot = g.vertices[0] + (o - g.vertices[0]).dot(dir) * dir;
      const double q = rho * rho - (o - foot).squaredNorm();
      if (q > 0) {
        add_cut(foot + std::sqrt(q) * dir);
        add_cut(foot - std::sqrt(q) * dir);
      }
    }
    std::sort(cuts.begin(), cuts.end());

    auto on_circle = [&](double a) -> Point<2> { return o + rho * Point<2>(std::cos(a), std::sin(a)); };
    auto keep = [&](double a) {
      const Point<2> p = on_circle(a);
      if (!contains(s, p, Containment::Closed)) return false;
      for (int j = 0; j < 3; ++j)
        if (j != i && support_margin(s, fam, j, p) < -eps) return false;
      return true;
    };

    std::optional<std::pair<double, double>> open;
    auto flush = [&] {
      if (open && open->second - open->first >= 1e-9) {
        PlanarArc arc;
        arc.edge = i;
        arc.center = o;
        arc.radius = rho;
        arc.start_angle = open->first;
        arc.end_angle = open->second;
        arc.start = on_circle(open->first);
        arc.end = on_circle(open->second);
        out.arcs.push_back(arc);
      }
      open.reset();
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k];
      const double b = cuts[k + 1];
      if (b - a <= 0.0) continue;
      if (keep(0.5 * (a + b))) {
        if (open)
          open->second = b;
        else
          open = std::make_pair(a, b);
      } else {
        flush();
      }
    }
    flush();
  }

  for (const auto& arc : out.arcs) {
    for (const Point<2>& p : {arc.start, arc.end}) {
      const bool seen = std::ranges::any_of(out.corners, [&](const Point<2>& q) { return (p - q).norm() <= 1e3 * eps; });
      if (!seen) out.corners.push_back(p);
    }
  }
  return out;
}

}  // namespace rhulloid
