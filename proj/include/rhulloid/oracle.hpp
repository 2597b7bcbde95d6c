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
#include <vector>

#include "rhulloid/errors.hpp"
#include "rhulloid/geometry.hpp"
#include "rhulloid/parallel.hpp"
#include "rhulloid/sampling.hpp"
#include "rhulloid/search.hpp"

// Membership by exhaustion over radius-rho balls. Nothing here consults the
// closed-form description of the hulloid.

namespace rhulloid {

template <int D>
struct EscapeBall {
  Point<D> center = Point<D>::Zero();
  double rho = 0.0;
  Point<D> witness_for = Point<D>::Zero();
  double clearance = 0.0;
  int start_index = -1;  // -1 for the arrangement start
};

struct OracleOptions {
  int budget = 64;  // low-discrepancy starts
  std::uint64_t seed = 0;
  int iterations = 200;
  double clear_rel = 1e-7;
  bool arrangement_start = true;
  unsigned threads = 1;
};

/// min(rho - |z - x|, min_i |z - v_i| - rho); positive iff B(z, rho) is an
/// escape ball for x.
template <int D>
double escape_clearance(std::span<const Point<D>> vertices, double rho, const Point<D>& x, const Point<D>& z) {
  double c = rho - (z - x).norm();
  for (const auto& v : vertices) c = std::min(c, (z - v).norm() - rho);
  return c;
}

template <int D>
struct FreeSetProjection {
  Point<D> point = Point<D>::Zero();
  double distance = std::numeric_limits<double>::infinity();
};

namespace detail {

template <int D>
bool in_free_set(std::span<const Point<D>> vertices, double rho, const Point<D>& p) {
  const double floor = rho * (1.0 - 1e-12);
  return std::ranges::all_of(vertices, [&](const Point<D>& v) { return (p - v).norm() >= floor; });
}

}  // namespace detail

/// Nearest point to x of F = {z : |z - v_i| >= rho for all i}, the set of
/// admissible escape-ball centers. The minimiser is x itself, the foot on a
/// sphere dS(v_i, rho), the nearest point of a pairwise intersection circle
/// (3D) or a point common to D spheres, so enumerating those is exact.
template <int D>
FreeSetProjection<D> project_to_free_set(std::span<const Point<D>> vertices, double rho, const Point<D>& x) {
  if (!(rho > 0.0)) throw Error(ErrorKind::InvalidArgument, "rho must be positive");
  FreeSetProjection<D> best;
  auto offer = [&](const Point<D>& p) {
    if (!detail::in_free_set<D>(vertices, rho, p)) return;
    const double d = (p - x).norm();
    if (d < best.distance) best = {p, d};
  };
  offer(x);
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point<D> dir = x - vertices[i];
    const double len = dir.norm();
    if (len > 0.0) {
      offer(vertices[i] + (rho / len) * dir);
    } else {
      // Every point of the sphere is equally near.
      for (int k = 0; k < D; ++k) {
        offer(vertices[i] + rho * Point<D>::Unit(k));
        offer(vertices[i] - rho * Point<D>::Unit(k));
      }
    }
  }
  if constexpr (D == 3) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Point<D> d = vertices[j] - vertices[i];
        const double half = 0.5 * d.norm();
        if (half >= rho || half == 0.0) continue;
        const Point<D> m = 0.5 * (vertices[i] + vertices[j]);
        const Point<D> e = d / (2.0 * half);
        const double a = std::sqrt((rho - half) * (rho + half));
        Point<D> q = (x - m) - (x - m).dot(e) * e;
        if (q.norm() <= 1e-15 * rho) {
          q = e.unitOrthogonal();
        }
        q.normalize();
        offer(m + a * q);
      }
  }
  std::vector<Sphere<D>> tuple(static_cast<std::size_t>(D));
  std::vector<std::size_t> idx(static_cast<std::size_t>(D));
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    if (depth == static_cast<std::size_t>(D)) {
      for (std::size_t k = 0; k < idx.size(); ++k) tuple[k] = Sphere<D>{vertices[idx[k]], rho};
      for (const auto& p : intersect_spheres<D>(tuple, 1e-12)) offer(p);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      idx[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  if (n >= static_cast<std::size_t>(D)) recurse(recurse, 0, 0);
  return best;
}

/// rho - dist(x, F): positive iff some open radius-rho ball contains x and
/// misses every vertex.
template <int D>
double escape_margin(std::span<const Point<D>> vertices, double rho, const Point<D>& x) {
  return rho - project_to_free_set<D>(vertices, rho, x).distance;
}

/// Multistart max-min search for an escape ball around x. Starts are the
/// free-set projection of x and `budget` Sobol points in the box of
/// half-width 3 rho around x. The best ball by clearance is returned when it
/// clears clear_rel * rho; ties go to the lower start index.
template <int D>
std::optional<EscapeBall<D>> find_escape_ball(std::span<const Point<D>> vertices, double rho, const Point<D>& x, const OracleOptions& opt = {}) {
  if (!(rho > 0.0)) throw Error(ErrorKind::InvalidArgument, "rho must be positive");
  if (opt.budget < 0) throw Error(ErrorKind::InvalidArgument, "budget must be nonnegative");
  auto objective = [&](const Point<D>& z) { return escape_clearance<D>(vertices, rho, x, z); };

  std::vector<Point<D>> starts;
  std::vector<int> labels;
  if (opt.arrangement_start) {
    const auto proj = project_to_free_set<D>(vertices, rho, x);
    if (proj.distance < rho) {
      starts.push_back(proj.point);
      labels.push_back(-1);
    }
  }
  SobolSequence<D> sobol(opt.seed * static_cast<std::uint64_t>(std::max(opt.budget, 1)));
  for (int k = 0; k < opt.budget; ++k) {
    const Point<D> u = sobol.next();
    starts.push_back(x + 3.0 * rho * (2.0 * u - Point<D>::Ones()));
    labels.push_back(k);
  }

  std::vector<SearchResult<D>> results(starts.size());
  parallel_for(starts.size(), opt.threads, [&](std::size_t k) {
    std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
    PatternSearchOptions ps;
    ps.max_iterations = opt.iterations;
    ps.initial_step = labels[k] < 0 ? 0.25 * std::max(rho - (starts[k] - x).norm(), 1e-12 * rho) : 0.5 * rho;
    ps.min_step = 1e-15 * rho;
    results[k] = pattern_maximize<D>(objective, starts[k], ps, rng);
  });

  std::optional<EscapeBall<D>> best;
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (!(results[k].value > opt.clear_rel * rho)) continue;
    if (!best || results[k].value > best->clearance) best = EscapeBall<D>{results[k].x, rho, x, results[k].value, labels[k]};
  }
  return best;
}

template <int D>
std::optional<EscapeBall<D>> find_escape_ball(const Simplex<D>& s, double rho, const Point<D>& x, const OracleOptions& opt = {}) {
  return find_escape_ball<D>(std::span<const Point<D>>(s.vertices()), rho, x, opt);
}

template <int D>
bool oracle_membership(const Simplex<D>& s, double rho, const Point<D>& x, const OracleOptions& opt = {}) {
  return !find_escape_ball<D>(s, rho, x, opt).has_value();
}

template <int D>
struct BallBoundsReport {
  bool applicable = false;          // false when the ball misses T
  double center_slack = 0.0;        // dist(z, c) - (rho - r)
  double simplex_slack = 0.0;       // dist(z, T) - (rho - r) / 2
  double radical_z = 0.0;           // f(z), must be > 0
  double radical_vertex_max = 0.0;  // max_i f(v_i), must be < 0
};

/// Checks the location bounds for an escape ball meeting T, with
/// f(y) = |y - c|^2 - r^2 - |y - z|^2 + rho^2 the radical function of
/// dB(c, r) and dB(z, rho).
template <int D>
BallBoundsReport<D> ball_bounds_check(const EscapeBall<D>& ball, const Simplex<D>& s) {
  const double r = s.circumradius();
  const Point<D>& c = s.circumcenter();
  const double rho = ball.rho;
  if (!(rho > r)) throw Error(ErrorKind::InvalidArgument, "ball radius must exceed the circumradius");
  for (const auto& v : s.vertices())
    if (!((ball.center - v).norm() >= rho)) throw Error(ErrorKind::InvalidArgument, "ball contains a vertex");
  BallBoundsReport<D> rep;
  const double dist_t = distance_to_simplex(s, ball.center);
  if (!(dist_t < rho)) return rep;
  rep.applicable = true;
  rep.center_slack = (ball.center - c).norm() - (rho - r);
  rep.simplex_slack = dist_t - 0.5 * (rho - r);
  auto f = [&](const Point<D>& y) { return (y - c).squaredNorm() - r * r - (y - ball.center).squaredNorm() + rho * rho; };
  rep.radical_z = f(ball.center);
  rep.radical_vertex_max = -std::numeric_limits<double>::infinity();
  for (const auto& v : s.vertices()) rep.radical_vertex_max = std::max(rep.radical_vertex_max, f(v));

  auto fail = [&](const char* what, double value) {
    std::ostringstream os;
    os.precision(17);
    os << what << " (value " << value << ") for ball center [";
    for (int k = 0; k < D; ++k) os << (k ? ", " : "") << ball.center[k];
    os << "], rho " << rho;
    throw Error(ErrorKind::PropertyViolation, os.str());
  };
  if (!(rep.center_slack > 0.0)) fail("ball center too close to the circumcenter", rep.center_slack);
  if (!(rep.simplex_slack > 0.0)) fail("ball center too close to the simplex", rep.simplex_slack);
  if (!(rep.radical_z > 0.0)) fail("radical plane does not separate the ball center", rep.radical_z);
  if (!(rep.radical_vertex_max < 0.0)) fail("radical plane does not separate the vertices", rep.radical_vertex_max);
  return rep;
}

}  // namespace rhulloid
