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
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rhulloid/critical.hpp"
#include "rhulloid/errors.hpp"
#include "rhulloid/geometry.hpp"
#include "rhulloid/parallel.hpp"
#include "rhulloid/search.hpp"

namespace rhulloid {

/// Side of each sphere center relative to its facet: +1 along the outward
/// normal n_j, -1 against it.
using SignPattern = std::array<int, 4>;

inline SignPattern pattern_from_index(int index) {
  SignPattern p{};
  for (int j = 0; j < 4; ++j) p[static_cast<std::size_t>(j)] = (index >> j) & 1 ? -1 : 1;
  return p;
}

struct FourCrossing {
  double radius = 0.0;
  Point<3> point = Point<3>::Zero();
  SignPattern pattern{};
  bool interior = false;
  double circumsphere_margin = 0.0;  // | |O - c(V)| - r(V) |
  double max_residual = 0.0;         // max_j | |O - z_j| - R |
};

struct RejectedCrossing {
  SignPattern pattern{};
  double radius = 0.0;
  Point<3> point = Point<3>::Zero();
  std::string reason;  // "on_circumsphere", "coincident_spheres", "residual"
  double circumsphere_margin = 0.0;
};

struct DegenerateScan {
  SignPattern pattern{};
  int skipped_nodes = 0;
  int skipped_brackets = 0;
};

struct FourCrossingReport {
  std::vector<FourCrossing> crossings;
  std::vector<RejectedCrossing> rejected;
  std::vector<DegenerateScan> degeneracies;
  double r_max = 0.0;
  int grid_n = 0;
};

struct EnumerateOptions {
  double r_max = 0.0;  // 0 selects 8 r(V)
  int grid_n = 2048;
  double dedup_rel = 1e-7;
  double double_root_rel = 1e-9;
  unsigned threads = 1;
};

inline Point<3> signed_center(const Simplex<3>& s, int j, double radius, int sign) {
  const FacetData<3>& f = facet_data(s, j);
  const double r2 = radius * radius - f.circumradius * f.circumradius;
  if (r2 < -s.tolerances().geom * s.diameter() * s.diameter())
    throw Error(ErrorKind::RadiusBelowFacet, "R is below the circumradius of facet " + std::to_string(j));
  return f.circumcenter + static_cast<double>(sign) * std::sqrt(std::max(r2, 0.0)) * f.normal;
}

inline std::array<Point<3>, 4> signed_centers(const Simplex<3>& s, const SignPattern& p, double radius) {
  std::array<Point<3>, 4> z;
  for (int j = 0; j < 4; ++j) z[static_cast<std::size_t>(j)] = signed_center(s, j, radius, p[static_cast<std::size_t>(j)]);
  return z;
}

/// Circumradius of the four signed centers minus R. A zero means the four
/// spheres of radius R meet in exactly one point, the centers' circumcenter.
inline double pattern_gap(const Simplex<3>& s, const SignPattern& p, double radius) {
  const auto z = signed_centers(s, p, radius);
  try {
    return circumsphere<3>(z, s.tolerances(), radius).radius - radius;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateInput) throw;
    throw Error(ErrorKind::DegenerateCenters, "signed centers are affinely dependent");
  }
}

namespace detail {

struct PatternScan {
  std::vector<FourCrossing> accepted;
  std::vector<RejectedCrossing> rejected;
  DegenerateScan degenerate;
};

inline bool near_any(const std::vector<double>& roots, double r, double tol) {
  return std::ranges::any_of(roots, [&](double q) { return std::abs(q - r) <= tol; });
}

inline PatternScan scan_pattern(const Simplex<3>& s, const SignPattern& p, const std::vector<double>& grid, const EnumerateOptions& opt) {
  const Tolerances& tol = s.tolerances();
  const double rv = s.circumradius();
  PatternScan out;
  out.degenerate.pattern = p;

  std::vector<double> g(grid.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    try {
      g[k] = pattern_gap(s, p, grid[k]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateCenters) throw;
      ++out.degenerate.skipped_nodes;
    }
  }

  auto gap_at = [&](double r) { return pattern_gap(s, p, r); };
  std::vector<double> roots;
  const double zero_tol = tol.root * rv;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (std::isnan(g[k])) continue;
    if (std::abs(g[k]) <= zero_tol) {
      if (!near_any(roots, grid[k], opt.dedup_rel * rv)) roots.push_back(grid[k]);
      continue;
    }
    if (k + 1 >= grid.size() || std::isnan(g[k + 1]) || std::abs(g[k + 1]) <= zero_tol) continue;
    if ((g[k] < 0.0) == (g[k + 1] < 0.0)) continue;
    try {
      roots.push_back(refine_root(gap_at, grid[k], grid[k + 1], g[k], g[k + 1], tol.root));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateCenters) throw;
      ++out.degenerate.skipped_brackets;
    }
  }
  // Tangential zeros: local minima of |gap| that do not change sign.
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    if (std::isnan(g[k - 1]) || std::isnan(g[k]) || std::isnan(g[k + 1])) continue;
    if (!(std::abs(g[k]) < std::abs(g[k - 1]) && std::abs(g[k]) < std::abs(g[k + 1]))) continue;
    if ((g[k - 1] < 0.0) != (g[k] < 0.0) || (g[k] < 0.0) != (g[k + 1] < 0.0)) continue;
    try {
      const auto [r, v] = minimize_scalar([&](double x) { return std::abs(gap_at(x)); }, grid[k - 1], grid[k + 1]);
      if (v <= opt.double_root_rel * rv && !near_any(roots, r, opt.dedup_rel * rv)) roots.push_back(r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateCenters) throw;
      ++out.degenerate.skipped_brackets;
    }
  }

  const Point<3>& c = s.circumcenter();
  for (double r : roots) {
    std::array<Point<3>, 4> z;
    Sphere<3> meet;
    try {
      z = signed_centers(s, p, r);
      meet = circumsphere<3>(z, tol, r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput && e.kind() != ErrorKind::RadiusBelowFacet) throw;
      ++out.degenerate.skipped_brackets;
      continue;
    }
    double residual = 0.0;
    for (const auto& zj : z) residual = std::max(residual, std::abs((meet.center - zj).norm() - r));
    double min_sep = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) min_sep = std::min(min_sep, (z[static_cast<std::size_t>(a)] - z[static_cast<std::size_t>(b)]).norm());
    const double margin = std::abs((meet.center - c).norm() - rv);

    std::string reason;
    if (residual > tol.geom * r)
      reason = "residual";
    else if (min_sep <= tol.geom * r)
      reason = "coincident_spheres";
    else if (margin <= tol.circ * rv)
      reason = "on_circumsphere";
    if (!reason.empty()) {
      out.rejected.push_back({p, r, meet.center, reason, margin});
      continue;
    }
    FourCrossing fc;
    fc.radius = r;
    fc.point = meet.center;
    fc.pattern = p;
    fc.interior = contains(s, meet.center, Containment::Open);
    fc.circumsphere_margin = margin;
    fc.max_residual = residual;
    out.accepted.push_back(fc);
  }
  return out;
}

inline bool lex_less(const Point<3>& a, const Point<3>& b) {
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

}  // namespace detail

/// Every four-crossing configuration with radius in [max_j r_j, r_max]: for
/// each of the 16 sign patterns the gap is scanned on a geometric grid (plus
/// the node R = r(V)), sign changes are refined, and tangential zeros are
/// probed separately. Survivors of the residual, distinctness and
/// off-circumsphere tests are deduplicated on (R, O).
inline FourCrossingReport enumerate_four_crossings(const Simplex<3>& s, const EnumerateOptions& opt = {}) {
  const double rv = s.circumradius();
  FourCrossingReport out;
  out.r_max = opt.r_max > 0.0 ? opt.r_max : 8.0 * rv;
  out.grid_n = opt.grid_n;
  if (out.r_max < 2.0 * rv) throw Error(ErrorKind::InvalidArgument, "r_max must be at least 2 r(V)");
  if (opt.grid_n < 2) throw Error(ErrorKind::InvalidArgument, "grid_n must be at least 2");

  double lo = 0.0;
  for (int j = 0; j < 4; ++j) lo = std::max(lo, s.facet(j).circumradius);
  lo *= 1.0 + 1e-9;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(opt.grid_n) + 2);
  const double ratio = std::log(out.r_max / lo);
  for (int k = 0; k <= opt.grid_n; ++k) grid.push_back(lo * std::exp(ratio * k / opt.grid_n));
  grid.push_back(rv);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::array<detail::PatternScan, 16> scans;
  parallel_for(16, opt.threads, [&](std::size_t i) {
    scans[i] = detail::scan_pattern(s, pattern_from_index(static_cast<int>(i)), grid, opt);
  });

  std::vector<FourCrossing> all;
  for (auto& scan : scans) {
    all.insert(all.end(), scan.accepted.begin(), scan.accepted.end());
    out.rejected.insert(out.rejected.end(), scan.rejected.begin(), scan.rejected.end());
    if (scan.degenerate.skipped_nodes > 0 || scan.degenerate.skipped_brackets > 0) out.degeneracies.push_back(scan.degenerate);
  }
  const double same = opt.dedup_rel * rv;
  for (const auto& fc : all) {
    const bool dup = std::ranges::any_of(out.crossings, [&](const FourCrossing& q) {
      return std::abs(q.radius - fc.radius) <= same && (q.point - fc.point).norm() <= same;
    });
    if (!dup) out.crossings.push_back(fc);
  }
  std::vector<RejectedCrossing> rejected;
  for (const auto& rc : out.rejected) {
    const bool dup = std::ranges::any_of(rejected, [&](const RejectedCrossing& q) {
      return q.reason == rc.reason && std::abs(q.radius - rc.radius) <= same && (q.point - rc.point).norm() <= same;
    });
    if (!dup) rejected.push_back(rc);
  }
  out.rejected = std::move(rejected);

  auto by_radius_then_point = [](const auto& a, const auto& b) {
    if (a.radius != b.radius) return a.radius < b.radius;
    return detail::lex_less(a.point, b.point);
  };
  std::ranges::sort(out.crossings, by_radius_then_point);
  std::ranges::sort(out.rejected, by_radius_then_point);
  return out;
}

/// At most one four-crossing point may lie in int(T), and if one does it is
/// the collapse point (R*, O*). Throws UniquenessViolation otherwise.
inline bool verify_interior_uniqueness(std::span<const FourCrossing> candidates, const CriticalResult<3>& crit,
                                       double rel_tol = 1e-9) {
  std::vector<const FourCrossing*> interior;
  for (const auto& fc : candidates)
    if (fc.interior) interior.push_back(&fc);
  auto describe = [](const FourCrossing& fc) {
    std::ostringstream os;
    os.precision(17);
    os << "(R=" << fc.radius << ", O=[" << fc.point.x() << ", " << fc.point.y() << ", " << fc.point.z() << "])";
    return os.str();
  };
  if (interior.size() > 1)
    throw Error(ErrorKind::UniquenessViolation, "two interior four-crossing points " + describe(*interior[0]) + " and " + describe(*interior[1]));
  if (interior.empty()) return true;
  const FourCrossing& fc = *interior.front();
  if (!crit.collapsed || !crit.o_star)
    throw Error(ErrorKind::UniquenessViolation, "interior four-crossing point " + describe(fc) + " but the hulloid does not collapse");
  const double scale = crit.r_star;
  if (std::abs(fc.radius - crit.r_star) > rel_tol * scale || (fc.point - *crit.o_star).norm() > rel_tol * scale) {
    std::ostringstream os;
    os.precision(17);
    os << describe(fc) << " differs from (R*=" << crit.r_star << ", O*=[" << crit.o_star->x() << ", " << crit.o_star->y() << ", "
       << crit.o_star->z() << "])";
    throw Error(ErrorKind::UniquenessViolation, os.str());
  }
  return true;
}

}  // namespace rhulloid
