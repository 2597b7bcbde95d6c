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

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rhulloid/errors.hpp"
#include "rhulloid/geometry.hpp"
#include "rhulloid/hulloid.hpp"
#include "rhulloid/parallel.hpp"
#include "rhulloid/search.hpp"

namespace rhulloid {

/// The simplex W spanned by the support centers o_i(rho) and its circumsphere.
template <int D>
struct WSimplex {
  double rho = 0.0;
  std::array<Point<D>, D + 1> centers{};
  Point<D> circumcenter = Point<D>::Zero();
  double circumradius = 0.0;

  /// r(rho) - rho; its zeros are the candidate critical radii.
  double gap() const { return circumradius - rho; }
};

template <int D>
WSimplex<D> w_simplex(const Simplex<D>& s, double rho) {
  const SupportFamily<D> fam = support_family(s, rho);
  WSimplex<D> w;
  w.rho = rho;
  w.centers = fam.centers;
  try {
    const Sphere<D> sw = circumsphere<D>(w.centers, s.tolerances(), rho);
    w.circumcenter = sw.center;
    w.circumradius = sw.radius;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateInput) throw;
    throw Error(ErrorKind::DegenerateCenters, "support centers are affinely dependent at rho = " + std::to_string(rho));
  }
  return w;
}

enum class CriticalCase {
  Collapsed,              // R* > r(V), co_{R*}(V) = V u {O*}
  CircumradiusLimit,      // r_L(V) = r(V)
  NonInteriorFixedPoint,  // r(R) = R has a root but c(W) leaves int(T); R* from sampled fullness
};

constexpr std::string_view to_string(CriticalCase c) {
  switch (c) {
    case CriticalCase::Collapsed: return "collapsed";
    case CriticalCase::CircumradiusLimit: return "circumradius_limit";
    case CriticalCase::NonInteriorFixedPoint: return "non_interior_fixed_point";
  }
  return "unknown";
}

template <int D>
struct CriticalResult {
  CriticalCase kind = CriticalCase::CircumradiusLimit;
  double r_star = 0.0;
  double r_v = 0.0;
  std::optional<Point<D>> o_star;
  bool well_centered = false;
  bool collapsed = false;
  double fixed_point_residual = 0.0;  // |r(R*) - R*| / R*, collapsed case only
  std::optional<double> non_interior_root;
  int sign_changes = 0;

  // Sampled-fullness check around R*: empty interior at R*(1 - delta),
  // nonempty interior at R*(1 + delta).
  bool validation_run = false;
  bool full_below = false;
  bool full_above = false;
  bool validated() const { return validation_run && !full_below && full_above; }
};

struct CriticalOptions {
  double start_factor = 1.0 + 1e-6;
  int grid_steps = 48;
  int steps_per_octave = 8;
  bool validate = true;
  double validation_delta = 1e-3;
  WitnessOptions witness{};
  unsigned threads = 1;
};

namespace detail {

template <int D>
bool full_at(const Simplex<D>& s, double rho, const WitnessOptions& opt) {
  return interior_witness(s, rho, opt).has_value();
}

// Smallest rho in [lo, hi] at which the sampled hulloid becomes full.
template <int D>
double fullness_threshold(const Simplex<D>& s, double lo, double hi, const WitnessOptions& opt) {
  for (int it = 0; it < 200 && hi - lo > 1e-9 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (full_at(s, mid, opt) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

/// Critical radius R* = r_L(V), located as the smallest fixed point of
/// r(rho) = rho on a geometric grid above r(V) and refined to tol.root.
template <int D>
CriticalResult<D> critical_radius(const Simplex<D>& s, const CriticalOptions& opt = {}) {
  const Tolerances& tol = s.tolerances();
  CriticalResult<D> out;
  out.r_v = s.circumradius();
  out.well_centered = is_well_centered(s);

  const std::size_t n = static_cast<std::size_t>(opt.grid_steps) + 1;
  std::vector<double> rho(n), gap(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::optional<Point<D>>> cw(n);
  for (std::size_t k = 0; k < n; ++k)
    rho[k] = out.r_v * opt.start_factor * std::exp2(static_cast<double>(k) / opt.steps_per_octave);
  parallel_for(n, opt.threads, [&](std::size_t k) {
    try {
      const WSimplex<D> w = w_simplex(s, rho[k]);
      gap[k] = w.gap();
      cw[k] = w.circumcenter;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateCenters) throw;
    }
  });

  auto validate = [&](CriticalResult<D>& r) {
    if (!opt.validate) return;
    r.validation_run = true;
    r.full_below = r.r_star * (1.0 - opt.validation_delta) > r.r_v && detail::full_at(s, r.r_star * (1.0 - opt.validation_delta), opt.witness);
    r.full_above = detail::full_at(s, r.r_star * (1.0 + opt.validation_delta), opt.witness);
  };
  auto circumradius_case = [&]() {
    out.kind = CriticalCase::CircumradiusLimit;
    out.r_star = out.r_v;
    out.collapsed = false;
    validate(out);
    return out;
  };

  std::vector<std::size_t> brackets;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (std::isnan(gap[k]) || std::isnan(gap[k + 1])) continue;
    if (gap[k] == 0.0 || (gap[k] < 0.0) != (gap[k + 1] < 0.0)) brackets.push_back(k);
  }
  out.sign_changes = static_cast<int>(brackets.size());

  if (!std::isnan(gap[0]) && gap[0] > 0.0) {
    // c(W) is then outside every supporting ball; inside T it witnesses fullness
    // immediately above r(V).
    if (brackets.empty() || (cw[0] && contains(s, *cw[0], Containment::Open))) return circumradius_case();
  }

  auto gap_at = [&](double r) { return w_simplex(s, r).gap(); };
  for (std::size_t k : brackets) {
    double root = 0.0;
    try {
      root = refine_root(gap_at, rho[k], rho[k + 1], gap[k], gap[k + 1], tol.root);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateCenters) throw;
      continue;
    }
    const WSimplex<D> w = w_simplex(s, root);
    if (contains(s, w.circumcenter, Containment::Open)) {
      out.kind = CriticalCase::Collapsed;
      out.r_star = root;
      out.o_star = w.circumcenter;
      out.collapsed = true;
      out.fixed_point_residual = std::abs(w.gap()) / root;
      validate(out);
      return out;
    }
    if (!out.non_interior_root) out.non_interior_root = root;
  }

  if (out.non_interior_root) {
    const double hi = rho.back();
    if (!detail::full_at(s, hi, opt.witness))
      throw Error(ErrorKind::RootBracketFailure, "hulloid is not full anywhere below rho_max");
    if (detail::full_at(s, rho.front(), opt.witness)) return circumradius_case();
    out.kind = CriticalCase::NonInteriorFixedPoint;
    out.r_star = detail::fullness_threshold(s, rho.front(), hi, opt.witness);
    out.collapsed = false;
    validate(out);
    return out;
  }
  if (!std::isnan(gap[0]) && gap[0] > 0.0) return circumradius_case();
  throw Error(ErrorKind::RootBracketFailure, "no sign change of r(rho) - rho on (r(V), 64 r(V)]");
}

/// Shape of co_rho(V) relative to the critical radius.
template <int D>
HulloidDescription<D> classify(const Simplex<D>& s, double rho, const CriticalResult<D>& crit) {
  if (!(rho > 0.0)) throw Error(ErrorKind::InvalidArgument, "rho must be positive");
  const double tol = s.tolerances().root;
  HulloidDescription<D> out;
  out.rho = rho;
  if (crit.collapsed && std::abs(rho - crit.r_star) <= tol * crit.r_star) {
    out.shape = VerticesPlusPoint<D>{*crit.o_star};
  } else if (rho <= crit.r_star * (1.0 + tol) || rho <= s.circumradius() * (1.0 + s.tolerances().radius)) {
    out.shape = VerticesOnly{};
  } else {
    out.shape = FullHulloid<D>{support_family(s, rho)};
  }
  return out;
}

template <int D>
HulloidDescription<D> classify(const Simplex<D>& s, double rho) {
  CriticalOptions opt;
  opt.validate = false;
  return classify(s, rho, critical_radius(s, opt));
}

}  // namespace rhulloid
