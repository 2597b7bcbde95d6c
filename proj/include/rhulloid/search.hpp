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

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "rhulloid/geometry.hpp"
#include "rhulloid/sampling.hpp"

namespace rhulloid {

template <int D>
struct SearchResult {
  Point<D> x;
  double value = 0.0;
  int iterations = 0;
};

struct PatternSearchOptions {
  double initial_step = 1.0;
  double min_step = 1e-14;
  int max_iterations = 200;
  int random_directions = 2;  // extra +/- pairs drawn per iteration
};

/// Derivative-free maximisation by adaptive pattern search. Each poll uses
/// the coordinate directions plus freshly drawn random directions, which
/// keeps the search from stalling on the ridges of max-min objectives.
/// Steps double after a successful poll and halve after a failed one.
template <int D, class F>
SearchResult<D> pattern_maximize(F&& f, Point<D> x, const PatternSearchOptions& opt, std::mt19937_64& rng) {
  double fx = f(x);
  double step = opt.initial_step;
  int it = 0;
  for (; it < opt.max_iterations && step > opt.min_step; ++it) {
    Point<D> best_x = x;
    double best_f = fx;
    auto poll = [&](const Point<D>& dir) {
      for (double sign : {1.0, -1.0}) {
        const Point<D> y = x + sign * step * dir;
        const double fy = f(y);
        if (fy > best_f) {
          best_f = fy;
          best_x = y;
        }
      }
    };
    for (int k = 0; k < D; ++k) poll(Point<D>::Unit(k));
    for (int k = 0; k < opt.random_directions; ++k) poll(random_unit_vector<D>(rng));
    if (best_f > fx) {
      x = best_x;
      fx = best_f;
      step *= 2.0;
    } else {
      step *= 0.5;
    }
  }
  return {x, fx, it};
}

/// Root of f in a sign-changing bracket [a, b], refined until the bracket
/// width is at most rel_tol times its magnitude (TOMS 748).
template <class F>
double refine_root(F&& f, double a, double b, double fa, double fb, double rel_tol, std::uintmax_t max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  auto tol = [rel_tol](double lo, double hi) {
    return std::abs(hi - lo) <= rel_tol * std::min(std::abs(lo), std::abs(hi));
  };
  const auto bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

/// Minimiser of a one-dimensional function on [a, b] (Brent).
template <class F>
std::pair<double, double> minimize_scalar(F&& f, double a, double b) {
  return boost::math::tools::brent_find_minima(f, a, b, 52);
}

}  // namespace rhulloid
