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

#include <boost/random/sobol.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "rhulloid/geometry.hpp"

namespace rhulloid {

/// Deterministic Sobol points in [0,1)^D. `skip` offsets the sequence so
/// that different seeds draw disjoint windows of the same sequence.
template <int D>
class SobolSequence {
 public:
  explicit SobolSequence(std::uint64_t skip = 0) : engine_(D) {
    // The first Sobol point is the origin; always skip it.
    engine_.discard(static_cast<std::uintmax_t>(D) * (skip + 1));
  }

  Point<D> next() {
    Point<D> u;
    for (int k = 0; k < D; ++k) u[k] = std::ldexp(static_cast<double>(engine_()), -64);
    return u;
  }

 private:
  boost::random::sobol engine_;
};

/// Maps a point of the unit cube to barycentric weights (uniform on the
/// simplex when the cube point is uniform) via sorted spacings.
template <int D>
std::array<double, D + 1> cube_to_barycentric(const Point<D>& u) {
  std::array<double, D + 2> cuts{};
  cuts[0] = 0.0;
  for (int k = 0; k < D; ++k) cuts[static_cast<std::size_t>(k) + 1] = u[k];
  cuts[D + 1] = 1.0;
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  std::array<double, D + 1> w{};
  for (int k = 0; k <= D; ++k) w[static_cast<std::size_t>(k)] = cuts[static_cast<std::size_t>(k) + 1] - cuts[static_cast<std::size_t>(k)];
  return w;
}

template <int D>
Point<D> from_barycentric(const Simplex<D>& s, const std::array<double, D + 1>& w) {
  Point<D> x = Point<D>::Zero();
  for (int k = 0; k <= D; ++k) x += w[static_cast<std::size_t>(k)] * s.vertex(k);
  return x;
}

template <int D>
Point<D> random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Point<D> v;
  do {
    for (int k = 0; k < D; ++k) v[k] = normal(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

template <int D>
Point<D> random_in_simplex(const Simplex<D>& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point<D> u;
  for (int k = 0; k < D; ++k) u[k] = unit(rng);
  return from_barycentric(s, cube_to_barycentric<D>(u));
}

/// Random proper rotation (Haar measure) from the QR factorisation of a
/// Gaussian matrix.
template <int D>
Eigen::Matrix<double, D, D> random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix<double, D, D> g;
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix<double, D, D>> qr(g);
  Eigen::Matrix<double, D, D> q = qr.householderQ();
  const Eigen::Matrix<double, D, D> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int c = 0; c < D; ++c)
    if (r(c, c) < 0) q.col(c) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace rhulloid
