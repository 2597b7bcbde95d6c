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

// Small tour of the library: critical radius, classification, membership
// and the escape-ball cross-check for the trirectangular tetrahedron.

#include <cstdio>

#include "rhulloid/rhulloid.hpp"

int main() {
  using rhulloid::Point;
  const rhulloid::Simplex<3> s({Point<3>(0, 0, 0), Point<3>(1, 0, 0), Point<3>(0, 1, 0), Point<3>(0, 0, 1)});

  const auto crit = rhulloid::critical_radius(s);
  std::printf("r(V) = %.12f  R* = %.12f  (%s, validated: %s)\n", s.circumradius(), crit.r_star,
              std::string(rhulloid::to_string(crit.kind)).c_str(), crit.validated() ? "yes" : "no");
  if (crit.o_star) std::printf("O* = (%.9f, %.9f, %.9f)\n", crit.o_star->x(), crit.o_star->y(), crit.o_star->z());

  for (double rho : {1.0, crit.r_star, 1.2, 2.0}) {
    const auto h = rhulloid::classify(s, rho, crit);
    const char* shape = std::holds_alternative<rhulloid::VerticesOnly>(h.shape)        ? "V"
                        : std::holds_alternative<rhulloid::FullHulloid<3>>(h.shape) ? "full"
                                                                                     : "V + {O*}";
    std::printf("rho = %.6f -> %s\n", rho, shape);
  }

  const Point<3> x(0.15, 0.15, 0.15);
  for (double rho : {1.1, 1.5}) {
    std::printf("x in co_%.1f(V): formula %d, oracle %d\n", rho, rhulloid::membership(s, rho, x),
                rhulloid::oracle_membership(s, rho, x));
  }
  return 0;
}
