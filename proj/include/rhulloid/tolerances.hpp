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

namespace rhulloid {

/// Numerical thresholds shared by every module. Lengths are relative to the
/// simplex diameter unless stated otherwise.
struct Tolerances {
  double geom = 1e-9;    // equality predicates
  double degen = 1e-10;  // |det(edges)| / max_edge^k below this is degenerate
  double root = 1e-12;   // relative accuracy of refined radii
  double circ = 1e-6;    // relative margin off the circumsphere (four-crossing condition c)
  double clear = 1e-7;   // escape-ball clearance, relative to rho
  double radius = 1e-10; // rho <= r(V) (1 + radius) counts as rho <= r(V)
};

}  // namespace rhulloid
