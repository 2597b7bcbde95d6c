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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rhulloid/rhulloid.hpp"

using namespace rhulloid;
using P2 = Point<2>;
using P3 = Point<3>;

TEST(RCone, VertexInBallCentersOut) {
  const RCone<3> c(P3(1, 2, 3), {P3(1, 0, 0), P3(0, 1, 0)}, 2.0);
  EXPECT_TRUE(c.contains(c.vertex()));
  for (const auto& v : c.directions()) EXPECT_FALSE(c.contains(c.vertex() + c.radius() * v));
}

TEST(RCone, SingleDirectionBackwardRay) {
  const P3 v(0, 0, 1);
  const RCone<3> c(P3::Zero(), {v}, 1.0);
  for (double t : {1e-9, 1e-3, 1.0, 100.0}) EXPECT_TRUE(c.contains(-t * v));
  EXPECT_NEAR(c.clearance(-0.5 * v), 0.5, 1e-15);
}

TEST(RCone, ValidatesConstruction) {
  EXPECT_THROW(RCone<2>(P2::Zero(), {P2(1, 0)}, 0.0), Error);
  EXPECT_THROW(RCone<2>(P2::Zero(), {}, 1.0), Error);
  EXPECT_THROW(RCone<2>(P2::Zero(), {P2(2, 0)}, 1.0), Error);
  EXPECT_THROW(RCone<2>(P2::Zero(), {P2(1, 0), P2(1, 0)}, 1.0), Error);
}

TEST(RCone, ScalingInvariance) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<P3> dirs{random_unit_vector<3>(rng), random_unit_vector<3>(rng)};
    const P3 p = random_unit_vector<3>(rng);
    const RCone<3> a(p, dirs, 1.0), b(p, dirs, 7.5);
    for (int k = 0; k < 50; ++k) {
      const P3 off = 2.0 * std::uniform_real_distribution<double>(0, 1)(rng) * random_unit_vector<3>(rng);
      if (std::abs(a.clearance(p + off)) < 1e-9) continue;
      EXPECT_EQ(a.contains(p + off), b.contains(p + 7.5 * off));
    }
  }
}

TEST(DualCone, SingleGenerator) {
  const std::vector<P3> k{P3(1, 0, 0)};
  EXPECT_TRUE(dual_contains<3>(k, P3(1, 0, 0)));
  EXPECT_FALSE(dual_contains<3>(k, P3(-1, 0, 0)));
}

TEST(DualCone, PositiveOctant) {
  const std::vector<P3> k{P3(1, 0, 0), P3(0, 1, 0), P3(0, 0, 1)};
  EXPECT_TRUE(dual_contains<3>(k, P3(1, 1, 1) / std::sqrt(3.0)));
  EXPECT_FALSE(dual_contains<3>(k, P3(1, 1, -1) / std::sqrt(3.0)));
}

TEST(DualCone, HalfSpaceGeneratorsLeaveARay) {
  // The generators span the half-space z >= 0; its dual is the ray along e3.
  const std::vector<P3> k{P3(1, 0, 0), P3(-1, 0, 0), P3(0, 1, 0), P3(0, -1, 0), P3(0, 0, 1)};
  std::mt19937_64 rng(41);
  int inside = 0;
  for (int n = 0; n < 20000; ++n) {
    const P3 y = random_unit_vector<3>(rng);
    // brute force: nonnegative against every generator
    bool brute = true;
    for (const auto& g : k) brute = brute && y.dot(g) >= -1e-9;
    EXPECT_EQ(dual_contains<3>(k, y), brute);
    if (brute) {
      ++inside;
      EXPECT_GT(y.z(), 1.0 - 1e-9);
    }
  }
  EXPECT_EQ(inside, 0);
  EXPECT_TRUE(dual_contains<3>(k, P3(0, 0, 1)));
  EXPECT_FALSE(dual_contains<3>(k, P3(0, 1e-3, 1).normalized()));
}

TEST(DualCone, EmptyGeneratorSetThrows) { EXPECT_THROW(dual_contains<2>(std::vector<P2>{}, P2(1, 0)), Error); }

TEST(TangentCheck, SingleDirectionDeepestInterior) {
  const P3 v(0, 1, 0);
  const RCone<3> c(P3::Zero(), {v}, 1.0);
  const P3 x = 1e-4 * (-v);
  EXPECT_TRUE(c.contains(x));
  EXPECT_TRUE(dual_contains<3>(std::vector<P3>{v}, P3(v)));
  const auto rep = tangent_check(c, 2000, 1e-4, 1);
  EXPECT_EQ(rep.sampled, 2000);
  EXPECT_GT(rep.asserted, 1900);
  EXPECT_GT(rep.interior, 900);
  EXPECT_GT(rep.min_interior_clearance, 0.0);
}

TEST(TangentCheck, OrthogonalTripleNegativeOctant) {
  const RCone<3> c(P3(0.3, -0.2, 0.1), {P3(1, 0, 0), P3(0, 1, 0), P3(0, 0, 1)}, 1.0);
  std::mt19937_64 rng(42);
  for (int n = 0; n < 1000; ++n) {
    const P3 u = -random_unit_vector<3>(rng).cwiseAbs();
    if (u.maxCoeff() > -1e-3) continue;
    const P3 x = c.vertex() + 1e-4 * u;
    EXPECT_TRUE(c.contains(x));
    // direct distance to the three ball centers
    double clear = 1e300;
    for (const auto& v : c.directions()) clear = std::min(clear, (x - (c.vertex() + v)).norm() - 1.0);
    EXPECT_GT(clear, 0.0);
  }
  const auto rep = tangent_check(c, 4000, 1e-4, 2);
  EXPECT_GT(rep.interior, 0);
}

TEST(TangentCheck, DirectionsInsideKLeave) {
  const RCone<3> c(P3::Zero(), {P3(1, 0, 0), P3(0, 1, 0), P3(0, 0, 1)}, 1.0);
  std::mt19937_64 rng(43);
  for (int n = 0; n < 500; ++n) {
    const P3 u = random_unit_vector<3>(rng).cwiseAbs();
    if (u.minCoeff() < 1e-2) continue;
    EXPECT_FALSE(c.contains(1e-4 * u));
  }
}

TEST(TangentCheck, RandomConesPass) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<P2> dirs{random_unit_vector<2>(rng), random_unit_vector<2>(rng)};
    const RCone<2> c(P2(1, -1), dirs, 0.5 + trial);
    EXPECT_NO_THROW(tangent_check(c, 500, 1e-4, static_cast<std::uint64_t>(trial)));
  }
}

TEST(TangentCheck, LargeStepExposesCurvature) {
  // With t comparable to R the first-order relation no longer holds.
  const RCone<2> c(P2::Zero(), {P2(1, 0), P2(0, 1)}, 1.0);
  EXPECT_THROW(tangent_check(c, 2000, 3.0, 5), Error);
}

TEST(CommonPoint, OrthogonalNormals) {
  const P3 p(0.5, 0.5, 0.5);
  const std::vector<Sphere<3>> balls{{p + P3(1, 0, 0), 1.0}, {p + P3(0, 1, 0), 1.0}, {p + P3(0, 0, 1), 1.0}};
  const auto y = find_common_point_witness<3>(balls, p, 1e-3);
  ASSERT_TRUE(y.has_value());
  EXPECT_LT((*y - p).norm(), 1e-3);
  for (const auto& b : balls) EXPECT_GT((*y - b.center).norm(), b.radius);
  EXPECT_TRUE(common_point_nonempty_check<3>(balls, p, 1e-3));
}

TEST(CommonPoint, CoincidentBalls) {
  const P3 p(0, 0, 0);
  const std::vector<Sphere<3>> balls{{P3(0, 0, 2), 2.0}, {P3(0, 0, 2), 2.0}, {P3(2, 0, 0), 2.0}};
  EXPECT_TRUE(common_point_nonempty_check<3>(balls, p, 1e-4));
}

TEST(CommonPoint, OppositeTangentBalls) {
  const P2 p(0, 0);
  const std::vector<Sphere<2>> balls{{P2(1, 0), 1.0}, {P2(-1, 0), 1.0}};
  EXPECT_TRUE(common_point_nonempty_check<2>(balls, p, 1e-3));
}

TEST(CommonPoint, RandomConfigurations) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 30; ++trial) {
    const P3 p = random_unit_vector<3>(rng);
    const double rho = 0.1 + trial;
    std::vector<Sphere<3>> balls;
    for (int j = 0; j < 3; ++j) balls.push_back({p + rho * random_unit_vector<3>(rng), rho});
    EXPECT_TRUE(common_point_nonempty_check<3>(balls, p, 1e-3 * rho, 256, static_cast<std::uint64_t>(trial)));
  }
}

TEST(CommonPoint, MoreThanDBallsIsRejected) {
  // Three normals can positively span the plane; nothing is guaranteed then.
  const std::vector<Sphere<2>> balls{{P2(1, 0), 1.0}, {P2(-0.5, 0.8660254037844386), 1.0}, {P2(-0.5, -0.8660254037844386), 1.0}};
  try {
    common_point_nonempty_check<2>(balls, P2(0, 0), 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(CommonPoint, RejectsPointOffTheSpheres) {
  const std::vector<Sphere<2>> balls{{P2(1, 0), 1.0}, {P2(0, 1), 1.0}};
  EXPECT_THROW(common_point_nonempty_check<2>(balls, P2(0.1, 0.1), 1e-3), Error);
}
