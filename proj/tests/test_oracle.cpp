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
#include "support/oracles.hpp"

using namespace rhulloid;
using ref::P2;
using ref::P3;

namespace {

Simplex<3> tet(const std::array<P3, 4>& v) { return Simplex<3>(v); }

template <int D>
void expect_sound(const Simplex<D>& s, const EscapeBall<D>& b) {
  EXPECT_LT((b.center - b.witness_for).norm(), b.rho);
  for (const auto& v : s.vertices()) EXPECT_GT((b.center - v).norm(), b.rho);
  EXPECT_NEAR(b.clearance, escape_clearance<D>(std::span<const Point<D>>(s.vertices()), b.rho, b.witness_for, b.center), 1e-15);
  EXPECT_GT(b.clearance, 1e-7 * b.rho);
}

}  // namespace

TEST(EscapeBall, NoneAtAVertex) {
  const auto s = tet(ref::trirectangular());
  for (double rho : {0.5, 1.0, 3.0})
    for (const auto& v : s.vertices()) EXPECT_FALSE(find_escape_ball(s, rho, v).has_value());
}

TEST(EscapeBall, FoundForCentroidAtSmallRadius) {
  for (const auto& v : {ref::regular_tetrahedron(), ref::trirectangular(), ref::apex_pyramid()}) {
    const auto s = tet(v);
    for (double f : {0.5, 0.9, 1.0}) {
      const auto b = find_escape_ball(s, f * s.circumradius(), s.centroid());
      ASSERT_TRUE(b.has_value());
      expect_sound(s, *b);
    }
  }
}

TEST(EscapeBall, NoneForRegularCenterAboveCriticalRadius) {
  const auto s = tet(ref::regular_tetrahedron());
  EXPECT_FALSE(find_escape_ball(s, 1.6, s.circumcenter()).has_value());
  EXPECT_TRUE(membership(s, 1.6, s.circumcenter()));
  EXPECT_LT(escape_margin<3>(std::span<const P3>(s.vertices()), 1.6, s.circumcenter()), 0.0);
}

TEST(EscapeBall, SobolStartsAloneFindWitnesses) {
  const auto s = tet(ref::trirectangular());
  OracleOptions opt;
  opt.arrangement_start = false;
  const auto b = find_escape_ball(s, 1.0, P3(0.3, 0.3, 0.3), opt);
  ASSERT_TRUE(b.has_value());
  EXPECT_GE(b->start_index, 0);
  expect_sound(s, *b);
}

TEST(EscapeBall, SoundOnRandomQueries) {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = tet(ref::random_tetrahedron(rng));
    for (int n = 0; n < 40; ++n) {
      const P3 x = random_in_simplex(s, rng);
      const double rho = std::uniform_real_distribution<double>(0.5, 3.0)(rng) * s.circumradius();
      if (const auto b = find_escape_ball(s, rho, x)) expect_sound(s, *b);
    }
  }
}

TEST(EscapeBall, AgreesWithExactMarginAwayFromZero) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 4; ++trial) {
    const auto s = tet(ref::random_tetrahedron(rng));
    const std::span<const P3> v(s.vertices());
    for (int n = 0; n < 60; ++n) {
      const P3 x = random_in_simplex(s, rng);
      const double rho = std::uniform_real_distribution<double>(1.0, 2.5)(rng) * s.circumradius();
      const double m = escape_margin<3>(v, rho, x);
      if (std::abs(m) < 1e-6 * rho) continue;
      EXPECT_EQ(find_escape_ball(s, rho, x).has_value(), m > 0.0) << "margin " << m;
    }
  }
}

TEST(EscapeBall, DeterministicForAFixedSeed) {
  const auto s = tet(ref::trirectangular());
  OracleOptions opt;
  opt.seed = 9;
  const auto a = find_escape_ball(s, 1.0, P3(0.2, 0.3, 0.1), opt);
  opt.threads = 4;
  const auto b = find_escape_ball(s, 1.0, P3(0.2, 0.3, 0.1), opt);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->center, b->center);
  EXPECT_EQ(a->start_index, b->start_index);
}

TEST(FreeSetProjection, NoSampledFreeCenterIsCloser) {
  std::mt19937_64 rng(52);
  const auto s = tet(ref::random_tetrahedron(rng));
  const std::span<const P3> v(s.vertices());
  for (int n = 0; n < 20; ++n) {
    const P3 x = random_in_simplex(s, rng);
    const double rho = 1.3 * s.circumradius();
    const auto proj = project_to_free_set<3>(v, rho, x);
    for (const auto& q : v) EXPECT_GE((proj.point - q).norm(), rho * (1 - 1e-12));
    EXPECT_NEAR((proj.point - x).norm(), proj.distance, 1e-15);
    for (int k = 0; k < 4000; ++k) {
      const P3 z = x + std::uniform_real_distribution<double>(0, 1.2 * proj.distance)(rng) * random_unit_vector<3>(rng);
      bool free = true;
      for (const auto& q : v) free = free && (z - q).norm() >= rho;
      if (free) {
        EXPECT_GE((z - x).norm(), proj.distance * (1 - 1e-12));
      }
    }
  }
}

TEST(OracleMembership, PlanarRightTriangle) {
  const Simplex<2> s({P2(0, 0), P2(1, 0), P2(0, 1)});
  EXPECT_TRUE(oracle_membership(s, 1.0, P2(0, 0)));
  EXPECT_FALSE(oracle_membership(s, 0.7, P2(0.25, 0.25)));
  EXPECT_TRUE(oracle_membership(s, 5.0, P2(0.25, 0.25)));
  EXPECT_FALSE(oracle_membership(s, 5.0, P2(0.5, 0.0)));
}

TEST(BallBounds, HoldForOracleBallsOnRandomTetrahedra) {
  std::mt19937_64 rng(53);
  int applicable = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = tet(ref::random_tetrahedron(rng));
    const double rho = std::uniform_real_distribution<double>(1.001, 3.0)(rng) * s.circumradius();
    const P3 x = random_in_simplex(s, rng);
    const auto b = find_escape_ball(s, rho, x);
    if (!b) continue;
    const auto rep = ball_bounds_check(*b, s);
    EXPECT_TRUE(rep.applicable);
    applicable += rep.applicable ? 1 : 0;
    EXPECT_GT(rep.center_slack, 0.0);
    EXPECT_GT(rep.simplex_slack, 0.0);
    EXPECT_GT(rep.radical_z, 0.0);
    EXPECT_LT(rep.radical_vertex_max, 0.0);
  }
  EXPECT_GT(applicable, 10);
}

TEST(BallBounds, NearCircumradiusStillHold) {
  const auto s = tet(ref::trirectangular());
  const double rho = s.circumradius() * (1.0 + 1e-6);
  const auto b = find_escape_ball(s, rho, P3(0.3, 0.3, 0.3));
  ASSERT_TRUE(b.has_value());
  EXPECT_NO_THROW(ball_bounds_check(*b, s));
}

TEST(BallBounds, BallMissingTIsNotApplicable) {
  const auto s = tet(ref::trirectangular());
  EscapeBall<3> far;
  far.center = P3(10, 10, 10);
  far.rho = 1.0;
  far.witness_for = far.center;
  far.clearance = 1.0;
  EXPECT_FALSE(ball_bounds_check(far, s).applicable);
}

TEST(BallBounds, BallContainingAVertexIsRejected) {
  const auto s = tet(ref::regular_tetrahedron());
  EscapeBall<3> fake;
  fake.rho = 1.2;
  fake.center = P3(0, 0, -0.2);
  fake.witness_for = fake.center;
  try {
    ball_bounds_check(fake, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}
