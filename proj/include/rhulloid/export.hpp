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
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "rhulloid/errors.hpp"
#include "rhulloid/geometry.hpp"
#include "rhulloid/hulloid.hpp"

namespace rhulloid {

struct MeshResolution {
  int azimuth = 128;
  int polar = 64;
};

struct MeshPatch {
  std::string name;
  std::vector<Point<3>> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based, local to the patch
};

struct BoundaryMesh {
  double rho = 0.0;
  std::vector<MeshPatch> patches;

  bool empty() const {
    for (const auto& p : patches)
      if (!p.triangles.empty()) return false;
    return true;
  }
};

namespace detail {

// Keeps the triangles whose corners all pass `keep` and compacts the
// vertex list to the ones still referenced.
template <class Keep>
MeshPatch clip_patch(std::string name, const std::vector<Point<3>>& pts, const std::vector<std::array<int, 3>>& tris, Keep&& keep) {
  MeshPatch out;
  out.name = std::move(name);
  std::vector<char> ok(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) ok[k] = keep(pts[k]) ? 1 : 0;
  std::vector<int> remap(pts.size(), -1);
  for (const auto& t : tris) {
    if (!ok[static_cast<std::size_t>(t[0])] || !ok[static_cast<std::size_t>(t[1])] || !ok[static_cast<std::size_t>(t[2])]) continue;
    std::array<int, 3> local{};
    for (int c = 0; c < 3; ++c) {
      int& slot = remap[static_cast<std::size_t>(t[static_cast<std::size_t>(c)])];
      if (slot < 0) {
        slot = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pts[static_cast<std::size_t>(t[static_cast<std::size_t>(c)])]);
      }
      local[static_cast<std::size_t>(c)] = slot;
    }
    out.triangles.push_back(local);
  }
  return out;
}

}  // namespace detail

/// Approximate boundary of the full hulloid at rho: for each supporting
/// sphere a lat-long grid over the cap facing T, plus a grid on each facet
/// triangle, each clipped to T minus the other open balls. Patches that
/// clip to nothing are dropped.
inline BoundaryMesh boundary_mesh(const Simplex<3>& s, double rho, const MeshResolution& res = {}) {
  if (res.azimuth < 3 || res.polar < 1) throw Error(ErrorKind::InvalidArgument, "mesh resolution too small");
  const SupportFamily<3> fam = support_family(s, rho);
  const double eps = s.tolerances().geom * s.diameter();
  BoundaryMesh mesh;
  mesh.rho = rho;

  for (int i = 0; i <= 3; ++i) {
    const FacetData<3>& f = s.facet(i);
    const auto k = static_cast<std::size_t>(i);
    const Point<3> axis = -f.normal;
    Point<3> e1 = f.vertices[0] - f.circumcenter;
    e1 -= e1.dot(axis) * axis;
    e1.normalize();
    const Point<3> e2 = axis.cross(e1);
    const double cap = std::acos(std::clamp(fam.offsets[k] / rho, -1.0, 1.0));

    std::vector<Point<3>> pts;
    std::vector<std::array<int, 3>> tris;
    pts.push_back(fam.centers[k] + rho * axis);
    for (int p = 1; p <= res.polar; ++p) {
      const double theta = cap * p / res.polar;
      for (int a = 0; a < res.azimuth; ++a) {
        const double phi = 2.0 * std::numbers::pi * a / res.azimuth;
        const Point<3> dir = std::cos(theta) * axis + std::sin(theta) * (std::cos(phi) * e1 + std::sin(phi) * e2);
        pts.push_back(fam.centers[k] + rho * dir);
      }
    }
    auto at = [&](int p, int a) { return p == 0 ? 0 : 1 + (p - 1) * res.azimuth + (a % res.azimuth); };
    for (int a = 0; a < res.azimuth; ++a) tris.push_back({at(0, 0), at(1, a), at(1, a + 1)});
    for (int p = 1; p < res.polar; ++p)
      for (int a = 0; a < res.azimuth; ++a) {
        tris.push_back({at(p, a), at(p + 1, a), at(p + 1, a + 1)});
        tris.push_back({at(p, a), at(p + 1, a + 1), at(p, a + 1)});
      }
    auto keep = [&](const Point<3>& x) {
      if (!contains(s, x, Containment::Closed)) return false;
      for (int j = 0; j <= 3; ++j)
        if (j != i && support_margin(s, fam, j, x) < -eps) return false;
      return true;
    };
    MeshPatch patch = detail::clip_patch("sphere_" + std::to_string(i), pts, tris, keep);
    if (!patch.triangles.empty()) mesh.patches.push_back(std::move(patch));
  }

  const int n = res.polar;
  for (int i = 0; i <= 3; ++i) {
    const FacetData<3>& f = s.facet(i);
    std::vector<Point<3>> pts;
    std::vector<std::array<int, 3>> tris;
    auto id = [n](int a, int b) { return a * (n + 1) - a * (a - 1) / 2 + b; };
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        const double u = static_cast<double>(a) / n;
        const double w = static_cast<double>(b) / n;
        pts.push_back((1.0 - u - w) * f.vertices[0] + u * f.vertices[1] + w * f.vertices[2]);
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; a + b < n; ++b) {
        tris.push_back({id(a, b), id(a + 1, b), id(a, b + 1)});
        if (a + b + 1 < n) tris.push_back({id(a + 1, b), id(a + 1, b + 1), id(a, b + 1)});
      }
    auto keep = [&](const Point<3>& x) {
      if (vertex_index(s, x) >= 0) return false;
      for (int j = 0; j <= 3; ++j)
        if (support_margin(s, fam, j, x) < eps) return false;
      return true;
    };
    MeshPatch patch = detail::clip_patch("facet_" + std::to_string(i), pts, tris, keep);
    if (!patch.triangles.empty()) mesh.patches.push_back(std::move(patch));
  }
  return mesh;
}

inline void write_obj(std::ostream& os, const BoundaryMesh& mesh) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "# R-hulloid boundary, rho = %.17g\n", mesh.rho);
  os << buf;
  std::size_t base = 1;
  for (const auto& p : mesh.patches) {
    os << "o " << p.name << '\n';
    for (const auto& v : p.vertices) {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
      os << buf;
    }
    for (const auto& t : p.triangles) os << "f " << base + t[0] << ' ' << base + t[1] << ' ' << base + t[2] << '\n';
    base += p.vertices.size();
  }
}

/// SVG drawing of the planar hulloid: the triangle outline and the
/// boundary arcs, with the y axis pointing up.
inline void write_svg(std::ostream& os, const PlanarHulloid& h) {
  double lo_x = h.vertices[0][0], hi_x = lo_x, lo_y = h.vertices[0][1], hi_y = lo_y;
  for (const auto& v : h.vertices) {
    lo_x = std::min(lo_x, v[0]);
    hi_x = std::max(hi_x, v[0]);
    lo_y = std::min(lo_y, v[1]);
    hi_y = std::max(hi_y, v[1]);
  }
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
  const double w = hi_x - lo_x + 2 * pad, ht = hi_y - lo_y + 2 * pad;
  char buf[512];
  auto fx = [&](double x) { return x; };
  auto fy = [&](double y) { return y == 0.0 ? 0.0 : -y; };
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.9g %.9g %.9g %.9g\" width=\"600\" height=\"%.9g\">\n",
                lo_x - pad, -hi_y - pad, w, ht, 600.0 * ht / w);
  os << buf;
  const double stroke = 0.004 * std::max(w, ht);
  std::snprintf(buf, sizeof buf, "<polygon points=\"%.9g,%.9g %.9g,%.9g %.9g,%.9g\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"%.9g\"/>\n",
                fx(h.vertices[0][0]), fy(h.vertices[0][1]), fx(h.vertices[1][0]), fy(h.vertices[1][1]), fx(h.vertices[2][0]),
                fy(h.vertices[2][1]), stroke);
  os << buf;
  for (const auto& arc : h.arcs) {
    const double span = arc.end_angle - arc.start_angle;
    // Counter-clockwise in the plane is clockwise once y is flipped.
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M %.9g %.9g A %.9g %.9g 0 %d 0 %.9g %.9g\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"%.9g\"/>\n",
                  fx(arc.start[0]), fy(arc.start[1]), arc.radius, arc.radius, span > std::numbers::pi ? 1 : 0, fx(arc.end[0]),
                  fy(arc.end[1]), stroke);
    os << buf;
  }
  for (const auto& v : h.vertices) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.9g\" cy=\"%.9g\" r=\"%.9g\" fill=\"#000000\"/>\n", fx(v[0]), fy(v[1]), 2 * stroke);
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace rhulloid
