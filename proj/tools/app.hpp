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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rhulloid/export.hpp"
#include "rhulloid/report.hpp"
#include "rhulloid/rhulloid.hpp"

namespace rhulloid::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kDegenerate = 3, kViolation = 4 };

struct JobSpec {
  std::string command;
  std::vector<std::vector<double>> vertices;
  std::optional<double> rho;
  std::vector<double> rho_list;
  std::vector<std::vector<double>> points;
  int samples = 200;
  std::uint64_t seed = 0;
  MeshResolution resolution{};
  std::optional<double> r_max;
  std::string output;
  std::string format;
  bool seed_set = false;     // seed given on the command line
  bool samples_set = false;  // samples given on the command line
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::RadiusTooSmall:
    case ErrorKind::RadiusBelowFacet:
      return kInputError;
    case ErrorKind::DegenerateInput:
    case ErrorKind::DegenerateCenters:
    case ErrorKind::AmbiguousSelection:
    case ErrorKind::RootBracketFailure:
      return kDegenerate;
    case ErrorKind::NonInteriorFixedPoint:
    case ErrorKind::UniquenessViolation:
    case ErrorKind::PropertyViolation:
      return kViolation;
  }
  return kInputError;
}

[[noreturn]] inline void schema_error(const std::string& what) { throw Error(ErrorKind::InvalidArgument, "input: " + what); }

inline std::vector<double> number_list(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) schema_error(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) schema_error(what + " must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline std::vector<std::vector<double>> point_list(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) schema_error(what + " must be an array of points");
  std::vector<std::vector<double>> out;
  for (const auto& e : j) out.push_back(number_list(e, what + " entry"));
  return out;
}

/// Reads {"vertices": [...], "rho"?, "rho_list"?, "points"?, "seed"?,
/// "samples"?} into `job`. Command-line flags are applied afterwards and
/// take precedence.
inline void load_input(const std::string& text, JobSpec& job) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "vertices") {
      job.vertices = point_list(value, "vertices");
    } else if (key == "rho") {
      if (!value.is_number()) schema_error("rho must be a number");
      job.rho = value.get<double>();
    } else if (key == "rho_list") {
      job.rho_list = number_list(value, "rho_list");
    } else if (key == "points") {
      job.points = point_list(value, "points");
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) schema_error("seed must be a nonnegative integer");
      job.seed = value.get<std::uint64_t>();
    } else if (key == "samples") {
      if (!value.is_number_unsigned()) schema_error("samples must be a nonnegative integer");
      job.samples = value.get<int>();
    } else {
      schema_error("unknown key \"" + key + "\"");
    }
  }
  if (job.vertices.empty()) schema_error("missing \"vertices\"");
}

inline int dimension_of(const JobSpec& job) {
  const std::size_t n = job.vertices.size();
  if (n != 3 && n != 4) schema_error("need 3 vertices in the plane or 4 in space");
  const int d = static_cast<int>(n) - 1;
  for (const auto& v : job.vertices)
    if (v.size() != static_cast<std::size_t>(d)) schema_error("every vertex needs " + std::to_string(d) + " coordinates");
  for (const auto& p : job.points)
    if (p.size() != static_cast<std::size_t>(d)) schema_error("every point needs " + std::to_string(d) + " coordinates");
  return d;
}

template <int D>
Point<D> to_point(const std::vector<double>& c) {
  Point<D> p;
  for (int k = 0; k < D; ++k) p[k] = c[static_cast<std::size_t>(k)];
  return p;
}

template <int D>
Simplex<D> make_simplex(const JobSpec& job) {
  typename Simplex<D>::Vertices v;
  for (int i = 0; i <= D; ++i) v[static_cast<std::size_t>(i)] = to_point<D>(job.vertices[static_cast<std::size_t>(i)]);
  return Simplex<D>(v);
}

inline std::vector<double> rho_values(const JobSpec& job) {
  std::vector<double> out;
  if (job.rho) out.push_back(*job.rho);
  out.insert(out.end(), job.rho_list.begin(), job.rho_list.end());
  for (double r : out)
    if (!(r > 0.0) || !std::isfinite(r)) schema_error("rho values must be positive and finite");
  return out;
}

inline Json header(const JobSpec& job) {
  const Tolerances tol{};
  return Json{{"version", kVersion}, {"command", job.command}, {"seed", job.seed}, {"tolerances", to_json(tol)}};
}

template <int D>
Json critical_json(const CriticalResult<D>& c) {
  Json j{{"kind", std::string(to_string(c.kind))},
         {"r_star", c.r_star},
         {"r_v", c.r_v},
         {"r_star_over_r_v", c.r_star / c.r_v},
         {"o_star", c.o_star ? to_json<D>(*c.o_star) : Json(nullptr)},
         {"collapsed", c.collapsed},
         {"well_centered", c.well_centered},
         {"fixed_point_residual", c.fixed_point_residual},
         {"non_interior_root", c.non_interior_root ? Json(*c.non_interior_root) : Json(nullptr)},
         {"sign_changes", c.sign_changes},
         {"validation_run", c.validation_run},
         {"full_below", c.full_below},
         {"full_above", c.full_above},
         {"validated", c.validated()}};
  return j;
}

template <int D>
Json shape_json(const HulloidDescription<D>& h) {
  Json j{{"rho", h.rho}};
  if (std::holds_alternative<VerticesOnly>(h.shape)) {
    j["shape"] = "vertices_only";
  } else if (const auto* p = std::get_if<VerticesPlusPoint<D>>(&h.shape)) {
    j["shape"] = "vertices_plus_point";
    j["o_star"] = to_json<D>(p->o_star);
  } else {
    const auto& full = std::get<FullHulloid<D>>(h.shape);
    j["shape"] = "full";
    Json centers = Json::array();
    for (const auto& c : full.support.centers) centers.push_back(to_json<D>(c));
    j["support_centers"] = centers;
  }
  return j;
}

template <int D>
CriticalOptions critical_options(const JobSpec& job, bool validate) {
  CriticalOptions opt;
  opt.validate = validate;
  opt.threads = thread_budget();
  opt.witness.seed = job.seed;
  return opt;
}

template <int D>
Json cmd_analyze(const JobSpec& job) {
  const Simplex<D> s = make_simplex<D>(job);
  const auto rhos = rho_values(job);
  Json r = header(job);
  r["dimension"] = D;
  Json verts = Json::array();
  for (const auto& v : s.vertices()) verts.push_back(to_json<D>(v));
  r["vertices"] = verts;
  r["circumcenter"] = to_json<D>(s.circumcenter());
  r["circumradius"] = s.circumradius();
  r["well_centered"] = is_well_centered(s);
  Json facets = Json::array();
  for (int i = 0; i <= D; ++i) {
    const auto& f = s.facet(i);
    facets.push_back(Json{{"index", i},
                          {"circumcenter", to_json<D>(f.circumcenter)},
                          {"circumradius", f.circumradius},
                          {"normal", to_json<D>(f.normal)}});
  }
  r["facets"] = facets;
  const auto crit = critical_radius(s, critical_options<D>(job, true));
  r["critical"] = critical_json(crit);
  Json cls = Json::array();
  for (double rho : rhos) cls.push_back(shape_json(classify(s, rho, crit)));
  r["classification"] = cls;
  return r;
}

inline Json cmd_four_crossing(const JobSpec& job) {
  const Simplex<3> s = make_simplex<3>(job);
  EnumerateOptions opt;
  opt.threads = thread_budget();
  if (job.r_max) {
    if (!(*job.r_max > 0.0)) schema_error("--r-max must be positive");
    opt.r_max = *job.r_max;
  }
  const auto rep = enumerate_four_crossings(s, opt);
  const auto crit = critical_radius(s, critical_options<3>(job, false));
  verify_interior_uniqueness(rep.crossings, crit);

  auto pattern_json = [](const SignPattern& p) {
    Json a = Json::array();
    for (int e : p) a.push_back(e);
    return a;
  };
  Json r = header(job);
  r["circumradius"] = s.circumradius();
  Json recs = Json::array();
  int interior = 0;
  for (const auto& fc : rep.crossings) {
    interior += fc.interior ? 1 : 0;
    recs.push_back(Json{{"radius", fc.radius},
                        {"point", to_json<3>(fc.point)},
                        {"pattern", pattern_json(fc.pattern)},
                        {"interior", fc.interior},
                        {"circumsphere_margin", fc.circumsphere_margin},
                        {"max_residual", fc.max_residual}});
  }
  r["count"] = rep.crossings.size();
  r["interior_count"] = interior;
  r["crossings"] = recs;
  Json rejected = Json::array();
  for (const auto& rc : rep.rejected)
    rejected.push_back(Json{{"radius", rc.radius},
                            {"point", to_json<3>(rc.point)},
                            {"pattern", pattern_json(rc.pattern)},
                            {"reason", rc.reason},
                            {"circumsphere_margin", rc.circumsphere_margin}});
  Json degen = Json::array();
  for (const auto& d : rep.degeneracies)
    degen.push_back(Json{{"pattern", pattern_json(d.pattern)}, {"skipped_nodes", d.skipped_nodes}, {"skipped_brackets", d.skipped_brackets}});
  r["diagnostics"] = Json{{"rejected", rejected}, {"degeneracies", degen}, {"r_max", rep.r_max}, {"grid_n", rep.grid_n}};
  r["critical"] = Json{{"r_star", crit.r_star}, {"o_star", crit.o_star ? to_json<3>(*crit.o_star) : Json(nullptr)}, {"collapsed", crit.collapsed}};
  return r;
}

template <int D>
Json cmd_member(const JobSpec& job) {
  const Simplex<D> s = make_simplex<D>(job);
  const auto rhos = rho_values(job);
  if (rhos.empty()) schema_error("member needs --rho or \"rho\"");
  OracleOptions oo;
  oo.seed = job.seed;
  Json r = header(job);
  Json results = Json::array();
  for (double rho : rhos)
    for (const auto& c : job.points) {
      const Point<D> x = to_point<D>(c);
      results.push_back(Json{{"rho", rho},
                             {"point", to_json<D>(x)},
                             {"member", membership(s, rho, x)},
                             {"oracle_member", oracle_membership(s, rho, x, oo)},
                             {"boundary_distance", boundary_distance(s, rho, x)}});
    }
  r["results"] = results;
  return r;
}

template <int D>
Json cmd_oracle_check(const JobSpec& job) {
  const Simplex<D> s = make_simplex<D>(job);
  auto rhos = rho_values(job);
  if (rhos.empty()) rhos.push_back(2.0 * s.circumradius());
  if (job.samples < 0) schema_error("--samples must be nonnegative");
  const double band = 1e-4 * s.diameter();

  Point<D> lo = s.vertex(0), hi = s.vertex(0);
  for (const auto& v : s.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Point<D> pad = 0.1 * (hi - lo);
  lo -= pad;
  hi += pad;
  std::mt19937_64 rng(job.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point<D>> pts;
  for (int k = 0; k < job.samples; ++k) {
    if (k % 2 == 0) {
      pts.push_back(random_in_simplex(s, rng));
    } else {
      Point<D> p;
      for (int c = 0; c < D; ++c) p[c] = lo[c] + (hi[c] - lo[c]) * unit(rng);
      pts.push_back(p);
    }
  }

  Json r = header(job);
  r["samples"] = job.samples;
  r["band"] = band;
  Json per_rho = Json::array();
  for (double rho : rhos) {
    struct Row {
      bool formula = false, oracle = false;
      double dist = 0.0;
    };
    std::vector<Row> rows(pts.size());
    OracleOptions oo;
    oo.seed = job.seed;
    parallel_for(pts.size(), thread_budget(), [&](std::size_t k) {
      rows[k] = {membership(s, rho, pts[k]), oracle_membership(s, rho, pts[k], oo), boundary_distance(s, rho, pts[k])};
    });
    int off = 0, agree_off = 0, agree = 0;
    Json dis = Json::array();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const bool same = rows[k].formula == rows[k].oracle;
      const bool in_band = rows[k].dist <= band;
      agree += same ? 1 : 0;
      if (!in_band) {
        ++off;
        agree_off += same ? 1 : 0;
      }
      if (!same)
        dis.push_back(Json{{"point", to_json<D>(pts[k])},
                           {"member", rows[k].formula},
                           {"oracle_member", rows[k].oracle},
                           {"boundary_distance", rows[k].dist},
                           {"in_band", in_band}});
    }
    per_rho.push_back(Json{{"rho", rho},
                           {"evaluated", pts.size()},
                           {"agreement", pts.empty() ? Json(nullptr) : Json(static_cast<double>(agree) / static_cast<double>(pts.size()))},
                           {"off_boundary", off},
                           {"agreement_off_boundary", off == 0 ? Json(nullptr) : Json(static_cast<double>(agree_off) / off)},
                           {"disagreements", dis}});
  }
  r["results"] = per_rho;
  return r;
}

/// Writes the mesh or figure to `out` (or to job.output) and returns a
/// JSON summary.
template <int D>
Json cmd_mesh(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const Simplex<D> s = make_simplex<D>(job);
  if (!job.rho) schema_error("mesh needs --rho or \"rho\"");
  const double rho = *job.rho;
  std::string format = job.format.empty() ? (D == 3 ? "obj" : "svg") : job.format;
  if ((D == 3 && format == "svg") || (D == 2 && format == "obj")) schema_error("format " + format + " does not fit dimension " + std::to_string(D));

  Json r = header(job);
  r["rho"] = rho;
  std::ostringstream body;
  bool empty = false;
  if constexpr (D == 3) {
    const auto crit = critical_radius(s, critical_options<3>(job, false));
    const auto shape = classify(s, rho, crit);
    if (!std::holds_alternative<FullHulloid<3>>(shape.shape)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "the hulloid has empty interior at this rho (R* = %.17g)", crit.r_star);
      throw Error(ErrorKind::RadiusTooSmall, buf);
    }
    const auto mesh = boundary_mesh(s, rho, job.resolution);
    empty = mesh.empty();
    Json patches = Json::array();
    for (const auto& p : mesh.patches)
      patches.push_back(Json{{"name", p.name}, {"vertices", p.vertices.size()}, {"triangles", p.triangles.size()}});
    r["patches"] = patches;
    if (format == "obj") write_obj(body, mesh);
  } else {
    const auto h = planar_hulloid(s, rho);
    empty = h.arcs.empty();
    Json arcs = Json::array();
    for (const auto& a : h.arcs)
      arcs.push_back(Json{{"edge", a.edge},
                          {"center", to_json<2>(a.center)},
                          {"radius", a.radius},
                          {"start", to_json<2>(a.start)},
                          {"end", to_json<2>(a.end)}});
    r["arcs"] = arcs;
    Json corners = Json::array();
    for (const auto& c : h.corners) corners.push_back(to_json<2>(c));
    r["corners"] = corners;
    if (format == "svg") write_svg(body, h);
  }
  r["empty"] = empty;
  if (empty) err << dump_json(Json{{"warning", "empty boundary at this tolerance"}}, 0);
  if (format == "json") {
    out << dump_json(r);
  } else if (job.output.empty()) {
    out << body.str();
  } else {
    std::ofstream f(job.output, std::ios::binary);
    if (!f) schema_error("cannot write " + job.output);
    f << body.str();
    r["output"] = job.output;
    out << dump_json(r);
  }
  return r;
}

/// Runs one job; reports go to `out`, errors as JSON to `err`.
inline int run(JobSpec job, const std::string& input_text, std::ostream& out, std::ostream& err) {
  try {
    JobSpec file;
    load_input(input_text, file);
    // Flags win over file values.
    job.vertices = file.vertices;
    job.points = file.points;
    if (!job.rho) job.rho = file.rho;
    if (job.rho_list.empty()) job.rho_list = file.rho_list;
    if (!job.seed_set) job.seed = file.seed;
    if (!job.samples_set) job.samples = file.samples;
    const int d = dimension_of(job);
    Json report;
    if (job.command == "analyze") {
      report = d == 2 ? cmd_analyze<2>(job) : cmd_analyze<3>(job);
    } else if (job.command == "four-crossing") {
      if (d != 3) schema_error("four-crossing needs a tetrahedron");
      report = cmd_four_crossing(job);
    } else if (job.command == "member") {
      report = d == 2 ? cmd_member<2>(job) : cmd_member<3>(job);
    } else if (job.command == "oracle-check") {
      report = d == 2 ? cmd_oracle_check<2>(job) : cmd_oracle_check<3>(job);
    } else if (job.command == "mesh") {
      if (d == 2)
        cmd_mesh<2>(job, out, err);
      else
        cmd_mesh<3>(job, out, err);
      return kOk;
    } else {
      schema_error("unknown command " + job.command);
    }
    if (job.output.empty()) {
      out << dump_json(report);
    } else {
      std::ofstream f(job.output, std::ios::binary);
      if (!f) schema_error("cannot write " + job.output);
      f << dump_json(report);
    }
    return kOk;
  } catch (const Error& e) {
    err << dump_json(Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}, 0);
    return exit_code_for(e.kind());
  }
}

}  // namespace rhulloid::cli
