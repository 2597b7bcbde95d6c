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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "app.hpp"

namespace {

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw rhulloid::Error(rhulloid::ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// "128x64" or a single azimuth count (polar = azimuth / 2).
rhulloid::MeshResolution parse_resolution(const std::string& text) {
  rhulloid::MeshResolution r;
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) {
      r.azimuth = std::stoi(text);
      r.polar = std::max(1, r.azimuth / 2);
    } else {
      r.azimuth = std::stoi(text.substr(0, x));
      r.polar = std::stoi(text.substr(x + 1));
    }
  } catch (const std::exception&) {
    throw rhulloid::Error(rhulloid::ErrorKind::InvalidArgument, "bad --resolution " + text);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"R-hulloid analysis of a triangle or tetrahedron"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rhulloid::kVersion));

  rhulloid::cli::JobSpec job;
  std::string input;
  std::string resolution;
  double rho = 0.0;
  std::uint64_t seed = 0;
  int samples = 200;
  double r_max = 0.0;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"analyze", "circumsphere, facets, critical radius and classification"},
                      {"four-crossing", "enumerate four-crossing radii and points"},
                      {"mesh", "boundary mesh (OBJ) or arc figure (SVG)"},
                      {"member", "membership of the input points"},
                      {"oracle-check", "formula against escape-ball oracle on sampled points"}};
  std::vector<CLI::App*> commands;
  for (const auto& sub : subs) {
    CLI::App* c = app.add_subcommand(sub.name, sub.help);
    c->add_option("input", input, "JSON input file, - for stdin")->required();
    c->add_option("--rho", rho, "radius");
    c->add_option("--rho-list", job.rho_list, "additional radii")->delimiter(',');
    c->add_option("--samples", samples, "sample count");
    c->add_option("--seed", seed, "random seed");
    c->add_option("--resolution", resolution, "mesh resolution, e.g. 128x64");
    c->add_option("--r-max", r_max, "upper radius of the four-crossing scan");
    c->add_option("--output", job.output, "output path");
    c->add_option("--format", job.format, "output format")->check(CLI::IsMember({"json", "obj", "svg"}));
    commands.push_back(c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << rhulloid::dump_json(rhulloid::Json{{"error", "InvalidArgument"}, {"message", e.what()}}, 0);
    return rhulloid::cli::kInputError;
  }

  std::string text;
  for (CLI::App* c : commands) {
    if (!c->parsed()) continue;
    job.command = c->get_name();
    try {
      if (c->count("--rho")) job.rho = rho;
      if (c->count("--r-max")) job.r_max = r_max;
      if (c->count("--resolution")) job.resolution = parse_resolution(resolution);
      job.seed_set = c->count("--seed") > 0;
      job.seed = seed;
      job.samples_set = c->count("--samples") > 0;
      job.samples = samples;
      text = read_all(input);
    } catch (const rhulloid::Error& e) {
      std::cerr << rhulloid::dump_json(rhulloid::Json{{"error", std::string(rhulloid::to_string(e.kind()))}, {"message", e.what()}}, 0);
      return rhulloid::cli::kInputError;
    }
  }
  return rhulloid::cli::run(job, text, std::cout, std::cerr);
}
