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

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "rhulloid/geometry.hpp"
#include "rhulloid/tolerances.hpp"

namespace rhulloid {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

template <int D>
Json to_json(const Point<D>& p) {
  Json a = Json::array();
  for (int k = 0; k < D; ++k) a.push_back(p[k]);
  return a;
}

inline Json to_json(const Tolerances& t) {
  return Json{{"geom", t.geom}, {"degen", t.degen}, {"root", t.root}, {"circ", t.circ}, {"clear", t.clear}, {"radius", t.radius}};
}

namespace detail {

inline void dump_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void dump(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) {
          out += ',';
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(key).dump();
        out += indent > 0 ? ": " : ":";
        dump(out, value, indent, depth + 1);
      }
      out += nl;
      out += close;
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (coordinates) stay on one line.
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) {
          out += nl;
          out += pad;
        }
        first = false;
        dump(out, e, indent, depth + 1);
      }
      if (!flat) {
        out += nl;
        out += close;
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      dump_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Serializes with every double printed to 17 significant digits, so
/// reports round-trip exactly and repeat byte for byte.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::string out;
  detail::dump(out, j, indent, 0);
  out += '\n';
  return out;
}

}  // namespace rhulloid
