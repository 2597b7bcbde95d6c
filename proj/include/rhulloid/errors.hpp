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

#include <stdexcept>
#include <string>
#include <string_view>

namespace rhulloid {

enum class ErrorKind {
  InvalidArgument,
  DegenerateInput,
  RadiusTooSmall,
  AmbiguousSelection,
  DegenerateCenters,
  RootBracketFailure,
  NonInteriorFixedPoint,
  RadiusBelowFacet,
  UniquenessViolation,
  PropertyViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorKind::AmbiguousSelection: return "AmbiguousSelection";
    case ErrorKind::DegenerateCenters: return "DegenerateCenters";
    case ErrorKind::RootBracketFailure: return "RootBracketFailure";
    case ErrorKind::NonInteriorFixedPoint: return "NonInteriorFixedPoint";
    case ErrorKind::RadiusBelowFacet: return "RadiusBelowFacet";
    case ErrorKind::UniquenessViolation: return "UniquenessViolation";
    case ErrorKind::PropertyViolation: return "PropertyViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rhulloid
