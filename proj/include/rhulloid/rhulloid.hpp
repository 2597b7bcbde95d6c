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

#include "rhulloid/errors.hpp"
#include "rhulloid/tolerances.hpp"
#include "rhulloid/geometry.hpp"
#include "rhulloid/sampling.hpp"
#include "rhulloid/search.hpp"
#include "rhulloid/parallel.hpp"
#include "rhulloid/hulloid.hpp"
#include "rhulloid/critical.hpp"
#include "rhulloid/four_crossing.hpp"
#include "rhulloid/rcone.hpp"
#include "rhulloid/oracle.hpp"
