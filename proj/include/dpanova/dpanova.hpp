// Copyright 2026 The dpanova Authors
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

#include "dpanova/anova.hpp"
#include "dpanova/csv.hpp"
#include "dpanova/dataset.hpp"
#include "dpanova/errors.hpp"
#include "dpanova/mechanism.hpp"
#include "dpanova/null_dist.hpp"
#include "dpanova/parallel.hpp"
#include "dpanova/report.hpp"
#include "dpanova/rng.hpp"
#include "dpanova/simulation.hpp"
#include "dpanova/summation.hpp"
#include "dpanova/version.hpp"
