// Copyright 2026 The QBPM Authors
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
#include <vector>

#include "qbpm/data.hpp"

namespace qbpm {

/// Class c's prototype is non-zero only on feature block c (block width
/// n_features / (n_classes + 1)), with values drawn from U[0.5, 1]. Samples are
/// prototypes plus N(0, jitter^2) on every feature, clamped to [0, 1].
struct SyntheticSpec {
    int n_classes = 3;
    int n_features = 16;
    int samples_per_class = 40;
    double jitter = 0.05;
    std::uint64_t seed = 7;
};

struct SyntheticTask {
    Dataset dataset;
    std::vector<std::vector<double>> prototypes;
};

SyntheticTask make_synthetic_task(const SyntheticSpec& spec);

}  // namespace qbpm
