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

#include "qbpm/synthetic.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "qbpm/error.hpp"
#include "qbpm/noise.hpp"

namespace qbpm {

SyntheticTask make_synthetic_task(const SyntheticSpec& spec) {
    if (spec.n_classes < 1 || spec.n_features < spec.n_classes + 1 || spec.samples_per_class < 1 || spec.jitter < 0.0)
        throw Error(ErrorKind::Usage, "invalid synthetic task specification");
    const int block = spec.n_features / (spec.n_classes + 1);
    Rng rng = make_stream(spec.seed, {0x5E7});
    std::uniform_real_distribution<double> level(0.5, 1.0);

    SyntheticTask task;
    for (int c = 0; c < spec.n_classes; ++c) {
        std::vector<double> proto(static_cast<std::size_t>(spec.n_features), 0.0);
        for (int j = c * block; j < (c + 1) * block; ++j) proto[static_cast<std::size_t>(j)] = level(rng);
        task.prototypes.push_back(std::move(proto));
        task.dataset.class_names.push_back("class_" + std::to_string(c));
    }
    task.dataset.dims = {1, spec.n_features, 1};
    for (int i = 0; i < spec.samples_per_class; ++i) {
        for (int c = 0; c < spec.n_classes; ++c) {
            std::vector<double> f = task.prototypes[static_cast<std::size_t>(c)];
            for (double& v : f) v = std::clamp(v + gaussian_draw(spec.jitter, rng), 0.0, 1.0);
            task.dataset.samples.push_back(make_sample(std::move(f), c, spec.n_classes));
        }
    }
    return task;
}

}  // namespace qbpm
