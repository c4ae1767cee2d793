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

#include "qbpm/noise.hpp"

#include <algorithm>
#include <random>

#include "qbpm/error.hpp"

namespace qbpm {

void NoiseConfig::validate() const {
    if (pixel_sigma < 0.0 || gate_sigma < 0.0 || phase_sigma < 0.0)
        throw Error(ErrorKind::Config, "noise sigmas must be non-negative");
    if (pixel_factor < 0.0) throw Error(ErrorKind::Config, "pixel_factor must be non-negative");
}

double gaussian_draw(double sigma, Rng& rng) {
    std::normal_distribution<double> standard(0.0, 1.0);
    return sigma * standard(rng);
}

void add_pixel_noise(std::span<double> image, const NoiseConfig& config, Rng& rng) {
    for (double& v : image) v = std::clamp(v + config.pixel_factor * gaussian_draw(config.pixel_sigma, rng), 0.0, 1.0);
}

std::vector<double> add_pixel_noise(std::vector<double> image, const NoiseConfig& config, Rng& rng) {
    add_pixel_noise(std::span<double>(image), config, rng);
    return image;
}

ResolvedAngles perturb_gate_angles(ResolvedAngles angles, GateKind kind, const NoiseConfig& config, Rng& rng) {
    const int count = angle_count(kind);
    for (int i = 0; i < count; ++i) angles[static_cast<std::size_t>(i)] += gaussian_draw(config.gate_sigma, rng);
    return angles;
}

CircuitProgram inject_phase_noise(const CircuitProgram& program, const NoiseConfig& /*config*/) {
    CircuitProgram out(program.n_qubits());
    for (const GateOp& gate : program.gates()) {
        out.push_back(gate);
        if (gate.kind == GateKind::CX || gate.kind == GateKind::CY || gate.kind == GateKind::CCX)
            out.push_back(GateOp::make(GateKind::RZ, {gate.target()}, {AngleBinding::phase_noise()}));
    }
    return out;
}

}  // namespace qbpm
