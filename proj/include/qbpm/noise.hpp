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
#include <span>
#include <vector>

#include "qbpm/circuit.hpp"
#include "qbpm/rng.hpp"
#include "qbpm/statevector.hpp"

namespace qbpm {

/// Noise settings. Draws are N(0, 1) scaled by sigma, so a zero sigma still
/// consumes the stream and leaves values bit-for-bit unchanged.
struct NoiseConfig {
    double pixel_sigma = 0.01;
    double pixel_factor = 0.5;  // noisy pixel = clamp(pixel + pixel_factor * N(0, pixel_sigma^2))
    double gate_sigma = 0.01;   // additive angle noise on U3/RX/RY/RZ
    double phase_sigma = 0.01;  // RZ(eps) after every CX/CY/CCX

    bool pixel_enabled = false;
    bool gate_enabled = false;
    bool phase_enabled = false;

    std::uint64_t seed = 0;

    bool any_enabled() const noexcept { return pixel_enabled || gate_enabled || phase_enabled; }

    /// Throws Error(Config) on negative sigmas or factor.
    void validate() const;
};

/// sigma * N(0, 1).
double gaussian_draw(double sigma, Rng& rng);

/// Adds pixel_factor * N(0, pixel_sigma^2) to each value and clamps to [0, 1].
void add_pixel_noise(std::span<double> image, const NoiseConfig& config, Rng& rng);
std::vector<double> add_pixel_noise(std::vector<double> image, const NoiseConfig& config, Rng& rng);

/// Adds an independent N(0, gate_sigma^2) draw to each angle the kind uses.
ResolvedAngles perturb_gate_angles(ResolvedAngles angles, GateKind kind, const NoiseConfig& config, Rng& rng);

/// Copy of program with RZ(noise) on the target qubit right after every
/// CX, CY and CCX. The angle is drawn per evaluation (AngleBinding::phase_noise).
CircuitProgram inject_phase_noise(const CircuitProgram& program, const NoiseConfig& config);

}  // namespace qbpm
