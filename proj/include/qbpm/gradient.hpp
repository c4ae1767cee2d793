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

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "qbpm/ansatz.hpp"
#include "qbpm/circuit.hpp"
#include "qbpm/data.hpp"
#include "qbpm/model.hpp"

namespace qbpm {

/// Expectations <Z_k> of program applied to input, for k in observable_qubits.
struct GradientRequest {
    const CircuitProgram& program;
    std::span<const double> theta;
    const Statevector& input;
    std::vector<int> observable_qubits;
};

/// Shift for Pauli-rotation generators (phase constant 1/2).
inline constexpr double kParameterShift = std::numbers::pi / 2.0;

/// d<Z_k>/d theta[slot] for every observable k: each gate argument bound to the
/// slot is shifted alone by +-pi/2, 0.5 * (f+ - f-) is taken per argument, and
/// the terms are summed. Throws Error(Binding) if slot is outside theta.
std::vector<double> shift_rule_grad(const GradientRequest& request, std::size_t slot);

/// Shift-rule derivative of the given gate arguments, summed, with an optional
/// noise source for the shifted evaluations.
std::vector<double> shift_rule_grad(const GradientRequest& request, std::span<const Occurrence> occurrences,
                                    const NoiseStream& noise = {});

/// Central difference [f(theta + h) - f(theta - h)] / 2h on theta[slot].
std::vector<double> finite_diff_grad(const GradientRequest& request, std::size_t slot, double h);

struct LossGradient {
    std::vector<double> values;                      // theta slots, then bias
    double loss = 0.0;                               // mean cross-entropy + lambda * ||theta||^2
    std::vector<std::vector<double>> probabilities;  // per sample, before the update
};

/// Batch-mean gradient of cross-entropy + lambda * ||theta||^2 via the chain rule
/// dC/dlogit = p - y and shift-rule derivatives of the selected expectations.
/// Throws Error(Usage) on an empty batch.
LossGradient loss_grad(std::span<const Sample> batch, const ParameterTable& params, const Model& model,
                       double lambda, const NoiseStream& noise = {});

}  // namespace qbpm
