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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qbpm/ansatz.hpp"
#include "qbpm/circuit.hpp"
#include "qbpm/classical_head.hpp"
#include "qbpm/noise.hpp"

namespace qbpm {

/// The two parallel circuits plus the fused classical head.
struct Model {
    ModelSpec spec;
    HadamardMode hadamard = HadamardMode::PerLayer;
    std::array<CircuitProgram, 2> circuits;  // PQC1 then PQC2; slots of PQC2 follow PQC1's
};

/// Builds PQC1 and PQC2 for spec. With noise->phase_enabled the programs carry
/// a phase-noise RZ after every multi-qubit gate.
Model build_model(const ModelSpec& spec, HadamardMode hadamard = HadamardMode::PerLayer,
                  const NoiseConfig* noise = nullptr);

/// Zero-valued parameter table matching the model.
ParameterTable make_parameters(const Model& model);

/// Gate-noise source for one unit of work. Inactive unless gate or phase noise is
/// enabled in config; sub-streams are derived from seed by key, never by thread.
struct NoiseStream {
    const NoiseConfig* config = nullptr;
    std::uint64_t seed = 0;

    bool active() const noexcept { return config != nullptr && (config->gate_enabled || config->phase_enabled); }
    Rng stream(std::initializer_list<std::uint64_t> keys) const { return make_stream(seed, keys); }
};

struct ForwardResult {
    std::array<std::vector<double>, 2> expectations;  // <Z_q> of every qubit, per circuit
    std::vector<double> logits;                       // selected + bias
    std::vector<double> probabilities;
};

/// Encode, run both circuits on copies of the encoded state, measure <Z> on
/// every qubit, fuse and softmax. concurrent only changes scheduling; the result
/// is bit-identical either way.
ForwardResult forward(std::span<const double> features, const ParameterTable& params, const Model& model,
                      const NoiseStream& noise = {}, bool concurrent = true);

/// Same with an already encoded input.
ForwardResult forward_encoded(const Statevector& encoded, const ParameterTable& params, const Model& model,
                              const NoiseStream& noise = {}, bool concurrent = true);

}  // namespace qbpm
