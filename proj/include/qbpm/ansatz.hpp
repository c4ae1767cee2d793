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
#include <cstdint>
#include <string_view>
#include <vector>

#include "qbpm/circuit.hpp"

namespace qbpm {

enum class AnsatzVariant : std::uint8_t { PQC1, PQC2 };

/// Where the Hadamard column sits: in every layer's rotation block, or in the
/// first layer only.
enum class HadamardMode : std::uint8_t { PerLayer, FirstLayerOnly };

std::string_view to_string(AnsatzVariant v) noexcept;
std::string_view to_string(HadamardMode m) noexcept;
AnsatzVariant parse_variant(std::string_view text);
HadamardMode parse_hadamard_mode(std::string_view text);

struct AnsatzSpec {
    AnsatzVariant variant = AnsatzVariant::PQC1;
    int n_qubits = 15;
    int n_layers = 20;
    HadamardMode hadamard = HadamardMode::PerLayer;

    /// Needs n_qubits >= 3 for the triplet Toffoli ring and n_layers >= 1.
    void validate() const;

    std::size_t slot_count() const noexcept {
        return static_cast<std::size_t>(n_layers) * static_cast<std::size_t>(n_qubits) * 3;
    }
};

/// Flat slot id of theta_{layer, qubit, k} in the given circuit (0 or 1).
/// Ordering is (circuit, layer, qubit, k), k fastest.
constexpr std::size_t slot_index(int circuit, int layer, int qubit, int k, int n_layers, int n_qubits) noexcept {
    return ((static_cast<std::size_t>(circuit) * static_cast<std::size_t>(n_layers) + static_cast<std::size_t>(layer)) *
                static_cast<std::size_t>(n_qubits) +
            static_cast<std::size_t>(qubit)) *
               3 +
           static_cast<std::size_t>(k);
}

/// Per layer: H on every qubit, U3(t0, t1, t2) on every qubit, RX(t0), RY(t0);
/// then CX(i -> j) for all i < j, CCX(i, i+1, i+2 mod n), CX(i, i+1 mod n).
/// Slot references start at slot_offset.
CircuitProgram build_pqc1(int n_qubits, int n_layers, HadamardMode hadamard = HadamardMode::PerLayer,
                          std::size_t slot_offset = 0);

/// Same rotation block as PQC1; entanglement is CY(i -> j) for all i < j then
/// the CCX triplet ring. No CX ring.
CircuitProgram build_pqc2(int n_qubits, int n_layers, HadamardMode hadamard = HadamardMode::PerLayer,
                          std::size_t slot_offset = 0);

CircuitProgram build_circuit(const AnsatzSpec& spec, std::size_t slot_offset = 0);

/// A gate argument in one of the two parallel circuits.
struct SharedOccurrence {
    int circuit = 0;
    Occurrence at;

    bool operator==(const SharedOccurrence&) const = default;
};

/// Trainable state of the two-circuit model: theta for both circuits back to
/// back, then the class bias.
struct ParameterTable {
    std::vector<double> theta;
    std::vector<double> bias;
    /// sharing[slot] lists the gate arguments bound to theta[slot].
    std::vector<std::vector<SharedOccurrence>> sharing;
    std::size_t slots_per_circuit = 0;

    std::size_t trainable_count() const noexcept { return theta.size() + bias.size(); }
    int circuit_of(std::size_t slot) const noexcept { return slot < slots_per_circuit ? 0 : 1; }

    /// theta followed by bias.
    std::vector<double> flat() const;
    void assign_flat(std::span<const double> values);
};

/// Zero-valued table for the circuit pair. Both specs must agree on width and depth.
ParameterTable parameter_layout(const AnsatzSpec& first, const AnsatzSpec& second, int n_classes);

/// theta ~ U[0, 2pi) from a seeded stream, bias = 0.
void initialize_parameters(ParameterTable& table, std::uint64_t seed);

}  // namespace qbpm
