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

#include "qbpm/ansatz.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <string>

#include "qbpm/error.hpp"
#include "qbpm/rng.hpp"

namespace qbpm {

std::string_view to_string(AnsatzVariant v) noexcept { return v == AnsatzVariant::PQC1 ? "pqc1" : "pqc2"; }

std::string_view to_string(HadamardMode m) noexcept {
    return m == HadamardMode::PerLayer ? "per_layer" : "first_layer_only";
}

AnsatzVariant parse_variant(std::string_view text) {
    if (text == "pqc1" || text == "PQC1") return AnsatzVariant::PQC1;
    if (text == "pqc2" || text == "PQC2") return AnsatzVariant::PQC2;
    throw Error(ErrorKind::Config, "unknown ansatz variant '" + std::string(text) + "'");
}

HadamardMode parse_hadamard_mode(std::string_view text) {
    if (text == "per_layer") return HadamardMode::PerLayer;
    if (text == "first_layer_only") return HadamardMode::FirstLayerOnly;
    throw Error(ErrorKind::Config, "unknown hadamard mode '" + std::string(text) + "'");
}

void AnsatzSpec::validate() const {
    if (n_qubits < 3)
        throw Error(ErrorKind::Structural, "ansatz needs at least 3 qubits for the Toffoli triplets, got " +
                                               std::to_string(n_qubits));
    if (n_qubits > kMaxQubits) throw Error(ErrorKind::Capacity, "ansatz width exceeds simulator limit");
    if (n_layers < 1) throw Error(ErrorKind::Structural, "ansatz needs at least one layer");
}

namespace {

void append_rotation_block(CircuitProgram& prog, int layer, int n, int n_layers, HadamardMode hadamard,
                           std::size_t offset) {
    auto slot = [&](int q, int k) {
        // Offset is a whole circuit's worth of slots, so circuit index 0 here.
        return AngleBinding::param(offset + slot_index(0, layer, q, k, n_layers, n));
    };
    if (hadamard == HadamardMode::PerLayer || layer == 0)
        for (int q = 0; q < n; ++q) prog.push_back(GateOp::make(GateKind::H, {q}));
    for (int q = 0; q < n; ++q) prog.push_back(GateOp::make(GateKind::U3, {q}, {slot(q, 0), slot(q, 1), slot(q, 2)}));
    for (int q = 0; q < n; ++q) prog.push_back(GateOp::make(GateKind::RX, {q}, {slot(q, 0)}));
    for (int q = 0; q < n; ++q) prog.push_back(GateOp::make(GateKind::RY, {q}, {slot(q, 0)}));
}

void append_all_to_all(CircuitProgram& prog, GateKind kind, int n) {
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n; ++j) prog.push_back(GateOp::make(kind, {i, j}));
}

void append_triplets(CircuitProgram& prog, int n) {
    for (int i = 0; i < n; ++i) prog.push_back(GateOp::make(GateKind::CCX, {i, (i + 1) % n, (i + 2) % n}));
}

void append_ring(CircuitProgram& prog, int n) {
    for (int i = 0; i < n; ++i) prog.push_back(GateOp::make(GateKind::CX, {i, (i + 1) % n}));
}

CircuitProgram build(AnsatzVariant variant, int n_qubits, int n_layers, HadamardMode hadamard,
                     std::size_t slot_offset) {
    AnsatzSpec{variant, n_qubits, n_layers, hadamard}.validate();
    CircuitProgram prog(n_qubits);
    for (int l = 0; l < n_layers; ++l) {
        append_rotation_block(prog, l, n_qubits, n_layers, hadamard, slot_offset);
        if (variant == AnsatzVariant::PQC1) {
            append_all_to_all(prog, GateKind::CX, n_qubits);
            append_triplets(prog, n_qubits);
            append_ring(prog, n_qubits);
        } else {
            append_all_to_all(prog, GateKind::CY, n_qubits);
            append_triplets(prog, n_qubits);
        }
    }
    return prog;
}

}  // namespace

CircuitProgram build_pqc1(int n_qubits, int n_layers, HadamardMode hadamard, std::size_t slot_offset) {
    return build(AnsatzVariant::PQC1, n_qubits, n_layers, hadamard, slot_offset);
}

CircuitProgram build_pqc2(int n_qubits, int n_layers, HadamardMode hadamard, std::size_t slot_offset) {
    return build(AnsatzVariant::PQC2, n_qubits, n_layers, hadamard, slot_offset);
}

CircuitProgram build_circuit(const AnsatzSpec& spec, std::size_t slot_offset) {
    return build(spec.variant, spec.n_qubits, spec.n_layers, spec.hadamard, slot_offset);
}

std::vector<double> ParameterTable::flat() const {
    std::vector<double> out(theta);
    out.insert(out.end(), bias.begin(), bias.end());
    return out;
}

void ParameterTable::assign_flat(std::span<const double> values) {
    if (values.size() != trainable_count())
        throw Error(ErrorKind::Usage, "flat parameter vector has " + std::to_string(values.size()) +
                                          " entries, expected " + std::to_string(trainable_count()));
    std::copy(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(theta.size()), theta.begin());
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(theta.size()), values.end(), bias.begin());
}

ParameterTable parameter_layout(const AnsatzSpec& first, const AnsatzSpec& second, int n_classes) {
    first.validate();
    second.validate();
    if (first.n_qubits != second.n_qubits || first.n_layers != second.n_layers)
        throw Error(ErrorKind::Structural, "parallel circuits must share width and depth");
    if (n_classes < 1) throw Error(ErrorKind::Structural, "need at least one class");

    ParameterTable table;
    table.slots_per_circuit = first.slot_count();
    table.theta.assign(2 * table.slots_per_circuit, 0.0);
    table.bias.assign(static_cast<std::size_t>(n_classes), 0.0);
    table.sharing.resize(table.theta.size());

    const AnsatzSpec specs[2] = {first, second};
    for (int c = 0; c < 2; ++c) {
        const CircuitProgram prog = build_circuit(specs[c], static_cast<std::size_t>(c) * table.slots_per_circuit);
        const auto occ = slot_occurrences(prog);
        for (std::size_t slot = 0; slot < occ.size(); ++slot)
            for (const Occurrence& o : occ[slot]) table.sharing[slot].push_back({c, o});
    }
    return table;
}

void initialize_parameters(ParameterTable& table, std::uint64_t seed) {
    Rng rng = make_stream(seed, {0x1417});
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (double& t : table.theta) t = angle(rng);
    std::fill(table.bias.begin(), table.bias.end(), 0.0);
}

}  // namespace qbpm
