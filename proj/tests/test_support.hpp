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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracle/dense.hpp"
#include "qbpm/circuit.hpp"
#include "qbpm/statevector.hpp"

namespace qbpm::testing {

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline Statevector random_state(int n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    double norm = 0.0;
    for (auto& a : amps) {
        a = Complex(g(rng), g(rng));
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return Statevector(n_qubits, std::move(amps));
}

inline std::vector<double> random_angles(std::size_t count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::vector<double> out(count);
    for (auto& v : out) v = u(rng);
    return out;
}

/// Random gate on distinct random wires. Angles bind to fixed literals or to
/// slots in [0, n_slots).
inline GateOp random_gate(int n_qubits, std::size_t n_slots, std::mt19937_64& rng) {
    std::vector<GateKind> kinds{GateKind::H, GateKind::U3, GateKind::RX, GateKind::RY, GateKind::RZ};
    if (n_qubits >= 2) kinds.insert(kinds.end(), {GateKind::CX, GateKind::CY});
    if (n_qubits >= 3) kinds.push_back(GateKind::CCX);
    const GateKind kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
    std::vector<int> wires(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) wires[static_cast<std::size_t>(q)] = q;
    std::shuffle(wires.begin(), wires.end(), rng);
    GateOp op;
    op.kind = kind;
    for (int i = 0; i < qubit_count(kind); ++i) op.qubits[static_cast<std::size_t>(i)] = wires[static_cast<std::size_t>(i)];
    std::uniform_real_distribution<double> angle(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    std::bernoulli_distribution use_slot(0.6);
    std::uniform_int_distribution<std::size_t> slot(0, n_slots == 0 ? 0 : n_slots - 1);
    for (int k = 0; k < angle_count(kind); ++k)
        op.angles[static_cast<std::size_t>(k)] =
            (n_slots > 0 && use_slot(rng)) ? AngleBinding::param(slot(rng)) : AngleBinding::fixed(angle(rng));
    return op;
}

inline CircuitProgram random_program(int n_qubits, std::size_t n_gates, std::size_t n_slots, std::mt19937_64& rng) {
    CircuitProgram p(n_qubits);
    for (std::size_t i = 0; i < n_gates; ++i) p.push_back(random_gate(n_qubits, n_slots, rng));
    return p;
}

inline std::vector<Complex> to_vector(const Statevector& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

}  // namespace qbpm::testing
