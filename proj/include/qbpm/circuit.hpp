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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbpm/rng.hpp"
#include "qbpm/statevector.hpp"

namespace qbpm {

struct NoiseConfig;

/// One angle argument of one gate in a program.
struct Occurrence {
    std::size_t gate = 0;
    int position = 0;

    bool operator==(const Occurrence&) const = default;
};

/// Ordered gate list over a fixed register width.
class CircuitProgram {
  public:
    CircuitProgram() = default;
    explicit CircuitProgram(int n_qubits);
    CircuitProgram(int n_qubits, std::vector<GateOp> gates);

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<GateOp>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }
    const GateOp& operator[](std::size_t i) const noexcept { return gates_[i]; }

    /// Validates the gate against the register width before appending.
    void push_back(const GateOp& gate);

    bool operator==(const CircuitProgram&) const = default;

  private:
    int n_qubits_ = 0;
    std::vector<GateOp> gates_;
};

/// occurrences[slot] lists every gate argument bound to that slot. The result
/// is sized to the largest referenced slot + 1.
std::vector<std::vector<Occurrence>> slot_occurrences(const CircuitProgram& program);

/// Per-evaluation angle adjustments. None of them touch the parameter vector.
struct EvalContext {
    /// Adds delta to one gate argument after it is resolved (parameter shift).
    struct Shift {
        Occurrence where;
        double delta = 0.0;
    };
    std::optional<Shift> shift;

    /// When set together with rng, enabled gate-noise modes draw from rng in
    /// program order. PhaseNoise bindings resolve to 0 without a config.
    const NoiseConfig* noise = nullptr;
    Rng* rng = nullptr;
};

/// Resolved angles of gates[index]. Throws Error(Binding) on a slot outside theta.
ResolvedAngles resolve_angles(const CircuitProgram& program, std::size_t index, std::span<const double> theta,
                              const EvalContext& ctx = {});

/// Applies the program's gates in order to a copy of input.
Statevector run_circuit(const CircuitProgram& program, std::span<const double> theta, Statevector input,
                        const EvalContext& ctx = {});

/// One gate per line: `KIND q[,q...] [angle...]` where an angle is `t[<slot>]`,
/// `noise` or a decimal literal. A leading `qubits <n>` line carries the width.
std::string to_text(const CircuitProgram& program);
CircuitProgram from_text(std::string_view text);

}  // namespace qbpm
