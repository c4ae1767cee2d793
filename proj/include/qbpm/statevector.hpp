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

// Basis ordering: qubit q is bit (n_qubits - 1 - q) of the basis index, so the
// ket |q0 q1 ... q(n-1)> reads left to right as a binary number and
// amplitude_encode puts feature j on basis state |j>.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "qbpm/kernels.hpp"

namespace qbpm {

using Complex = std::complex<double>;

enum class GateKind : std::uint8_t { H, U3, RX, RY, RZ, CX, CY, CCX };

int qubit_count(GateKind kind) noexcept;
int angle_count(GateKind kind) noexcept;
std::string_view gate_name(GateKind kind) noexcept;
bool is_parameterized(GateKind kind) noexcept;

/// Where a gate angle comes from when the circuit is evaluated.
struct AngleBinding {
    enum class Source : std::uint8_t {
        Fixed,       // literal value in radians
        Slot,        // theta[slot] of the parameter table
        PhaseNoise,  // drawn from N(0, phase_sigma^2) at evaluation time
    };

    Source source = Source::Fixed;
    double value = 0.0;
    std::size_t slot = 0;

    static constexpr AngleBinding fixed(double radians) noexcept { return {Source::Fixed, radians, 0}; }
    static constexpr AngleBinding param(std::size_t slot) noexcept { return {Source::Slot, 0.0, slot}; }
    static constexpr AngleBinding phase_noise() noexcept { return {Source::PhaseNoise, 0.0, 0}; }

    bool operator==(const AngleBinding&) const = default;
};

/// One gate of a circuit program. Qubits are ordered controls first, target last.
struct GateOp {
    GateKind kind = GateKind::H;
    std::array<int, 3> qubits{};
    std::array<AngleBinding, 3> angles{};

    /// Checks qubit and angle counts against the kind; throws Error(Structural).
    static GateOp make(GateKind kind, std::initializer_list<int> qubits,
                       std::initializer_list<AngleBinding> angles = {});

    int target() const noexcept { return qubits[static_cast<std::size_t>(qubit_count(kind) - 1)]; }
    std::span<const int> wires() const noexcept {
        return {qubits.data(), static_cast<std::size_t>(qubit_count(kind))};
    }
    std::span<const AngleBinding> bindings() const noexcept {
        return {angles.data(), static_cast<std::size_t>(angle_count(kind))};
    }

    bool operator==(const GateOp&) const = default;
};

/// Resolved angles of one gate application; only the first angle_count(kind) are read.
using ResolvedAngles = std::array<double, 3>;

class Statevector {
  public:
    /// |0...0> on n_qubits qubits.
    explicit Statevector(int n_qubits);
    /// Takes ownership of a 2^n_qubits amplitude buffer. No normalization is applied.
    Statevector(int n_qubits, std::vector<Complex> amplitudes);

    static Statevector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    Complex operator[](std::size_t index) const noexcept { return amplitudes_[index]; }

    double norm() const;

  private:
    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Largest register the simulator accepts (2^26 amplitudes, 1 GiB).
inline constexpr int kMaxQubits = 26;

/// amplitudes[j] = features[j] / ||features||, zero-padded to 2^n_qubits.
Statevector amplitude_encode(std::span<const double> features, int n_qubits);

/// 2x2 unitary of a single-qubit kind, or the target operator of a controlled kind.
kernels::Mat2 gate_matrix(GateKind kind, std::span<const double> angles);

/// Throws Error(Structural) if the gate does not fit an n_qubits register.
void validate_gate(const GateOp& gate, int n_qubits);

/// Applies gate in place with the given resolved angles (OpenMP kernels).
void apply_gate(Statevector& state, const GateOp& gate, std::span<const double> angles);

/// Same as apply_gate but through the serial reference kernels.
void apply_gate_serial(Statevector& state, const GateOp& gate, std::span<const double> angles);

double expectation_z(const Statevector& state, int qubit);

/// <Z_q> for every qubit q in register order.
std::vector<double> expectation_z_all(const Statevector& state);

}  // namespace qbpm
