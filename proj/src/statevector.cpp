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

#include "qbpm/statevector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbpm/error.hpp"

namespace qbpm {

int qubit_count(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CY: return 2;
        case GateKind::CCX: return 3;
        default: return 1;
    }
}

int angle_count(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::U3: return 3;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ: return 1;
        default: return 0;
    }
}

std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::U3: return "U3";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CX: return "CX";
        case GateKind::CY: return "CY";
        case GateKind::CCX: return "CCX";
    }
    return "?";
}

bool is_parameterized(GateKind kind) noexcept { return angle_count(kind) > 0; }

GateOp GateOp::make(GateKind kind, std::initializer_list<int> qubits, std::initializer_list<AngleBinding> angles) {
    if (static_cast<int>(qubits.size()) != qubit_count(kind))
        throw Error(ErrorKind::Structural, std::string(gate_name(kind)) + " expects " +
                                               std::to_string(qubit_count(kind)) + " qubit(s)");
    if (static_cast<int>(angles.size()) != angle_count(kind))
        throw Error(ErrorKind::Structural, std::string(gate_name(kind)) + " expects " +
                                               std::to_string(angle_count(kind)) + " angle(s)");
    GateOp op;
    op.kind = kind;
    std::size_t i = 0;
    for (int q : qubits) op.qubits[i++] = q;
    i = 0;
    for (const AngleBinding& a : angles) op.angles[i++] = a;
    return op;
}

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw Error(ErrorKind::Capacity, "register width must be in [1, " + std::to_string(kMaxQubits) + "]");
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{});
    amplitudes_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw Error(ErrorKind::Capacity, "register width must be in [1, " + std::to_string(kMaxQubits) + "]");
    if (amplitudes_.size() != (std::size_t{1} << n_qubits))
        throw Error(ErrorKind::Structural, "amplitude buffer length must be 2^n_qubits");
}

Statevector Statevector::basis(int n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= s.size()) throw Error(ErrorKind::Structural, "basis index out of range");
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

double Statevector::norm() const { return std::sqrt(kernels::parallel::norm_squared(amplitudes_)); }

Statevector amplitude_encode(std::span<const double> features, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw Error(ErrorKind::Capacity, "register width must be in [1, " + std::to_string(kMaxQubits) + "]");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (features.empty()) throw Error(ErrorKind::EncodingDegenerate, "empty feature vector");
    if (features.size() > dim)
        throw Error(ErrorKind::Capacity, std::to_string(features.size()) + " features exceed 2^" +
                                             std::to_string(n_qubits) + " amplitudes");
    double sum = 0.0;
    for (double f : features) {
        if (!std::isfinite(f)) throw Error(ErrorKind::EncodingDegenerate, "non-finite feature");
        sum += f * f;
    }
    if (sum == 0.0) throw Error(ErrorKind::EncodingDegenerate, "all-zero feature vector");
    const double norm = std::sqrt(sum);
    std::vector<Complex> amps(dim, Complex{});
    for (std::size_t j = 0; j < features.size(); ++j) amps[j] = features[j] / norm;
    return Statevector(n_qubits, std::move(amps));
}

kernels::Mat2 gate_matrix(GateKind kind, std::span<const double> angles) {
    using std::cos, std::sin, std::polar;
    switch (kind) {
        case GateKind::H: {
            const double h = std::numbers::sqrt2 / 2.0;
            return {h, h, h, -h};
        }
        case GateKind::U3: {
            // Generalized Euler rotation U3(theta, phi, lambda).
            const double c = cos(angles[0] / 2.0);
            const double s = sin(angles[0] / 2.0);
            return {c, -polar(s, angles[2]), polar(s, angles[1]), polar(c, angles[1] + angles[2])};
        }
        case GateKind::RX: {
            const double c = cos(angles[0] / 2.0);
            const double s = sin(angles[0] / 2.0);
            return {c, Complex(0.0, -s), Complex(0.0, -s), c};
        }
        case GateKind::RY: {
            const double c = cos(angles[0] / 2.0);
            const double s = sin(angles[0] / 2.0);
            return {c, -s, s, c};
        }
        case GateKind::RZ: {
            const double c = cos(angles[0] / 2.0);
            const double s = sin(angles[0] / 2.0);
            return {Complex(c, -s), 0.0, 0.0, Complex(c, s)};
        }
        case GateKind::CX:
        case GateKind::CCX: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::CY: return {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0};
    }
    throw Error(ErrorKind::Structural, "unknown gate kind");
}

void validate_gate(const GateOp& gate, int n_qubits) {
    const auto wires = gate.wires();
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (wires[i] < 0 || wires[i] >= n_qubits)
            throw Error(ErrorKind::Structural, std::string(gate_name(gate.kind)) + " qubit " +
                                                   std::to_string(wires[i]) + " out of range for " +
                                                   std::to_string(n_qubits) + "-qubit register");
        for (std::size_t j = 0; j < i; ++j)
            if (wires[i] == wires[j])
                throw Error(ErrorKind::Structural, std::string(gate_name(gate.kind)) + " repeats qubit " +
                                                       std::to_string(wires[i]));
    }
}

namespace {

struct SerialBackend {
    static void matrix(std::span<Complex> a, std::uint64_t t, std::uint64_t c, const kernels::Mat2& m) {
        kernels::serial::apply_matrix(a, t, c, m);
    }
    static void x(std::span<Complex> a, std::uint64_t t, std::uint64_t c) { kernels::serial::apply_x(a, t, c); }
    static void y(std::span<Complex> a, std::uint64_t t, std::uint64_t c) { kernels::serial::apply_y(a, t, c); }
    static void diagonal(std::span<Complex> a, std::uint64_t t, std::uint64_t c, Complex d0, Complex d1) {
        kernels::serial::apply_diagonal(a, t, c, d0, d1);
    }
};

struct ParallelBackend {
    static void matrix(std::span<Complex> a, std::uint64_t t, std::uint64_t c, const kernels::Mat2& m) {
        kernels::parallel::apply_matrix(a, t, c, m);
    }
    static void x(std::span<Complex> a, std::uint64_t t, std::uint64_t c) { kernels::parallel::apply_x(a, t, c); }
    static void y(std::span<Complex> a, std::uint64_t t, std::uint64_t c) { kernels::parallel::apply_y(a, t, c); }
    static void diagonal(std::span<Complex> a, std::uint64_t t, std::uint64_t c, Complex d0, Complex d1) {
        kernels::parallel::apply_diagonal(a, t, c, d0, d1);
    }
};

template <class Backend>
void apply_with(Statevector& state, const GateOp& gate, std::span<const double> angles) {
    validate_gate(gate, state.n_qubits());
    if (static_cast<int>(angles.size()) < angle_count(gate.kind))
        throw Error(ErrorKind::Structural, std::string(gate_name(gate.kind)) + " needs " +
                                               std::to_string(angle_count(gate.kind)) + " resolved angle(s)");
    const int n = state.n_qubits();
    const std::uint64_t target = kernels::qubit_mask(n, gate.target());
    std::uint64_t controls = 0;
    const auto wires = gate.wires();
    for (std::size_t i = 0; i + 1 < wires.size(); ++i) controls |= kernels::qubit_mask(n, wires[i]);
    auto amps = state.amplitudes();
    switch (gate.kind) {
        case GateKind::H:
        case GateKind::U3:
        case GateKind::RX:
        case GateKind::RY: Backend::matrix(amps, target, controls, gate_matrix(gate.kind, angles)); break;
        case GateKind::RZ: {
            const double c = std::cos(angles[0] / 2.0);
            const double s = std::sin(angles[0] / 2.0);
            Backend::diagonal(amps, target, controls, Complex(c, -s), Complex(c, s));
            break;
        }
        case GateKind::CX:
        case GateKind::CCX: Backend::x(amps, target, controls); break;
        case GateKind::CY: Backend::y(amps, target, controls); break;
    }
}

}  // namespace

void apply_gate(Statevector& state, const GateOp& gate, std::span<const double> angles) {
    apply_with<ParallelBackend>(state, gate, angles);
}

void apply_gate_serial(Statevector& state, const GateOp& gate, std::span<const double> angles) {
    apply_with<SerialBackend>(state, gate, angles);
}

double expectation_z(const Statevector& state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits())
        throw Error(ErrorKind::Structural, "observable qubit " + std::to_string(qubit) + " out of range");
    return expectation_z_all(state)[static_cast<std::size_t>(qubit)];
}

std::vector<double> expectation_z_all(const Statevector& state) {
    std::vector<double> out(static_cast<std::size_t>(state.n_qubits()));
    kernels::parallel::expectation_z_all(state.amplitudes(), out);
    return out;
}

}  // namespace qbpm
