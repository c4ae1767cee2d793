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

// Brute-force references for tests. Nothing here calls the production gate
// kernels or gate_matrix(): matrices are rebuilt from Pauli operators and
// embedded into the full register with Kronecker products.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qbpm/circuit.hpp"

namespace qbpm::oracle {

using Complex = std::complex<double>;

class DenseMatrix {
  public:
    explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static DenseMatrix identity(std::size_t dim);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
    Complex operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

    DenseMatrix operator*(const DenseMatrix& rhs) const;
    DenseMatrix operator+(const DenseMatrix& rhs) const;
    DenseMatrix operator-(const DenseMatrix& rhs) const;
    DenseMatrix scaled(Complex s) const;
    DenseMatrix adjoint() const;
    std::vector<Complex> apply(std::span<const Complex> v) const;

    /// max |this - other| entrywise.
    double max_abs_diff(const DenseMatrix& other) const;

  private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix pauli_x();
DenseMatrix pauli_y();
DenseMatrix pauli_z();

/// 2x2 operator of a single-qubit gate, or the target operator (X or Y) of a
/// controlled gate. U3 is composed as e^{i(phi+lambda)/2} RZ(phi) RY(theta) RZ(lambda).
DenseMatrix local_operator(GateKind kind, std::span<const double> angles);

/// Full 2^n x 2^n unitary of one gate. Qubit 0 is the leftmost Kronecker factor.
/// Controlled gates use U = I + P1(c1) x ... x (G - I)(target).
DenseMatrix embed(const GateOp& gate, std::span<const double> angles, int n_qubits);

/// Maximum register width the oracle accepts.
inline constexpr int kMaxOracleQubits = 3;

/// Angles of one gate, resolved from scratch. PhaseNoise bindings consume
/// noise_angles in program order; shift adds delta to the named argument.
std::vector<double> oracle_angles(const CircuitProgram& program, std::size_t gate, std::span<const double> theta,
                                  std::span<const double> noise_angles, std::size_t& noise_cursor,
                                  const Occurrence* shift_at = nullptr, double shift_delta = 0.0);

/// Product of embedded unitaries, last gate leftmost. Throws Error(Capacity) for n > 3.
DenseMatrix circuit_unitary(const CircuitProgram& program, std::span<const double> theta,
                            std::span<const double> noise_angles = {});

/// circuit_unitary(program) applied to input.
std::vector<Complex> dense_simulate(const CircuitProgram& program, std::span<const double> theta,
                                    std::span<const Complex> input, std::span<const double> noise_angles = {});

/// <psi| Z_qubit |psi> computed as a matrix element of the embedded Z operator.
double dense_expectation_z(std::span<const Complex> state, int qubit, int n_qubits);

/// One labelled input for the dense loss.
struct DenseSample {
    std::vector<double> features;
    std::vector<double> one_hot;
};

/// Batch-mean cross-entropy of the two-circuit classifier plus lambda ||theta||^2,
/// recomputed from scratch: dense encoding, dense circuits, dense <Z>, selection,
/// bias, softmax. theta spans both circuits.
double dense_loss(const CircuitProgram& first, const CircuitProgram& second, std::span<const int> selection,
                  std::span<const double> theta, std::span<const double> bias, std::span<const DenseSample> batch,
                  double lambda);

/// Central differences of dense_loss over theta then bias, step h.
std::vector<double> dense_loss_gradient(const CircuitProgram& first, const CircuitProgram& second,
                                        std::span<const int> selection, std::span<const double> theta,
                                        std::span<const double> bias, std::span<const DenseSample> batch,
                                        double lambda, double h);

struct ClosedFormReport {
    bool passed = true;
    double max_error = 0.0;
    std::vector<std::string> lines;
};

/// RY cosine derivative, RZ zero-gradient, the two-term shift identity with
/// r = 1/2 at 100 random angles, and global-phase invariance of <Z>. All via the
/// dense oracle, tolerance 1e-10.
ClosedFormReport closed_form_checks(std::uint64_t seed = 2024);

}  // namespace qbpm::oracle
