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

// In-place amplitude kernels. Every kernel pairs the basis indices that differ
// only in the target bit and transforms the pair; controls restrict the pairs to
// those whose control bits are all set.
//
// Two implementations are kept side by side:
//   serial::   straight scan over every basis index, the reference used by tests
//   parallel:: OpenMP loop over the 2^(n-1) compressed pair indices
// Per-pair arithmetic is shared, so both produce bit-identical amplitudes.
// Reductions in parallel:: use a fixed block decomposition and are therefore
// independent of the thread count.

#include <complex>
#include <cstdint>
#include <span>

namespace qbpm::kernels {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix [[m00, m01], [m10, m11]].
struct Mat2 {
    Complex m00, m01, m10, m11;
};

/// Amplitudes per block for parallel reductions and the minimum register size
/// at which parallel:: kernels fork threads.
inline constexpr std::uint64_t kReductionBlock = std::uint64_t{1} << 10;
inline constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 12;

/// Bit mask of qubit q: qubit 0 is the most significant bit of the basis index.
constexpr std::uint64_t qubit_mask(int n_qubits, int qubit) noexcept {
    return std::uint64_t{1} << static_cast<unsigned>(n_qubits - 1 - qubit);
}

namespace serial {

void apply_matrix(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, const Mat2& m);
void apply_x(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls);
void apply_y(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls);
void apply_diagonal(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, Complex d0,
                    Complex d1);

/// out[q] = <Z_q> for every qubit; out.size() is the register width.
void expectation_z_all(std::span<const Complex> amps, std::span<double> out);
double norm_squared(std::span<const Complex> amps);

}  // namespace serial

namespace parallel {

void apply_matrix(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, const Mat2& m);
void apply_x(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls);
void apply_y(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls);
void apply_diagonal(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, Complex d0,
                    Complex d1);

void expectation_z_all(std::span<const Complex> amps, std::span<double> out);
double norm_squared(std::span<const Complex> amps);

}  // namespace parallel

}  // namespace qbpm::kernels
