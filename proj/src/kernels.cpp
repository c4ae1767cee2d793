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

#include "qbpm/kernels.hpp"

#include <algorithm>
#include <vector>

#include <omp.h>

namespace qbpm::kernels {
namespace {

// Explicit arithmetic; std::complex operator* routes through the C99 Annex G
// slow path unless -fcx-limited-range is in effect.
inline Complex cmul(Complex a, Complex b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline double abs2(Complex a) noexcept { return a.real() * a.real() + a.imag() * a.imag(); }

inline void matrix_pair(Complex& a0, Complex& a1, const Mat2& m) noexcept {
    const Complex x0 = a0;
    const Complex x1 = a1;
    const Complex p = cmul(m.m00, x0);
    const Complex q = cmul(m.m01, x1);
    const Complex r = cmul(m.m10, x0);
    const Complex s = cmul(m.m11, x1);
    a0 = {p.real() + q.real(), p.imag() + q.imag()};
    a1 = {r.real() + s.real(), r.imag() + s.imag()};
}

inline void x_pair(Complex& a0, Complex& a1) noexcept { std::swap(a0, a1); }

// Y = [[0, -i], [i, 0]]
inline void y_pair(Complex& a0, Complex& a1) noexcept {
    const Complex x0 = a0;
    a0 = {a1.imag(), -a1.real()};
    a1 = {-x0.imag(), x0.real()};
}

inline void diagonal_pair(Complex& a0, Complex& a1, Complex d0, Complex d1) noexcept {
    a0 = cmul(d0, a0);
    a1 = cmul(d1, a1);
}

inline std::uint64_t pair_base(std::uint64_t k, std::uint64_t target) noexcept {
    const std::uint64_t low = k & (target - 1);
    return ((k & ~(target - 1)) << 1) | low;
}

template <class PairOp>
void serial_for_pairs(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, PairOp op) {
    const std::uint64_t dim = amps.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & target) != 0 || (i & controls) != controls) continue;
        op(amps[i], amps[i | target]);
    }
}

// Small registers and nested calls skip the OpenMP runtime entirely; entering a
// parallel region, even a disabled one, costs more than a 16-amplitude gate.
inline bool should_fork(std::uint64_t dim) noexcept { return dim >= kParallelThreshold && !omp_in_parallel(); }

template <class PairOp>
void parallel_for_pairs(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, PairOp op) {
    const std::int64_t half = static_cast<std::int64_t>(amps.size() / 2);
    Complex* data = amps.data();
    if (!should_fork(amps.size())) {
        for (std::int64_t k = 0; k < half; ++k) {
            const std::uint64_t i0 = pair_base(static_cast<std::uint64_t>(k), target);
            if ((i0 & controls) != controls) continue;
            op(data[i0], data[i0 | target]);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = pair_base(static_cast<std::uint64_t>(k), target);
        if ((i0 & controls) != controls) continue;
        op(data[i0], data[i0 | target]);
    }
}

inline void accumulate_z(std::span<const Complex> amps, std::uint64_t begin, std::uint64_t end,
                         std::span<double> acc) {
    const std::size_t n = acc.size();
    for (std::uint64_t j = begin; j < end; ++j) {
        const double p = abs2(amps[j]);
        for (std::size_t q = 0; q < n; ++q) {
            const std::uint64_t mask = std::uint64_t{1} << (n - 1 - q);
            acc[q] += (j & mask) ? -p : p;
        }
    }
}

}  // namespace

namespace serial {

void apply_matrix(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, const Mat2& m) {
    serial_for_pairs(amps, target, controls, [&m](Complex& a0, Complex& a1) { matrix_pair(a0, a1, m); });
}

void apply_x(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls) {
    serial_for_pairs(amps, target, controls, x_pair);
}

void apply_y(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls) {
    serial_for_pairs(amps, target, controls, y_pair);
}

void apply_diagonal(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, Complex d0,
                    Complex d1) {
    serial_for_pairs(amps, target, controls,
                     [d0, d1](Complex& a0, Complex& a1) { diagonal_pair(a0, a1, d0, d1); });
}

void expectation_z_all(std::span<const Complex> amps, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    accumulate_z(amps, 0, amps.size(), out);
}

double norm_squared(std::span<const Complex> amps) {
    double sum = 0.0;
    for (const Complex& a : amps) sum += abs2(a);
    return sum;
}

}  // namespace serial

namespace parallel {

void apply_matrix(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, const Mat2& m) {
    parallel_for_pairs(amps, target, controls, [&m](Complex& a0, Complex& a1) { matrix_pair(a0, a1, m); });
}

void apply_x(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls) {
    parallel_for_pairs(amps, target, controls, x_pair);
}

void apply_y(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls) {
    parallel_for_pairs(amps, target, controls, y_pair);
}

void apply_diagonal(std::span<Complex> amps, std::uint64_t target, std::uint64_t controls, Complex d0,
                    Complex d1) {
    parallel_for_pairs(amps, target, controls,
                       [d0, d1](Complex& a0, Complex& a1) { diagonal_pair(a0, a1, d0, d1); });
}

void expectation_z_all(std::span<const Complex> amps, std::span<double> out) {
    const std::size_t n = out.size();
    const std::uint64_t dim = amps.size();
    const std::int64_t blocks = static_cast<std::int64_t>((dim + kReductionBlock - 1) / kReductionBlock);
    std::vector<double> partial(static_cast<std::size_t>(blocks) * n, 0.0);
    auto block = [&](std::int64_t b) {
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kReductionBlock;
        const std::uint64_t end = std::min(dim, begin + kReductionBlock);
        accumulate_z(amps, begin, end, std::span<double>(partial).subspan(static_cast<std::size_t>(b) * n, n));
    };
    if (should_fork(dim)) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < blocks; ++b) block(b);
    } else {
        for (std::int64_t b = 0; b < blocks; ++b) block(b);
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (std::int64_t b = 0; b < blocks; ++b)
        for (std::size_t q = 0; q < n; ++q) out[q] += partial[static_cast<std::size_t>(b) * n + q];
}

double norm_squared(std::span<const Complex> amps) {
    const std::uint64_t dim = amps.size();
    const std::int64_t blocks = static_cast<std::int64_t>((dim + kReductionBlock - 1) / kReductionBlock);
    std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
    auto block = [&](std::int64_t b) {
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kReductionBlock;
        const std::uint64_t end = std::min(dim, begin + kReductionBlock);
        double sum = 0.0;
        for (std::uint64_t j = begin; j < end; ++j) sum += abs2(amps[j]);
        partial[static_cast<std::size_t>(b)] = sum;
    };
    if (should_fork(dim)) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < blocks; ++b) block(b);
    } else {
        for (std::int64_t b = 0; b < blocks; ++b) block(b);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace parallel

}  // namespace qbpm::kernels
