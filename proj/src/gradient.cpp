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

#include "qbpm/gradient.hpp"

#include <string>

#include "parallel_util.hpp"
#include "qbpm/error.hpp"

namespace qbpm {

namespace {

std::vector<double> observe(const Statevector& state, std::span<const int> qubits) {
    const std::vector<double> all = expectation_z_all(state);
    std::vector<double> out;
    out.reserve(qubits.size());
    for (int q : qubits) {
        if (q < 0 || q >= state.n_qubits())
            throw Error(ErrorKind::Structural, "observable qubit " + std::to_string(q) + " out of range");
        out.push_back(all[static_cast<std::size_t>(q)]);
    }
    return out;
}

// Expectations of every qubit with one argument shifted by delta.
std::vector<double> shifted_expectations(const CircuitProgram& program, std::span<const double> theta,
                                         const Statevector& input, const Occurrence& at, double delta,
                                         const NoiseStream& noise, std::initializer_list<std::uint64_t> keys) {
    EvalContext ctx;
    ctx.shift = EvalContext::Shift{at, delta};
    Rng rng;
    if (noise.active()) {
        rng = noise.stream(keys);
        ctx.noise = noise.config;
        ctx.rng = &rng;
    }
    return expectation_z_all(run_circuit(program, theta, input, ctx));
}

}  // namespace

std::vector<double> shift_rule_grad(const GradientRequest& request, std::span<const Occurrence> occurrences,
                                    const NoiseStream& noise) {
    std::vector<double> grad(request.observable_qubits.size(), 0.0);
    std::uint64_t k = 0;
    for (const Occurrence& o : occurrences) {
        const auto plus = shifted_expectations(request.program, request.theta, request.input, o, kParameterShift,
                                               noise, {k, 0});
        const auto minus = shifted_expectations(request.program, request.theta, request.input, o, -kParameterShift,
                                                noise, {k, 1});
        for (std::size_t i = 0; i < grad.size(); ++i) {
            const auto q = static_cast<std::size_t>(request.observable_qubits[i]);
            if (q >= plus.size()) throw Error(ErrorKind::Structural, "observable qubit out of range");
            grad[i] += 0.5 * (plus[q] - minus[q]);
        }
        ++k;
    }
    return grad;
}

std::vector<double> shift_rule_grad(const GradientRequest& request, std::size_t slot) {
    if (slot >= request.theta.size())
        throw Error(ErrorKind::Binding, "slot " + std::to_string(slot) + " not in a table of " +
                                            std::to_string(request.theta.size()) + " parameters");
    const auto occ = slot_occurrences(request.program);
    if (slot >= occ.size()) return std::vector<double>(request.observable_qubits.size(), 0.0);
    return shift_rule_grad(request, occ[slot]);
}

std::vector<double> finite_diff_grad(const GradientRequest& request, std::size_t slot, double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::Usage, "finite-difference step must be positive");
    if (slot >= request.theta.size())
        throw Error(ErrorKind::Binding, "slot " + std::to_string(slot) + " not in a table of " +
                                            std::to_string(request.theta.size()) + " parameters");
    std::vector<double> theta(request.theta.begin(), request.theta.end());
    theta[slot] = request.theta[slot] + h;
    const auto plus = observe(run_circuit(request.program, theta, request.input), request.observable_qubits);
    theta[slot] = request.theta[slot] - h;
    const auto minus = observe(run_circuit(request.program, theta, request.input), request.observable_qubits);
    std::vector<double> grad(plus.size());
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = (plus[i] - minus[i]) / (2.0 * h);
    return grad;
}

LossGradient loss_grad(std::span<const Sample> batch, const ParameterTable& params, const Model& model,
                       double lambda, const NoiseStream& noise) {
    if (batch.empty()) throw Error(ErrorKind::Usage, "loss gradient needs a non-empty batch");
    const ModelSpec& spec = model.spec;
    const std::size_t B = batch.size();
    const std::size_t C = static_cast<std::size_t>(spec.n_classes);
    const std::size_t n = static_cast<std::size_t>(spec.n_qubits);

    // (class, qubit) pairs read from each circuit.
    std::array<std::vector<std::pair<std::size_t, std::size_t>>, 2> reads;
    for (std::size_t c = 0; c < C; ++c) {
        const auto s = static_cast<std::size_t>(spec.logit_selection[c]);
        if (s < n) reads[0].push_back({c, s});
        else reads[1].push_back({c, s - n});
    }

    // Flattened (circuit, slot, occurrence) tasks in canonical order.
    struct Task {
        int circuit;
        std::size_t slot;
        Occurrence at;
    };
    std::vector<Task> tasks;
    for (int c = 0; c < 2; ++c) {
        if (reads[static_cast<std::size_t>(c)].empty()) continue;
        const auto occ = slot_occurrences(model.circuits[static_cast<std::size_t>(c)]);
        for (std::size_t slot = 0; slot < occ.size(); ++slot) {
            if (!occ[slot].empty() && slot >= params.theta.size())
                throw Error(ErrorKind::Binding, "circuit references slot " + std::to_string(slot) +
                                                    " beyond the parameter table");
            for (const Occurrence& o : occ[slot]) tasks.push_back({c, slot, o});
        }
    }

    std::vector<Statevector> encoded;
    encoded.reserve(B);
    for (const Sample& s : batch) encoded.push_back(amplitude_encode(s.features, spec.n_qubits));

    LossGradient out;
    out.probabilities.resize(B);
    std::vector<std::vector<double>> dlogit(B);
    detail::ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(B); ++i) {
        errors.capture([&] {
            const auto s = static_cast<std::size_t>(i);
            const NoiseStream sample_noise{noise.config, derive_seed(noise.seed, {s, 0xF0})};
            ForwardResult fwd = forward_encoded(encoded[s], params, model, sample_noise, false);
            dlogit[s].resize(C);
            for (std::size_t c = 0; c < C; ++c) dlogit[s][c] = fwd.probabilities[c] - batch[s].one_hot[c];
            out.probabilities[s] = std::move(fwd.probabilities);
        });
    }
    errors.rethrow();

    const std::size_t T = tasks.size();
    std::vector<double> contrib(B * T, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(B * T); ++i) {
        errors.capture([&] {
            const auto idx = static_cast<std::size_t>(i);
            const std::size_t s = idx / T;
            const Task& task = tasks[idx % T];
            const auto ci = static_cast<std::size_t>(task.circuit);
            const CircuitProgram& prog = model.circuits[ci];
            const NoiseStream task_noise{noise.config, derive_seed(noise.seed, {s, 0x5E, idx % T})};
            const auto plus =
                shifted_expectations(prog, params.theta, encoded[s], task.at, kParameterShift, task_noise, {0});
            const auto minus =
                shifted_expectations(prog, params.theta, encoded[s], task.at, -kParameterShift, task_noise, {1});
            double acc = 0.0;
            for (const auto& [cls, q] : reads[ci]) acc += dlogit[s][cls] * 0.5 * (plus[q] - minus[q]);
            contrib[idx] = acc;
        });
    }
    errors.rethrow();

    const std::size_t P = params.theta.size();
    out.values.assign(P + C, 0.0);
    for (std::size_t s = 0; s < B; ++s)
        for (std::size_t t = 0; t < T; ++t) out.values[tasks[t].slot] += contrib[s * T + t];
    double ce = 0.0;
    for (std::size_t s = 0; s < B; ++s) {
        for (std::size_t c = 0; c < C; ++c) out.values[P + c] += dlogit[s][c];
        ce += cross_entropy(out.probabilities[s], batch[s].one_hot, {}, 0.0);
    }
    const double inv_b = 1.0 / static_cast<double>(B);
    for (double& v : out.values) v *= inv_b;
    for (std::size_t p = 0; p < P; ++p) out.values[p] += 2.0 * lambda * params.theta[p];
    out.loss = ce * inv_b + l2_penalty(params.theta, lambda);
    return out;
}

}  // namespace qbpm
