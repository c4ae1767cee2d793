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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace qbpm {

/// Shape of the fused classifier: which entries of the concatenated
/// [<Z> of circuit 1 | <Z> of circuit 2] vector become class logits.
struct ModelSpec {
    int n_qubits = 15;
    int n_layers = 20;
    int n_classes = 3;
    std::vector<int> logit_selection;

    /// Alternates between the circuits: class c reads qubit c/2 of circuit c%2,
    /// i.e. [0, n, 1] for three classes and [0, n, 1, n+1] for four.
    static std::vector<int> default_selection(int n_qubits, int n_classes);

    /// Distinct indices, each < 2 * n_qubits, one per class. Throws Error(Structural).
    void validate() const;
};

/// out[c] = concat(first, second)[selection[c]] + bias[c].
std::vector<double> fuse_logits(std::span<const double> first, std::span<const double> second,
                                std::span<const int> selection, std::span<const double> bias);

/// Max-shifted softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

/// Probability floor inside the logarithm.
inline constexpr double kProbabilityFloor = 1e-12;

/// lambda * ||theta||^2
double l2_penalty(std::span<const double> theta, double lambda);

/// -sum_i y_i ln(max(p_i, 1e-12)) + lambda * ||theta||^2.
double cross_entropy(std::span<const double> probabilities, std::span<const double> one_hot,
                     std::span<const double> theta, double lambda);

struct AdamState {
    std::vector<double> a;  // first moment
    std::vector<double> b;  // second moment
    std::uint64_t t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double learning_rate = 0.1;

    AdamState() = default;
    explicit AdamState(std::size_t size, double learning_rate = 0.1)
        : a(size, 0.0), b(size, 0.0), learning_rate(learning_rate) {}
};

/// One bias-corrected Adam update of params in place. A non-finite gradient
/// leaves state and params untouched and throws Error(Optimizer).
void adam_step(AdamState& state, std::span<const double> grad, std::span<double> params);

struct EvalMetrics {
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
    std::vector<double> precision;
    std::vector<double> recall;
    std::vector<double> f1;
    std::vector<std::size_t> support;
    double accuracy = 0.0;
    double loss = 0.0;

    std::size_t total() const noexcept;
};

/// Throws Error(Usage) on empty or mismatched input or out-of-range labels.
EvalMetrics compute_metrics(std::span<const int> predictions, std::span<const int> truths, int n_classes);

/// {"classes": [{name, precision, recall, f1, support}...], "confusion": [[...]],
///  "accuracy", "loss", "macro_avg", "weighted_avg"}
nlohmann::json metrics_to_json(const EvalMetrics& metrics, const std::vector<std::string>& class_names = {});

}  // namespace qbpm
