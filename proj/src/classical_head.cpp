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

#include "qbpm/classical_head.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbpm/error.hpp"

namespace qbpm {

std::vector<int> ModelSpec::default_selection(int n_qubits, int n_classes) {
    std::vector<int> sel;
    sel.reserve(static_cast<std::size_t>(n_classes));
    for (int c = 0; c < n_classes; ++c) sel.push_back((c % 2 == 0) ? c / 2 : n_qubits + c / 2);
    return sel;
}

void ModelSpec::validate() const {
    if (n_classes < 1) throw Error(ErrorKind::Structural, "need at least one class");
    if (static_cast<int>(logit_selection.size()) != n_classes)
        throw Error(ErrorKind::Structural, "logit selection has " + std::to_string(logit_selection.size()) +
                                               " entries for " + std::to_string(n_classes) + " classes");
    for (std::size_t i = 0; i < logit_selection.size(); ++i) {
        const int s = logit_selection[i];
        if (s < 0 || s >= 2 * n_qubits)
            throw Error(ErrorKind::Structural, "logit selection index " + std::to_string(s) + " outside [0, " +
                                                   std::to_string(2 * n_qubits) + ")");
        for (std::size_t j = 0; j < i; ++j)
            if (logit_selection[j] == s)
                throw Error(ErrorKind::Structural, "logit selection repeats index " + std::to_string(s));
    }
}

std::vector<double> fuse_logits(std::span<const double> first, std::span<const double> second,
                                std::span<const int> selection, std::span<const double> bias) {
    if (selection.size() != bias.size())
        throw Error(ErrorKind::Structural, "selection and bias lengths differ");
    const int width = static_cast<int>(first.size() + second.size());
    std::vector<double> out(selection.size());
    for (std::size_t c = 0; c < selection.size(); ++c) {
        const int s = selection[c];
        if (s < 0 || s >= width)
            throw Error(ErrorKind::Structural, "logit selection index " + std::to_string(s) + " out of bounds");
        const double v = (s < static_cast<int>(first.size())) ? first[static_cast<std::size_t>(s)]
                                                              : second[static_cast<std::size_t>(s) - first.size()];
        out[c] = v + bias[c];
    }
    return out;
}

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> p(logits.size());
    if (logits.empty()) return p;
    const double m = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

std::size_t argmax(std::span<const double> values) {
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

double l2_penalty(std::span<const double> theta, double lambda) {
    double sq = 0.0;
    for (double t : theta) sq += t * t;
    return lambda * sq;
}

double cross_entropy(std::span<const double> probabilities, std::span<const double> one_hot,
                     std::span<const double> theta, double lambda) {
    if (probabilities.size() != one_hot.size())
        throw Error(ErrorKind::Usage, "probability and label vectors differ in length");
    double ce = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i)
        if (one_hot[i] != 0.0) ce -= one_hot[i] * std::log(std::max(probabilities[i], kProbabilityFloor));
    return ce + l2_penalty(theta, lambda);
}

void adam_step(AdamState& state, std::span<const double> grad, std::span<double> params) {
    if (grad.size() != params.size() || state.a.size() != params.size() || state.b.size() != params.size())
        throw Error(ErrorKind::Usage, "Adam state, gradient and parameters must have equal length");
    for (std::size_t i = 0; i < grad.size(); ++i)
        if (!std::isfinite(grad[i]))
            throw Error(ErrorKind::Optimizer, "non-finite gradient at index " + std::to_string(i) + " (step " +
                                                  std::to_string(state.t + 1) + ")");
    const double step = static_cast<double>(state.t + 1);
    const double eta = state.learning_rate * std::sqrt(1.0 - std::pow(state.beta2, step)) /
                       (1.0 - std::pow(state.beta1, step));
    for (std::size_t i = 0; i < grad.size(); ++i) {
        state.a[i] = state.beta1 * state.a[i] + (1.0 - state.beta1) * grad[i];
        state.b[i] = state.beta2 * state.b[i] + (1.0 - state.beta2) * grad[i] * grad[i];
        params[i] -= eta * state.a[i] / (std::sqrt(state.b[i]) + state.epsilon);
    }
    ++state.t;
}

std::size_t EvalMetrics::total() const noexcept {
    std::size_t n = 0;
    for (const auto& row : confusion)
        for (std::size_t v : row) n += v;
    return n;
}

EvalMetrics compute_metrics(std::span<const int> predictions, std::span<const int> truths, int n_classes) {
    if (predictions.empty()) throw Error(ErrorKind::Usage, "no predictions to score");
    if (predictions.size() != truths.size())
        throw Error(ErrorKind::Usage, "prediction and truth lists differ in length");
    if (n_classes < 1) throw Error(ErrorKind::Usage, "need at least one class");
    const auto C = static_cast<std::size_t>(n_classes);
    EvalMetrics m;
    m.confusion.assign(C, std::vector<std::size_t>(C, 0));
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const int t = truths[i];
        const int p = predictions[i];
        if (t < 0 || t >= n_classes || p < 0 || p >= n_classes)
            throw Error(ErrorKind::Usage, "label outside [0, " + std::to_string(n_classes) + ")");
        ++m.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }
    m.precision.assign(C, 0.0);
    m.recall.assign(C, 0.0);
    m.f1.assign(C, 0.0);
    m.support.assign(C, 0);
    std::size_t correct = 0;
    for (std::size_t c = 0; c < C; ++c) {
        const std::size_t tp = m.confusion[c][c];
        std::size_t predicted = 0;
        std::size_t actual = 0;
        for (std::size_t k = 0; k < C; ++k) {
            predicted += m.confusion[k][c];
            actual += m.confusion[c][k];
        }
        correct += tp;
        m.support[c] = actual;
        if (predicted > 0) m.precision[c] = static_cast<double>(tp) / static_cast<double>(predicted);
        if (actual > 0) m.recall[c] = static_cast<double>(tp) / static_cast<double>(actual);
        const double denom = m.precision[c] + m.recall[c];
        if (denom > 0.0) m.f1[c] = 2.0 * m.precision[c] * m.recall[c] / denom;
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(predictions.size());
    return m;
}

nlohmann::json metrics_to_json(const EvalMetrics& metrics, const std::vector<std::string>& class_names) {
    using nlohmann::json;
    json classes = json::array();
    const std::size_t C = metrics.precision.size();
    double macro[3] = {0, 0, 0};
    double weighted[3] = {0, 0, 0};
    const double total = static_cast<double>(metrics.total());
    for (std::size_t c = 0; c < C; ++c) {
        const std::string name = c < class_names.size() ? class_names[c] : "class_" + std::to_string(c);
        classes.push_back({{"name", name},
                           {"precision", metrics.precision[c]},
                           {"recall", metrics.recall[c]},
                           {"f1", metrics.f1[c]},
                           {"support", metrics.support[c]}});
        const double w = total > 0 ? static_cast<double>(metrics.support[c]) / total : 0.0;
        macro[0] += metrics.precision[c] / static_cast<double>(C);
        macro[1] += metrics.recall[c] / static_cast<double>(C);
        macro[2] += metrics.f1[c] / static_cast<double>(C);
        weighted[0] += w * metrics.precision[c];
        weighted[1] += w * metrics.recall[c];
        weighted[2] += w * metrics.f1[c];
    }
    return json{{"classes", classes},
                {"confusion", metrics.confusion},
                {"accuracy", metrics.accuracy},
                {"loss", metrics.loss},
                {"samples", metrics.total()},
                {"macro_avg", {{"precision", macro[0]}, {"recall", macro[1]}, {"f1", macro[2]}}},
                {"weighted_avg", {{"precision", weighted[0]}, {"recall", weighted[1]}, {"f1", weighted[2]}}}};
}

}  // namespace qbpm
