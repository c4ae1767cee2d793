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
#include <filesystem>
#include <functional>
#include <vector>

#include "json.hpp"
#include "qbpm/ansatz.hpp"
#include "qbpm/classical_head.hpp"
#include "qbpm/data.hpp"
#include "qbpm/model.hpp"
#include "qbpm/noise.hpp"

namespace qbpm {

struct TrainingConfig {
    int n_qubits = 15;
    int n_layers = 20;
    int n_classes = 3;
    double learning_rate = 0.1;
    double lambda = 0.01;
    int epochs = 15;
    int batch_size = 8;
    std::uint64_t seed = 0;
    NoiseConfig noise;
    std::vector<int> logit_selection;  // empty: ModelSpec::default_selection
    HadamardMode hadamard = HadamardMode::PerLayer;

    // Data preparation.
    ImageDims image_dims{100, 100, 3};
    double train_fraction = 0.67;
    int augment_class = -1;  // < 0 disables minority augmentation
    std::size_t augment_target = 0;

    ModelSpec model_spec() const;

    /// Throws Error(Config). A non-zero feature_length is also checked against 2^n_qubits.
    void validate(std::size_t feature_length = 0) const;
};

/// Unknown keys are rejected. Noise keys live under "noise":
/// {pixel_sigma, pixel_factor, gate_sigma, phase_sigma, modes: ["pixel", "gate", "phase"], seed}.
TrainingConfig config_from_json(const nlohmann::json& doc, TrainingConfig base = {});
nlohmann::json config_to_json(const TrainingConfig& config);
TrainingConfig load_config(const std::filesystem::path& path);

struct EpochRecord {
    int epoch = 0;
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
    double seconds = 0.0;

    bool operator==(const EpochRecord& o) const {
        return epoch == o.epoch && train_loss == o.train_loss && train_accuracy == o.train_accuracy &&
               val_loss == o.val_loss && val_accuracy == o.val_accuracy;
    }
};

struct TrainResult {
    std::vector<EpochRecord> epochs;
    ParameterTable initial;
    ParameterTable params;
    std::size_t optimizer_steps = 0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Seeded initial parameters for config.
ParameterTable initial_parameters(const Model& model, const TrainingConfig& config);

/// Mini-batch Adam on the batch-mean loss gradient. Training accuracy counts the
/// predictions made before each batch's update. Throws Error(Numerical) with the
/// epoch, batch and parameter norm if the loss becomes non-finite.
TrainResult train(const Dataset& train_set, const Dataset& val_set, const TrainingConfig& config,
                  const EpochCallback& on_epoch = {});

/// Argmax predictions, metrics and mean loss (cross-entropy + lambda * ||theta||^2).
/// Gate noise, when enabled, is drawn from streams keyed by sample index, so
/// repeated calls agree.
EvalMetrics evaluate(const Dataset& dataset, const ParameterTable& params, const TrainingConfig& config);
EvalMetrics evaluate(const Dataset& dataset, const ParameterTable& params, const Model& model, double lambda,
                     const NoiseStream& noise = {});

/// Applies pixel noise to every sample once, from per-sample streams.
void apply_pixel_noise(Dataset& dataset, const NoiseConfig& noise);

/// Load, optionally augment the minority class, split, and apply pixel noise.
struct PreparedData {
    Dataset full;
    Split split;
    LoadReport report;
    nlohmann::json manifest;
};
PreparedData prepare_data(const std::filesystem::path& root, const TrainingConfig& config);

void write_epochs_csv(const std::filesystem::path& path, const std::vector<EpochRecord>& epochs);

}  // namespace qbpm
