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

#include "qbpm/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "parallel_util.hpp"
#include "qbpm/error.hpp"
#include "qbpm/gradient.hpp"

namespace qbpm {

using nlohmann::json;

ModelSpec TrainingConfig::model_spec() const {
    ModelSpec spec{n_qubits, n_layers, n_classes, logit_selection};
    if (spec.logit_selection.empty()) spec.logit_selection = ModelSpec::default_selection(n_qubits, n_classes);
    return spec;
}

void TrainingConfig::validate(std::size_t feature_length) const {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::Config, msg); };
    if (n_qubits < 3 || n_qubits > kMaxQubits) fail("n_qubits must be in [3, " + std::to_string(kMaxQubits) + "]");
    if (n_layers < 1) fail("n_layers must be >= 1");
    if (n_classes < 1 || n_classes > 2 * n_qubits) fail("n_classes must be in [1, 2 * n_qubits]");
    if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
    if (!(lambda >= 0.0)) fail("lambda must be non-negative");
    if (epochs < 1) fail("epochs must be >= 1");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("train_fraction must lie in (0, 1)");
    if (image_dims.height < 1 || image_dims.width < 1) fail("image_dims must be positive");
    noise.validate();
    try {
        model_spec().validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    if (feature_length > 0 && feature_length > (std::size_t{1} << n_qubits))
        fail(std::to_string(feature_length) + " features do not fit in 2^" + std::to_string(n_qubits) +
             " amplitudes");
}

namespace {

NoiseConfig noise_from_json(const json& doc, NoiseConfig cfg) {
    static const std::set<std::string> known{"pixel_sigma", "pixel_factor", "gate_sigma", "phase_sigma", "modes", "seed"};
    for (const auto& [key, _] : doc.items())
        if (!known.contains(key)) throw Error(ErrorKind::Config, "unknown noise key '" + key + "'");
    cfg.pixel_sigma = doc.value("pixel_sigma", cfg.pixel_sigma);
    cfg.pixel_factor = doc.value("pixel_factor", cfg.pixel_factor);
    cfg.gate_sigma = doc.value("gate_sigma", cfg.gate_sigma);
    cfg.phase_sigma = doc.value("phase_sigma", cfg.phase_sigma);
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("modes")) {
        cfg.pixel_enabled = cfg.gate_enabled = cfg.phase_enabled = false;
        for (const auto& m : doc.at("modes")) {
            const auto mode = m.get<std::string>();
            if (mode == "pixel") cfg.pixel_enabled = true;
            else if (mode == "gate") cfg.gate_enabled = true;
            else if (mode == "phase") cfg.phase_enabled = true;
            else throw Error(ErrorKind::Config, "unknown noise mode '" + mode + "'");
        }
    }
    return cfg;
}

json noise_to_json(const NoiseConfig& cfg) {
    json modes = json::array();
    if (cfg.pixel_enabled) modes.push_back("pixel");
    if (cfg.gate_enabled) modes.push_back("gate");
    if (cfg.phase_enabled) modes.push_back("phase");
    return json{{"pixel_sigma", cfg.pixel_sigma}, {"pixel_factor", cfg.pixel_factor}, {"gate_sigma", cfg.gate_sigma},
                {"phase_sigma", cfg.phase_sigma}, {"modes", modes},                   {"seed", cfg.seed}};
}

}  // namespace

TrainingConfig config_from_json(const json& doc, TrainingConfig cfg) {
    static const std::set<std::string> known{
        "n_qubits", "n_layers",   "n_classes",      "learning_rate", "lambda",        "epochs",
        "batch_size", "seed",     "noise",          "logit_selection", "hadamard",    "image_dims",
        "train_fraction", "augment_class", "augment_target"};
    if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
    try {
        for (const auto& [key, _] : doc.items())
            if (!known.contains(key)) throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
        cfg.n_qubits = doc.value("n_qubits", cfg.n_qubits);
        cfg.n_layers = doc.value("n_layers", cfg.n_layers);
        cfg.n_classes = doc.value("n_classes", cfg.n_classes);
        cfg.learning_rate = doc.value("learning_rate", cfg.learning_rate);
        cfg.lambda = doc.value("lambda", cfg.lambda);
        cfg.epochs = doc.value("epochs", cfg.epochs);
        cfg.batch_size = doc.value("batch_size", cfg.batch_size);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.logit_selection = doc.value("logit_selection", cfg.logit_selection);
        if (doc.contains("hadamard")) cfg.hadamard = parse_hadamard_mode(doc.at("hadamard").get<std::string>());
        if (doc.contains("image_dims")) {
            const auto dims = doc.at("image_dims").get<std::vector<int>>();
            if (dims.size() != 2) throw Error(ErrorKind::Config, "image_dims must be [height, width]");
            cfg.image_dims = {dims[0], dims[1], 3};
        }
        cfg.train_fraction = doc.value("train_fraction", cfg.train_fraction);
        cfg.augment_class = doc.value("augment_class", cfg.augment_class);
        cfg.augment_target = doc.value("augment_target", cfg.augment_target);
        if (doc.contains("noise")) cfg.noise = noise_from_json(doc.at("noise"), cfg.noise);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Config, e.what());
    }
    return cfg;
}

json config_to_json(const TrainingConfig& c) {
    return json{{"n_qubits", c.n_qubits},
                {"n_layers", c.n_layers},
                {"n_classes", c.n_classes},
                {"learning_rate", c.learning_rate},
                {"lambda", c.lambda},
                {"epochs", c.epochs},
                {"batch_size", c.batch_size},
                {"seed", c.seed},
                {"noise", noise_to_json(c.noise)},
                {"logit_selection", c.model_spec().logit_selection},
                {"hadamard", std::string(to_string(c.hadamard))},
                {"image_dims", {c.image_dims.height, c.image_dims.width}},
                {"train_fraction", c.train_fraction},
                {"augment_class", c.augment_class},
                {"augment_target", c.augment_target}};
}

TrainingConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot open config " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Config, path.string() + ": " + e.what());
    }
    return config_from_json(doc);
}

ParameterTable initial_parameters(const Model& model, const TrainingConfig& config) {
    ParameterTable table = make_parameters(model);
    initialize_parameters(table, config.seed);
    return table;
}

EvalMetrics evaluate(const Dataset& dataset, const ParameterTable& params, const Model& model, double lambda,
                     const NoiseStream& noise) {
    if (dataset.samples.empty()) throw Error(ErrorKind::Usage, "cannot evaluate an empty dataset");
    const std::size_t N = dataset.samples.size();
    std::vector<int> predictions(N);
    std::vector<int> truths(N);
    std::vector<double> losses(N);
    detail::ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(N); ++i) {
        errors.capture([&] {
            const auto k = static_cast<std::size_t>(i);
            const Sample& s = dataset.samples[k];
            const NoiseStream sample_noise{noise.config, derive_seed(noise.seed, {k})};
            const ForwardResult fwd = forward(s.features, params, model, sample_noise, false);
            predictions[k] = static_cast<int>(argmax(fwd.probabilities));
            truths[k] = s.label;
            losses[k] = cross_entropy(fwd.probabilities, s.one_hot, {}, 0.0);
        });
    }
    errors.rethrow();
    EvalMetrics m = compute_metrics(predictions, truths, model.spec.n_classes);
    m.loss = std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(N) +
             l2_penalty(params.theta, lambda);
    return m;
}

EvalMetrics evaluate(const Dataset& dataset, const ParameterTable& params, const TrainingConfig& config) {
    config.validate(dataset.dims.size());
    const Model model = build_model(config.model_spec(), config.hadamard, &config.noise);
    const NoiseStream noise{&config.noise, derive_seed(config.noise.seed, {0xE7A1})};
    return evaluate(dataset, params, model, config.lambda, noise);
}

TrainResult train(const Dataset& train_set, const Dataset& val_set, const TrainingConfig& config,
                  const EpochCallback& on_epoch) {
    if (train_set.samples.empty() || val_set.samples.empty())
        throw Error(ErrorKind::Usage, "training needs non-empty train and validation sets");
    config.validate(train_set.samples.front().features.size());
    const Model model = build_model(config.model_spec(), config.hadamard, &config.noise);
    const NoiseStream eval_noise{&config.noise, derive_seed(config.noise.seed, {0xE7A1})};

    TrainResult result;
    result.initial = initial_parameters(model, config);
    result.params = result.initial;
    AdamState adam(result.params.trainable_count(), config.learning_rate);
    std::vector<double> flat = result.params.flat();

    const std::size_t N = train_set.samples.size();
    const auto batch_size = static_cast<std::size_t>(config.batch_size);
    std::vector<std::size_t> order(N);
    std::vector<Sample> batch;
    batch.reserve(batch_size);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const auto start = std::chrono::steady_clock::now();
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng shuffle_rng = make_stream(config.seed, {0x5407, static_cast<std::uint64_t>(epoch)});
        std::shuffle(order.begin(), order.end(), shuffle_rng);

        double loss_sum = 0.0;
        std::size_t correct = 0;
        std::size_t b = 0;
        for (std::size_t begin = 0; begin < N; begin += batch_size, ++b) {
            batch.clear();
            for (std::size_t k = begin; k < std::min(N, begin + batch_size); ++k)
                batch.push_back(train_set.samples[order[k]]);
            const NoiseStream noise{&config.noise, derive_seed(config.noise.seed, {0x7A, static_cast<std::uint64_t>(epoch), b})};
            const LossGradient g = loss_grad(batch, result.params, model, config.lambda, noise);
            if (!std::isfinite(g.loss)) {
                std::ostringstream msg;
                msg << "non-finite loss at epoch " << epoch << ", batch " << b << ", |theta| = "
                    << std::sqrt(l2_penalty(result.params.theta, 1.0));
                throw Error(ErrorKind::Numerical, msg.str());
            }
            loss_sum += g.loss * static_cast<double>(batch.size());
            for (std::size_t s = 0; s < batch.size(); ++s)
                if (static_cast<int>(argmax(g.probabilities[s])) == batch[s].label) ++correct;
            adam_step(adam, g.values, flat);
            result.params.assign_flat(flat);
            ++result.optimizer_steps;
        }

        const EvalMetrics val = evaluate(val_set, result.params, model, config.lambda, eval_noise);
        EpochRecord rec;
        rec.epoch = epoch + 1;
        rec.train_loss = loss_sum / static_cast<double>(N);
        rec.train_accuracy = static_cast<double>(correct) / static_cast<double>(N);
        rec.val_loss = val.loss;
        rec.val_accuracy = val.accuracy;
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.epochs.push_back(rec);
        if (on_epoch) on_epoch(rec);
    }
    return result;
}

void apply_pixel_noise(Dataset& dataset, const NoiseConfig& noise) {
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        Rng rng = make_stream(noise.seed, {0x91C5, i});
        add_pixel_noise(std::span<double>(dataset.samples[i].features), noise, rng);
    }
}

PreparedData prepare_data(const std::filesystem::path& root, const TrainingConfig& config) {
    PreparedData out;
    out.full = load_dataset(root, config.image_dims, &out.report);
    if (out.full.n_classes() != config.n_classes)
        throw Error(ErrorKind::Config, "config expects " + std::to_string(config.n_classes) + " classes but " +
                                           root.string() + " has " + std::to_string(out.full.n_classes()));
    if (config.augment_class >= 0) {
        Rng rng = make_stream(config.seed, {0xA065});
        augment_minority(out.full, config.augment_class, config.augment_target, rng);
    }
    if (config.noise.pixel_enabled) apply_pixel_noise(out.full, config.noise);
    Rng split_rng = make_stream(config.seed, {0x5B17});
    out.split = split(out.full, config.train_fraction, split_rng);
    out.manifest = manifest_json(out.full, out.split, config.seed, out.report);
    return out;
}

void write_epochs_csv(const std::filesystem::path& path, const std::vector<EpochRecord>& epochs) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Data, "cannot write " + path.string());
    out << "epoch,train_loss,train_acc,val_loss,val_acc,seconds\n";
    out << std::setprecision(10);
    for (const EpochRecord& r : epochs)
        out << r.epoch << ',' << r.train_loss << ',' << r.train_accuracy << ',' << r.val_loss << ','
            << r.val_accuracy << ',' << r.seconds << '\n';
}

}  // namespace qbpm
