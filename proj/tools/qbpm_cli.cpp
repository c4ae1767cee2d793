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

// qbpm: train, evaluate and inspect the two-circuit quantum classifier.
//
// Exit codes: 0 success, 1 config error, 2 data error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbpm/ansatz.hpp"
#include "qbpm/error.hpp"
#include "qbpm/params_io.hpp"
#include "qbpm/synthetic.hpp"
#include "qbpm/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kDataError = 2, kNumericalError = 3 };

int exit_code_for(qbpm::ErrorKind kind) {
    switch (kind) {
        case qbpm::ErrorKind::Data:
        case qbpm::ErrorKind::EncodingDegenerate: return kDataError;
        case qbpm::ErrorKind::Numerical:
        case qbpm::ErrorKind::Optimizer: return kNumericalError;
        default: return kConfigError;
    }
}

// Flags that override values from the config file; unset flags leave the file alone.
struct Overrides {
    std::optional<int> qubits, layers, classes, epochs, batch_size;
    std::optional<double> lr, lambda, train_fraction;
    std::optional<std::uint64_t> seed, noise_seed;
    std::optional<double> pixel_sigma, pixel_factor, gate_sigma, phase_sigma;
    std::optional<std::string> noise_modes, hadamard;

    void attach(CLI::App* app) {
        app->add_option("--qubits", qubits, "Number of qubits per circuit");
        app->add_option("--layers", layers, "Number of ansatz layers");
        app->add_option("--classes", classes, "Number of classes");
        app->add_option("--epochs", epochs, "Training epochs");
        app->add_option("--batch-size", batch_size, "Mini-batch size");
        app->add_option("--lr", lr, "Adam learning rate");
        app->add_option("--lambda", lambda, "L2 regularization strength");
        app->add_option("--train-fraction", train_fraction, "Stratified train fraction");
        app->add_option("--seed", seed, "Master seed");
        app->add_option("--noise-seed", noise_seed, "Noise seed");
        app->add_option("--pixel-sigma", pixel_sigma);
        app->add_option("--pixel-factor", pixel_factor);
        app->add_option("--gate-sigma", gate_sigma);
        app->add_option("--phase-sigma", phase_sigma);
        app->add_option("--noise-modes", noise_modes, "Comma-separated subset of pixel,gate,phase (or 'none')");
        app->add_option("--hadamard", hadamard, "per_layer or first_layer_only");
    }

    void apply(qbpm::TrainingConfig& c) const {
        if (qubits) c.n_qubits = *qubits;
        if (layers) c.n_layers = *layers;
        if (classes) c.n_classes = *classes;
        if (epochs) c.epochs = *epochs;
        if (batch_size) c.batch_size = *batch_size;
        if (lr) c.learning_rate = *lr;
        if (lambda) c.lambda = *lambda;
        if (train_fraction) c.train_fraction = *train_fraction;
        if (seed) c.seed = *seed;
        if (noise_seed) c.noise.seed = *noise_seed;
        if (pixel_sigma) c.noise.pixel_sigma = *pixel_sigma;
        if (pixel_factor) c.noise.pixel_factor = *pixel_factor;
        if (gate_sigma) c.noise.gate_sigma = *gate_sigma;
        if (phase_sigma) c.noise.phase_sigma = *phase_sigma;
        if (hadamard) c.hadamard = qbpm::parse_hadamard_mode(*hadamard);
        if (noise_modes) {
            c.noise.pixel_enabled = c.noise.gate_enabled = c.noise.phase_enabled = false;
            std::istringstream ss(*noise_modes);
            for (std::string m; std::getline(ss, m, ',');) {
                if (m == "pixel") c.noise.pixel_enabled = true;
                else if (m == "gate") c.noise.gate_enabled = true;
                else if (m == "phase") c.noise.phase_enabled = true;
                else if (m != "none" && !m.empty())
                    throw qbpm::Error(qbpm::ErrorKind::Config, "unknown noise mode '" + m + "'");
            }
        }
    }
};

qbpm::TrainingConfig resolve_config(const std::string& path, const Overrides& o) {
    qbpm::TrainingConfig cfg = path.empty() ? qbpm::TrainingConfig{} : qbpm::load_config(path);
    o.apply(cfg);
    cfg.validate();
    return cfg;
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw qbpm::Error(qbpm::ErrorKind::Data, "cannot write " + path.string());
    out << std::setw(2) << doc << '\n';
}

void print_epoch(const qbpm::EpochRecord& r) {
    std::cout << "epoch " << r.epoch << "  train_loss " << std::fixed << std::setprecision(4) << r.train_loss
              << "  train_acc " << r.train_accuracy << "  val_loss " << r.val_loss << "  val_acc "
              << r.val_accuracy << "  (" << std::setprecision(1) << r.seconds << " s)\n"
              << std::defaultfloat;
}

int run_train(const std::string& config_path, const Overrides& o, const std::string& data, const std::string& out) {
    const qbpm::TrainingConfig cfg = resolve_config(config_path, o);
    qbpm::PreparedData prepared = qbpm::prepare_data(data, cfg);
    for (const auto& w : prepared.report.warnings) std::cerr << "warning: " << w << '\n';
    cfg.validate(prepared.full.dims.size());

    fs::create_directories(out);
    write_json(fs::path(out) / "manifest.json", prepared.manifest);
    const qbpm::TrainResult result = qbpm::train(prepared.split.train, prepared.split.validation, cfg, print_epoch);

    const qbpm::EvalMetrics val = qbpm::evaluate(prepared.split.validation, result.params, cfg);
    qbpm::write_epochs_csv(fs::path(out) / "epochs.csv", result.epochs);
    qbpm::write_params(fs::path(out) / "params.bin", cfg.model_spec(), result.params);
    json report = qbpm::metrics_to_json(val, prepared.full.class_names);
    report["split"] = "validation";
    report["trainable_parameters"] = result.params.trainable_count();
    report["config"] = qbpm::config_to_json(cfg);
    write_json(fs::path(out) / "report.json", report);
    std::cout << "validation accuracy " << val.accuracy << ", loss " << val.loss << "\nwrote " << out << '\n';
    return kOk;
}

int run_evaluate(const std::string& config_path, const Overrides& o, const std::string& data,
                 const std::string& params_path, const std::string& report_path) {
    const qbpm::TrainingConfig cfg = resolve_config(config_path, o);
    qbpm::LoadReport load;
    qbpm::Dataset ds = qbpm::load_dataset(data, cfg.image_dims, &load);
    for (const auto& w : load.warnings) std::cerr << "warning: " << w << '\n';
    if (ds.n_classes() != cfg.n_classes)
        throw qbpm::Error(qbpm::ErrorKind::Config, "dataset has " + std::to_string(ds.n_classes()) + " classes");
    if (cfg.noise.pixel_enabled) qbpm::apply_pixel_noise(ds, cfg.noise);

    const qbpm::StoredParameters stored = qbpm::read_params(params_path);
    if (stored.n_qubits != cfg.n_qubits || stored.n_layers != cfg.n_layers || stored.n_classes != cfg.n_classes)
        throw qbpm::Error(qbpm::ErrorKind::Config, "params file shape does not match the configuration");
    const qbpm::Model model = qbpm::build_model(cfg.model_spec(), cfg.hadamard, &cfg.noise);
    qbpm::ParameterTable params = qbpm::make_parameters(model);
    params.theta = stored.theta;
    params.bias = stored.bias;

    const qbpm::EvalMetrics m = qbpm::evaluate(ds, params, cfg);
    json report = qbpm::metrics_to_json(m, ds.class_names);
    report["split"] = "all";
    if (report_path.empty()) std::cout << std::setw(2) << report << '\n';
    else write_json(report_path, report);
    std::cerr << "accuracy " << m.accuracy << ", loss " << m.loss << '\n';
    return kOk;
}

int run_inspect(const std::string& variant, int qubits, int layers, int classes, const std::string& hadamard,
                bool counts_only) {
    const qbpm::HadamardMode mode = qbpm::parse_hadamard_mode(hadamard);
    const qbpm::AnsatzSpec first{qbpm::AnsatzVariant::PQC1, qubits, layers, mode};
    const qbpm::AnsatzSpec second{qbpm::AnsatzVariant::PQC2, qubits, layers, mode};
    const qbpm::ParameterTable table = qbpm::parameter_layout(first, second, classes);

    auto dump = [&](const qbpm::AnsatzSpec& spec, std::size_t offset) {
        const qbpm::CircuitProgram prog = qbpm::build_circuit(spec, offset);
        std::cout << "# " << qbpm::to_string(spec.variant) << ": " << prog.size() << " gates, "
                  << spec.slot_count() << " parameter slots\n";
        if (!counts_only) std::cout << qbpm::to_text(prog);
    };
    if (variant == "pqc1" || variant == "both") dump(first, 0);
    if (variant == "pqc2" || variant == "both") dump(second, first.slot_count());
    if (variant != "pqc1" && variant != "pqc2" && variant != "both")
        throw qbpm::Error(qbpm::ErrorKind::Config, "variant must be pqc1, pqc2 or both");
    std::cout << "trainable parameters: " << table.trainable_count() << " (" << table.theta.size()
              << " circuit + " << table.bias.size() << " bias)\n";
    return kOk;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw qbpm::Error(qbpm::ErrorKind::Config, "bad number '" + tok + "' in sweep list");
        }
    }
    if (out.empty()) throw qbpm::Error(qbpm::ErrorKind::Config, "empty sweep list");
    return out;
}

int run_sweep(const std::string& config_path, const Overrides& o, const std::string& data, const std::string& out,
              const std::string& gate_list, const std::string& phase_list, const std::string& pixel_list) {
    const qbpm::TrainingConfig base = resolve_config(config_path, o);
    const auto gates = parse_list(gate_list);
    const auto phases = parse_list(phase_list);
    const auto pixels = parse_list(pixel_list);
    fs::create_directories(out);
    std::ofstream csv(fs::path(out) / "sweep.csv");
    if (!csv) throw qbpm::Error(qbpm::ErrorKind::Data, "cannot write sweep.csv");
    csv << "pixel_sigma,gate_sigma,phase_sigma,train_loss,train_acc,val_loss,val_acc\n" << std::setprecision(10);
    for (double px : pixels) {
        for (double g : gates) {
            for (double ph : phases) {
                qbpm::TrainingConfig cfg = base;
                cfg.noise.pixel_sigma = px;
                cfg.noise.gate_sigma = g;
                cfg.noise.phase_sigma = ph;
                cfg.noise.pixel_enabled = px > 0.0;
                cfg.noise.gate_enabled = g > 0.0;
                cfg.noise.phase_enabled = ph > 0.0;
                std::cout << "pixel_sigma " << px << "  gate_sigma " << g << "  phase_sigma " << ph << '\n';
                qbpm::PreparedData prepared = qbpm::prepare_data(data, cfg);
                const qbpm::TrainResult r = qbpm::train(prepared.split.train, prepared.split.validation, cfg, print_epoch);
                const qbpm::EpochRecord& last = r.epochs.back();
                csv << px << ',' << g << ',' << ph << ',' << last.train_loss << ',' << last.train_accuracy << ','
                    << last.val_loss << ',' << last.val_accuracy << '\n';
            }
        }
    }
    std::cout << "wrote " << (fs::path(out) / "sweep.csv").string() << '\n';
    return kOk;
}

int run_synth(const std::string& out, const qbpm::SyntheticSpec& spec) {
    const qbpm::SyntheticTask task = qbpm::make_synthetic_task(spec);
    qbpm::write_raw_dataset(out, task.dataset);
    std::cout << "wrote " << task.dataset.samples.size() << " samples (" << spec.n_features << " features) to "
              << out << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-circuit parameterized quantum classifier"};
    app.require_subcommand(1);

    std::string config_path, data, out = "run", params_path, report_path;
    Overrides overrides;

    auto* train = app.add_subcommand("train", "Train on a dataset and write epochs.csv, report.json, params.bin");
    train->add_option("-c,--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    train->add_option("-d,--data", data, "Dataset root")->required();
    train->add_option("-o,--out", out, "Output directory");
    overrides.attach(train);

    auto* evaluate = app.add_subcommand("evaluate", "Score stored parameters on a dataset");
    evaluate->add_option("-c,--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    evaluate->add_option("-d,--data", data, "Dataset root")->required();
    evaluate->add_option("-p,--params", params_path, "params.bin")->required()->check(CLI::ExistingFile);
    evaluate->add_option("-r,--report", report_path, "Write the report here instead of stdout");
    Overrides eval_overrides;
    eval_overrides.attach(evaluate);

    std::string variant = "both", hadamard = "per_layer";
    int qubits = 15, layers = 20, classes = 3;
    bool counts_only = false;
    auto* inspect = app.add_subcommand("inspect-circuit", "Print the gate list and parameter count");
    inspect->add_option("--variant", variant, "pqc1, pqc2 or both");
    inspect->add_option("--qubits", qubits);
    inspect->add_option("--layers", layers);
    inspect->add_option("--classes", classes);
    inspect->add_option("--hadamard", hadamard);
    inspect->add_flag("--counts-only", counts_only, "Skip the gate listing");

    std::string gate_list = "0", phase_list = "0", pixel_list = "0";
    auto* sweep = app.add_subcommand("noise-sweep", "Train once per point of a noise-sigma grid");
    sweep->add_option("-c,--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sweep->add_option("-d,--data", data, "Dataset root")->required();
    sweep->add_option("-o,--out", out, "Output directory");
    sweep->add_option("--gate-sigmas", gate_list, "Comma-separated gate_sigma values (0 disables)");
    sweep->add_option("--phase-sigmas", phase_list, "Comma-separated phase_sigma values (0 disables)");
    sweep->add_option("--pixel-sigmas", pixel_list, "Comma-separated pixel_sigma values (0 disables)");
    Overrides sweep_overrides;
    sweep_overrides.attach(sweep);

    qbpm::SyntheticSpec synth_spec;
    std::string synth_out = "synthetic";
    auto* synth = app.add_subcommand("synth", "Write a synthetic raw-format dataset");
    synth->add_option("-o,--out", synth_out, "Output directory");
    synth->add_option("--classes", synth_spec.n_classes);
    synth->add_option("--features", synth_spec.n_features);
    synth->add_option("--per-class", synth_spec.samples_per_class);
    synth->add_option("--jitter", synth_spec.jitter);
    synth->add_option("--seed", synth_spec.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*train) return run_train(config_path, overrides, data, out);
        if (*evaluate) return run_evaluate(config_path, eval_overrides, data, params_path, report_path);
        if (*inspect) return run_inspect(variant, qubits, layers, classes, hadamard, counts_only);
        if (*sweep) return run_sweep(config_path, sweep_overrides, data, out, gate_list, phase_list, pixel_list);
        if (*synth) return run_synth(synth_out, synth_spec);
    } catch (const qbpm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kOk;
}
