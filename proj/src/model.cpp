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

#include "qbpm/model.hpp"

#include "qbpm/error.hpp"
#include "parallel_util.hpp"

namespace qbpm {

Model build_model(const ModelSpec& spec, HadamardMode hadamard, const NoiseConfig* noise) {
    spec.validate();
    Model model;
    model.spec = spec;
    model.hadamard = hadamard;
    const AnsatzSpec first{AnsatzVariant::PQC1, spec.n_qubits, spec.n_layers, hadamard};
    const AnsatzSpec second{AnsatzVariant::PQC2, spec.n_qubits, spec.n_layers, hadamard};
    model.circuits[0] = build_circuit(first, 0);
    model.circuits[1] = build_circuit(second, first.slot_count());
    if (noise != nullptr && noise->phase_enabled)
        for (auto& c : model.circuits) c = inject_phase_noise(c, *noise);
    return model;
}

ParameterTable make_parameters(const Model& model) {
    const AnsatzSpec first{AnsatzVariant::PQC1, model.spec.n_qubits, model.spec.n_layers, model.hadamard};
    const AnsatzSpec second{AnsatzVariant::PQC2, model.spec.n_qubits, model.spec.n_layers, model.hadamard};
    return parameter_layout(first, second, model.spec.n_classes);
}

ForwardResult forward(std::span<const double> features, const ParameterTable& params, const Model& model,
                      const NoiseStream& noise, bool concurrent) {
    return forward_encoded(amplitude_encode(features, model.spec.n_qubits), params, model, noise, concurrent);
}

ForwardResult forward_encoded(const Statevector& encoded, const ParameterTable& params, const Model& model,
                              const NoiseStream& noise, bool concurrent) {
    ForwardResult out;
    auto run = [&](int c) {
        EvalContext ctx;
        Rng rng;
        if (noise.active()) {
            rng = noise.stream({static_cast<std::uint64_t>(c)});
            ctx.noise = noise.config;
            ctx.rng = &rng;
        }
        const auto idx = static_cast<std::size_t>(c);
        const Statevector final_state = run_circuit(model.circuits[idx], params.theta, encoded, ctx);
        out.expectations[idx] = expectation_z_all(final_state);
    };
    detail::ExceptionCollector errors;
#pragma omp parallel sections if (concurrent)
    {
#pragma omp section
        errors.capture([&] { run(0); });
#pragma omp section
        errors.capture([&] { run(1); });
    }
    errors.rethrow();
    out.logits = fuse_logits(out.expectations[0], out.expectations[1], model.spec.logit_selection, params.bias);
    out.probabilities = softmax(out.logits);
    return out;
}

}  // namespace qbpm
