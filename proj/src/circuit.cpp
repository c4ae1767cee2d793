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

#include "qbpm/circuit.hpp"

#include <charconv>
#include <iomanip>
#include <sstream>

#include "qbpm/error.hpp"
#include "qbpm/noise.hpp"

namespace qbpm {

CircuitProgram::CircuitProgram(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw Error(ErrorKind::Capacity, "register width must be in [1, " + std::to_string(kMaxQubits) + "]");
}

CircuitProgram::CircuitProgram(int n_qubits, std::vector<GateOp> gates) : CircuitProgram(n_qubits) {
    for (const GateOp& g : gates) validate_gate(g, n_qubits_);
    gates_ = std::move(gates);
}

void CircuitProgram::push_back(const GateOp& gate) {
    validate_gate(gate, n_qubits_);
    gates_.push_back(gate);
}

std::vector<std::vector<Occurrence>> slot_occurrences(const CircuitProgram& program) {
    std::vector<std::vector<Occurrence>> out;
    for (std::size_t g = 0; g < program.size(); ++g) {
        const auto bindings = program[g].bindings();
        for (std::size_t k = 0; k < bindings.size(); ++k) {
            if (bindings[k].source != AngleBinding::Source::Slot) continue;
            if (bindings[k].slot >= out.size()) out.resize(bindings[k].slot + 1);
            out[bindings[k].slot].push_back({g, static_cast<int>(k)});
        }
    }
    return out;
}

ResolvedAngles resolve_angles(const CircuitProgram& program, std::size_t index, std::span<const double> theta,
                              const EvalContext& ctx) {
    const GateOp& gate = program[index];
    const auto bindings = gate.bindings();
    const bool noisy = ctx.noise != nullptr && ctx.rng != nullptr;
    ResolvedAngles angles{};
    bool has_noise_binding = false;
    for (std::size_t k = 0; k < bindings.size(); ++k) {
        const AngleBinding& b = bindings[k];
        switch (b.source) {
            case AngleBinding::Source::Fixed: angles[k] = b.value; break;
            case AngleBinding::Source::Slot:
                if (b.slot >= theta.size())
                    throw Error(ErrorKind::Binding, "gate " + std::to_string(index) + " references slot " +
                                                        std::to_string(b.slot) + " but only " +
                                                        std::to_string(theta.size()) + " parameters are bound");
                angles[k] = theta[b.slot];
                break;
            case AngleBinding::Source::PhaseNoise:
                has_noise_binding = true;
                angles[k] = (noisy && ctx.noise->phase_enabled) ? gaussian_draw(ctx.noise->phase_sigma, *ctx.rng)
                                                                 : 0.0;
                break;
        }
    }
    if (ctx.shift && ctx.shift->where.gate == index)
        angles[static_cast<std::size_t>(ctx.shift->where.position)] += ctx.shift->delta;
    if (noisy && ctx.noise->gate_enabled && !has_noise_binding && is_parameterized(gate.kind))
        angles = perturb_gate_angles(angles, gate.kind, *ctx.noise, *ctx.rng);
    return angles;
}

Statevector run_circuit(const CircuitProgram& program, std::span<const double> theta, Statevector input,
                        const EvalContext& ctx) {
    if (input.n_qubits() != program.n_qubits())
        throw Error(ErrorKind::Structural, "program width " + std::to_string(program.n_qubits()) +
                                               " does not match input width " + std::to_string(input.n_qubits()));
    for (std::size_t g = 0; g < program.size(); ++g) {
        const ResolvedAngles angles = resolve_angles(program, g, theta, ctx);
        apply_gate(input, program[g], angles);
    }
    return input;
}

std::string to_text(const CircuitProgram& program) {
    std::ostringstream os;
    os << "qubits " << program.n_qubits() << '\n';
    for (const GateOp& gate : program.gates()) {
        os << gate_name(gate.kind) << ' ';
        const auto wires = gate.wires();
        for (std::size_t i = 0; i < wires.size(); ++i) os << (i ? "," : "") << wires[i];
        for (const AngleBinding& b : gate.bindings()) {
            os << ' ';
            switch (b.source) {
                case AngleBinding::Source::Fixed: os << std::setprecision(17) << b.value; break;
                case AngleBinding::Source::Slot: os << "t[" << b.slot << ']'; break;
                case AngleBinding::Source::PhaseNoise: os << "noise"; break;
            }
        }
        os << '\n';
    }
    return os.str();
}

namespace {

GateKind parse_kind(const std::string& name, int line) {
    for (GateKind k : {GateKind::H, GateKind::U3, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CX,
                       GateKind::CY, GateKind::CCX})
        if (gate_name(k) == name) return k;
    throw Error(ErrorKind::Structural, "line " + std::to_string(line) + ": unknown gate '" + name + "'");
}

AngleBinding parse_angle(const std::string& token, int line) {
    if (token == "noise") return AngleBinding::phase_noise();
    if (token.size() > 3 && token.starts_with("t[") && token.back() == ']') {
        std::size_t slot = 0;
        const char* first = token.data() + 2;
        const char* last = token.data() + token.size() - 1;
        if (auto [p, ec] = std::from_chars(first, last, slot); ec == std::errc() && p == last)
            return AngleBinding::param(slot);
    }
    std::size_t used = 0;
    try {
        const double v = std::stod(token, &used);
        if (used == token.size()) return AngleBinding::fixed(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Structural, "line " + std::to_string(line) + ": bad angle '" + token + "'");
}

}  // namespace

CircuitProgram from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    int line_no = 0;
    std::optional<CircuitProgram> program;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (!program) {
            int n = 0;
            if (head != "qubits" || !(ls >> n))
                throw Error(ErrorKind::Structural, "circuit text must start with 'qubits <n>'");
            program.emplace(n);
            continue;
        }
        const GateKind kind = parse_kind(head, line_no);
        std::string wires_token;
        ls >> wires_token;
        GateOp op;
        op.kind = kind;
        std::size_t nq = 0;
        std::istringstream ws(wires_token);
        for (std::string w; std::getline(ws, w, ',');) {
            if (nq >= op.qubits.size()) throw Error(ErrorKind::Structural, "line " + std::to_string(line_no) + ": too many qubits");
            op.qubits[nq++] = std::stoi(w);
        }
        std::size_t na = 0;
        for (std::string tok; ls >> tok;) {
            if (na >= op.angles.size()) throw Error(ErrorKind::Structural, "line " + std::to_string(line_no) + ": too many angles");
            op.angles[na++] = parse_angle(tok, line_no);
        }
        if (static_cast<int>(nq) != qubit_count(kind) || static_cast<int>(na) != angle_count(kind))
            throw Error(ErrorKind::Structural, "line " + std::to_string(line_no) + ": arity mismatch for " + head);
        program->push_back(op);
    }
    if (!program) throw Error(ErrorKind::Structural, "empty circuit text");
    return *std::move(program);
}

}  // namespace qbpm
