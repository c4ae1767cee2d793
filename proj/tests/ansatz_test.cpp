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

#include "qbpm/ansatz.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracle/dense.hpp"
#include "qbpm/error.hpp"
#include "test_support.hpp"

namespace qbpm {
namespace {

std::map<GateKind, int> count_kinds(const CircuitProgram& p) {
    std::map<GateKind, int> out;
    for (const auto& g : p.gates()) ++out[g.kind];
    return out;
}

std::vector<std::vector<int>> entangling_wires(const CircuitProgram& p) {
    std::vector<std::vector<int>> out;
    for (const auto& g : p.gates())
        if (qubit_count(g.kind) > 1) out.emplace_back(g.wires().begin(), g.wires().end());
    return out;
}

TEST(Pqc1, ThreeQubitEntanglementSequence) {
    const auto p = build_pqc1(3, 1);
    const std::vector<std::vector<int>> want{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}, {1, 2, 0},
                                             {2, 0, 1}, {0, 1}, {1, 2}, {2, 0}};
    EXPECT_EQ(entangling_wires(p), want);
}

TEST(Pqc2, ThreeQubitEntanglementSequence) {
    const auto p = build_pqc2(3, 1);
    const std::vector<std::vector<int>> want{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    EXPECT_EQ(entangling_wires(p), want);
    for (const auto& g : p.gates()) EXPECT_NE(g.kind, GateKind::CX);
}

TEST(Pqc1, FullSizeGateCounts) {
    const auto c = count_kinds(build_pqc1(15, 20));
    EXPECT_EQ(c.at(GateKind::H), 20 * 15);
    EXPECT_EQ(c.at(GateKind::U3), 20 * 15);
    EXPECT_EQ(c.at(GateKind::RX), 20 * 15);
    EXPECT_EQ(c.at(GateKind::RY), 20 * 15);
    EXPECT_EQ(c.at(GateKind::CX), 20 * (105 + 15));
    EXPECT_EQ(c.at(GateKind::CCX), 20 * 15);
}

TEST(Pqc2, FullSizeGateCounts) {
    const auto c = count_kinds(build_pqc2(15, 20));
    EXPECT_EQ(c.at(GateKind::CY), 20 * 105);
    EXPECT_EQ(c.at(GateKind::CCX), 20 * 15);
    EXPECT_EQ(c.count(GateKind::CX), 0u);
}

TEST(Ansatz, TotalGateCountFormula) {
    for (int n = 3; n <= 7; ++n)
        for (int layers = 1; layers <= 3; ++layers) {
            const std::size_t pair = static_cast<std::size_t>(n * (n - 1) / 2);
            EXPECT_EQ(build_pqc1(n, layers).size(), static_cast<std::size_t>(layers) * (4 * n + pair + 2 * n));
            EXPECT_EQ(build_pqc2(n, layers).size(), static_cast<std::size_t>(layers) * (4 * n + pair + n));
        }
}

TEST(Ansatz, RotationBlockPrecedesEntanglementInEveryLayer) {
    const auto p = build_pqc1(4, 3);
    const std::size_t per_layer = p.size() / 3;
    for (std::size_t l = 0; l < 3; ++l) {
        for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(qubit_count(p[l * per_layer + i].kind), 1);
        for (std::size_t i = 16; i < per_layer; ++i) EXPECT_GT(qubit_count(p[l * per_layer + i].kind), 1);
        EXPECT_EQ(p[l * per_layer].kind, GateKind::H);
    }
}

TEST(Ansatz, FirstLayerOnlyHadamard) {
    const auto c = count_kinds(build_pqc1(4, 3, HadamardMode::FirstLayerOnly));
    EXPECT_EQ(c.at(GateKind::H), 4);
}

TEST(Ansatz, RejectsTooFewQubitsOrLayers) {
    EXPECT_THROW(build_pqc1(2, 1), Error);
    EXPECT_THROW(build_pqc2(3, 0), Error);
    try {
        build_pqc1(2, 1);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Structural);
    }
}

TEST(Ansatz, DeterministicRebuild) {
    EXPECT_EQ(build_pqc1(5, 2), build_pqc1(5, 2));
    EXPECT_EQ(build_pqc2(5, 2), build_pqc2(5, 2));
}

TEST(ParameterLayout, FullSizeCountIs1803) {
    const AnsatzSpec a{AnsatzVariant::PQC1, 15, 20, HadamardMode::PerLayer};
    const AnsatzSpec b{AnsatzVariant::PQC2, 15, 20, HadamardMode::PerLayer};
    const auto t = parameter_layout(a, b, 3);
    EXPECT_EQ(t.slots_per_circuit, 900u);
    EXPECT_EQ(t.trainable_count(), 1803u);
}

TEST(ParameterLayout, SmallCountIs21) {
    const AnsatzSpec a{AnsatzVariant::PQC1, 3, 1, HadamardMode::PerLayer};
    const AnsatzSpec b{AnsatzVariant::PQC2, 3, 1, HadamardMode::PerLayer};
    EXPECT_EQ(parameter_layout(a, b, 3).trainable_count(), 21u);
}

TEST(ParameterLayout, SharingMatchesPrograms) {
    const AnsatzSpec a{AnsatzVariant::PQC1, 4, 2, HadamardMode::PerLayer};
    const AnsatzSpec b{AnsatzVariant::PQC2, 4, 2, HadamardMode::PerLayer};
    const auto t = parameter_layout(a, b, 3);
    const auto p1 = build_circuit(a, 0);
    const auto p2 = build_circuit(b, t.slots_per_circuit);
    const auto o1 = slot_occurrences(p1);
    const auto o2 = slot_occurrences(p2);
    ASSERT_EQ(t.sharing.size(), t.theta.size());
    for (std::size_t s = 0; s < t.theta.size(); ++s) {
        ASSERT_FALSE(t.sharing[s].empty()) << "slot " << s << " unreferenced";
        const std::size_t expected = (s % 3 == 0) ? 3 : 1;
        EXPECT_EQ(t.sharing[s].size(), expected);
        const int c = t.circuit_of(s);
        const auto& occ = c == 0 ? o1 : o2;
        ASSERT_LT(s, occ.size());
        std::vector<SharedOccurrence> want;
        for (const auto& o : occ[s]) want.push_back({c, o});
        EXPECT_EQ(t.sharing[s], want);
    }
    // Every slot a program references exists in the layout.
    EXPECT_LE(o1.size(), t.theta.size());
    EXPECT_LE(o2.size(), t.theta.size());
}

TEST(ParameterLayout, SlotIndexOrdering) {
    EXPECT_EQ(slot_index(0, 0, 0, 0, 20, 15), 0u);
    EXPECT_EQ(slot_index(0, 0, 1, 0, 20, 15), 3u);
    EXPECT_EQ(slot_index(0, 1, 0, 0, 20, 15), 45u);
    EXPECT_EQ(slot_index(1, 0, 0, 0, 20, 15), 900u);
    EXPECT_EQ(slot_index(1, 19, 14, 2, 20, 15), 1799u);
}

TEST(ParameterLayout, InitializationIsSeededAndInRange) {
    const AnsatzSpec a{AnsatzVariant::PQC1, 3, 2, HadamardMode::PerLayer};
    const AnsatzSpec b{AnsatzVariant::PQC2, 3, 2, HadamardMode::PerLayer};
    auto t1 = parameter_layout(a, b, 3);
    auto t2 = t1;
    initialize_parameters(t1, 9);
    initialize_parameters(t2, 9);
    EXPECT_EQ(t1.theta, t2.theta);
    for (double v : t1.theta) {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 2.0 * std::numbers::pi);
    }
    for (double v : t1.bias) EXPECT_EQ(v, 0.0);
    auto t3 = t1;
    initialize_parameters(t3, 10);
    EXPECT_NE(t1.theta, t3.theta);
}

TEST(ParameterLayout, FlatRoundTrip) {
    const AnsatzSpec a{AnsatzVariant::PQC1, 3, 1, HadamardMode::PerLayer};
    auto t = parameter_layout(a, {AnsatzVariant::PQC2, 3, 1, HadamardMode::PerLayer}, 3);
    initialize_parameters(t, 1);
    t.bias = {0.1, 0.2, 0.3};
    const auto flat = t.flat();
    ASSERT_EQ(flat.size(), 21u);
    auto u = parameter_layout(a, {AnsatzVariant::PQC2, 3, 1, HadamardMode::PerLayer}, 3);
    u.assign_flat(flat);
    EXPECT_EQ(u.theta, t.theta);
    EXPECT_EQ(u.bias, t.bias);
}

TEST(RotationBlock, ZeroAnglesLeaveOnlyHadamards) {
    // One rotation block on n = 2 (gates before the first entangler) at theta = 0
    // against the dense H x H product.
    const auto full = build_pqc1(3, 1);
    CircuitProgram block(3);
    for (const auto& g : full.gates())
        if (qubit_count(g.kind) == 1) block.push_back(g);
    const std::vector<double> theta(9, 0.0);
    const auto got = oracle::circuit_unitary(block, theta);
    const auto h = oracle::local_operator(GateKind::H, {});
    const auto want = oracle::kron(oracle::kron(h, h), h);
    EXPECT_LT(got.max_abs_diff(want), 1e-12);

    CircuitProgram two(2);
    for (int q = 0; q < 2; ++q) two.push_back(GateOp::make(GateKind::H, {q}));
    for (int q = 0; q < 2; ++q)
        two.push_back(GateOp::make(GateKind::U3, {q}, {AngleBinding::param(0), AngleBinding::param(1), AngleBinding::param(2)}));
    for (int q = 0; q < 2; ++q) two.push_back(GateOp::make(GateKind::RX, {q}, {AngleBinding::param(0)}));
    for (int q = 0; q < 2; ++q) two.push_back(GateOp::make(GateKind::RY, {q}, {AngleBinding::param(0)}));
    const std::vector<double> zero(3, 0.0);
    std::mt19937_64 rng(61);
    const Statevector in = testing::random_state(2, rng);
    const Statevector out = run_circuit(two, zero, in);
    const auto want2 = oracle::kron(h, h).apply(in.amplitudes());
    EXPECT_LT(testing::max_abs_diff(out.amplitudes(), want2), 1e-12);
}

}  // namespace
}  // namespace qbpm
