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

#include "qbpm/params_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qbpm/error.hpp"
#include "qbpm/model.hpp"

namespace qbpm {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("qbpm_params_" + name); }

TEST(ParamsIo, RoundTripFullSize) {
    const ModelSpec spec{15, 20, 3, ModelSpec::default_selection(15, 3)};
    const Model m = build_model(spec);
    auto p = make_parameters(m);
    initialize_parameters(p, 3);
    p.bias = {0.5, -0.25, 1e-300};
    const auto path = temp_file("round_trip.bin");
    write_params(path, spec, p);
    EXPECT_EQ(fs::file_size(path), 8u + 4 * 4 + 8 * 2 + 8 * 1803);
    const auto back = read_params(path);
    EXPECT_EQ(back.n_qubits, 15);
    EXPECT_EQ(back.n_layers, 20);
    EXPECT_EQ(back.n_classes, 3);
    EXPECT_EQ(back.theta, p.theta);
    EXPECT_EQ(back.bias, p.bias);
    fs::remove(path);
}

TEST(ParamsIo, LittleEndianHeader) {
    const ModelSpec spec{3, 1, 3, ModelSpec::default_selection(3, 3)};
    const auto p = make_parameters(build_model(spec));
    const auto path = temp_file("header.bin");
    write_params(path, spec, p);
    std::ifstream in(path, std::ios::binary);
    unsigned char buf[36];
    in.read(reinterpret_cast<char*>(buf), sizeof buf);
    EXPECT_EQ(std::string(reinterpret_cast<char*>(buf), 8), "QBPMPARM");
    EXPECT_EQ(buf[8], 1);
    EXPECT_EQ(buf[12], 3);
    EXPECT_EQ(buf[16], 1);
    EXPECT_EQ(buf[20], 3);
    EXPECT_EQ(buf[24], 18);
    EXPECT_EQ(buf[32], 3);
    fs::remove(path);
}

TEST(ParamsIo, RejectsCorruptFiles) {
    const ModelSpec spec{3, 1, 3, ModelSpec::default_selection(3, 3)};
    const auto p = make_parameters(build_model(spec));
    const auto path = temp_file("corrupt.bin");
    write_params(path, spec, p);
    fs::resize_file(path, fs::file_size(path) - 3);
    auto expect_data_error = [&] {
        try {
            read_params(path);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::Data);
        }
    };
    expect_data_error();
    std::ofstream(path, std::ios::binary) << "NOTPARAMS_______________________________";
    expect_data_error();
    expect_data_error();
    fs::remove(path);
    expect_data_error();
}

}  // namespace
}  // namespace qbpm
