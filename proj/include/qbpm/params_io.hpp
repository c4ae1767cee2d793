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

#include <cstdint>
#include <filesystem>

#include "qbpm/ansatz.hpp"
#include "qbpm/classical_head.hpp"

namespace qbpm {

// params.bin, all fields little-endian:
//   char[8]  magic "QBPMPARM"
//   uint32   format version (1)
//   uint32   n_qubits
//   uint32   n_layers
//   uint32   n_classes
//   uint64   theta count
//   uint64   bias count
//   float64  theta[theta count]
//   float64  bias[bias count]
inline constexpr std::uint32_t kParamsFormatVersion = 1;

struct StoredParameters {
    int n_qubits = 0;
    int n_layers = 0;
    int n_classes = 0;
    std::vector<double> theta;
    std::vector<double> bias;
};

void write_params(const std::filesystem::path& path, const ModelSpec& spec, const ParameterTable& params);

/// Throws Error(Data) on a bad magic, unknown version or truncated file.
StoredParameters read_params(const std::filesystem::path& path);

}  // namespace qbpm
