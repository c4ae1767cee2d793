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

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "qbpm/error.hpp"

namespace qbpm {

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'B', 'P', 'M', 'P', 'A', 'R', 'M'};

template <class U>
void put_le(std::ostream& os, U value) {
    for (std::size_t i = 0; i < sizeof(U); ++i) os.put(static_cast<char>((value >> (8 * i)) & 0xFF));
}

template <class U>
U get_le(std::istream& is) {
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        const int ch = is.get();
        if (ch == std::char_traits<char>::eof()) throw Error(ErrorKind::Data, "params file truncated");
        value |= static_cast<U>(static_cast<unsigned char>(ch)) << (8 * i);
    }
    return value;
}

}  // namespace

void write_params(const std::filesystem::path& path, const ModelSpec& spec, const ParameterTable& params) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::Data, "cannot write " + path.string());
    os.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(os, kParamsFormatVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(spec.n_qubits));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(spec.n_layers));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(spec.n_classes));
    put_le<std::uint64_t>(os, params.theta.size());
    put_le<std::uint64_t>(os, params.bias.size());
    for (double v : params.theta) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
    for (double v : params.bias) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
    if (!os) throw Error(ErrorKind::Data, "write failed for " + path.string());
}

StoredParameters read_params(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Data, "cannot open " + path.string());
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kMagic) throw Error(ErrorKind::Data, path.string() + " is not a params file");
    const auto version = get_le<std::uint32_t>(is);
    if (version != kParamsFormatVersion)
        throw Error(ErrorKind::Data, "unsupported params format version " + std::to_string(version));
    StoredParameters out;
    out.n_qubits = static_cast<int>(get_le<std::uint32_t>(is));
    out.n_layers = static_cast<int>(get_le<std::uint32_t>(is));
    out.n_classes = static_cast<int>(get_le<std::uint32_t>(is));
    const auto n_theta = get_le<std::uint64_t>(is);
    const auto n_bias = get_le<std::uint64_t>(is);
    const std::uint64_t expected = 2ULL * static_cast<std::uint64_t>(out.n_layers) *
                                   static_cast<std::uint64_t>(out.n_qubits) * 3ULL;
    if (n_theta != expected || n_bias != static_cast<std::uint64_t>(out.n_classes))
        throw Error(ErrorKind::Data, "params header counts are inconsistent");
    out.theta.resize(n_theta);
    out.bias.resize(n_bias);
    for (double& v : out.theta) v = std::bit_cast<double>(get_le<std::uint64_t>(is));
    for (double& v : out.bias) v = std::bit_cast<double>(get_le<std::uint64_t>(is));
    return out;
}

}  // namespace qbpm
