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

#include <stdexcept>
#include <string>

namespace qbpm {

enum class ErrorKind {
    Structural,          // malformed gate, qubit out of range, bad selection
    Capacity,            // register too small for the request
    EncodingDegenerate,  // all-zero feature vector
    Binding,             // unresolved parameter slot
    Usage,               // caller violated a precondition
    Optimizer,           // non-finite gradient handed to Adam
    Data,                // dataset ingestion failure
    Config,              // invalid run configuration
    Numerical,           // non-finite loss during training
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Structural: return "structural";
        case ErrorKind::Capacity: return "capacity";
        case ErrorKind::EncodingDegenerate: return "encoding-degenerate";
        case ErrorKind::Binding: return "binding";
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Optimizer: return "optimizer";
        case ErrorKind::Data: return "data";
        case ErrorKind::Config: return "config";
        case ErrorKind::Numerical: return "numerical";
    }
    return "unknown";
}

}  // namespace qbpm
