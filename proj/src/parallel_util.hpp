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

#include <exception>

namespace qbpm::detail {

// Exceptions must not escape an OpenMP region; bodies run through capture()
// and the first failure is rethrown by the serial caller.
class ExceptionCollector {
  public:
    template <class F>
    void capture(F&& body) noexcept {
        try {
            body();
        } catch (...) {
#pragma omp critical(qbpm_exception_collector)
            if (!first_) first_ = std::current_exception();
        }
    }

    void rethrow() const {
        if (first_) std::rethrow_exception(first_);
    }

  private:
    std::exception_ptr first_;
};

}  // namespace qbpm::detail
