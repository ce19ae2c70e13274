// Copyright 2026 The qls authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qls {

/// Machine-readable failure categories. The CLI maps these onto exit codes:
/// invalid_input/format -> 2, capacity -> 3, everything numerical -> 4.
enum class ErrorCode {
    invalid_input,
    format,
    capacity,
    singular_matrix,
    band_violation,
    convergence,
    postselection,
    decode_failure,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &msg)
        : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const { return code_; }

    const char *code_name() const {
        switch (code_) {
        case ErrorCode::invalid_input:
            return "invalid_input";
        case ErrorCode::format:
            return "format";
        case ErrorCode::capacity:
            return "capacity";
        case ErrorCode::singular_matrix:
            return "singular_matrix";
        case ErrorCode::band_violation:
            return "band_violation";
        case ErrorCode::convergence:
            return "convergence";
        case ErrorCode::postselection:
            return "postselection";
        case ErrorCode::decode_failure:
            return "decode_failure";
        }
        return "unknown";
    }

  private:
    ErrorCode code_;
};

struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string &msg)
        : Error(ErrorCode::invalid_input, msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string &msg)
        : Error(ErrorCode::format, msg) {}
};

struct CapacityError : Error {
    explicit CapacityError(const std::string &msg)
        : Error(ErrorCode::capacity, msg) {}
};

struct SingularMatrixError : Error {
    explicit SingularMatrixError(const std::string &msg)
        : Error(ErrorCode::singular_matrix, msg) {}
};

struct BandViolationError : Error {
    explicit BandViolationError(const std::string &msg)
        : Error(ErrorCode::band_violation, msg) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string &msg)
        : Error(ErrorCode::convergence, msg) {}
};

struct PostselectionError : Error {
    explicit PostselectionError(const std::string &msg)
        : Error(ErrorCode::postselection, msg) {}
};

struct DecodeFailureError : Error {
    explicit DecodeFailureError(const std::string &msg)
        : Error(ErrorCode::decode_failure, msg) {}
};

} // namespace qls
