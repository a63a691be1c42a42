// Copyright 2026 The dvqe Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dvqe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input document could not be parsed. Carries the 1-based line number
/// (0 when the error is not tied to a line) and optionally the source name.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &message, const std::string &source = {})
        : Error(format(line, message, source)), line_(line), detail_(message) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    /// Message without the location prefix.
    [[nodiscard]] const std::string &detail() const noexcept { return detail_; }

  private:
    static std::string format(std::size_t line, const std::string &message,
                              const std::string &source) {
        std::string where = source;
        if (line != 0) {
            where += (source.empty() ? "line " : ": line ") + std::to_string(line);
        }
        return where.empty() ? message : where + ": " + message;
    }

    std::size_t line_;
    std::string detail_;
};

/// Sizes of vectors, registers or parameter lists do not agree.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Requested operation would exceed the dense-simulation qubit guard.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Dense operations (matrices, spectra) are refused above this many qubits.
inline constexpr std::size_t kDenseQubitGuard = 12;

} // namespace dvqe
