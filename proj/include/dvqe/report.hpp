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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dvqe/driver.hpp"
#include "dvqe/pauli.hpp"

namespace dvqe {

/// Fixed-point text with `digits` decimals; stable across platforms.
[[nodiscard]] std::string format_fixed(double value, int digits = 12);

/// Exact eigenvalues, or nothing above the dense-matrix guard.
[[nodiscard]] std::optional<std::vector<double>> oracle_energies(const PauliSum &h);

/// |a - b| computed from the fixed-point renderings of a and b, so that a
/// reader recomputing it from the CSV gets the same digits.
[[nodiscard]] std::string format_abs_error(double a, double b, int digits = 12);

[[nodiscard]] nlohmann::json ladder_to_json(const LadderResult &result,
                                            const std::optional<std::vector<double>> &oracle);

/// Columns: level, energy, oracle_energy, abs_error, gamma, converged, cycles.
[[nodiscard]] std::string ladder_csv(const LadderResult &result,
                                     const std::optional<std::vector<double>> &oracle);

struct SweepOracle {
    double distance = 0.0;
    std::optional<std::vector<double>> energies;
};

/// Columns: distance, level, energy, oracle, abs_error, status.
[[nodiscard]] std::string sweep_csv(const SweepReport &report,
                                    const std::vector<SweepOracle> &oracle, std::size_t levels);
/// Columns: level, mean_abs_error, max_abs_error, points.
[[nodiscard]] std::string errors_by_level_csv(const SweepReport &report,
                                              const std::vector<SweepOracle> &oracle,
                                              std::size_t levels);
[[nodiscard]] nlohmann::json sweep_to_json(const SweepReport &report,
                                           const std::vector<SweepOracle> &oracle);

void write_text(const std::filesystem::path &path, const std::string &content);

} // namespace dvqe
