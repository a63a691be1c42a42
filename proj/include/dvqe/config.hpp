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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "dvqe/ansatz.hpp"
#include "dvqe/driver.hpp"
#include "dvqe/mitigation.hpp"
#include "dvqe/readout.hpp"

namespace dvqe {

struct MitigationConfig {
    bool enabled = false;
    std::size_t calibration_shots = 8192;
    MitigationOptions options;
};

/// Parsed run-config document (JSON, "schema": 1).
struct RunConfig {
    bool sampled = false;
    AnsatzPreset preset = ansatz_preset("h2");
    OptimizerConfig optimizer;
    Schedule schedule;
    ShotSchedule shots;
    bool shots_given = false;
    std::optional<ReadoutNoise> noise;
    MitigationConfig mitigation;
    GammaOptions gamma;
    /// Unset: on in sampled mode, off in exact mode.
    std::optional<bool> gamma_cap_at_range;
    double theta_jitter = 0.1;
    bool reuse_discriminator = true;
    bool diagnostics = false;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "dvqe_out";

    /// Sampled mode needs a shot schedule; mitigation and noise need sampled mode.
    void validate() const;
};

/// Throws ParseError on malformed JSON, unknown keys or bad values.
[[nodiscard]] RunConfig parse_run_config(std::string_view text, const std::string &source = {});
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path &path);
[[nodiscard]] nlohmann::json run_config_to_json(const RunConfig &config);

/// Driver options for a Hamiltonian on `system_qubits` qubits. In sampled mode
/// with mitigation this runs the readout calibration for the system register
/// and for the discriminator register.
[[nodiscard]] RunOptions make_run_options(const RunConfig &config, std::size_t system_qubits);

/// Bond-distance sweep description ("schema": 1).
struct SweepPlan {
    std::vector<double> bond_distances;
    double anchor_distance = 0.0;
    /// Same order as bond_distances; resolved against the plan's directory.
    std::vector<std::filesystem::path> hamiltonian_files;
    std::size_t levels = 4;

    [[nodiscard]] std::size_t anchor_index() const;
};

[[nodiscard]] SweepPlan parse_sweep_plan(std::string_view text,
                                         const std::filesystem::path &base_dir = {},
                                         const std::string &source = {});
[[nodiscard]] SweepPlan load_sweep_plan(const std::filesystem::path &path);

} // namespace dvqe
