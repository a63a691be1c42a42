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
#include <optional>
#include <string>
#include <vector>

#include "dvqe/ansatz.hpp"
#include "dvqe/objective.hpp"
#include "dvqe/optim.hpp"
#include "dvqe/pauli.hpp"

namespace dvqe {

enum class OptimizerKind { Rotosolve, Rprop };

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::Rotosolve;
    RpropConfig rprop;
};

/// Alternating schedule. One iteration is a full Rotosolve sweep (or one
/// Rprop step) over every parameter of the circuit being trained.
struct Schedule {
    std::size_t disc_iters = 3;
    std::size_t gen_iters = 3;
    std::size_t outer_cycles = 40;
    double convergence_tol = 1e-4;
    std::size_t convergence_window = 2;
    /// Stop as soon as the window criterion holds.
    bool early_stop = true;
    std::size_t vqe_max_iters = 200;
    double vqe_tol = 1e-10;
    std::size_t vqe_restarts = 1;
    /// Outer cycles for warm-started sweep points before falling back to the
    /// full schedule.
    std::size_t warm_outer_cycles = 1;
    std::size_t warm_vqe_iters = 1;

    void validate() const;
};

/// Shots per outer cycle (the last entry repeats), then `final_repeats`
/// estimates at `final_shots` averaged into the reported energy.
struct ShotSchedule {
    std::vector<std::size_t> shots_per_outer_cycle{256, 1024, 4096, 8000};
    std::size_t final_shots = 8000;
    std::size_t final_repeats = 5;

    void validate() const;
    [[nodiscard]] std::size_t shots_for_cycle(std::size_t cycle) const;
};

/// QPU-equivalent request bookkeeping: one request per Rotosolve parameter
/// update (three expectation estimates), or per parameter-shift gradient
/// component under Rprop.
struct CallLogEntry {
    std::string phase; // "vqe", "disc" or "gen"
    std::size_t level = 0;
    std::size_t cycle = 0;
    std::size_t iterations = 0;
    std::size_t parameters = 0;
    std::size_t requests = 0;
};

class CallCounter {
  public:
    void record(const std::string &phase, std::size_t level, std::size_t cycle,
                std::size_t iterations, std::size_t parameters);
    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] std::size_t total_for_level(std::size_t level) const;
    [[nodiscard]] std::size_t total_for_phase(const std::string &phase) const;
    [[nodiscard]] const std::vector<CallLogEntry> &entries() const { return entries_; }
    /// Human-readable per-level arithmetic, one line per level.
    [[nodiscard]] std::vector<std::string> arithmetic() const;

  private:
    std::vector<CallLogEntry> entries_;
};

struct RunOptions {
    Schedule schedule;
    ShotSchedule shots;
    OptimizerConfig optimizer;
    /// Exact, or sampled with noise and mitigation; shots and seed of a
    /// sampled template are replaced per cycle.
    EvaluationMode mode = ExactEvaluation{};
    GammaOptions gamma;
    std::uint64_t seed = 0;
    /// Keep exact-mode diagnostics for each excited level.
    bool diagnostics = false;
    /// Half-width of the uniform perturbation added to the generator's
    /// starting angles at each excited level (0 disables).
    double theta_jitter = 0.0;
    /// Start each level's discriminator from the previous level's angles.
    bool reuse_discriminator = true;
};

struct GroundResult {
    std::vector<double> theta;
    double energy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

/// VQE on `h`. Starts from `theta_init` if given, else small random angles;
/// extra restarts (exact mode) draw angles over the full circle.
GroundResult solve_ground(const PauliSum &h, const AnsatzSpec &spec, const RunOptions &options,
                          const std::optional<std::vector<double>> &theta_init = std::nullopt,
                          std::size_t max_iters = 0, CallCounter *counter = nullptr,
                          std::uint64_t stream = 0);

struct ExcitedStart {
    std::optional<std::vector<double>> theta;
    std::optional<std::vector<double>> phi;
    bool train_discriminator = true;
    std::size_t outer_cycles = 0; // 0: schedule default
};

struct ExcitedResult {
    std::vector<double> theta;
    std::vector<double> phi;
    AnsatzSpec generator;
    AnsatzSpec discriminator;
    double energy = 0.0;
    double gamma = 0.0;
    bool converged = false;
    std::size_t cycles = 0;
    /// Energy at the start and after each outer cycle.
    std::vector<double> trace;
    std::vector<double> disc_trace;
    std::optional<DiscriminatorDiagnostics> diagnostics;
    std::vector<std::string> warnings;
};

/// Finds level `ladder.size()` given levels 0..n, appends it to the ladder.
/// The generator starts from the previous level (or `start.theta`), grown to
/// the level's depth; the discriminator from `start.phi` or small random
/// angles.
ExcitedResult solve_excited(Ladder &ladder, const AnsatzSpec &generator,
                            const AnsatzSpec &discriminator, const RunOptions &options,
                            const ExcitedStart &start = {}, CallCounter *counter = nullptr,
                            std::uint64_t stream = 0);

/// Per-level outcome of a ladder run.
struct LevelRecord {
    std::size_t level = 0;
    std::vector<double> theta;
    std::vector<double> phi;
    AnsatzSpec generator;
    std::optional<AnsatzSpec> discriminator;
    double energy = 0.0;
    double gamma = 0.0;
    bool converged = false;
    std::size_t cycles = 0;
    std::vector<double> trace;
    std::optional<DiscriminatorDiagnostics> diagnostics;
};

struct LadderResult {
    explicit LadderResult(PauliSum h) : ladder{std::move(h), {}, 1.0} {}

    Ladder ladder;
    std::vector<LevelRecord> levels;
    CallCounter calls;
    std::vector<std::string> warnings;

    [[nodiscard]] bool all_converged() const;
    [[nodiscard]] std::size_t total_cycles() const;
};

/// Ground state plus `levels - 1` excited states. With `warm`, parameters
/// are seeded from that ladder and a reduced schedule is tried first.
LadderResult solve_ladder(const PauliSum &h, std::size_t levels, const AnsatzPreset &preset,
                          const RunOptions &options, const LadderResult *warm = nullptr,
                          std::uint64_t stream = 0);

struct SweepPoint {
    double distance = 0.0;
    PauliSum hamiltonian;
};

struct SweepPointResult {
    double distance = 0.0;
    std::optional<LadderResult> result;
    bool warm_started = false;
    std::size_t seeded_from = 0; // index of the neighbour
    std::string error;
};

struct SweepReport {
    std::vector<SweepPointResult> points; // in distance order
    [[nodiscard]] bool all_ok() const;
};

/// Solves the anchor with the full schedule, then walks outward in both
/// directions, warm-starting each point from its solved neighbour.
SweepReport sweep(const std::vector<SweepPoint> &points, std::size_t anchor, std::size_t levels,
                  const AnsatzPreset &preset, const RunOptions &options);

} // namespace dvqe
