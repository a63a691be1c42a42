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
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dvqe/simulator.hpp"

namespace dvqe {

/// Scalar cost of a parameter vector. `tag` names the evaluation so that
/// sampled costs draw reproducible noise; exact costs ignore it.
using Objective = std::function<double(std::span<const double>, std::uint64_t)>;

/// (cost(p + pi/2 e_i) - cost(p - pi/2 e_i)) / 2. Exact for parameters that
/// enter through exp(-i theta sigma / 2).
[[nodiscard]] double parameter_shift_gradient(const Objective &cost,
                                              std::span<const double> params,
                                              std::size_t index, std::uint64_t tag = 0);

/// All components; evaluated in parallel. Component i uses tags
/// tag + 2i and tag + 2i + 1.
[[nodiscard]] std::vector<double> parameter_shift_gradients(const Objective &cost,
                                                            std::span<const double> params,
                                                            std::uint64_t tag = 0);

/// Wraps an angle to (-pi, pi].
[[nodiscard]] double wrap_angle(double angle);

struct RotosolveUpdate {
    std::size_t index = 0;
    double old_value = 0.0;
    double new_value = 0.0;
    /// Cost at theta, theta + pi/2, theta - pi/2.
    double probe_zero = 0.0;
    double probe_plus = 0.0;
    double probe_minus = 0.0;
    /// Minimum of the fitted sinusoid.
    double predicted = 0.0;
};

/// Moves `params[index]` to the minimizer of the sinusoid through three
/// probes: theta - pi/2 - atan2(2 C0 - C+ - C-, C+ - C-), wrapped.
/// Probes use tags tag, tag + 1, tag + 2.
RotosolveUpdate rotosolve_update(const Objective &cost, std::vector<double> &params,
                                 std::size_t index, std::uint64_t tag = 0);

struct RotosolveSweep {
    std::size_t updates = 0;
    std::size_t evaluations = 0;
    /// Fitted minimum after the last update.
    double predicted = 0.0;
};

using RotosolveObserver = std::function<void(const RotosolveUpdate &)>;

/// One pass over every parameter in ascending index order. Update i uses tags
/// from tag + 3i.
RotosolveSweep rotosolve_sweep(const Objective &cost, std::vector<double> &params,
                               std::uint64_t tag = 0, const RotosolveObserver &observer = {});

struct RpropConfig {
    double eta_plus = 1.2;
    double eta_minus = 0.5;
    double delta_init = 0.1;
    double delta_min = 1e-6;
    double delta_max = 1.0;
};

struct RpropState {
    std::vector<double> delta;
    std::vector<double> previous_gradient;

    RpropState() = default;
    RpropState(std::size_t parameter_count, const RpropConfig &config);
};

/// One iRprop- step from parameter-shift gradients. Returns the gradient.
std::vector<double> rprop_step(const Objective &cost, std::vector<double> &params,
                               RpropState &state, const RpropConfig &config = {},
                               std::uint64_t tag = 0);
/// Same update for a gradient computed elsewhere.
void rprop_apply(std::span<const double> gradient, std::vector<double> &params,
                 RpropState &state, const RpropConfig &config = {});

struct MinimizeResult {
    double value = 0.0;
    std::size_t sweeps = 0;
    bool converged = false;
};

/// Rotosolve sweeps until the fitted minimum improves by less than
/// `tolerance` or `max_sweeps` is reached.
MinimizeResult rotosolve_minimize(const Objective &cost, std::vector<double> &params,
                                  std::size_t max_sweeps, double tolerance,
                                  std::uint64_t tag = 0);

/// Exact cost Tr[O C(p) rho C(p)^dag] with rho = sum_s w_s |in_s><in_s|.
/// Energies (rho = |0><0|, O = H) and ancilla probabilities (O = P0) both
/// have this form.
struct QuadraticCost {
    const Circuit *circuit = nullptr;
    std::vector<StateVector> inputs;
    std::vector<double> weights;
    Eigen::MatrixXcd observable;

    [[nodiscard]] double operator()(std::span<const double> params) const;
};

/// Registers up to this many qubits use the cached-observable sweep.
inline constexpr std::size_t kQuadraticSweepMaxQubits = 7;

/// Rotosolve sweep with the same probes and update as `rotosolve_sweep`, but
/// each probe costs O(dim^2): the observable is propagated backwards through
/// the circuit once per sweep and the inputs forwards as parameters change.
RotosolveSweep rotosolve_sweep(const QuadraticCost &cost, std::vector<double> &params,
                               const RotosolveObserver &observer = {});

} // namespace dvqe
