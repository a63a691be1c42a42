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

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dvqe/ansatz.hpp"
#include "dvqe/mitigation.hpp"
#include "dvqe/oracle.hpp"
#include "dvqe/pauli.hpp"
#include "dvqe/simulator.hpp"

namespace dvqe {

/// Statevector expectation values and probabilities, no sampling.
struct ExactEvaluation {};

/// Shot-based estimates. Energies use `shots` per Pauli term; ancilla
/// probabilities use `shots` readouts of the discriminator register.
struct SampledEvaluation {
    std::size_t shots = 8000;
    std::optional<ReadoutNoise> noise;
    /// Unfolding for system-register histograms (energy terms).
    std::shared_ptr<const ConfusionMatrix> system_mitigation;
    /// Unfolding for discriminator-register histograms.
    std::shared_ptr<const ConfusionMatrix> register_mitigation;
    MitigationOptions mitigation_options;
    std::uint64_t seed = 0;
};

using EvaluationMode = std::variant<ExactEvaluation, SampledEvaluation>;

[[nodiscard]] inline bool is_exact(const EvaluationMode &mode) {
    return std::holds_alternative<ExactEvaluation>(mode);
}

/// One converged rung: generator parameters for eigenstate s_i and its energy.
struct LadderLevel {
    std::vector<double> theta;
    AnsatzSpec generator;
    double energy = 0.0;
};

/// Known states s_0..s_n of a Hamiltonian, in level order.
struct Ladder {
    PauliSum hamiltonian;
    std::vector<LadderLevel> levels;
    double gamma = 1.0;

    [[nodiscard]] std::size_t size() const { return levels.size(); }
    [[nodiscard]] bool empty() const { return levels.empty(); }
    /// Prepared states of every level.
    [[nodiscard]] std::vector<StateVector> states() const;
    /// True if energies are non-decreasing within `tolerance`.
    [[nodiscard]] bool is_monotone(double tolerance = 1e-6) const;
};

/**
 * Generator and discriminator costs for finding the state after the known
 * ones.
 *
 *   generator cost     = <H>_g + gamma * P0(D (g x |0>))
 *   discriminator cost = P0(D (g x |0>)) - sum_i P0(D (s_i x |0>))
 *
 * P0 is the probability that the ancilla (highest qubit of the discriminator
 * register) reads 0. Unit presentation weights are used; the constant term
 * of the value function does not enter.
 *
 * `tag` identifies an evaluation so that sampled estimates draw from a
 * reproducible random stream; exact evaluations ignore it.
 */
class DiscriminativeObjective {
  public:
    DiscriminativeObjective(PauliSum hamiltonian, Circuit generator, Circuit discriminator,
                            std::vector<StateVector> known_states, double gamma);

    [[nodiscard]] const PauliSum &hamiltonian() const { return hamiltonian_; }
    [[nodiscard]] const Circuit &generator() const { return generator_; }
    [[nodiscard]] const Circuit &discriminator() const { return discriminator_; }
    [[nodiscard]] const std::vector<StateVector> &known_states() const { return known_; }
    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] std::size_t ancilla() const { return discriminator_.qubit_count() - 1; }

    [[nodiscard]] StateVector generated_state(std::span<const double> theta) const;

    [[nodiscard]] double energy(std::span<const double> theta, const EvaluationMode &mode,
                                std::uint64_t tag) const;
    [[nodiscard]] double energy_of(const StateVector &state, const EvaluationMode &mode,
                                   std::uint64_t tag) const;

    /// P0 of the discriminator applied to `system_state` (x) |0>.
    [[nodiscard]] double zero_probability(std::span<const double> phi,
                                          const StateVector &system_state,
                                          const EvaluationMode &mode, std::uint64_t tag) const;
    /// Sum of P0 over the known states.
    [[nodiscard]] double known_zero_probability(std::span<const double> phi,
                                                const EvaluationMode &mode,
                                                std::uint64_t tag) const;

    /// System operator A with P0(D (psi x |0>)) = <psi|A|psi>.
    [[nodiscard]] Eigen::MatrixXcd acceptance_operator(std::span<const double> phi) const;

    [[nodiscard]] double generator_cost(std::span<const double> theta,
                                        std::span<const double> phi,
                                        const EvaluationMode &mode, std::uint64_t tag) const;
    /// Discriminator cost against an already prepared generated state.
    [[nodiscard]] double discriminator_cost(std::span<const double> phi,
                                            const StateVector &generated,
                                            const EvaluationMode &mode,
                                            std::uint64_t tag) const;
    [[nodiscard]] double discriminator_cost(std::span<const double> phi,
                                            std::span<const double> theta,
                                            const EvaluationMode &mode,
                                            std::uint64_t tag) const;

  private:
    PauliSum hamiltonian_;
    Circuit generator_;
    Circuit discriminator_;
    std::vector<StateVector> known_;
    double gamma_;
};

/// Generator cost for (theta, phi) against the known states of `ladder`.
[[nodiscard]] double c_gen(std::span<const double> theta, std::span<const double> phi,
                           const Ladder &ladder, const AnsatzSpec &generator,
                           const AnsatzSpec &discriminator, const EvaluationMode &mode,
                           std::uint64_t tag = 0);
/// Discriminator cost; throws if the ladder is empty.
[[nodiscard]] double c_disc(std::span<const double> phi, std::span<const double> theta_g,
                            const Ladder &ladder, const AnsatzSpec &generator,
                            const AnsatzSpec &discriminator, const EvaluationMode &mode,
                            std::uint64_t tag = 0);

enum class GammaMethod { Exact, InverseVqe };

struct GammaOptions {
    GammaMethod method = GammaMethod::Exact;
    double safety = 1.2;
    /// Caps gamma at the level-1 weight, 2 * safety * range, for every level.
    bool cap_at_range = false;
    /// Ansatz used by the inverse-Hamiltonian VQE.
    AnsatzSpec vqe_ansatz;
    /// Ground energy, when already known; otherwise estimated by VQE.
    std::optional<double> ground_energy;
    std::size_t vqe_max_sweeps = 200;
    std::size_t vqe_restarts = 3;
    std::uint64_t seed = 0;
};

/// Weighting for `level` >= 1: safety * (level + 1) * (E_max - E_min).
[[nodiscard]] double select_gamma(const PauliSum &h, std::size_t level,
                                  const GammaOptions &options = {});

/// Estimate of E_max from a VQE on -H.
[[nodiscard]] double estimate_max_energy(const PauliSum &h, const GammaOptions &options);
/// Estimate of E_min from a VQE on H.
[[nodiscard]] double estimate_min_energy(const PauliSum &h, const GammaOptions &options);

/// Discriminator acceptance terms for a generated state.
struct DiscriminatorDiagnostics {
    /// Presentation weight (1 / number of known states).
    double weight = 0.0;
    /// weight * P0 for each known ladder state.
    std::vector<double> K;
    /// |k_i| for each oracle eigenvector.
    std::vector<double> k_cross;
    /// Signed complex cross terms k_i.
    std::vector<std::complex<double>> cross_terms;
    /// weight * P0 for each oracle eigenvector.
    std::vector<double> K_eigen;
    /// |alpha_i|^2 of the generated state.
    std::vector<double> alpha_squared;
    /// weight * P0 of the generated state.
    double generated = 0.0;
};

/// Exact-mode only: throws when `mode` is sampled, since cross terms are not
/// observable from readouts.
[[nodiscard]] DiscriminatorDiagnostics diagnostics(std::span<const double> phi,
                                                   std::span<const double> theta_g,
                                                   const DiscriminativeObjective &objective,
                                                   const Spectrum &spectrum,
                                                   const EvaluationMode &mode = ExactEvaluation{});

} // namespace dvqe
