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
#include "dvqe/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "dvqe/error.hpp"
#include "dvqe/optim.hpp"
#include "dvqe/seeding.hpp"

namespace dvqe {

namespace {

// Stream salts so that the circuits inside one evaluation draw independently.
constexpr std::uint64_t kEnergyStream = 0x454E;
constexpr std::uint64_t kGeneratedStream = 0x4745;
constexpr std::uint64_t kKnownStream = 0x4B4E;

void check_length(std::span<const double> params, const Circuit &c, const char *what) {
    if (params.size() != c.parameter_count()) {
        throw DimensionError(std::string(what) + ": expected " +
                             std::to_string(c.parameter_count()) + " parameters, got " +
                             std::to_string(params.size()));
    }
}

} // namespace

std::vector<StateVector> Ladder::states() const {
    std::vector<StateVector> out;
    out.reserve(levels.size());
    for (const auto &level : levels) {
        out.push_back(run_circuit(build_generator(level.generator), level.theta));
    }
    return out;
}

bool Ladder::is_monotone(double tolerance) const {
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i].energy < levels[i - 1].energy - tolerance) {
            return false;
        }
    }
    return true;
}

DiscriminativeObjective::DiscriminativeObjective(PauliSum hamiltonian, Circuit generator,
                                                 Circuit discriminator,
                                                 std::vector<StateVector> known_states,
                                                 double gamma)
    : hamiltonian_(std::move(hamiltonian)), generator_(std::move(generator)),
      discriminator_(std::move(discriminator)), known_(std::move(known_states)), gamma_(gamma) {
    const std::size_t n = hamiltonian_.qubit_count();
    if (generator_.qubit_count() != n) {
        throw DimensionError("generator width " + std::to_string(generator_.qubit_count()) +
                             " does not match Hamiltonian width " + std::to_string(n));
    }
    if (discriminator_.qubit_count() != n + 1) {
        throw DimensionError("discriminator must act on the system qubits plus one ancilla");
    }
    for (const auto &s : known_) {
        if (s.qubit_count() != n) {
            throw DimensionError("known state width does not match Hamiltonian");
        }
    }
    if (!(gamma_ >= 0.0) || !std::isfinite(gamma_)) {
        throw Error("gamma must be finite and non-negative");
    }
}

StateVector DiscriminativeObjective::generated_state(std::span<const double> theta) const {
    check_length(theta, generator_, "generator");
    return run_circuit(generator_, theta);
}

double DiscriminativeObjective::energy_of(const StateVector &state, const EvaluationMode &mode,
                                          std::uint64_t tag) const {
    if (const auto *s = std::get_if<SampledEvaluation>(&mode)) {
        return expectation_sampled(state, hamiltonian_, s->shots, s->noise,
                                   derive_seed(s->seed, {tag, kEnergyStream}),
                                   s->system_mitigation.get(), &s->mitigation_options);
    }
    return expectation_exact(state, hamiltonian_);
}

double DiscriminativeObjective::energy(std::span<const double> theta,
                                       const EvaluationMode &mode, std::uint64_t tag) const {
    return energy_of(generated_state(theta), mode, tag);
}

namespace {

double zero_probability_impl(const Circuit &discriminator, std::span<const double> phi,
                             const StateVector &system_state, const EvaluationMode &mode,
                             std::uint64_t seed_tag, std::uint64_t stream) {
    const std::size_t ancilla = discriminator.qubit_count() - 1;
    StateVector out = run_circuit(discriminator, phi, system_state.with_ancillas(1));
    const auto *s = std::get_if<SampledEvaluation>(&mode);
    if (s == nullptr) {
        return ancilla_zero_probability(out, ancilla);
    }
    const auto hist =
        sample_bitstrings(out, s->shots, s->noise, derive_seed(s->seed, {seed_tag, stream}));
    if (s->register_mitigation) {
        const auto fixed = mitigate(hist, *s->register_mitigation, s->mitigation_options);
        return marginal_zero_probability(fixed.counts, ancilla);
    }
    std::vector<double> counts(hist.counts().begin(), hist.counts().end());
    return marginal_zero_probability(counts, ancilla);
}

} // namespace

double DiscriminativeObjective::zero_probability(std::span<const double> phi,
                                                 const StateVector &system_state,
                                                 const EvaluationMode &mode,
                                                 std::uint64_t tag) const {
    check_length(phi, discriminator_, "discriminator");
    return zero_probability_impl(discriminator_, phi, system_state, mode, tag,
                                 kGeneratedStream);
}

double DiscriminativeObjective::known_zero_probability(std::span<const double> phi,
                                                       const EvaluationMode &mode,
                                                       std::uint64_t tag) const {
    check_length(phi, discriminator_, "discriminator");
    double sum = 0.0;
    for (std::size_t i = 0; i < known_.size(); ++i) {
        sum += zero_probability_impl(discriminator_, phi, known_[i], mode, tag,
                                     kKnownStream + i);
    }
    return sum;
}

Eigen::MatrixXcd DiscriminativeObjective::acceptance_operator(std::span<const double> phi) const {
    check_length(phi, discriminator_, "discriminator");
    const std::size_t dim = std::size_t{1} << hamiltonian_.qubit_count();
    const std::size_t mask = std::size_t{1} << ancilla();
    std::vector<StateVector> u;
    u.reserve(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        std::vector<Complex> basis(2 * dim, Complex{0.0, 0.0});
        basis[a] = 1.0;
        u.push_back(run_circuit(discriminator_, phi, StateVector(std::move(basis))));
    }
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a; b < dim; ++b) {
            Complex acc{0.0, 0.0};
            for (std::size_t x = 0; x < 2 * dim; ++x) {
                if ((x & mask) == 0) {
                    acc += std::conj(u[a][x]) * u[b][x];
                }
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
            out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = std::conj(acc);
        }
    }
    return out;
}

double DiscriminativeObjective::generator_cost(std::span<const double> theta,
                                               std::span<const double> phi,
                                               const EvaluationMode &mode,
                                               std::uint64_t tag) const {
    const StateVector g = generated_state(theta);
    const double e = energy_of(g, mode, tag);
    if (gamma_ == 0.0) {
        return e;
    }
    return e + gamma_ * zero_probability(phi, g, mode, tag);
}

double DiscriminativeObjective::discriminator_cost(std::span<const double> phi,
                                                   const StateVector &generated,
                                                   const EvaluationMode &mode,
                                                   std::uint64_t tag) const {
    if (known_.empty()) {
        throw Error("discriminator cost needs at least one known state");
    }
    return zero_probability(phi, generated, mode, tag) - known_zero_probability(phi, mode, tag);
}

double DiscriminativeObjective::discriminator_cost(std::span<const double> phi,
                                                   std::span<const double> theta,
                                                   const EvaluationMode &mode,
                                                   std::uint64_t tag) const {
    return discriminator_cost(phi, generated_state(theta), mode, tag);
}

namespace {

DiscriminativeObjective make_objective(const Ladder &ladder, const AnsatzSpec &generator,
                                       const AnsatzSpec &discriminator) {
    return DiscriminativeObjective(ladder.hamiltonian, build_generator(generator),
                                   build_discriminator(discriminator), ladder.states(),
                                   ladder.gamma);
}

} // namespace

double c_gen(std::span<const double> theta, std::span<const double> phi, const Ladder &ladder,
             const AnsatzSpec &generator, const AnsatzSpec &discriminator,
             const EvaluationMode &mode, std::uint64_t tag) {
    return make_objective(ladder, generator, discriminator).generator_cost(theta, phi, mode, tag);
}

double c_disc(std::span<const double> phi, std::span<const double> theta_g,
              const Ladder &ladder, const AnsatzSpec &generator,
              const AnsatzSpec &discriminator, const EvaluationMode &mode,
              std::uint64_t tag) {
    if (ladder.empty()) {
        throw Error("discriminator cost is undefined for an empty ladder");
    }
    return make_objective(ladder, generator, discriminator)
        .discriminator_cost(phi, theta_g, mode, tag);
}

namespace {

double vqe_minimum(const PauliSum &h, const GammaOptions &options, std::uint64_t stream) {
    AnsatzSpec spec = options.vqe_ansatz;
    spec.qubit_count = h.qubit_count();
    const Circuit g = build_generator(spec);
    const Objective cost = [&](std::span<const double> theta, std::uint64_t) {
        return expectation_exact(run_circuit(g, theta), h);
    };
    double best = std::numeric_limits<double>::infinity();
    const std::size_t restarts = std::max<std::size_t>(options.vqe_restarts, 1);
    for (std::size_t r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(derive_seed(options.seed, {stream, r}));
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        std::vector<double> theta(g.parameter_count());
        for (auto &t : theta) {
            t = angle(rng);
        }
        const auto result = rotosolve_minimize(cost, theta, options.vqe_max_sweeps, 1e-12);
        best = std::min(best, cost(theta, 0));
        (void)result;
    }
    return best;
}

} // namespace

double estimate_min_energy(const PauliSum &h, const GammaOptions &options) {
    return vqe_minimum(h, options, 0);
}

double estimate_max_energy(const PauliSum &h, const GammaOptions &options) {
    return -vqe_minimum(h.negated(), options, 1);
}

double select_gamma(const PauliSum &h, std::size_t level, const GammaOptions &options) {
    if (level == 0) {
        throw Error("gamma is only defined for excited levels (level >= 1)");
    }
    if (!(options.safety >= 1.0)) {
        throw Error("gamma safety factor must be >= 1");
    }
    double range = 0.0;
    if (options.method == GammaMethod::Exact) {
        range = exact_spectrum(h).range();
    } else {
        const double e_min = options.ground_energy ? *options.ground_energy
                                                   : estimate_min_energy(h, options);
        range = estimate_max_energy(h, options) - e_min;
    }
    const double gamma = options.safety * static_cast<double>(level + 1) * range;
    if (options.cap_at_range) {
        // Against a best-response discriminator the target level is stable once
        // gamma > 2 (E_n - E_0), and E_n - E_0 <= range: the level-1 weight suffices.
        return std::min(gamma, 2.0 * options.safety * range);
    }
    return gamma;
}

DiscriminatorDiagnostics diagnostics(std::span<const double> phi,
                                     std::span<const double> theta_g,
                                     const DiscriminativeObjective &objective,
                                     const Spectrum &spectrum, const EvaluationMode &mode) {
    if (!is_exact(mode)) {
        throw Error("diagnostics need exact simulation; cross terms are not observable");
    }
    const auto &known = objective.known_states();
    if (known.empty()) {
        throw Error("diagnostics need at least one known state");
    }
    const Circuit &d = objective.discriminator();
    check_length(phi, d, "discriminator");
    const std::size_t ancilla = objective.ancilla();
    const std::size_t dim = spectrum.size();

    DiscriminatorDiagnostics out;
    out.weight = 1.0 / static_cast<double>(known.size());
    for (const auto &s : known) {
        out.K.push_back(out.weight * zero_probability_impl(d, phi, s, mode, 0, 0));
    }

    const StateVector g = objective.generated_state(theta_g);
    out.generated = out.weight * zero_probability_impl(d, phi, g, mode, 0, 0);

    // u_j = D (e_j x |0>) for each oracle eigenvector; M_ji = <u_j|P0|u_i>.
    std::vector<StateVector> u;
    u.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        u.push_back(run_circuit(d, phi, spectrum.eigenstate(j).with_ancillas(1)));
    }
    const std::size_t mask = std::size_t{1} << ancilla;
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = j; i < dim; ++i) {
            Complex acc{0.0, 0.0};
            for (std::size_t b = 0; b < u[i].dimension(); ++b) {
                if ((b & mask) == 0) {
                    acc += std::conj(u[j][b]) * u[i][b];
                }
            }
            m(j, i) = acc;
            m(i, j) = std::conj(acc);
        }
    }

    const Eigen::Map<const Eigen::VectorXcd> psi(g.amplitudes().data(),
                                                 static_cast<Eigen::Index>(g.dimension()));
    const Eigen::VectorXcd alpha = spectrum.eigenvectors.adjoint() * psi;
    for (std::size_t i = 0; i < dim; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        Complex cross{0.0, 0.0};
        for (std::size_t j = 0; j < dim; ++j) {
            if (j != i) {
                cross += std::conj(alpha(static_cast<Eigen::Index>(j))) *
                         m(static_cast<Eigen::Index>(j), ii);
            }
        }
        const Complex k = out.weight * alpha(ii) * cross;
        out.cross_terms.push_back(k);
        out.k_cross.push_back(std::abs(k));
        out.K_eigen.push_back(out.weight * m(ii, ii).real());
        out.alpha_squared.push_back(std::norm(alpha(ii)));
    }
    return out;
}

} // namespace dvqe
