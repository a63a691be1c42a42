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
#include "dvqe/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "dvqe/error.hpp"
#include "dvqe/oracle.hpp"
#include "dvqe/seeding.hpp"

namespace dvqe {

namespace {

constexpr std::uint64_t kInitStream = 0x494E;
constexpr std::uint64_t kVqeStream = 0x5651;
constexpr std::uint64_t kDiscStream = 0x4453;
constexpr std::uint64_t kGenStream = 0x474E;
constexpr std::uint64_t kTraceStream = 0x5452;
constexpr std::uint64_t kFinalStream = 0x464E;
constexpr std::uint64_t kGammaStream = 0x474D;

std::vector<double> random_angles(std::size_t n, double half_width, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-half_width, half_width);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = dist(rng);
    }
    return v;
}

EvaluationMode mode_for(const RunOptions &options, std::size_t shots, std::uint64_t seed) {
    if (const auto *s = std::get_if<SampledEvaluation>(&options.mode)) {
        EvaluationMode out{std::in_place_type<SampledEvaluation>, *s};
        auto &m = std::get<SampledEvaluation>(out);
        m.shots = shots;
        m.seed = seed;
        return out;
    }
    return ExactEvaluation{};
}

bool window_converged(const std::vector<double> &trace, double tol, std::size_t window) {
    if (trace.size() < window + 1) {
        return false;
    }
    for (std::size_t k = trace.size() - window; k < trace.size(); ++k) {
        if (std::abs(trace[k] - trace[k - 1]) >= tol) {
            return false;
        }
    }
    return true;
}

// Reported energy: exact, or the mean of repeated final-shot estimates.
double final_energy(const DiscriminativeObjective &objective, std::span<const double> theta,
                    const RunOptions &options, std::uint64_t stream, std::size_t level) {
    if (is_exact(options.mode)) {
        return objective.energy(theta, ExactEvaluation{}, 0);
    }
    const StateVector g = objective.generated_state(theta);
    const std::size_t repeats = std::max<std::size_t>(options.shots.final_repeats, 1);
    double sum = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
        const auto mode = mode_for(options, options.shots.final_shots,
                                   derive_seed(options.seed, {stream, level, kFinalStream, r}));
        sum += objective.energy_of(g, mode, 0);
    }
    return sum / static_cast<double>(repeats);
}

// One optimizer iteration over `params`; returns the number of requests.
std::size_t optimizer_iteration(const Objective &cost, std::vector<double> &params,
                                const OptimizerConfig &config, RpropState &rprop,
                                std::uint64_t tag) {
    if (config.kind == OptimizerKind::Rotosolve) {
        rotosolve_sweep(cost, params, tag);
    } else {
        rprop_step(cost, params, rprop, config.rprop, tag);
    }
    return params.size();
}

bool use_quadratic(const RunOptions &options, std::size_t register_qubits) {
    return is_exact(options.mode) && options.optimizer.kind == OptimizerKind::Rotosolve &&
           register_qubits <= kQuadraticSweepMaxQubits;
}

Eigen::MatrixXcd ancilla_zero_projector(std::size_t register_qubits) {
    const std::size_t dim = std::size_t{1} << register_qubits;
    const std::size_t mask = std::size_t{1} << (register_qubits - 1);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < dim; ++x) {
        if ((x & mask) == 0) {
            p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
        }
    }
    return p;
}

} // namespace

void Schedule::validate() const {
    if (disc_iters == 0 || gen_iters == 0 || outer_cycles == 0 || convergence_window == 0 ||
        vqe_max_iters == 0 || warm_outer_cycles == 0 || warm_vqe_iters == 0) {
        throw Error("schedule counts must all be >= 1");
    }
    if (!(convergence_tol > 0.0) || !(vqe_tol > 0.0)) {
        throw Error("schedule tolerances must be > 0");
    }
}

void ShotSchedule::validate() const {
    if (shots_per_outer_cycle.empty()) {
        throw Error("shot schedule needs at least one entry");
    }
    if (std::any_of(shots_per_outer_cycle.begin(), shots_per_outer_cycle.end(),
                    [](std::size_t s) { return s == 0; }) ||
        final_shots == 0 || final_repeats == 0) {
        throw Error("shot counts must be >= 1");
    }
    if (!std::is_sorted(shots_per_outer_cycle.begin(), shots_per_outer_cycle.end())) {
        throw Error("shot schedule must be non-decreasing");
    }
}

std::size_t ShotSchedule::shots_for_cycle(std::size_t cycle) const {
    return shots_per_outer_cycle.at(std::min(cycle, shots_per_outer_cycle.size() - 1));
}

void CallCounter::record(const std::string &phase, std::size_t level, std::size_t cycle,
                         std::size_t iterations, std::size_t parameters) {
    entries_.push_back({phase, level, cycle, iterations, parameters, iterations * parameters});
}

std::size_t CallCounter::total() const {
    std::size_t t = 0;
    for (const auto &e : entries_) {
        t += e.requests;
    }
    return t;
}

std::size_t CallCounter::total_for_level(std::size_t level) const {
    std::size_t t = 0;
    for (const auto &e : entries_) {
        if (e.level == level) {
            t += e.requests;
        }
    }
    return t;
}

std::size_t CallCounter::total_for_phase(const std::string &phase) const {
    std::size_t t = 0;
    for (const auto &e : entries_) {
        if (e.phase == phase) {
            t += e.requests;
        }
    }
    return t;
}

std::vector<std::string> CallCounter::arithmetic() const {
    std::vector<std::string> lines;
    std::size_t max_level = 0;
    for (const auto &e : entries_) {
        max_level = std::max(max_level, e.level);
    }
    for (std::size_t level = 0; level <= max_level && !entries_.empty(); ++level) {
        std::ostringstream os;
        os << "level " << level << ":";
        std::size_t total = 0;
        bool any = false;
        for (const auto &e : entries_) {
            if (e.level != level) {
                continue;
            }
            os << (any ? " +" : "") << " [" << e.phase << " c" << e.cycle << "] "
               << e.iterations << " x " << e.parameters;
            total += e.requests;
            any = true;
        }
        if (any) {
            os << " = " << total;
            lines.push_back(os.str());
        }
    }
    return lines;
}

GroundResult solve_ground(const PauliSum &h, const AnsatzSpec &spec, const RunOptions &options,
                          const std::optional<std::vector<double>> &theta_init,
                          std::size_t max_iters, CallCounter *counter, std::uint64_t stream) {
    options.schedule.validate();
    if (spec.qubit_count != h.qubit_count()) {
        throw DimensionError("generator width does not match Hamiltonian");
    }
    const std::size_t iters = max_iters ? max_iters : options.schedule.vqe_max_iters;
    const DiscriminativeObjective objective(h, build_generator(spec),
                                            build_discriminator({h.qubit_count() + 1, 1,
                                                                 spec.axes, spec.entangler}),
                                            {}, 0.0);
    const std::size_t n_params = spec.parameter_count();
    const std::size_t restarts =
        (theta_init || !is_exact(options.mode)) ? 1
                                                : std::max<std::size_t>(
                                                      options.schedule.vqe_restarts, 1);

    const bool fast = use_quadratic(options, h.qubit_count());
    QuadraticCost quadratic;
    if (fast) {
        quadratic.circuit = &objective.generator();
        quadratic.inputs.emplace_back(h.qubit_count());
        quadratic.weights = {1.0};
        quadratic.observable = dense_matrix(h);
    }

    GroundResult best;
    best.energy = std::numeric_limits<double>::infinity();
    std::size_t global_iter = 0;
    for (std::size_t r = 0; r < restarts; ++r) {
        std::vector<double> theta;
        if (r == 0 && theta_init) {
            theta = *theta_init;
            if (theta.size() != n_params) {
                throw DimensionError("initial ground parameters do not match ansatz");
            }
        } else {
            const double width = r == 0 ? 0.1 : std::numbers::pi;
            theta = random_angles(n_params, width,
                                  derive_seed(options.seed, {stream, 0, kInitStream, r}));
        }
        RpropState rprop(n_params, options.optimizer.rprop);
        GroundResult run;
        run.trace.push_back(final_energy(objective, theta, options, stream, 0));
        for (std::size_t it = 0; it < iters; ++it, ++global_iter) {
            const auto mode = mode_for(options, options.shots.shots_for_cycle(it),
                                       derive_seed(options.seed, {stream, 0, kVqeStream,
                                                                  global_iter}));
            if (fast) {
                rotosolve_sweep(quadratic, theta);
            } else {
                const Objective cost = [&](std::span<const double> t, std::uint64_t tag) {
                    return objective.energy(t, mode, tag);
                };
                optimizer_iteration(cost, theta, options.optimizer, rprop, 0);
            }
            if (counter) {
                counter->record("vqe", 0, global_iter, 1, n_params);
            }
            ++run.iterations;
            if (is_exact(options.mode)) {
                run.trace.push_back(objective.energy(theta, ExactEvaluation{}, 0));
            } else {
                run.trace.push_back(objective.energy(
                    theta, mode, derive_seed(options.seed, {stream, 0, kTraceStream, global_iter})));
            }
            const double delta = std::abs(run.trace.back() - run.trace[run.trace.size() - 2]);
            const double tol =
                is_exact(options.mode) ? options.schedule.vqe_tol : options.schedule.convergence_tol;
            if (delta < tol) {
                run.converged = true;
                if (options.schedule.early_stop) {
                    break;
                }
            } else {
                run.converged = false;
            }
        }
        run.energy = final_energy(objective, theta, options, stream, 0);
        run.theta = std::move(theta);
        if (run.energy < best.energy) {
            const std::size_t total_iters = best.iterations + run.iterations;
            best = std::move(run);
            best.iterations = total_iters;
        } else {
            best.iterations += run.iterations;
        }
    }
    return best;
}

ExcitedResult solve_excited(Ladder &ladder, const AnsatzSpec &generator,
                            const AnsatzSpec &discriminator, const RunOptions &options,
                            const ExcitedStart &start, CallCounter *counter,
                            std::uint64_t stream) {
    options.schedule.validate();
    if (ladder.empty()) {
        throw Error("excited-state solve needs the ground state in the ladder");
    }
    const std::size_t level = ladder.size();
    const auto &h = ladder.hamiltonian;
    if (generator.qubit_count != h.qubit_count() ||
        discriminator.qubit_count != h.qubit_count() + 1) {
        throw DimensionError("ansatz widths do not match Hamiltonian plus ancilla");
    }

    ExcitedResult out;
    out.generator = generator;
    out.discriminator = discriminator;
    out.gamma = ladder.gamma;

    if (start.theta) {
        out.theta = *start.theta;
    } else {
        const auto &prev = ladder.levels.back();
        if (prev.generator.axes != generator.axes || prev.generator.entangler != generator.entangler) {
            throw Error("previous level's generator has a different layer structure");
        }
        out.theta = grow_generator_parameters(prev.theta, prev.generator, generator.layers);
    }
    if (options.theta_jitter > 0.0 && start.train_discriminator) {
        const auto kick = random_angles(out.theta.size(), options.theta_jitter,
                                        derive_seed(options.seed, {stream, level, kInitStream, 2}));
        for (std::size_t i = 0; i < out.theta.size(); ++i) {
            out.theta[i] += kick[i];
        }
    }
    out.phi = start.phi ? *start.phi
                        : random_angles(discriminator.parameter_count(), 0.1,
                                        derive_seed(options.seed,
                                                    {stream, level, kInitStream, 1}));
    if (out.theta.size() != generator.parameter_count() ||
        out.phi.size() != discriminator.parameter_count()) {
        throw DimensionError("initial parameters do not match the level's ansatz");
    }

    const DiscriminativeObjective objective(h, build_generator(generator),
                                            build_discriminator(discriminator), ladder.states(),
                                            ladder.gamma);
    const std::size_t cycles =
        start.outer_cycles ? start.outer_cycles : options.schedule.outer_cycles;
    const auto &sched = options.schedule;

    const bool fast = use_quadratic(options, discriminator.qubit_count);
    const Eigen::MatrixXcd h_dense = fast ? dense_matrix(h) : Eigen::MatrixXcd();
    const Eigen::MatrixXcd p0 =
        fast ? ancilla_zero_projector(discriminator.qubit_count) : Eigen::MatrixXcd();

    RpropState rprop_gen(out.theta.size(), options.optimizer.rprop);
    RpropState rprop_disc(out.phi.size(), options.optimizer.rprop);

    out.trace.push_back(is_exact(options.mode)
                            ? objective.energy(out.theta, ExactEvaluation{}, 0)
                            : objective.energy(out.theta,
                                               mode_for(options, options.shots.shots_for_cycle(0),
                                                        derive_seed(options.seed,
                                                                    {stream, level, kTraceStream,
                                                                     cycles})),
                                               0));
    for (std::size_t c = 0; c < cycles; ++c) {
        const std::size_t shots = options.shots.shots_for_cycle(c);
        if (start.train_discriminator) {
            const StateVector g = objective.generated_state(out.theta);
            QuadraticCost quadratic;
            if (fast) {
                quadratic.circuit = &objective.discriminator();
                quadratic.inputs.push_back(g.with_ancillas(1));
                quadratic.weights.push_back(1.0);
                for (const auto &s : objective.known_states()) {
                    quadratic.inputs.push_back(s.with_ancillas(1));
                    quadratic.weights.push_back(-1.0);
                }
                quadratic.observable = p0;
            }
            for (std::size_t it = 0; it < sched.disc_iters; ++it) {
                if (fast) {
                    rotosolve_sweep(quadratic, out.phi);
                    continue;
                }
                const auto mode =
                    mode_for(options, shots, derive_seed(options.seed, {stream, level, kDiscStream, c, it}));
                const Objective cost = [&](std::span<const double> phi, std::uint64_t tag) {
                    return objective.discriminator_cost(phi, g, mode, tag);
                };
                optimizer_iteration(cost, out.phi, options.optimizer, rprop_disc, 0);
            }
            if (counter) {
                counter->record("disc", level, c, sched.disc_iters, out.phi.size());
            }
            out.disc_trace.push_back(
                objective.discriminator_cost(out.phi, g, ExactEvaluation{}, 0));
        }
        QuadraticCost gen_quadratic;
        if (fast) {
            gen_quadratic.circuit = &objective.generator();
            gen_quadratic.inputs.emplace_back(h.qubit_count());
            gen_quadratic.weights = {1.0};
            gen_quadratic.observable = h_dense + ladder.gamma * objective.acceptance_operator(out.phi);
        }
        for (std::size_t it = 0; it < sched.gen_iters; ++it) {
            if (fast) {
                rotosolve_sweep(gen_quadratic, out.theta);
                continue;
            }
            const auto mode =
                mode_for(options, shots, derive_seed(options.seed, {stream, level, kGenStream, c, it}));
            const Objective cost = [&](std::span<const double> theta, std::uint64_t tag) {
                return objective.generator_cost(theta, out.phi, mode, tag);
            };
            optimizer_iteration(cost, out.theta, options.optimizer, rprop_gen, 0);
        }
        if (counter) {
            counter->record("gen", level, c, sched.gen_iters, out.theta.size());
        }
        ++out.cycles;
        if (is_exact(options.mode)) {
            out.trace.push_back(objective.energy(out.theta, ExactEvaluation{}, 0));
        } else {
            out.trace.push_back(objective.energy(
                out.theta, mode_for(options, shots, derive_seed(options.seed, {stream, level, kTraceStream, c})),
                0));
        }
        const std::size_t window = std::min(sched.convergence_window, cycles);
        out.converged = window_converged(out.trace, sched.convergence_tol, window);
        if (out.converged && sched.early_stop) {
            break;
        }
    }

    out.energy = final_energy(objective, out.theta, options, stream, level);
    if (options.diagnostics && is_exact(options.mode)) {
        out.diagnostics = diagnostics(out.phi, out.theta, objective, exact_spectrum(h));
    }
    const double previous = ladder.levels.back().energy;
    if (out.energy < previous - 2 * sched.convergence_tol) {
        std::ostringstream os;
        os.precision(10);
        os << "level " << level << " energy " << out.energy << " is below level " << level - 1
           << " energy " << previous << "; ladder is not monotone";
        out.warnings.push_back(os.str());
        if (!out.diagnostics && is_exact(options.mode)) {
            out.diagnostics = diagnostics(out.phi, out.theta, objective, exact_spectrum(h));
        }
    }
    ladder.levels.push_back({out.theta, generator, out.energy});
    return out;
}

bool LadderResult::all_converged() const {
    return std::all_of(levels.begin(), levels.end(),
                       [](const LevelRecord &r) { return r.converged; });
}

std::size_t LadderResult::total_cycles() const {
    std::size_t t = 0;
    for (const auto &r : levels) {
        t += r.cycles;
    }
    return t;
}

namespace {

double level_gamma(const PauliSum &h, std::size_t level, const RunOptions &options,
                   double ground_energy, std::uint64_t stream) {
    GammaOptions g = options.gamma;
    if (g.method == GammaMethod::InverseVqe) {
        g.ground_energy = ground_energy;
        g.seed = derive_seed(options.seed, {stream, level, kGammaStream});
        g.vqe_ansatz.qubit_count = h.qubit_count();
    }
    return select_gamma(h, level, g);
}

} // namespace

LadderResult solve_ladder(const PauliSum &h, std::size_t levels, const AnsatzPreset &preset,
                          const RunOptions &options, const LadderResult *warm,
                          std::uint64_t stream) {
    if (levels == 0) {
        throw Error("at least one level is required");
    }
    if (warm && warm->levels.size() < levels) {
        warm = nullptr;
    }
    const std::size_t n = h.qubit_count();
    LadderResult result(h);

    // Level 0.
    {
        const AnsatzSpec spec = generator_spec(preset, n, 0);
        GroundResult g;
        if (warm) {
            g = solve_ground(h, spec, options, warm->levels[0].theta,
                             options.schedule.warm_vqe_iters, &result.calls, stream);
            const bool settled =
                g.trace.size() >= 2 &&
                std::abs(g.trace.back() - g.trace[g.trace.size() - 2]) <
                    options.schedule.convergence_tol;
            if (!settled) {
                auto more = solve_ground(h, spec, options, g.theta, 0, &result.calls, stream);
                more.iterations += g.iterations;
                g = std::move(more);
            } else {
                g.converged = true;
            }
        } else {
            g = solve_ground(h, spec, options, std::nullopt, 0, &result.calls, stream);
        }
        LevelRecord rec;
        rec.level = 0;
        rec.theta = g.theta;
        rec.generator = spec;
        rec.energy = g.energy;
        rec.converged = g.converged;
        rec.cycles = g.iterations;
        rec.trace = g.trace;
        result.ladder.levels.push_back({g.theta, spec, g.energy});
        result.levels.push_back(std::move(rec));
    }

    for (std::size_t level = 1; level < levels; ++level) {
        const AnsatzSpec gen = generator_spec(preset, n, level);
        const AnsatzSpec disc = discriminator_spec(preset, n, level);
        result.ladder.gamma = level_gamma(h, level, options, result.ladder.levels[0].energy, stream);

        ExcitedStart start;
        if (warm) {
            start.theta = warm->levels[level].theta;
            start.phi = warm->levels[level].phi;
            start.train_discriminator = false;
            start.outer_cycles = options.schedule.warm_outer_cycles;
        } else if (const auto &prev = result.levels.back();
                   prev.discriminator && options.reuse_discriminator) {
            start.phi = grow_discriminator_parameters(prev.phi, *prev.discriminator, disc.layers);
        }

        ExcitedResult r =
            solve_excited(result.ladder, gen, disc, options, start, &result.calls, stream);
        if (warm) {
            const bool settled = r.trace.size() >= 2 &&
                                 std::abs(r.trace.back() - r.trace[r.trace.size() - 2]) <
                                     options.schedule.convergence_tol;
            if (settled) {
                r.converged = true;
            } else {
                // Reduced schedule did not settle: retrain the discriminator.
                result.ladder.levels.pop_back();
                ExcitedStart full;
                full.theta = r.theta;
                full.phi = r.phi;
                ExcitedResult again =
                    solve_excited(result.ladder, gen, disc, options, full, &result.calls, stream);
                again.cycles += r.cycles;
                r = std::move(again);
            }
        }
        for (auto &w : r.warnings) {
            result.warnings.push_back(w);
        }
        LevelRecord rec;
        rec.level = level;
        rec.theta = r.theta;
        rec.phi = r.phi;
        rec.generator = gen;
        rec.discriminator = disc;
        rec.energy = r.energy;
        rec.gamma = r.gamma;
        rec.converged = r.converged;
        rec.cycles = r.cycles;
        rec.trace = r.trace;
        rec.diagnostics = r.diagnostics;
        result.levels.push_back(std::move(rec));
    }
    return result;
}

bool SweepReport::all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const SweepPointResult &p) {
        return p.result && p.error.empty() && p.result->all_converged();
    });
}

SweepReport sweep(const std::vector<SweepPoint> &points, std::size_t anchor, std::size_t levels,
                  const AnsatzPreset &preset, const RunOptions &options) {
    if (points.empty()) {
        throw Error("sweep needs at least one point");
    }
    if (anchor >= points.size()) {
        throw Error("sweep anchor index out of range");
    }
    SweepReport report;
    report.points.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        report.points[i].distance = points[i].distance;
    }

    auto solve_point = [&](std::size_t i, std::optional<std::size_t> from) {
        auto &slot = report.points[i];
        const LadderResult *warm = nullptr;
        if (from && report.points[*from].result) {
            warm = &*report.points[*from].result;
            slot.warm_started = true;
            slot.seeded_from = *from;
        }
        try {
            slot.result = solve_ladder(points[i].hamiltonian, levels, preset, options, warm, i);
        } catch (const std::exception &e) {
            slot.error = e.what();
        }
    };

    solve_point(anchor, std::nullopt);
    // Nearest solved neighbour towards the anchor, if any.
    auto nearest = [&](std::size_t i, bool left) -> std::optional<std::size_t> {
        std::size_t j = i;
        while (j != anchor) {
            j = left ? j + 1 : j - 1;
            if (report.points[j].result) {
                return j;
            }
        }
        return std::nullopt;
    };
    for (std::size_t i = anchor; i-- > 0;) {
        solve_point(i, nearest(i, true));
    }
    for (std::size_t i = anchor + 1; i < points.size(); ++i) {
        solve_point(i, nearest(i, false));
    }
    return report;
}

} // namespace dvqe
