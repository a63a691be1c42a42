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
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dvqe/ansatz.hpp"
#include "dvqe/driver.hpp"
#include "dvqe/mitigation.hpp"
#include "dvqe/optim.hpp"
#include "dvqe/oracle.hpp"
#include "dvqe/pauli.hpp"
#include "dvqe/report.hpp"
#include "dvqe/seeding.hpp"
#include "test_support.hpp"

namespace {

using namespace dvqe;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Exact-mode ladders that converged, kept for the orthogonality check.
std::vector<LadderResult> g_ladders;

RunOptions exact_options(double tol, std::size_t outer, std::size_t disc_iters) {
    RunOptions o;
    o.theta_jitter = 0.1;
    o.schedule.convergence_tol = tol;
    o.schedule.outer_cycles = outer;
    o.schedule.disc_iters = disc_iters;
    return o;
}

AnsatzPreset make_preset(const char *axes, std::vector<std::size_t> gen,
                         std::vector<std::size_t> disc) {
    AnsatzPreset p = ansatz_preset("h2");
    p.name = "custom";
    p.axes = parse_axes(axes);
    p.depths = {std::move(gen), std::move(disc)};
    return p;
}

std::vector<double> level_errors(const LadderResult &r, const Spectrum &s) {
    std::vector<double> e;
    for (const auto &l : r.levels) {
        e.push_back(std::abs(l.energy - s.energy(l.level)));
    }
    return e;
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    const AnsatzPreset preset = make_preset("YX", {2}, {6});
    const RunOptions o = exact_options(1e-5, 200, 3);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const PauliSum h = test::random_pauli_sum(2, 15, 1000 + s);
        LadderResult r = solve_ladder(h, 4, preset, o);
        for (double e : level_errors(r, exact_spectrum(h))) {
            worst = std::max(worst, e);
        }
        if (r.all_converged()) {
            g_ladders.push_back(std::move(r));
        }
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-3 && t < 120.0,
            fmt("max error %.2e", worst) + fmt(", %.1f s", t)};
}

Outcome criterion2() {
    const auto t0 = Clock::now();
    // Upper levels need the discriminator to separate up to 7 states; shallower
    // stacks leave a bias that cascades up the ladder.
    const AnsatzPreset preset = make_preset("YXZ", {8}, {8, 12, 16, 20, 24, 24, 24});
    RunOptions o = exact_options(1e-6, 300, 6);
    o.schedule.gen_iters = 1;
    o.schedule.vqe_restarts = 3;
    o.gamma.cap_at_range = true;
    std::vector<double> errors;
    for (std::uint64_t s = 0; s < 3; ++s) {
        o.seed = s;
        const PauliSum h = test::random_pauli_sum(4, 24, 2000 + s);
        LadderResult r = solve_ladder(h, 7, preset, o);
        const auto e = level_errors(r, exact_spectrum(h));
        errors.insert(errors.end(), e.begin(), e.end());
        std::string per;
        for (double x : e) {
            per += fmt(" %.1e", x);
        }
        std::printf("  [2] seed %llu errors:%s\n", static_cast<unsigned long long>(s), per.c_str());
        std::fflush(stdout);
        if (r.all_converged()) {
            g_ladders.push_back(std::move(r));
        }
    }
    const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) /
                        static_cast<double>(errors.size());
    const double worst = *std::max_element(errors.begin(), errors.end());
    const double t = seconds_since(t0);
    return {mean <= 1e-3 && worst <= 2.5e-3 && t < 900.0,
            fmt("mean %.2e", mean) + fmt(", max %.2e", worst) + fmt(", %.1f s", t)};
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    // A seeded instance with a clear, non-degenerate first gap.
    PauliSum h = test::random_pauli_sum(2, 15, 3000);
    for (std::uint64_t s = 3001;; ++s) {
        const Spectrum sp = exact_spectrum(h);
        if (sp.energy(1) - sp.energy(0) > 0.3 && sp.energy(2) - sp.energy(1) > 0.3) {
            break;
        }
        h = test::random_pauli_sum(2, 15, s);
    }
    const Spectrum sp = exact_spectrum(h);
    const double gap = sp.energy(1) - sp.energy(0);
    const AnsatzSpec gen{2, 2, parse_axes("YX"), EntanglerKind::CZ};
    const AnsatzSpec disc{3, 6, parse_axes("YX"), EntanglerKind::CZ};
    const RunOptions o = exact_options(1e-6, 300, 3);
    const GroundResult g = solve_ground(h, gen, o);

    auto run = [&](double factor) {
        Ladder ladder{h, {{g.theta, gen, g.energy}}, factor * gap};
        return solve_excited(ladder, gen, disc, o).energy;
    };
    // A best-response discriminator leaves g = cos(a) s0 + sin(a) s1 with
    // sin(a) = gamma / (2 gap) while gamma < 2 gap.
    auto predicted = [&](double factor) {
        const double s = std::min(factor / 2.0, 1.0);
        return sp.energy(0) + s * s * gap;
    };
    const double low = run(0.5);
    const double high = run(1.2);
    const double beyond = run(2.5);
    const double t = seconds_since(t0);
    const bool pass = std::abs(low - sp.energy(0)) <= 1e-3 &&
                      std::abs(high - sp.energy(1)) <= 1e-3 && t < 60.0;
    return {pass, fmt("gamma=0.5 gap: E-E0 %.2e", low - sp.energy(0)) +
                      fmt(" (equilibrium %.2e)", predicted(0.5) - sp.energy(0)) +
                      fmt("; gamma=1.2 gap: E-E1 %.2e", high - sp.energy(1)) +
                      fmt(" (equilibrium %.2e)", predicted(1.2) - sp.energy(1)) +
                      fmt("; gamma=2.5 gap: E-E1 %.2e", beyond - sp.energy(1)) +
                      fmt(", %.1f s", t)};
}

Outcome criterion4() {
    double worst_overlap = 0.0;
    double worst_drop = 0.0;
    for (const auto &r : g_ladders) {
        const auto states = r.ladder.states();
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = i + 1; j < states.size(); ++j) {
                worst_overlap = std::max(worst_overlap, overlap_squared(states[i], states[j]));
            }
            if (i > 0) {
                worst_drop = std::max(worst_drop, r.levels[i - 1].energy - r.levels[i].energy);
            }
        }
    }
    return {!g_ladders.empty() && worst_overlap < 1e-3 && worst_drop <= 2e-4,
            std::to_string(g_ladders.size()) + " ladders" +
                fmt(", max overlap %.2e", worst_overlap) +
                fmt(", max energy drop %.2e", worst_drop)};
}

// Random circuit shape, Hamiltonian and angles for the optimizer checks.
struct RandomProblem {
    Circuit circuit;
    PauliSum h;
    std::vector<double> theta;
};

RandomProblem random_problem(std::mt19937_64 &rng) {
    static const char *kAxes[] = {"Y", "YX", "YXZ", "XZ", "ZY"};
    const std::size_t n = 1 + rng() % 4;
    const AnsatzSpec spec{n, 1 + rng() % 3, parse_axes(kAxes[rng() % 5]),
                          rng() % 2 ? EntanglerKind::CZ : EntanglerKind::CNOT};
    Circuit c = build_generator(spec);
    auto theta = test::random_angles(c.parameter_count(), rng);
    return {std::move(c), test::random_pauli_sum(n, 3 * n, rng()), std::move(theta)};
}

Objective energy_of(const RandomProblem &p) {
    return [&p](std::span<const double> x, std::uint64_t) {
        return expectation_exact(run_circuit(p.circuit, x), p.h);
    };
}

Outcome criterion5() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(5005);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const RandomProblem p = random_problem(rng);
        const Objective f = energy_of(p);
        const std::size_t i = rng() % p.theta.size();
        const double shift = parameter_shift_gradient(f, p.theta, i);
        const double eps = 1e-5;
        auto plus = p.theta;
        auto minus = p.theta;
        plus[i] += eps;
        minus[i] -= eps;
        const double fd = (f(plus, 0) - f(minus, 0)) / (2 * eps);
        worst = std::max(worst, std::abs(shift - fd));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-6 && t < 30.0, fmt("max |shift - fd| %.2e", worst) + fmt(", %.2f s", t)};
}

Outcome criterion6() {
    std::mt19937_64 rng(6006);
    double worst_probe = -1e300;
    double worst_grid = -1e300;
    std::size_t updates = 0;
    for (int k = 0; k < 20; ++k) {
        const RandomProblem p = random_problem(rng);
        const Objective f = energy_of(p);
        auto theta = p.theta;
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (std::size_t i = 0; i < theta.size(); ++i) {
                const auto u = rotosolve_update(f, theta, i);
                const double after = f(theta, 0);
                worst_probe = std::max(
                    worst_probe, after - std::min({u.probe_zero, u.probe_plus, u.probe_minus}));
                auto scan = theta;
                for (int g = 0; g < 100; ++g) {
                    scan[i] = -M_PI + 2 * M_PI * g / 100.0;
                    worst_grid = std::max(worst_grid, after - f(scan, 0));
                }
                ++updates;
            }
        }
    }
    return {worst_probe <= 1e-12 && worst_grid <= 1e-8,
            std::to_string(updates) + " updates" +
                fmt(", post - min(probes) %.1e", worst_probe) +
                fmt(", post - min(grid) %.1e", worst_grid)};
}

Outcome criterion7() {
    const auto noise = ReadoutNoise::uniform(0.02, 0.02);
    const ConfusionMatrix cm = calibrate(3, 8000, noise, derive_seed(7007, {0}));
    std::mt19937_64 rng(7007);
    double raw_err = 0.0;
    double mit_err = 0.0;
    double worst_sum = 0.0;
    double floor_err = 0.0; // noiseless sampling: the shot-noise floor
    for (int k = 0; k < 20; ++k) {
        const Circuit c = build_discriminator({3, 2, parse_axes("YX"), EntanglerKind::CZ});
        const auto phi = test::random_angles(c.parameter_count(), rng);
        const StateVector s = run_circuit(c, phi);
        const double exact = ancilla_zero_probability(s, 2);
        const auto hist = sample_bitstrings(s, 8000, noise, derive_seed(7007, {1, std::uint64_t(k)}));
        const std::vector<double> counts(hist.counts().begin(), hist.counts().end());
        raw_err += std::abs(marginal_zero_probability(counts, 2) - exact);
        const auto clean =
            sample_bitstrings(s, 8000, std::nullopt, derive_seed(7007, {2, std::uint64_t(k)}));
        const std::vector<double> clean_counts(clean.counts().begin(), clean.counts().end());
        floor_err += std::abs(marginal_zero_probability(clean_counts, 2) - exact);
        const auto out = mitigate(hist, cm);
        mit_err += std::abs(marginal_zero_probability(out.counts, 2) - exact);
        const double total = std::accumulate(out.counts.begin(), out.counts.end(), 0.0);
        worst_sum = std::max(worst_sum, std::abs(total - 8000.0));
    }
    raw_err /= 20;
    mit_err /= 20;
    floor_err /= 20;
    return {mit_err <= raw_err / 5 && worst_sum <= 1e-9,
            fmt("mean error raw %.2e", raw_err) + fmt(", mitigated %.2e", mit_err) +
                fmt(" (ratio %.2f)", mit_err / raw_err) +
                fmt(", noiseless sampling %.2e", floor_err) +
                fmt(", max |sum - shots| %.1e", worst_sum)};
}

Outcome criterion8() {
    const auto t0 = Clock::now();
    const PauliSum h = load_pauli_sum(DVQE_DATA_DIR "/h2/h2_0.741.txt");
    const Spectrum sp = exact_spectrum(h);
    std::size_t good = 0;
    std::string detail;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        RunOptions o;
        o.seed = seed;
        o.theta_jitter = 0.1;
        o.gamma.cap_at_range = true;
        const auto noise = ReadoutNoise::uniform(0.02, 0.02);
        SampledEvaluation m;
        m.noise = noise;
        m.system_mitigation = std::make_shared<ConfusionMatrix>(
            calibrate(2, 8192, noise, derive_seed(seed, {0xCA1, 0})));
        m.register_mitigation = std::make_shared<ConfusionMatrix>(
            calibrate(3, 8192, noise, derive_seed(seed, {0xCA1, 1})));
        o.mode = m;
        const LadderResult r = solve_ladder(h, 2, ansatz_preset("h2"), o);
        const double e0 = std::abs(r.levels[0].energy - sp.energy(0));
        const double e1 = std::abs(r.levels[1].energy - sp.energy(1));
        good += (e0 <= 1e-2 && e1 <= 1e-2) ? 1 : 0;
        detail += fmt(" %.1e", e0) + fmt("/%.1e", e1);
    }
    const double t = seconds_since(t0);
    return {good >= 3 && t < 600.0,
            std::to_string(good) + "/5 seeds within 1e-2 (E0/E1 errors:" + detail + ")" +
                fmt(", %.1f s", t)};
}

Outcome criterion9() {
    const PauliSum h = load_pauli_sum(DVQE_DATA_DIR "/h2/h2_0.741.txt");
    RunOptions o;
    o.schedule.disc_iters = 2;
    o.schedule.gen_iters = 2;
    o.schedule.outer_cycles = 4;
    o.schedule.early_stop = false;
    const LadderResult r = solve_ladder(h, 2, ansatz_preset("h2"), o);
    const auto lines = r.calls.arithmetic();
    return {r.calls.total_for_level(1) == 208,
            std::to_string(r.calls.total_for_level(1)) + " requests for the first excited level (" +
                (lines.size() > 1 ? lines[1] : std::string("?")) + ")"};
}

Outcome criterion10() {
    const PauliSum h = test::random_pauli_sum(2, 15, 10010);
    const auto oracle = oracle_energies(h);
    RunOptions exact = exact_options(1e-5, 200, 3);
    exact.seed = 10;
    RunOptions sampled = exact;
    sampled.schedule.outer_cycles = 6;
    sampled.gamma.cap_at_range = true;
    SampledEvaluation m;
    m.noise = ReadoutNoise::uniform(0.02, 0.02);
    sampled.mode = m;
    const AnsatzPreset p = ansatz_preset("h2");
    bool same = true;
    for (const RunOptions *o : {&exact, &sampled}) {
        const std::string a = ladder_csv(solve_ladder(h, 3, p, *o), oracle);
        const std::string b = ladder_csv(solve_ladder(h, 3, p, *o), oracle);
        same = same && a == b;
    }
    const SweepReport ra = sweep({{0.5, h}, {0.6, h}}, 0, 2, p, exact);
    const SweepReport rb = sweep({{0.5, h}, {0.6, h}}, 0, 2, p, exact);
    const std::vector<SweepOracle> so{{0.5, oracle}, {0.6, oracle}};
    same = same && sweep_csv(ra, so, 2) == sweep_csv(rb, so, 2);
    return {same, same ? "exact, sampled and sweep CSVs byte-identical across runs"
                       : "CSV outputs differ between identical runs"};
}

} // namespace

std::set<std::size_t> number_list(const std::string &text) {
    std::set<std::size_t> out;
    std::size_t p = 0;
    while (p < text.size()) {
        const std::size_t q = std::min(text.find(',', p), text.size());
        out.insert(std::stoul(text.substr(p, q - p)));
        p = q + 1;
    }
    return out;
}

// Usage: dvqe_acceptance [--known-failures=3,7] [criterion ...]
// Bare numbers pick criteria; criterion 4 reuses ladders from 1 and 2. Known
// failures still print FAIL but do not count towards the exit code.
int main(int argc, char **argv) {
    std::set<std::size_t> only;
    std::set<std::size_t> known;
    const std::string known_flag = "--known-failures=";
    for (int a = 1; a < argc; ++a) {
        const std::string arg = argv[a];
        if (arg.rfind(known_flag, 0) == 0) {
            known = number_list(arg.substr(known_flag.size()));
        } else {
            only.insert(std::stoul(arg));
        }
    }
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"random 2-qubit Hamiltonians, all 4 levels within 1e-3", criterion1},
        {"random 4-qubit ladders, 7 levels, mean 1e-3 / max 2.5e-3", criterion2},
        {"gamma below the gap collapses to E0, above it finds E1", criterion3},
        {"converged ladders orthogonal and non-decreasing", criterion4},
        {"parameter shift matches finite differences", criterion5},
        {"Rotosolve updates are exact coordinate minima", criterion6},
        {"readout mitigation cuts ancilla error five-fold", criterion7},
        {"noisy sampled H2 ground and first excited within 1e-2", criterion8},
        {"call bookkeeping reproduces 208 requests", criterion9},
        {"identical config and seed give identical CSVs", criterion10},
    };
    int failed = 0;
    int unexpected = 0;
    std::size_t ran = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(i + 1)) {
            continue;
        }
        ++ran;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) {
            ++failed;
            unexpected += known.count(i + 1) ? 0 : 1;
        }
        std::printf("[%s] criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed", failed, ran);
    if (!known.empty()) {
        std::printf(" (%d outside the known-failure list)", unexpected);
    }
    std::printf("\n");
    return unexpected;
}
