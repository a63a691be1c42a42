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
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dvqe/ansatz.hpp"
#include "dvqe/optim.hpp"
#include "dvqe/pauli.hpp"
#include "test_support.hpp"

namespace dvqe {
namespace {

Objective energy_cost(const Circuit &c, const PauliSum &h) {
    return [&c, &h](std::span<const double> p, std::uint64_t) {
        return expectation_exact(run_circuit(c, p), h);
    };
}

TEST(ParameterShift, MatchesCentralDifference) {
    std::mt19937_64 rng(12);
    const PauliSum h = test::random_pauli_sum(3, 12, 4);
    const Circuit c = build_generator({3, 2, parse_axes("YXZ"), EntanglerKind::CZ});
    const Objective f = energy_cost(c, h);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = test::random_angles(c.parameter_count(), rng);
        const auto grad = parameter_shift_gradients(f, p);
        for (std::size_t i = 0; i < p.size(); i += 5) {
            const double eps = 1e-5;
            auto plus = p;
            auto minus = p;
            plus[i] += eps;
            minus[i] -= eps;
            const double fd = (f(plus, 0) - f(minus, 0)) / (2 * eps);
            EXPECT_NEAR(grad[i], fd, 1e-7);
            EXPECT_NEAR(parameter_shift_gradient(f, p, i), grad[i], 1e-14);
        }
    }
}

TEST(WrapAngle, StaysInHalfOpenInterval) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(wrap_angle(3 * pi), pi, 1e-12);
    EXPECT_NEAR(wrap_angle(-pi), pi, 1e-12);
    EXPECT_NEAR(wrap_angle(0.5), 0.5, 1e-15);
    EXPECT_NEAR(wrap_angle(-7.0), -7.0 + 2 * pi, 1e-12);
}

TEST(Rotosolve, UpdateMinimizesSinusoid) {
    // f(x) = a + b cos(x - c) has its minimum at c + pi.
    const double a = 0.3;
    const double b = 1.7;
    const double c = 0.9;
    const Objective f = [&](std::span<const double> p, std::uint64_t) {
        return a + b * std::cos(p[0] - c);
    };
    std::vector<double> p{-2.0};
    const auto u = rotosolve_update(f, p, 0);
    EXPECT_NEAR(wrap_angle(u.new_value - (c + std::numbers::pi)), 0.0, 1e-12);
    EXPECT_NEAR(u.predicted, a - b, 1e-12);
    EXPECT_NEAR(f(p, 0), a - b, 1e-12);
}

TEST(Rotosolve, SweepDoesNotIncreaseCost) {
    std::mt19937_64 rng(3);
    const PauliSum h = test::random_pauli_sum(2, 8, 6);
    const Circuit c = build_generator({2, 2, parse_axes("YX"), EntanglerKind::CZ});
    const Objective f = energy_cost(c, h);
    auto p = test::random_angles(c.parameter_count(), rng);
    double last = f(p, 0);
    for (int s = 0; s < 5; ++s) {
        const auto sweep = rotosolve_sweep(f, p, 0, [&](const RotosolveUpdate &u) {
            EXPECT_LE(u.predicted, std::min({u.probe_zero, u.probe_plus, u.probe_minus}) + 1e-12);
        });
        EXPECT_EQ(sweep.updates, p.size());
        const double now = f(p, 0);
        EXPECT_LE(now, last + 1e-12);
        EXPECT_NEAR(now, sweep.predicted, 1e-10);
        last = now;
    }
}

TEST(Rotosolve, MinimizeReachesGroundEnergy) {
    const PauliSum h = parse_pauli_sum("1 ZZ\n0.5 XI\n");
    const Circuit c = build_generator({2, 2, parse_axes("YX"), EntanglerKind::CZ});
    std::vector<double> p(c.parameter_count(), 0.1);
    const auto r = rotosolve_minimize(energy_cost(c, h), p, 100, 1e-12);
    EXPECT_NEAR(r.value, -std::sqrt(1.25), 1e-8);
    EXPECT_TRUE(r.converged);
}

TEST(QuadraticSweep, MatchesGenericSweep) {
    std::mt19937_64 rng(21);
    for (const char *axes : {"YX", "YXZ"}) {
        for (auto ent : {EntanglerKind::CZ, EntanglerKind::CNOT}) {
            const Circuit c = build_discriminator({3, 2, parse_axes(axes), ent});
            QuadraticCost q;
            q.circuit = &c;
            q.inputs = {test::random_state(3, rng), test::random_state(3, rng),
                        test::random_state(3, rng)};
            q.weights = {1.0, -1.0, -0.5};
            q.observable = test::dense_reference(test::random_pauli_sum(3, 10, 77));
            const Objective generic = [&](std::span<const double> p, std::uint64_t) {
                return q(p);
            };
            auto p1 = test::random_angles(c.parameter_count(), rng);
            auto p2 = p1;
            std::vector<RotosolveUpdate> ua;
            std::vector<RotosolveUpdate> ub;
            const auto a = rotosolve_sweep(q, p1, [&](const RotosolveUpdate &u) { ua.push_back(u); });
            const auto b =
                rotosolve_sweep(generic, p2, 0, [&](const RotosolveUpdate &u) { ub.push_back(u); });
            ASSERT_EQ(ua.size(), ub.size());
            for (std::size_t i = 0; i < p1.size(); ++i) {
                EXPECT_NEAR(p1[i], p2[i], 1e-9);
                EXPECT_NEAR(ua[i].probe_plus, ub[i].probe_plus, 1e-10);
            }
            EXPECT_NEAR(a.predicted, b.predicted, 1e-10);
        }
    }
}

TEST(Rprop, StepSizesAdaptToSignHistory) {
    RpropConfig cfg;
    std::vector<double> p{0.0, 0.0};
    RpropState st(2, cfg);
    rprop_apply(std::vector<double>{1.0, -1.0}, p, st, cfg);
    EXPECT_DOUBLE_EQ(p[0], -0.1);
    EXPECT_DOUBLE_EQ(p[1], 0.1);
    // Same sign: grow by eta_plus.
    rprop_apply(std::vector<double>{2.0, -3.0}, p, st, cfg);
    EXPECT_DOUBLE_EQ(st.delta[0], 0.1 * 1.2);
    EXPECT_DOUBLE_EQ(p[0], -0.1 - 0.12);
    // Sign flip: shrink, do not move, forget the gradient.
    const double before = p[1];
    rprop_apply(std::vector<double>{0.5, 4.0}, p, st, cfg);
    EXPECT_DOUBLE_EQ(st.delta[1], 0.12 * 0.5);
    EXPECT_DOUBLE_EQ(p[1], before);
    EXPECT_EQ(st.previous_gradient[1], 0.0);
}

TEST(Rprop, DeltaIsClamped) {
    RpropConfig cfg;
    cfg.delta_max = 0.15;
    std::vector<double> p{0.0};
    RpropState st(1, cfg);
    for (int i = 0; i < 10; ++i) {
        rprop_apply(std::vector<double>{1.0}, p, st, cfg);
    }
    EXPECT_DOUBLE_EQ(st.delta[0], 0.15);
}

TEST(Rprop, ConvergesOnSmallProblem) {
    const PauliSum h = parse_pauli_sum("1 ZZ\n0.5 XI\n");
    const Circuit c = build_generator({2, 2, parse_axes("YX"), EntanglerKind::CZ});
    const Objective f = energy_cost(c, h);
    std::vector<double> p(c.parameter_count(), 0.2);
    RpropState st(p.size(), {});
    for (int i = 0; i < 300; ++i) {
        (void)rprop_step(f, p, st);
    }
    EXPECT_NEAR(f(p, 0), -std::sqrt(1.25), 1e-4);
}

} // namespace
} // namespace dvqe
