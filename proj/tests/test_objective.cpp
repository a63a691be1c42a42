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
#include <random>

#include <gtest/gtest.h>

#include "dvqe/ansatz.hpp"
#include "dvqe/error.hpp"
#include "dvqe/objective.hpp"
#include "dvqe/oracle.hpp"
#include "test_support.hpp"

namespace dvqe {
namespace {

struct Fixture {
    PauliSum h = test::random_pauli_sum(2, 8, 31);
    AnsatzSpec gen{2, 2, parse_axes("YX"), EntanglerKind::CZ};
    AnsatzSpec disc{3, 3, parse_axes("YX"), EntanglerKind::CZ};
    Spectrum spectrum = exact_spectrum(h);
    Ladder ladder{h, {}, 2.0};
    std::mt19937_64 rng{17};

    Fixture() {
        // Two random known states standing in for converged levels.
        for (int i = 0; i < 2; ++i) {
            ladder.levels.push_back({test::random_angles(gen.parameter_count(), rng), gen, 0.0});
        }
    }

    DiscriminativeObjective objective() const {
        return DiscriminativeObjective(h, build_generator(gen), build_discriminator(disc),
                                       ladder.states(), ladder.gamma);
    }
};

TEST(Objective, AcceptanceOperatorReproducesZeroProbability) {
    Fixture f;
    const auto obj = f.objective();
    const auto phi = test::random_angles(f.disc.parameter_count(), f.rng);
    const Eigen::MatrixXcd a = obj.acceptance_operator(phi);
    EXPECT_TRUE(a.isApprox(a.adjoint(), 1e-12));
    for (int i = 0; i < 4; ++i) {
        const StateVector s = test::random_state(2, f.rng);
        const test::Vec v = test::to_eigen(s);
        EXPECT_NEAR(obj.zero_probability(phi, s, ExactEvaluation{}, 0), v.dot(a * v).real(),
                    1e-12);
    }
}

TEST(Objective, CostsCombineTheirTerms) {
    Fixture f;
    const auto obj = f.objective();
    const auto theta = test::random_angles(f.gen.parameter_count(), f.rng);
    const auto phi = test::random_angles(f.disc.parameter_count(), f.rng);
    const ExactEvaluation ex;
    const StateVector g = obj.generated_state(theta);
    const double p0 = obj.zero_probability(phi, g, ex, 0);
    EXPECT_NEAR(obj.generator_cost(theta, phi, ex, 0), obj.energy(theta, ex, 0) + 2.0 * p0, 1e-12);
    const double known = obj.known_zero_probability(phi, ex, 0);
    EXPECT_NEAR(obj.discriminator_cost(phi, theta, ex, 0), p0 - known, 1e-12);
    EXPECT_NEAR(c_gen(theta, phi, f.ladder, f.gen, f.disc, ex),
                obj.generator_cost(theta, phi, ex, 0), 1e-12);
    EXPECT_NEAR(c_disc(phi, theta, f.ladder, f.gen, f.disc, ex),
                obj.discriminator_cost(phi, theta, ex, 0), 1e-12);
}

TEST(Objective, DiscriminatorCostNeedsKnownStates) {
    Fixture f;
    f.ladder.levels.clear();
    const std::vector<double> theta(f.gen.parameter_count(), 0.0);
    const std::vector<double> phi(f.disc.parameter_count(), 0.0);
    EXPECT_THROW((void)c_disc(phi, theta, f.ladder, f.gen, f.disc, ExactEvaluation{}), Error);
}

TEST(Objective, SampledEstimatesAreReproducibleAndClose) {
    Fixture f;
    const auto obj = f.objective();
    const auto theta = test::random_angles(f.gen.parameter_count(), f.rng);
    SampledEvaluation s;
    s.shots = 8000;
    s.seed = 5;
    const double exact = obj.energy(theta, ExactEvaluation{}, 0);
    const double a = obj.energy(theta, s, 42);
    EXPECT_EQ(a, obj.energy(theta, s, 42));
    EXPECT_NE(a, obj.energy(theta, s, 43));
    EXPECT_NEAR(a, exact, 0.1);
}

TEST(Gamma, ScalesWithLevelAndSafety) {
    const PauliSum h = parse_pauli_sum("1 ZZ\n0.5 XI\n");
    const double range = 2 * std::sqrt(1.25);
    GammaOptions o;
    EXPECT_NEAR(select_gamma(h, 1, o), 1.2 * 2 * range, 1e-12);
    EXPECT_NEAR(select_gamma(h, 3, o), 1.2 * 4 * range, 1e-12);
    o.cap_at_range = true;
    EXPECT_NEAR(select_gamma(h, 3, o), 1.2 * 2 * range, 1e-12);
    EXPECT_NEAR(select_gamma(h, 1, o), 1.2 * 2 * range, 1e-12);
    EXPECT_THROW((void)select_gamma(h, 0, o), Error);
    o.safety = 0.9;
    EXPECT_THROW((void)select_gamma(h, 1, o), Error);
}

TEST(Gamma, InverseVqeEstimatesRange) {
    const PauliSum h = test::random_pauli_sum(2, 8, 4);
    GammaOptions o;
    o.method = GammaMethod::InverseVqe;
    o.vqe_ansatz = {2, 3, parse_axes("YXZ"), EntanglerKind::CZ};
    const Spectrum s = exact_spectrum(h);
    EXPECT_NEAR(estimate_min_energy(h, o), s.energy(0), 1e-6);
    EXPECT_NEAR(estimate_max_energy(h, o), s.energy(3), 1e-6);
}

TEST(Diagnostics, WeightsAndDecompositionAreConsistent) {
    Fixture f;
    const auto obj = f.objective();
    const auto theta = test::random_angles(f.gen.parameter_count(), f.rng);
    const auto phi = test::random_angles(f.disc.parameter_count(), f.rng);
    const auto d = diagnostics(phi, theta, obj, f.spectrum);
    EXPECT_DOUBLE_EQ(d.weight, 0.5);
    ASSERT_EQ(d.K.size(), 2u);
    double alpha = 0.0;
    for (double a : d.alpha_squared) {
        alpha += a;
    }
    EXPECT_NEAR(alpha, 1.0, 1e-12);
    // P0(g) = sum_i |a_i|^2 P0(u_i) + cross terms.
    double recon = 0.0;
    for (std::size_t i = 0; i < d.K_eigen.size(); ++i) {
        recon += d.alpha_squared[i] * d.K_eigen[i] + d.cross_terms[i].real();
    }
    EXPECT_NEAR(recon, d.generated, 1e-10);
    SampledEvaluation s;
    EXPECT_THROW((void)diagnostics(phi, theta, obj, f.spectrum, s), Error);
}

TEST(Ladder, MonotoneCheck) {
    Fixture f;
    f.ladder.levels[0].energy = -1.0;
    f.ladder.levels[1].energy = -0.5;
    EXPECT_TRUE(f.ladder.is_monotone());
    f.ladder.levels[1].energy = -1.1;
    EXPECT_FALSE(f.ladder.is_monotone());
}

} // namespace
} // namespace dvqe
