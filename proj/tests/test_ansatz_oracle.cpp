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
#include <random>

#include <gtest/gtest.h>

#include "dvqe/ansatz.hpp"
#include "dvqe/error.hpp"
#include "dvqe/oracle.hpp"
#include "test_support.hpp"

namespace dvqe {
namespace {

TEST(Ansatz, ParameterCounts) {
    const AnsatzSpec spec{3, 4, parse_axes("YXZ"), EntanglerKind::CZ};
    EXPECT_EQ(spec.parameter_count(), 36u);
    EXPECT_EQ(build_generator(spec).parameter_count(), 36u);
}

TEST(Ansatz, AxesParsing) {
    EXPECT_EQ(axes_string(parse_axes("YX")), "YX");
    EXPECT_THROW((void)parse_axes("YW"), Error);
    EXPECT_THROW((AnsatzSpec{2, 1, {}, EntanglerKind::CZ}.validate()), Error);
}

TEST(Ansatz, DiscriminatorNeedsSystemQubit) {
    EXPECT_THROW((void)build_discriminator({1, 1, parse_axes("Y"), EntanglerKind::CZ}), Error);
}

TEST(Ansatz, BuiltInPresets) {
    const AnsatzPreset h2 = ansatz_preset("h2");
    EXPECT_EQ(generator_spec(h2, 2, 1).parameter_count(), 8u);
    EXPECT_EQ(discriminator_spec(h2, 2, 1).parameter_count(), 18u);
    EXPECT_EQ(discriminator_spec(h2, 2, 1).qubit_count, 3u);
    const AnsatzPreset lih = ansatz_preset("lih");
    EXPECT_EQ(axes_string(lih.axes), "YXZ");
    EXPECT_THROW((void)ansatz_preset("water"), Error);
}

TEST(Ansatz, DepthScheduleExtendsByTwoLayersPerLevel) {
    const DepthSchedule d{{2, 3}, {4, 5}};
    EXPECT_EQ(depth_for_level(d, 0), std::make_pair(std::size_t{2}, std::size_t{4}));
    EXPECT_EQ(depth_for_level(d, 1), std::make_pair(std::size_t{3}, std::size_t{5}));
    EXPECT_EQ(depth_for_level(d, 4), std::make_pair(std::size_t{9}, std::size_t{11}));
    EXPECT_THROW((DepthSchedule{{3, 2}, {1}}.validate()), Error);
}

TEST(Ansatz, GrowingPreservesPreparedState) {
    std::mt19937_64 rng(6);
    for (const char *axes : {"YX", "YXZ"}) {
        const AnsatzSpec from{3, 2, parse_axes(axes), EntanglerKind::CZ};
        const auto theta = test::random_angles(from.parameter_count(), rng);
        AnsatzSpec to = from;
        to.layers = 5;
        const auto grown = grow_generator_parameters(theta, from, to.layers);
        ASSERT_EQ(grown.size(), to.parameter_count());
        const StateVector a = run_circuit(build_generator(from), theta);
        const StateVector b = run_circuit(build_generator(to), grown);
        EXPECT_NEAR(overlap_squared(a, b), 1.0, 1e-12);
    }
}

TEST(Ansatz, GrowingDiscriminatorPreservesAcceptance) {
    std::mt19937_64 rng(8);
    const AnsatzSpec from{3, 3, parse_axes("YX"), EntanglerKind::CZ};
    const auto phi = test::random_angles(from.parameter_count(), rng);
    AnsatzSpec to = from;
    to.layers = 6;
    const auto grown = grow_discriminator_parameters(phi, from, to.layers);
    for (int i = 0; i < 3; ++i) {
        const StateVector in = test::random_state(2, rng).with_ancillas();
        EXPECT_NEAR(ancilla_zero_probability(run_circuit(build_discriminator(from), phi, in), 2),
                    ancilla_zero_probability(run_circuit(build_discriminator(to), grown, in), 2),
                    1e-12);
    }
}

TEST(Oracle, AnalyticSpectrum) {
    // ZZ + 0.5 XI: eigenvalues +-sqrt(1.25), each twice.
    const Spectrum s = exact_spectrum(parse_pauli_sum("1 ZZ\n0.5 XI\n"));
    const double r = std::sqrt(1.25);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_NEAR(s.energy(0), -r, 1e-12);
    EXPECT_NEAR(s.energy(1), -r, 1e-12);
    EXPECT_NEAR(s.energy(2), r, 1e-12);
    EXPECT_NEAR(s.energy(3), r, 1e-12);
    EXPECT_NEAR(s.range(), 2 * r, 1e-12);
}

TEST(Oracle, EigenpairsSatisfyEquation) {
    const PauliSum h = test::random_pauli_sum(3, 20, 9);
    const Spectrum s = exact_spectrum(h);
    const test::Mat m = test::dense_reference(h);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const test::Vec v = test::to_eigen(s.eigenstate(i));
        EXPECT_LT((m * v - s.energy(i) * v).norm(), 1e-10);
        if (i > 0) {
            EXPECT_LE(s.energy(i - 1), s.energy(i));
        }
    }
}

TEST(Oracle, AlphaDecompositionSumsToOne) {
    std::mt19937_64 rng(2);
    const Spectrum s = exact_spectrum(test::random_pauli_sum(2, 6, 3));
    const auto alpha = alpha_decomposition(test::random_state(2, rng), s);
    double total = 0.0;
    for (double a : alpha) {
        total += a;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Oracle, EigenspaceWeightHandlesDegeneracy) {
    const Spectrum s = exact_spectrum(parse_pauli_sum("1 ZZ\n0.5 XI\n"));
    const StateVector v = s.eigenstate(1);
    EXPECT_NEAR(eigenspace_weight(v, s, 0), 1.0, 1e-12);
    EXPECT_NEAR(eigenspace_weight(v, s, 2), 0.0, 1e-12);
}

TEST(Oracle, RefusesAboveGuard) {
    std::string axes(kDenseQubitGuard + 1, 'Z');
    EXPECT_THROW((void)exact_spectrum(parse_pauli_sum("1 " + axes + "\n")), CapacityError);
}

} // namespace
} // namespace dvqe
