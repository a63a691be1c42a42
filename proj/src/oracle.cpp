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
#include "dvqe/oracle.hpp"

#include <cmath>

#include "dvqe/error.hpp"

namespace dvqe {

StateVector Spectrum::eigenstate(std::size_t level) const {
    const auto col = eigenvectors.col(static_cast<Eigen::Index>(level));
    return StateVector(std::vector<Complex>(col.data(), col.data() + col.size()));
}

Spectrum exact_spectrum(const PauliSum &h) {
    const Eigen::MatrixXcd m = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double overlaps(std::span<const double> theta_a, std::span<const double> theta_b,
                const AnsatzSpec &spec) {
    const Circuit g = build_generator(spec);
    return overlap_squared(run_circuit(g, theta_a), run_circuit(g, theta_b));
}

std::vector<double> alpha_decomposition(const StateVector &state, const Spectrum &spectrum) {
    if (state.dimension() != spectrum.size()) {
        throw DimensionError("alpha decomposition: state dimension " +
                             std::to_string(state.dimension()) + " vs spectrum " +
                             std::to_string(spectrum.size()));
    }
    const Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(),
                                                 static_cast<Eigen::Index>(state.dimension()));
    const Eigen::VectorXcd alpha = spectrum.eigenvectors.adjoint() * psi;
    std::vector<double> weights(spectrum.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = std::norm(alpha(static_cast<Eigen::Index>(i)));
    }
    return weights;
}

std::vector<double> alpha_decomposition(std::span<const double> theta, const AnsatzSpec &spec,
                                        const Spectrum &spectrum) {
    return alpha_decomposition(run_circuit(build_generator(spec), theta), spectrum);
}

double eigenspace_weight(const StateVector &state, const Spectrum &spectrum, std::size_t level,
                         double tolerance) {
    const auto weights = alpha_decomposition(state, spectrum);
    const double target = spectrum.energy(level);
    double w = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (std::abs(spectrum.energy(i) - target) <= tolerance) {
            w += weights[i];
        }
    }
    return w;
}

} // namespace dvqe
