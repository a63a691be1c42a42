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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dvqe/ansatz.hpp"
#include "dvqe/pauli.hpp"
#include "dvqe/simulator.hpp"

namespace dvqe {

/// Full eigendecomposition; eigenvalues ascending, eigenvectors as columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    [[nodiscard]] std::size_t size() const {
        return static_cast<std::size_t>(eigenvalues.size());
    }
    [[nodiscard]] double energy(std::size_t level) const {
        return eigenvalues(static_cast<Eigen::Index>(level));
    }
    [[nodiscard]] StateVector eigenstate(std::size_t level) const;
    /// E_max - E_min
    [[nodiscard]] double range() const {
        return eigenvalues(eigenvalues.size() - 1) - eigenvalues(0);
    }
};

[[nodiscard]] Spectrum exact_spectrum(const PauliSum &h);

/// |<0|G(a)^dag G(b)|0>|^2 for two parameter vectors of the same generator.
[[nodiscard]] double overlaps(std::span<const double> theta_a, std::span<const double> theta_b,
                              const AnsatzSpec &spec);

/// |<s_i|psi>|^2 for every oracle eigenvector s_i.
[[nodiscard]] std::vector<double> alpha_decomposition(const StateVector &state,
                                                      const Spectrum &spectrum);
[[nodiscard]] std::vector<double> alpha_decomposition(std::span<const double> theta,
                                                      const AnsatzSpec &spec,
                                                      const Spectrum &spectrum);

/// Weight of `state` in the eigenspace of `level`, including every eigenvector
/// degenerate with it within `tolerance`.
[[nodiscard]] double eigenspace_weight(const StateVector &state, const Spectrum &spectrum,
                                       std::size_t level, double tolerance = 1e-8);

} // namespace dvqe
