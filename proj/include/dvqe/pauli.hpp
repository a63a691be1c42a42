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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dvqe/simulator.hpp"

namespace dvqe {

class ConfusionMatrix;
struct MitigationOptions;

enum class PauliAxis : std::uint8_t { I, X, Y, Z };

[[nodiscard]] char to_char(PauliAxis axis);

/// c * (sigma_{axes[0]} on qubit 0) (x) (sigma_{axes[1]} on qubit 1) ...
struct PauliTerm {
    double coefficient = 0.0;
    std::vector<PauliAxis> axes;

    [[nodiscard]] std::uint64_t x_mask() const;
    [[nodiscard]] std::uint64_t z_mask() const;
    /// Qubits carrying a non-identity factor.
    [[nodiscard]] std::uint64_t support_mask() const;
    [[nodiscard]] bool is_identity() const { return support_mask() == 0; }
    [[nodiscard]] std::string axes_string() const;
};

/// Real-weighted sum of Pauli strings on a fixed number of qubits.
class PauliSum {
  public:
    PauliSum(std::size_t qubit_count, std::vector<PauliTerm> terms);

    [[nodiscard]] std::size_t qubit_count() const { return qubit_count_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    /// Sum with every coefficient negated.
    [[nodiscard]] PauliSum negated() const;

  private:
    std::size_t qubit_count_;
    std::vector<PauliTerm> terms_;
};

/// Parses `<coefficient> <axes>` lines; `#` starts a comment and blank lines
/// are skipped. Throws ParseError with the offending line number.
[[nodiscard]] PauliSum parse_pauli_sum(std::string_view text);
[[nodiscard]] PauliSum load_pauli_sum(const std::filesystem::path &path);
[[nodiscard]] std::string format_pauli_sum(const PauliSum &h);

/// Dense 2^n x 2^n matrix; refused above kDenseQubitGuard qubits.
[[nodiscard]] Eigen::MatrixXcd dense_matrix(const PauliSum &h);

/// Sum_k c_k <psi|P_k|psi>, evaluated term by term.
[[nodiscard]] double expectation_exact(const StateVector &state, const PauliSum &h);

/// Per-term shot estimate. Each non-identity term is rotated into the Z basis
/// on its support, sampled with `shots_per_term` shots (through `noise` when
/// given, then unfolded with `mitigation` when given) and reduced to a parity
/// average. Identity terms contribute their coefficient without sampling.
[[nodiscard]] double expectation_sampled(const StateVector &state, const PauliSum &h,
                                         std::size_t shots_per_term,
                                         const std::optional<ReadoutNoise> &noise,
                                         std::uint64_t rng_seed,
                                         const ConfusionMatrix *mitigation = nullptr,
                                         const MitigationOptions *options = nullptr);

/// State with the basis change for `term` applied, so that measuring Z on the
/// term's support yields the term's eigenvalue as a parity.
[[nodiscard]] StateVector rotate_to_z_basis(StateVector state, const PauliTerm &term);

/// Parity average of `support_mask` bits over (pseudo-)counts.
[[nodiscard]] double parity_average(std::span<const double> counts,
                                    std::uint64_t support_mask);

} // namespace dvqe
