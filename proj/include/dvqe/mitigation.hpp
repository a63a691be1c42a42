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
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "dvqe/readout.hpp"

namespace dvqe {

/// Readout calibration matrix: entry (i, j) is the probability of measuring
/// basis state i after preparing basis state j. Columns sum to one.
class ConfusionMatrix {
  public:
    ConfusionMatrix(std::size_t qubit_count, Eigen::MatrixXd matrix);

    static ConfusionMatrix identity(std::size_t qubit_count);

    [[nodiscard]] std::size_t qubit_count() const { return qubit_count_; }
    [[nodiscard]] std::size_t dimension() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    [[nodiscard]] const Eigen::MatrixXd &matrix() const { return matrix_; }
    [[nodiscard]] double operator()(std::size_t measured, std::size_t prepared) const {
        return matrix_(static_cast<Eigen::Index>(measured),
                       static_cast<Eigen::Index>(prepared));
    }
    /// Ratio of largest to smallest singular value.
    [[nodiscard]] double condition_number() const;

  private:
    std::size_t qubit_count_;
    Eigen::MatrixXd matrix_;
};

void to_json(nlohmann::json &j, const ConfusionMatrix &m);
void from_json(const nlohmann::json &j, ConfusionMatrix &m);
[[nodiscard]] ConfusionMatrix confusion_matrix_from_json(const nlohmann::json &j);

/// Prepares each of the 2^n basis states with X gates, samples `shots`
/// readouts through `noise` and stores the empirical frequencies column-wise.
[[nodiscard]] ConfusionMatrix calibrate(std::size_t qubit_count, std::size_t shots,
                                        const ReadoutNoise &noise, std::uint64_t rng_seed);

struct MitigationOptions {
    /// Project the least-squares solution onto {x >= 0, sum x = sum y}.
    bool nonnegative = true;
    /// Condition number above which the solve is Tikhonov-regularized.
    double condition_limit = 1e10;
};

struct MitigationResult {
    std::vector<double> counts;
    bool regularized = false;
    bool projected = false;
};

/// Solves argmin_x |y - M x|^2 subject to sum(x) = sum(y), then (by default)
/// projects onto the non-negative simplex with the same sum.
[[nodiscard]] MitigationResult mitigate(const ShotHistogram &raw, const ConfusionMatrix &m,
                                        const MitigationOptions &options = {});
[[nodiscard]] MitigationResult mitigate(std::span<const double> raw, const ConfusionMatrix &m,
                                        const MitigationOptions &options = {});

/// Euclidean projection of `v` onto {x >= 0, sum x = total}.
[[nodiscard]] std::vector<double> project_to_simplex(std::span<const double> v, double total);

/// Fraction of (pseudo-)counts with `qubit` reading 0.
[[nodiscard]] double marginal_zero_probability(std::span<const double> counts,
                                               std::size_t qubit);

} // namespace dvqe
