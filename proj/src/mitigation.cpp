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
#include "dvqe/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <nlohmann/json.hpp>

#include "dvqe/error.hpp"
#include "dvqe/seeding.hpp"
#include "dvqe/simulator.hpp"

namespace dvqe {

ConfusionMatrix::ConfusionMatrix(std::size_t qubit_count, Eigen::MatrixXd matrix)
    : qubit_count_(qubit_count), matrix_(std::move(matrix)) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubit_count);
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw DimensionError("confusion matrix for " + std::to_string(qubit_count) +
                             " qubits must be " + std::to_string(dim) + " x " +
                             std::to_string(dim));
    }
    if ((matrix_.array() < 0.0).any()) {
        throw Error("confusion matrix has negative entries");
    }
}

ConfusionMatrix ConfusionMatrix::identity(std::size_t qubit_count) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubit_count);
    return ConfusionMatrix(qubit_count, Eigen::MatrixXd::Identity(dim, dim));
}

double ConfusionMatrix::condition_number() const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix_);
    const auto &s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

void to_json(nlohmann::json &j, const ConfusionMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.matrix().rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(m.matrix().cols()));
        for (Eigen::Index c = 0; c < m.matrix().cols(); ++c) {
            row[static_cast<std::size_t>(c)] = m.matrix()(r, c);
        }
        rows.push_back(row);
    }
    j = nlohmann::json{{"qubit_count", m.qubit_count()}, {"matrix", rows}};
}

ConfusionMatrix confusion_matrix_from_json(const nlohmann::json &j) {
    const auto n = j.at("qubit_count").get<std::size_t>();
    const auto &rows = j.at("matrix");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
        throw DimensionError("confusion matrix JSON: expected " + std::to_string(dim) + " rows");
    }
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto row = rows[static_cast<std::size_t>(r)].get<std::vector<double>>();
        if (static_cast<Eigen::Index>(row.size()) != dim) {
            throw DimensionError("confusion matrix JSON: row " + std::to_string(r) +
                                 " has wrong length");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = row[static_cast<std::size_t>(c)];
        }
    }
    return ConfusionMatrix(n, std::move(m));
}

void from_json(const nlohmann::json &j, ConfusionMatrix &m) { m = confusion_matrix_from_json(j); }

ConfusionMatrix calibrate(std::size_t qubit_count, std::size_t shots,
                          const ReadoutNoise &noise, std::uint64_t rng_seed) {
    if (shots == 0) {
        throw Error("calibrate: shots must be >= 1");
    }
    const std::size_t dim = std::size_t{1} << qubit_count;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t prepared = 0; prepared < dim; ++prepared) {
        StateVector state(qubit_count);
        for (std::size_t q = 0; q < qubit_count; ++q) {
            if ((prepared >> q) & 1U) {
                kernels::pauli_x(state.amplitudes(), q);
            }
        }
        const auto hist =
            sample_bitstrings(state, shots, noise, derive_seed(rng_seed, {prepared}));
        for (std::size_t measured = 0; measured < dim; ++measured) {
            m(static_cast<Eigen::Index>(measured), static_cast<Eigen::Index>(prepared)) =
                static_cast<double>(hist.count(measured)) / static_cast<double>(shots);
        }
    }
    return ConfusionMatrix(qubit_count, std::move(m));
}

std::vector<double> project_to_simplex(std::span<const double> v, double total) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double prefix = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        prefix += sorted[k];
        const double candidate = (prefix - total) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) {
            tau = candidate;
        }
    }
    std::vector<double> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        x[i] = std::max(v[i] - tau, 0.0);
    }
    return x;
}

MitigationResult mitigate(const ShotHistogram &raw, const ConfusionMatrix &m,
                          const MitigationOptions &options) {
    std::vector<double> y(raw.counts().begin(), raw.counts().end());
    return mitigate(y, m, options);
}

MitigationResult mitigate(std::span<const double> raw, const ConfusionMatrix &m,
                          const MitigationOptions &options) {
    const auto dim = static_cast<Eigen::Index>(m.dimension());
    if (static_cast<Eigen::Index>(raw.size()) != dim) {
        throw DimensionError("mitigate: histogram has " + std::to_string(raw.size()) +
                             " bins, confusion matrix " + std::to_string(dim));
    }
    const Eigen::Map<const Eigen::VectorXd> y(raw.data(), dim);
    const double total = y.sum();
    const Eigen::MatrixXd &a = m.matrix();

    MitigationResult result;
    // KKT system of the sum-constrained least-squares problem:
    //   [A^T A  1] [x ]   [A^T y]
    //   [1^T    0] [mu] = [total]
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
    Eigen::MatrixXd gram = a.transpose() * a;
    if (m.condition_number() > options.condition_limit) {
        gram.diagonal().array() += 1e-8 * gram.diagonal().maxCoeff();
        result.regularized = true;
    }
    kkt.topLeftCorner(dim, dim) = gram;
    kkt.block(0, dim, dim, 1).setOnes();
    kkt.block(dim, 0, 1, dim).setOnes();
    Eigen::VectorXd rhs(dim + 1);
    rhs.head(dim) = a.transpose() * y;
    rhs(dim) = total;
    const Eigen::VectorXd solution = kkt.fullPivLu().solve(rhs);

    result.counts.assign(solution.data(), solution.data() + dim);
    if (options.nonnegative &&
        std::any_of(result.counts.begin(), result.counts.end(), [](double c) { return c < 0.0; })) {
        result.counts = project_to_simplex(result.counts, total);
        result.projected = true;
    }
    return result;
}

double marginal_zero_probability(std::span<const double> counts, std::size_t qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    double zero = 0.0;
    double total = 0.0;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        total += counts[b];
        if (!(b & bit)) {
            zero += counts[b];
        }
    }
    return total > 0.0 ? zero / total : 0.0;
}

} // namespace dvqe
