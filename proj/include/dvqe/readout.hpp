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
#include <string>
#include <vector>

namespace dvqe {

/// Independent per-qubit classical bit flips applied at readout.
///
/// A noise model with a single entry applies that entry to every qubit.
class ReadoutNoise {
  public:
    ReadoutNoise() = default;
    /// Per-qubit probabilities p(read 1 | true 0) and p(read 0 | true 1).
    ReadoutNoise(std::vector<double> flip_to_one, std::vector<double> flip_to_zero);

    static ReadoutNoise uniform(double flip_to_one, double flip_to_zero);

    [[nodiscard]] double flip_to_one(std::size_t qubit) const;
    [[nodiscard]] double flip_to_zero(std::size_t qubit) const;
    /// Throws DimensionError unless every qubit below `qubit_count` is covered.
    void check_covers(std::size_t qubit_count) const;

    [[nodiscard]] const std::vector<double> &flip_to_one() const { return p01_; }
    [[nodiscard]] const std::vector<double> &flip_to_zero() const { return p10_; }

  private:
    std::vector<double> p01_;
    std::vector<double> p10_;
};

/// Counts of measured basis states; index bit q is qubit q.
class ShotHistogram {
  public:
    explicit ShotHistogram(std::size_t qubit_count);
    ShotHistogram(std::size_t qubit_count, std::vector<std::uint64_t> counts);

    void add(std::uint64_t basis_state, std::uint64_t count = 1);

    [[nodiscard]] std::size_t qubit_count() const { return qubit_count_; }
    [[nodiscard]] std::uint64_t total() const { return total_; }
    [[nodiscard]] std::uint64_t count(std::uint64_t basis_state) const {
        return counts_.at(basis_state);
    }
    [[nodiscard]] const std::vector<std::uint64_t> &counts() const { return counts_; }

  private:
    std::size_t qubit_count_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Bitstring for `basis_state` with qubit 0 first.
[[nodiscard]] std::string to_bitstring(std::uint64_t basis_state,
                                       std::size_t qubit_count);

} // namespace dvqe
