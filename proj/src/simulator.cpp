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
#include "dvqe/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "dvqe/error.hpp"

namespace dvqe {

// ---------------------------------------------------------------- readout

ReadoutNoise::ReadoutNoise(std::vector<double> flip_to_one,
                           std::vector<double> flip_to_zero)
    : p01_(std::move(flip_to_one)), p10_(std::move(flip_to_zero)) {
    if (p01_.size() != p10_.size() || p01_.empty()) {
        throw DimensionError("readout noise: flip probability lists differ in length");
    }
    for (std::size_t q = 0; q < p01_.size(); ++q) {
        for (double p : {p01_[q], p10_[q]}) {
            if (!(p >= 0.0 && p < 0.5)) {
                throw Error("readout noise: flip probability " + std::to_string(p) +
                            " outside [0, 0.5)");
            }
        }
    }
}

ReadoutNoise ReadoutNoise::uniform(double flip_to_one, double flip_to_zero) {
    return ReadoutNoise({flip_to_one}, {flip_to_zero});
}

double ReadoutNoise::flip_to_one(std::size_t qubit) const {
    return p01_.size() == 1 ? p01_.front() : p01_.at(qubit);
}

double ReadoutNoise::flip_to_zero(std::size_t qubit) const {
    return p10_.size() == 1 ? p10_.front() : p10_.at(qubit);
}

void ReadoutNoise::check_covers(std::size_t qubit_count) const {
    if (p01_.size() != 1 && p01_.size() < qubit_count) {
        throw DimensionError("readout noise covers " + std::to_string(p01_.size()) +
                             " qubits, register has " + std::to_string(qubit_count));
    }
}

ShotHistogram::ShotHistogram(std::size_t qubit_count)
    : qubit_count_(qubit_count), counts_(std::size_t{1} << qubit_count, 0) {}

ShotHistogram::ShotHistogram(std::size_t qubit_count, std::vector<std::uint64_t> counts)
    : qubit_count_(qubit_count), counts_(std::move(counts)) {
    if (counts_.size() != (std::size_t{1} << qubit_count)) {
        throw DimensionError("histogram: expected " +
                             std::to_string(std::size_t{1} << qubit_count) +
                             " bins, got " + std::to_string(counts_.size()));
    }
    for (auto c : counts_) {
        total_ += c;
    }
}

void ShotHistogram::add(std::uint64_t basis_state, std::uint64_t count) {
    counts_.at(basis_state) += count;
    total_ += count;
}

std::string to_bitstring(std::uint64_t basis_state, std::size_t qubit_count) {
    std::string s(qubit_count, '0');
    for (std::size_t q = 0; q < qubit_count; ++q) {
        if ((basis_state >> q) & 1U) {
            s[q] = '1';
        }
    }
    return s;
}

// ---------------------------------------------------------------- state

StateVector::StateVector(std::size_t qubit_count)
    : qubit_count_(qubit_count), amplitudes_(std::size_t{1} << qubit_count) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes)
    : qubit_count_(0), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
        throw DimensionError("state vector length " + std::to_string(amplitudes_.size()) +
                             " is not a power of two");
    }
    qubit_count_ = static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
}

double StateVector::norm() const { return std::sqrt(kernels::norm_squared(amplitudes_)); }

StateVector StateVector::with_ancillas(std::size_t extra) const {
    std::vector<Complex> padded(amplitudes_.size() << extra);
    std::copy(amplitudes_.begin(), amplitudes_.end(), padded.begin());
    return StateVector(std::move(padded));
}

double overlap_squared(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionError("overlap: state dimensions differ");
    }
    return std::norm(kernels::inner_product(a.amplitudes(), b.amplitudes()));
}

// ---------------------------------------------------------------- circuit

Circuit::Circuit(std::size_t qubit_count, EntanglerKind entangler)
    : qubit_count_(qubit_count), entangler_(entangler) {
    if (qubit_count == 0) {
        throw DimensionError("circuit needs at least one qubit");
    }
}

std::size_t Circuit::add_rotation(RotationAxis axis, std::size_t qubit) {
    if (qubit >= qubit_count_) {
        throw DimensionError("rotation on qubit " + std::to_string(qubit) +
                             " of a " + std::to_string(qubit_count_) + "-qubit circuit");
    }
    gates_.emplace_back(RotationGate{axis, qubit, parameter_count_});
    return parameter_count_++;
}

void Circuit::add_entangler(std::size_t control, std::size_t target) {
    if (control >= qubit_count_ || target >= qubit_count_ || control == target) {
        throw DimensionError("entangler (" + std::to_string(control) + ", " +
                             std::to_string(target) + ") invalid on " +
                             std::to_string(qubit_count_) + " qubits");
    }
    gates_.emplace_back(EntanglerGate{control, target});
}

void Circuit::apply(StateVector &state, std::span<const double> params) const {
    if (params.size() != parameter_count_) {
        throw DimensionError("circuit expects " + std::to_string(parameter_count_) +
                             " parameters, got " + std::to_string(params.size()));
    }
    if (state.qubit_count() != qubit_count_) {
        throw DimensionError("circuit acts on " + std::to_string(qubit_count_) +
                             " qubits, state has " + std::to_string(state.qubit_count()));
    }
    auto amps = state.amplitudes();
    for (const auto &gate : gates_) {
        if (const auto *rot = std::get_if<RotationGate>(&gate)) {
            kernels::rotate(amps, rot->qubit, rot->axis, params[rot->parameter]);
        } else {
            const auto &ent = std::get<EntanglerGate>(gate);
            if (entangler_ == EntanglerKind::CZ) {
                kernels::controlled_z(amps, ent.control, ent.target);
            } else {
                kernels::controlled_x(amps, ent.control, ent.target);
            }
        }
    }
}

StateVector run_circuit(const Circuit &circuit, std::span<const double> params) {
    return run_circuit(circuit, params, StateVector(circuit.qubit_count()));
}

StateVector run_circuit(const Circuit &circuit, std::span<const double> params,
                        StateVector input) {
    circuit.apply(input, params);
    return input;
}

double ancilla_zero_probability(const StateVector &state, std::size_t ancilla) {
    if (ancilla >= state.qubit_count()) {
        throw DimensionError("ancilla index " + std::to_string(ancilla) +
                             " out of range for " + std::to_string(state.qubit_count()) +
                             " qubits");
    }
    return kernels::zero_probability(state.amplitudes(), ancilla);
}

double ancilla_one_probability(const StateVector &state, std::size_t ancilla) {
    return 1.0 - ancilla_zero_probability(state, ancilla);
}

ShotHistogram sample_bitstrings(const StateVector &state, std::size_t shots,
                                const std::optional<ReadoutNoise> &noise,
                                std::uint64_t seed) {
    if (shots == 0) {
        throw Error("sample_bitstrings: shots must be >= 1");
    }
    const std::size_t n = state.qubit_count();
    if (noise) {
        noise->check_covers(n);
    }
    std::vector<double> cdf(state.dimension());
    kernels::probabilities(state.amplitudes(), cdf);
    std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
    const double total = cdf.back();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    ShotHistogram hist(n);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = uniform(rng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::uint64_t outcome = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(),
                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        if (noise) {
            for (std::size_t q = 0; q < n; ++q) {
                const bool bit = (outcome >> q) & 1U;
                const double p = bit ? noise->flip_to_zero(q) : noise->flip_to_one(q);
                if (p > 0.0 && uniform(rng) < p) {
                    outcome ^= std::uint64_t{1} << q;
                }
            }
        }
        hist.add(outcome);
    }
    return hist;
}

} // namespace dvqe
