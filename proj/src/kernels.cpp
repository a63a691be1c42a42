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
#include "dvqe/kernels.hpp"

#include <bit>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dvqe::kernels {
namespace {

using Index = std::int64_t;

/// Index of the k-th basis state whose bit `qubit` is 0.
inline std::size_t insert_zero(std::size_t k, std::size_t qubit) {
    const std::size_t low = k & ((std::size_t{1} << qubit) - 1);
    return ((k >> qubit) << (qubit + 1)) | low;
}

struct Rotation2x2 {
    Complex m00, m01, m10, m11;
};

Rotation2x2 rotation_matrix(RotationAxis axis, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    switch (axis) {
    case RotationAxis::X:
        return {{c, 0}, {0, -s}, {0, -s}, {c, 0}};
    case RotationAxis::Y:
        return {{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
    case RotationAxis::Z:
    default:
        return {{c, -s}, {0, 0}, {0, 0}, {c, s}};
    }
}

inline Complex i_power(int n) {
    switch (n & 3) {
    case 0:
        return {1, 0};
    case 1:
        return {0, 1};
    case 2:
        return {-1, 0};
    default:
        return {0, -1};
    }
}

inline double parity_sign(std::uint64_t bits) {
    return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

inline Index block_count(std::size_t n) {
    return static_cast<Index>((n + kReductionBlock - 1) / kReductionBlock);
}

} // namespace

// --------------------------------------------------------------------------
// Serial reference
// --------------------------------------------------------------------------
namespace serial {

void rotate(std::span<Complex> amps, std::size_t qubit, RotationAxis axis,
            double angle) {
    const auto m = rotation_matrix(axis, angle);
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(k, qubit);
        const std::size_t i1 = i0 | stride;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = m.m00 * a0 + m.m01 * a1;
        amps[i1] = m.m10 * a0 + m.m11 * a1;
    }
}

void controlled_z(std::span<Complex> amps, std::size_t a, std::size_t b) {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

void controlled_x(std::span<Complex> amps, std::size_t control,
                  std::size_t target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(k, target);
        if (i0 & cbit) {
            std::swap(amps[i0], amps[i0 | tbit]);
        }
    }
}

void pauli_x(std::span<Complex> amps, std::size_t qubit) {
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(k, qubit);
        std::swap(amps[i0], amps[i0 | stride]);
    }
}

double norm_squared(std::span<const Complex> amps) {
    double sum = 0.0;
    for (const auto &a : amps) {
        sum += std::norm(a);
    }
    return sum;
}

double zero_probability(std::span<const Complex> amps, std::size_t qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    double sum = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!(i & bit)) {
            sum += std::norm(amps[i]);
        }
    }
    return sum;
}

Complex pauli_expectation(std::span<const Complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask) {
    Complex sum{0, 0};
    for (std::size_t b = 0; b < amps.size(); ++b) {
        sum += std::conj(amps[b ^ x_mask]) * amps[b] * parity_sign(b & z_mask);
    }
    return sum * i_power(std::popcount(x_mask & z_mask));
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    Complex sum{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = std::norm(amps[i]);
    }
}

} // namespace serial

// --------------------------------------------------------------------------
// OpenMP
// --------------------------------------------------------------------------
namespace omp {
namespace {

/// Sums `term(i)` over [0, n) in fixed blocks; the block partials are added
/// in index order so the result does not depend on the thread count.
template <typename T, typename Term>
T blocked_sum(std::size_t n, Term term) {
    const Index blocks = block_count(n);
    std::vector<T> partial(static_cast<std::size_t>(blocks), T{});
#pragma omp parallel for schedule(static)
    for (Index blk = 0; blk < blocks; ++blk) {
        const std::size_t begin = static_cast<std::size_t>(blk) * kReductionBlock;
        const std::size_t end = std::min(n, begin + kReductionBlock);
        T acc{};
        for (std::size_t i = begin; i < end; ++i) {
            acc += term(i);
        }
        partial[static_cast<std::size_t>(blk)] = acc;
    }
    T total{};
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

} // namespace

void rotate(std::span<Complex> amps, std::size_t qubit, RotationAxis axis,
            double angle) {
    const auto m = rotation_matrix(axis, angle);
    const std::size_t stride = std::size_t{1} << qubit;
    const auto half = static_cast<Index>(amps.size() / 2);
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), qubit);
        const std::size_t i1 = i0 | stride;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = m.m00 * a0 + m.m01 * a1;
        amps[i1] = m.m10 * a0 + m.m11 * a1;
    }
}

void controlled_z(std::span<Complex> amps, std::size_t a, std::size_t b) {
    // Iterate only over indices with both bits set.
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    const auto quarter = static_cast<Index>(amps.size() / 4);
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < quarter; ++k) {
        const std::size_t i =
            insert_zero(insert_zero(static_cast<std::size_t>(k), lo), hi) | mask;
        amps[i] = -amps[i];
    }
}

void controlled_x(std::span<Complex> amps, std::size_t control,
                  std::size_t target) {
    const std::size_t lo = std::min(control, target);
    const std::size_t hi = std::max(control, target);
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const auto quarter = static_cast<Index>(amps.size() / 4);
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < quarter; ++k) {
        const std::size_t i =
            insert_zero(insert_zero(static_cast<std::size_t>(k), lo), hi) | cbit;
        std::swap(amps[i], amps[i | tbit]);
    }
}

void pauli_x(std::span<Complex> amps, std::size_t qubit) {
    const std::size_t stride = std::size_t{1} << qubit;
    const auto half = static_cast<Index>(amps.size() / 2);
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), qubit);
        std::swap(amps[i0], amps[i0 | stride]);
    }
}

double norm_squared(std::span<const Complex> amps) {
    return blocked_sum<double>(amps.size(),
                               [&](std::size_t i) { return std::norm(amps[i]); });
}

double zero_probability(std::span<const Complex> amps, std::size_t qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    return blocked_sum<double>(amps.size(), [&](std::size_t i) {
        return (i & bit) ? 0.0 : std::norm(amps[i]);
    });
}

Complex pauli_expectation(std::span<const Complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask) {
    const Complex sum = blocked_sum<Complex>(amps.size(), [&](std::size_t b) {
        return std::conj(amps[b ^ x_mask]) * amps[b] * parity_sign(b & z_mask);
    });
    return sum * i_power(std::popcount(x_mask & z_mask));
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    return blocked_sum<Complex>(
        a.size(), [&](std::size_t i) { return std::conj(a[i]) * b[i]; });
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
    const auto n = static_cast<Index>(amps.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            std::norm(amps[static_cast<std::size_t>(i)]);
    }
}

} // namespace omp

// --------------------------------------------------------------------------
// Dispatch
// --------------------------------------------------------------------------
namespace {
inline bool parallel(std::size_t n) { return n >= kParallelThreshold; }
} // namespace

void rotate(std::span<Complex> amps, std::size_t qubit, RotationAxis axis,
            double angle) {
    parallel(amps.size()) ? omp::rotate(amps, qubit, axis, angle)
                          : serial::rotate(amps, qubit, axis, angle);
}

void controlled_z(std::span<Complex> amps, std::size_t a, std::size_t b) {
    parallel(amps.size()) ? omp::controlled_z(amps, a, b)
                          : serial::controlled_z(amps, a, b);
}

void controlled_x(std::span<Complex> amps, std::size_t control,
                  std::size_t target) {
    parallel(amps.size()) ? omp::controlled_x(amps, control, target)
                          : serial::controlled_x(amps, control, target);
}

void pauli_x(std::span<Complex> amps, std::size_t qubit) {
    parallel(amps.size()) ? omp::pauli_x(amps, qubit)
                          : serial::pauli_x(amps, qubit);
}

double norm_squared(std::span<const Complex> amps) {
    return parallel(amps.size()) ? omp::norm_squared(amps)
                                 : serial::norm_squared(amps);
}

double zero_probability(std::span<const Complex> amps, std::size_t qubit) {
    return parallel(amps.size()) ? omp::zero_probability(amps, qubit)
                                 : serial::zero_probability(amps, qubit);
}

Complex pauli_expectation(std::span<const Complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask) {
    return parallel(amps.size()) ? omp::pauli_expectation(amps, x_mask, z_mask)
                                 : serial::pauli_expectation(amps, x_mask, z_mask);
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    return parallel(a.size()) ? omp::inner_product(a, b)
                              : serial::inner_product(a, b);
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
    parallel(amps.size()) ? omp::probabilities(amps, out)
                          : serial::probabilities(amps, out);
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace dvqe::kernels
