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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

/**
 * @file kernels.hpp
 * Statevector kernels in two flavours.
 *
 * `serial::` is the straightforward reference used by the tests as ground
 * truth. `omp::` splits the amplitude range across OpenMP threads; its
 * reductions accumulate fixed-size blocks and then sum the block partials in
 * order, so results are bit-identical for any thread count. The unqualified
 * functions pick `omp::` once the register holds at least
 * `kParallelThreshold` amplitudes.
 *
 * Qubit q corresponds to bit q of the basis-state index.
 */
namespace dvqe::kernels {

using Complex = std::complex<double>;

/// Rotation generator for `rotate`.
enum class RotationAxis : std::uint8_t { X, Y, Z };

inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;
inline constexpr std::size_t kReductionBlock = std::size_t{1} << 12;

#define DVQE_KERNEL_DECLARATIONS                                                \
    /* exp(-i angle sigma / 2) on `qubit`. */                                  \
    void rotate(std::span<Complex> amps, std::size_t qubit, RotationAxis axis, \
                double angle);                                                 \
    void controlled_z(std::span<Complex> amps, std::size_t a, std::size_t b);  \
    void controlled_x(std::span<Complex> amps, std::size_t control,            \
                      std::size_t target);                                     \
    void pauli_x(std::span<Complex> amps, std::size_t qubit);                  \
    [[nodiscard]] double norm_squared(std::span<const Complex> amps);          \
    /* Probability that `qubit` reads 0. */                                    \
    [[nodiscard]] double zero_probability(std::span<const Complex> amps,       \
                                          std::size_t qubit);                  \
    /* <psi|P|psi> for the Pauli string with the given X and Z masks; Y sets */ \
    /* both bits. */                                                           \
    [[nodiscard]] Complex pauli_expectation(std::span<const Complex> amps,     \
                                            std::uint64_t x_mask,              \
                                            std::uint64_t z_mask);             \
    /* <a|b> */                                                                \
    [[nodiscard]] Complex inner_product(std::span<const Complex> a,            \
                                        std::span<const Complex> b);           \
    void probabilities(std::span<const Complex> amps, std::span<double> out);

namespace serial {
DVQE_KERNEL_DECLARATIONS
} // namespace serial

namespace omp {
DVQE_KERNEL_DECLARATIONS
} // namespace omp

DVQE_KERNEL_DECLARATIONS

#undef DVQE_KERNEL_DECLARATIONS

/// Number of threads the OpenMP kernels would use (1 without OpenMP).
[[nodiscard]] int max_threads();

} // namespace dvqe::kernels
