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
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dvqe/kernels.hpp"
#include "dvqe/readout.hpp"

namespace dvqe {

using Complex = std::complex<double>;
using kernels::RotationAxis;

/// Dense register of 2^n amplitudes. Bit q of an index is qubit q.
class StateVector {
  public:
    /// |0...0> on `qubit_count` qubits.
    explicit StateVector(std::size_t qubit_count);
    /// Takes ownership of `amplitudes`; the size must be a power of two.
    explicit StateVector(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t qubit_count() const { return qubit_count_; }
    [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amplitudes_; }
    [[nodiscard]] std::span<Complex> amplitudes() { return amplitudes_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm() const;

    /// This state tensored with |0> on `extra` new highest-index qubits.
    [[nodiscard]] StateVector with_ancillas(std::size_t extra = 1) const;

  private:
    std::size_t qubit_count_;
    std::vector<Complex> amplitudes_;
};

/// |<a|b>|^2
[[nodiscard]] double overlap_squared(const StateVector &a, const StateVector &b);

struct RotationGate {
    RotationAxis axis;
    std::size_t qubit;
    std::size_t parameter;
};

/// Two-qubit entangler; `kind` of the owning circuit decides CZ or CNOT.
struct EntanglerGate {
    std::size_t control;
    std::size_t target;
};

using Gate = std::variant<RotationGate, EntanglerGate>;

enum class EntanglerKind : std::uint8_t { CZ, CNOT };

/// Ordered gate list acting on |0...0>. Every parameter index is used by
/// exactly one rotation.
class Circuit {
  public:
    explicit Circuit(std::size_t qubit_count, EntanglerKind entangler = EntanglerKind::CZ);

    /// Appends a rotation bound to the next free parameter index and returns it.
    std::size_t add_rotation(RotationAxis axis, std::size_t qubit);
    void add_entangler(std::size_t control, std::size_t target);

    [[nodiscard]] std::size_t qubit_count() const { return qubit_count_; }
    [[nodiscard]] std::size_t parameter_count() const { return parameter_count_; }
    [[nodiscard]] EntanglerKind entangler() const { return entangler_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }

    /// Applies the gates in order to `state` in place.
    void apply(StateVector &state, std::span<const double> params) const;

  private:
    std::size_t qubit_count_;
    EntanglerKind entangler_;
    std::size_t parameter_count_ = 0;
    std::vector<Gate> gates_;
};

/// Circuit applied to |0...0>.
[[nodiscard]] StateVector run_circuit(const Circuit &circuit,
                                      std::span<const double> params);
/// Circuit applied to a given input (which must have the circuit's width).
[[nodiscard]] StateVector run_circuit(const Circuit &circuit,
                                      std::span<const double> params,
                                      StateVector input);

/// Tr[P_0 rho]: probability that `ancilla` reads 0.
[[nodiscard]] double ancilla_zero_probability(const StateVector &state,
                                              std::size_t ancilla);
[[nodiscard]] double ancilla_one_probability(const StateVector &state,
                                             std::size_t ancilla);

/// Draws `shots` basis states from |amplitude|^2, then flips each bit
/// according to `noise`. Deterministic for a given seed.
[[nodiscard]] ShotHistogram sample_bitstrings(const StateVector &state,
                                              std::size_t shots,
                                              const std::optional<ReadoutNoise> &noise,
                                              std::uint64_t seed);

} // namespace dvqe
