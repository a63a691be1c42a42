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
#include <string>
#include <utility>
#include <vector>

#include "dvqe/simulator.hpp"

namespace dvqe {

/// Layered hardware-efficient ansatz: each layer rotates every qubit about
/// each axis in `axes`, then applies the nearest-neighbour entangler ladder
/// (0-1, 1-2, ...).
struct AnsatzSpec {
    std::size_t qubit_count = 1;
    std::size_t layers = 1;
    std::vector<RotationAxis> axes{RotationAxis::Y, RotationAxis::X};
    EntanglerKind entangler = EntanglerKind::CZ;

    [[nodiscard]] std::size_t parameter_count() const {
        return layers * qubit_count * axes.size();
    }
    void validate() const;
};

/// Parses an axis word such as "YX" or "YXZ".
[[nodiscard]] std::vector<RotationAxis> parse_axes(const std::string &word);
[[nodiscard]] std::string axes_string(const std::vector<RotationAxis> &axes);

/// Parameter index layout is layer-major, qubit-minor, axis-innermost.
[[nodiscard]] Circuit build_generator(const AnsatzSpec &spec);
/// Same layer structure over system qubits plus the ancilla, which is the
/// highest-indexed qubit.
[[nodiscard]] Circuit build_discriminator(const AnsatzSpec &spec);

/// Layer counts per excitation level. Beyond the last explicit level both
/// circuits gain two layers per level.
struct DepthSchedule {
    std::vector<std::size_t> generator_layers;
    std::vector<std::size_t> discriminator_layers;

    void validate() const;
};

/// (generator layers, discriminator layers) for `level`.
[[nodiscard]] std::pair<std::size_t, std::size_t> depth_for_level(const DepthSchedule &schedule,
                                                                  std::size_t level);

/// Ansatz family shared by all levels: rotation axes plus depth schedule.
struct AnsatzPreset {
    std::string name;
    std::vector<RotationAxis> axes;
    DepthSchedule depths;
    EntanglerKind entangler = EntanglerKind::CZ;
};

/// "h2": YX rotations, generator 2 layers, discriminator 3 then 4 layers.
/// "lih": YXZ rotations, generator 4 layers, discriminator 6 then 8 layers.
[[nodiscard]] AnsatzPreset ansatz_preset(const std::string &name);

[[nodiscard]] AnsatzSpec generator_spec(const AnsatzPreset &preset, std::size_t system_qubits,
                                        std::size_t level);
[[nodiscard]] AnsatzSpec discriminator_spec(const AnsatzPreset &preset,
                                            std::size_t system_qubits, std::size_t level);

/// Extends generator parameters to `to` layers by prepending zero-angle layers.
/// Zero rotations followed by CZ leave |0...0> unchanged, so the prepared
/// state is preserved exactly.
[[nodiscard]] std::vector<double> grow_generator_parameters(const std::vector<double> &theta,
                                                            const AnsatzSpec &from,
                                                            std::size_t to_layers);
/// Extends discriminator parameters by appending zero-angle layers. Trailing
/// CZ gates are diagonal, so ancilla readout probabilities are preserved.
[[nodiscard]] std::vector<double> grow_discriminator_parameters(const std::vector<double> &phi,
                                                                const AnsatzSpec &from,
                                                                std::size_t to_layers);

} // namespace dvqe
