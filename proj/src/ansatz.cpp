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
#include "dvqe/ansatz.hpp"

#include <algorithm>

#include "dvqe/error.hpp"

namespace dvqe {

void AnsatzSpec::validate() const {
    if (qubit_count == 0) {
        throw Error("ansatz needs at least one qubit");
    }
    if (layers == 0) {
        throw Error("ansatz needs at least one layer");
    }
    if (axes.empty()) {
        throw Error("ansatz needs at least one rotation axis per layer");
    }
    auto sorted = axes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error("ansatz rotation axes must be distinct");
    }
}

std::vector<RotationAxis> parse_axes(const std::string &word) {
    std::vector<RotationAxis> axes;
    for (char c : word) {
        switch (c) {
        case 'X':
            axes.push_back(RotationAxis::X);
            break;
        case 'Y':
            axes.push_back(RotationAxis::Y);
            break;
        case 'Z':
            axes.push_back(RotationAxis::Z);
            break;
        default:
            throw Error(std::string("unknown rotation axis '") + c + "'");
        }
    }
    return axes;
}

std::string axes_string(const std::vector<RotationAxis> &axes) {
    std::string s;
    for (auto a : axes) {
        s.push_back(a == RotationAxis::X ? 'X' : a == RotationAxis::Y ? 'Y' : 'Z');
    }
    return s;
}

namespace {

Circuit build_layers(const AnsatzSpec &spec) {
    spec.validate();
    Circuit circuit(spec.qubit_count, spec.entangler);
    for (std::size_t layer = 0; layer < spec.layers; ++layer) {
        for (std::size_t q = 0; q < spec.qubit_count; ++q) {
            for (auto axis : spec.axes) {
                circuit.add_rotation(axis, q);
            }
        }
        for (std::size_t q = 0; q + 1 < spec.qubit_count; ++q) {
            circuit.add_entangler(q, q + 1);
        }
    }
    return circuit;
}

} // namespace

Circuit build_generator(const AnsatzSpec &spec) { return build_layers(spec); }

Circuit build_discriminator(const AnsatzSpec &spec) {
    if (spec.qubit_count < 2) {
        throw Error("discriminator needs at least one system qubit plus the ancilla");
    }
    return build_layers(spec);
}

void DepthSchedule::validate() const {
    if (generator_layers.empty() || discriminator_layers.empty()) {
        throw Error("depth schedule needs at least one level");
    }
    for (const auto *v : {&generator_layers, &discriminator_layers}) {
        if (std::any_of(v->begin(), v->end(), [](std::size_t l) { return l == 0; })) {
            throw Error("depth schedule layer counts must be >= 1");
        }
        if (!std::is_sorted(v->begin(), v->end())) {
            throw Error("depth schedule must be non-decreasing in level");
        }
    }
}

std::pair<std::size_t, std::size_t> depth_for_level(const DepthSchedule &schedule,
                                                    std::size_t level) {
    schedule.validate();
    auto lookup = [level](const std::vector<std::size_t> &layers) {
        if (level < layers.size()) {
            return layers[level];
        }
        return layers.back() + 2 * (level - (layers.size() - 1));
    };
    return {lookup(schedule.generator_layers), lookup(schedule.discriminator_layers)};
}

AnsatzPreset ansatz_preset(const std::string &name) {
    if (name == "h2") {
        return {"h2", {RotationAxis::Y, RotationAxis::X}, {{2, 2, 2, 2}, {3, 3, 4, 4}}};
    }
    if (name == "lih") {
        // The discriminator range "six to eight" is pinned to 6 up to level 1
        // and 8 for levels 2-3.
        return {"lih",
                {RotationAxis::Y, RotationAxis::X, RotationAxis::Z},
                {{4, 4, 4, 4}, {6, 6, 8, 8}}};
    }
    throw Error("unknown ansatz preset '" + name + "'");
}

AnsatzSpec generator_spec(const AnsatzPreset &preset, std::size_t system_qubits,
                          std::size_t level) {
    return {system_qubits, depth_for_level(preset.depths, level).first, preset.axes,
            preset.entangler};
}

AnsatzSpec discriminator_spec(const AnsatzPreset &preset, std::size_t system_qubits,
                              std::size_t level) {
    return {system_qubits + 1, depth_for_level(preset.depths, level).second, preset.axes,
            preset.entangler};
}

std::vector<double> grow_generator_parameters(const std::vector<double> &theta,
                                              const AnsatzSpec &from, std::size_t to_layers) {
    if (theta.size() != from.parameter_count()) {
        throw DimensionError("generator parameters do not match ansatz");
    }
    if (to_layers < from.layers) {
        throw Error("cannot shrink an ansatz");
    }
    const std::size_t per_layer = from.qubit_count * from.axes.size();
    std::vector<double> grown((to_layers - from.layers) * per_layer, 0.0);
    grown.insert(grown.end(), theta.begin(), theta.end());
    return grown;
}

std::vector<double> grow_discriminator_parameters(const std::vector<double> &phi,
                                                  const AnsatzSpec &from,
                                                  std::size_t to_layers) {
    if (phi.size() != from.parameter_count()) {
        throw DimensionError("discriminator parameters do not match ansatz");
    }
    if (to_layers < from.layers) {
        throw Error("cannot shrink an ansatz");
    }
    const std::size_t per_layer = from.qubit_count * from.axes.size();
    std::vector<double> grown = phi;
    grown.resize(to_layers * per_layer, 0.0);
    return grown;
}

} // namespace dvqe
