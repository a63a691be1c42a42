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
#include "dvqe/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dvqe/error.hpp"
#include "dvqe/mitigation.hpp"
#include "dvqe/seeding.hpp"

namespace dvqe {

char to_char(PauliAxis axis) {
    constexpr char names[] = {'I', 'X', 'Y', 'Z'};
    return names[static_cast<int>(axis)];
}

std::uint64_t PauliTerm::x_mask() const {
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < axes.size(); ++q) {
        if (axes[q] == PauliAxis::X || axes[q] == PauliAxis::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

std::uint64_t PauliTerm::z_mask() const {
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < axes.size(); ++q) {
        if (axes[q] == PauliAxis::Z || axes[q] == PauliAxis::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

std::uint64_t PauliTerm::support_mask() const { return x_mask() | z_mask(); }

std::string PauliTerm::axes_string() const {
    std::string s;
    s.reserve(axes.size());
    for (auto a : axes) {
        s.push_back(to_char(a));
    }
    return s;
}

PauliSum::PauliSum(std::size_t qubit_count, std::vector<PauliTerm> terms)
    : qubit_count_(qubit_count), terms_(std::move(terms)) {
    if (qubit_count_ == 0 || qubit_count_ > 62) {
        throw DimensionError("Pauli sum qubit count " + std::to_string(qubit_count_) +
                             " unsupported");
    }
    for (const auto &t : terms_) {
        if (t.axes.size() != qubit_count_) {
            throw DimensionError("Pauli term " + t.axes_string() + " does not act on " +
                                 std::to_string(qubit_count_) + " qubits");
        }
        if (!std::isfinite(t.coefficient)) {
            throw Error("Pauli term " + t.axes_string() + " has a non-finite coefficient");
        }
    }
}

PauliSum PauliSum::negated() const {
    auto terms = terms_;
    for (auto &t : terms) {
        t.coefficient = -t.coefficient;
    }
    return PauliSum(qubit_count_, std::move(terms));
}

// ---------------------------------------------------------------- parsing

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

PauliSum parse_pauli_sum(std::string_view text) {
    std::vector<PauliTerm> terms;
    std::size_t width = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto gap = line.find_first_of(" \t");
        if (gap == std::string_view::npos) {
            throw ParseError(line_no, "expected '<coefficient> <axes>'");
        }
        const std::string_view number = line.substr(0, gap);
        const std::string_view word = trim(line.substr(gap));
        if (word.find_first_of(" \t") != std::string_view::npos) {
            throw ParseError(line_no, "unexpected trailing text after axes");
        }

        PauliTerm term;
        const auto [ptr, ec] =
            std::from_chars(number.data(), number.data() + number.size(), term.coefficient);
        if (ec != std::errc{} || ptr != number.data() + number.size() ||
            !std::isfinite(term.coefficient)) {
            throw ParseError(line_no, "malformed coefficient '" + std::string(number) + "'");
        }
        for (char c : word) {
            switch (c) {
            case 'I':
                term.axes.push_back(PauliAxis::I);
                break;
            case 'X':
                term.axes.push_back(PauliAxis::X);
                break;
            case 'Y':
                term.axes.push_back(PauliAxis::Y);
                break;
            case 'Z':
                term.axes.push_back(PauliAxis::Z);
                break;
            default:
                throw ParseError(line_no, std::string("illegal axis letter '") + c + "'");
            }
        }
        if (width == 0) {
            width = term.axes.size();
        } else if (term.axes.size() != width) {
            throw ParseError(line_no, "axes length " + std::to_string(term.axes.size()) +
                                          " differs from earlier terms (" +
                                          std::to_string(width) + ")");
        }
        terms.push_back(std::move(term));
    }
    if (terms.empty()) {
        throw ParseError(0, "Hamiltonian document has no terms");
    }
    return PauliSum(width, std::move(terms));
}

PauliSum load_pauli_sum(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open Hamiltonian file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_pauli_sum(buffer.str());
    } catch (const ParseError &e) {
        throw ParseError(e.line(), e.detail(), path.string());
    }
}

std::string format_pauli_sum(const PauliSum &h) {
    std::ostringstream out;
    out.precision(17);
    for (const auto &t : h.terms()) {
        out << t.coefficient << ' ' << t.axes_string() << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------- dense

Eigen::MatrixXcd dense_matrix(const PauliSum &h) {
    if (h.qubit_count() > kDenseQubitGuard) {
        throw CapacityError("dense matrix refused for " + std::to_string(h.qubit_count()) +
                            " qubits (guard " + std::to_string(kDenseQubitGuard) + ")");
    }
    const std::size_t dim = std::size_t{1} << h.qubit_count();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto &t : h.terms()) {
        const std::uint64_t x = t.x_mask();
        const std::uint64_t z = t.z_mask();
        const int ny = std::popcount(x & z);
        static constexpr Complex ipow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const Complex phase = ipow[ny & 3] * t.coefficient;
        // P|b> = i^ny (-1)^{|b & z|} |b ^ x>
        for (std::size_t b = 0; b < dim; ++b) {
            const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += phase * sign;
        }
    }
    return m;
}

// ---------------------------------------------------------------- expectation

double expectation_exact(const StateVector &state, const PauliSum &h) {
    if (state.qubit_count() != h.qubit_count()) {
        throw DimensionError("expectation: state has " + std::to_string(state.qubit_count()) +
                             " qubits, Hamiltonian " + std::to_string(h.qubit_count()));
    }
    double value = 0.0;
    for (const auto &t : h.terms()) {
        if (t.is_identity()) {
            value += t.coefficient;
            continue;
        }
        // Hermitian P: the imaginary part is round-off only.
        value += t.coefficient *
                 kernels::pauli_expectation(state.amplitudes(), t.x_mask(), t.z_mask()).real();
    }
    return value;
}

StateVector rotate_to_z_basis(StateVector state, const PauliTerm &term) {
    auto amps = state.amplitudes();
    for (std::size_t q = 0; q < term.axes.size(); ++q) {
        switch (term.axes[q]) {
        case PauliAxis::X:
            kernels::rotate(amps, q, RotationAxis::Y, -std::numbers::pi / 2);
            break;
        case PauliAxis::Y:
            kernels::rotate(amps, q, RotationAxis::X, std::numbers::pi / 2);
            break;
        default:
            break;
        }
    }
    return state;
}

double parity_average(std::span<const double> counts, std::uint64_t support_mask) {
    double signed_sum = 0.0;
    double total = 0.0;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double sign = (std::popcount(b & support_mask) & 1) ? -1.0 : 1.0;
        signed_sum += sign * counts[b];
        total += counts[b];
    }
    return total > 0.0 ? signed_sum / total : 0.0;
}

double expectation_sampled(const StateVector &state, const PauliSum &h,
                           std::size_t shots_per_term,
                           const std::optional<ReadoutNoise> &noise, std::uint64_t rng_seed,
                           const ConfusionMatrix *mitigation,
                           const MitigationOptions *options) {
    if (state.qubit_count() != h.qubit_count()) {
        throw DimensionError("expectation: state has " + std::to_string(state.qubit_count()) +
                             " qubits, Hamiltonian " + std::to_string(h.qubit_count()));
    }
    if (shots_per_term == 0) {
        throw Error("expectation_sampled: shots_per_term must be >= 1");
    }
    double value = 0.0;
    for (std::size_t k = 0; k < h.terms().size(); ++k) {
        const auto &t = h.terms()[k];
        if (t.is_identity()) {
            value += t.coefficient;
            continue;
        }
        const StateVector rotated = rotate_to_z_basis(state, t);
        const auto hist =
            sample_bitstrings(rotated, shots_per_term, noise, derive_seed(rng_seed, {k}));
        std::vector<double> counts;
        if (mitigation != nullptr) {
            counts = mitigate(hist, *mitigation, options ? *options : MitigationOptions{}).counts;
        } else {
            counts.assign(hist.counts().begin(), hist.counts().end());
        }
        value += t.coefficient * parity_average(counts, t.support_mask());
    }
    return value;
}

} // namespace dvqe
