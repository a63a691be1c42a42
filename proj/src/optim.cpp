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
#include "dvqe/optim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dvqe/error.hpp"
#include "dvqe/kernels.hpp"

namespace dvqe {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double shifted(const Objective &cost, std::vector<double> &work, std::size_t index, double shift,
               std::uint64_t tag) {
    const double saved = work[index];
    work[index] = saved + shift;
    const double value = cost(work, tag);
    work[index] = saved;
    return value;
}

} // namespace

double parameter_shift_gradient(const Objective &cost, std::span<const double> params,
                                std::size_t index, std::uint64_t tag) {
    std::vector<double> work(params.begin(), params.end());
    const double plus = shifted(cost, work, index, kHalfPi, tag);
    const double minus = shifted(cost, work, index, -kHalfPi, tag + 1);
    return (plus - minus) / 2;
}

std::vector<double> parameter_shift_gradients(const Objective &cost,
                                              std::span<const double> params,
                                              std::uint64_t tag) {
    const auto n = static_cast<std::int64_t>(params.size());
    std::vector<double> gradient(params.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        gradient[k] = parameter_shift_gradient(cost, params, k, tag + 2 * k);
    }
    return gradient;
}

double wrap_angle(double angle) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double a = std::fmod(angle, two_pi);
    if (a <= -std::numbers::pi) {
        a += two_pi;
    } else if (a > std::numbers::pi) {
        a -= two_pi;
    }
    return a;
}

RotosolveUpdate rotosolve_update(const Objective &cost, std::vector<double> &params,
                                 std::size_t index, std::uint64_t tag) {
    RotosolveUpdate u;
    u.index = index;
    u.old_value = params.at(index);
    u.probe_zero = cost(params, tag);
    u.probe_plus = shifted(cost, params, index, kHalfPi, tag + 1);
    u.probe_minus = shifted(cost, params, index, -kHalfPi, tag + 2);

    const double y = 2 * u.probe_zero - u.probe_plus - u.probe_minus;
    const double x = u.probe_plus - u.probe_minus;
    u.new_value = wrap_angle(u.old_value - kHalfPi - std::atan2(y, x));
    params[index] = u.new_value;

    // C(theta + t) = a + R cos(t - delta)
    const double a = (u.probe_plus + u.probe_minus) / 2;
    u.predicted = a - std::hypot(u.probe_zero - a, x / 2);
    return u;
}

RotosolveSweep rotosolve_sweep(const Objective &cost, std::vector<double> &params,
                               std::uint64_t tag, const RotosolveObserver &observer) {
    RotosolveSweep sweep;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto u = rotosolve_update(cost, params, i, tag + 3 * i);
        ++sweep.updates;
        sweep.evaluations += 3;
        sweep.predicted = u.predicted;
        if (observer) {
            observer(u);
        }
    }
    return sweep;
}

RpropState::RpropState(std::size_t parameter_count, const RpropConfig &config)
    : delta(parameter_count, config.delta_init), previous_gradient(parameter_count, 0.0) {}

void rprop_apply(std::span<const double> gradient, std::vector<double> &params,
                 RpropState &state, const RpropConfig &config) {
    if (state.delta.size() != params.size()) {
        state = RpropState(params.size(), config);
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        double g = gradient[i];
        const double sign_product = g * state.previous_gradient[i];
        if (sign_product > 0) {
            state.delta[i] = std::min(state.delta[i] * config.eta_plus, config.delta_max);
        } else if (sign_product < 0) {
            state.delta[i] = std::max(state.delta[i] * config.eta_minus, config.delta_min);
            g = 0.0;
        }
        if (g > 0) {
            params[i] -= state.delta[i];
        } else if (g < 0) {
            params[i] += state.delta[i];
        }
        state.previous_gradient[i] = g;
    }
}

std::vector<double> rprop_step(const Objective &cost, std::vector<double> &params,
                               RpropState &state, const RpropConfig &config,
                               std::uint64_t tag) {
    auto gradient = parameter_shift_gradients(cost, params, tag);
    rprop_apply(gradient, params, state, config);
    return gradient;
}

MinimizeResult rotosolve_minimize(const Objective &cost, std::vector<double> &params,
                                  std::size_t max_sweeps, double tolerance, std::uint64_t tag) {
    MinimizeResult result;
    double previous = cost(params, tag);
    result.value = previous;
    for (std::size_t s = 0; s < max_sweeps; ++s) {
        const auto sweep = rotosolve_sweep(cost, params, tag + 1 + 3 * params.size() * s);
        ++result.sweeps;
        result.value = sweep.predicted;
        if (std::abs(previous - sweep.predicted) < tolerance) {
            result.converged = true;
            break;
        }
        previous = sweep.predicted;
    }
    return result;
}

} // namespace dvqe

namespace dvqe {

namespace {

using Mat2 = std::array<Complex, 4>; // row-major 2x2

Mat2 rotation_matrix(RotationAxis axis, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    switch (axis) {
    case RotationAxis::X:
        return {c, Complex(0, -s), Complex(0, -s), c};
    case RotationAxis::Y:
        return {c, -s, s, c};
    case RotationAxis::Z:
        break;
    }
    return {Complex(c, -s), 0.0, 0.0, Complex(c, s)};
}

Mat2 adjoint(const Mat2 &u) {
    return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

// m <- U m U^dag with U = u on `qubit`; m is column-major dim x dim.
void sandwich(Eigen::MatrixXcd &m, std::size_t qubit, const Mat2 &u) {
    const auto dim = static_cast<std::size_t>(m.rows());
    const std::size_t bit = std::size_t{1} << qubit;
    Complex *d = m.data();
    for (std::size_t c = 0; c < dim; ++c) {
        Complex *col = d + c * dim;
        for (std::size_t i0 = 0; i0 < dim; ++i0) {
            if (i0 & bit) {
                continue;
            }
            const Complex a = col[i0];
            const Complex b = col[i0 | bit];
            col[i0] = u[0] * a + u[1] * b;
            col[i0 | bit] = u[2] * a + u[3] * b;
        }
    }
    const Complex v00 = std::conj(u[0]);
    const Complex v01 = std::conj(u[1]);
    const Complex v10 = std::conj(u[2]);
    const Complex v11 = std::conj(u[3]);
    for (std::size_t j0 = 0; j0 < dim; ++j0) {
        if (j0 & bit) {
            continue;
        }
        Complex *c0 = d + j0 * dim;
        Complex *c1 = d + (j0 | bit) * dim;
        for (std::size_t i = 0; i < dim; ++i) {
            const Complex a = c0[i];
            const Complex b = c1[i];
            c0[i] = a * v00 + b * v01;
            c1[i] = a * v10 + b * v11;
        }
    }
}

// Entanglers are self-inverse, so U m U^dag and U^dag m U coincide.
void sandwich_entangler(Eigen::MatrixXcd &m, const EntanglerGate &e, EntanglerKind kind) {
    const auto dim = static_cast<std::size_t>(m.rows());
    const std::size_t cb = std::size_t{1} << e.control;
    const std::size_t tb = std::size_t{1} << e.target;
    Complex *d = m.data();
    if (kind == EntanglerKind::CZ) {
        const std::size_t both = cb | tb;
        for (std::size_t j = 0; j < dim; ++j) {
            const bool fj = (j & both) == both;
            for (std::size_t i = 0; i < dim; ++i) {
                if (fj != ((i & both) == both)) {
                    d[j * dim + i] = -d[j * dim + i];
                }
            }
        }
        return;
    }
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cb) && !(i & tb)) {
                std::swap(d[c * dim + i], d[c * dim + (i | tb)]);
            }
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        if ((j & cb) && !(j & tb)) {
            m.col(static_cast<Eigen::Index>(j)).swap(m.col(static_cast<Eigen::Index>(j | tb)));
        }
    }
}

void sandwich_gate(Eigen::MatrixXcd &m, const Gate &gate, EntanglerKind kind,
                   std::span<const double> params, bool adjoint_gate) {
    if (const auto *r = std::get_if<RotationGate>(&gate)) {
        const Mat2 u = rotation_matrix(r->axis, params[r->parameter]);
        sandwich(m, r->qubit, adjoint_gate ? adjoint(u) : u);
    } else {
        sandwich_entangler(m, std::get<EntanglerGate>(gate), kind);
    }
}

// Tr[X R rho R^dag] = c^2 t0 + s^2 t1 + c s t2 for R = exp(-i angle sigma / 2),
// c = cos(angle / 2), s = sin(angle / 2).
struct SinusoidTerms {
    double t0 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;

    [[nodiscard]] double at(double angle) const {
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        return c * c * t0 + s * s * t1 + c * s * t2;
    }
};

// sigma|b> = phase(b)|b ^ flip> on the rotation qubit. Uses rho_ji = conj(rho_ij)
// so that every access walks a column.
SinusoidTerms sinusoid_terms(const Eigen::MatrixXcd &x, const Eigen::MatrixXcd &rho,
                             std::size_t qubit, RotationAxis axis, std::vector<Complex> &phase) {
    const auto dim = static_cast<std::size_t>(x.rows());
    const std::size_t bit = std::size_t{1} << qubit;
    const std::size_t flip = axis == RotationAxis::Z ? 0 : bit;
    phase.resize(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        const bool one = (b & bit) != 0;
        switch (axis) {
        case RotationAxis::X:
            phase[b] = 1.0;
            break;
        case RotationAxis::Y:
            phase[b] = one ? Complex(0, -1) : Complex(0, 1);
            break;
        case RotationAxis::Z:
            phase[b] = one ? -1.0 : 1.0;
            break;
        }
    }
    Complex t0 = 0.0;
    Complex t1 = 0.0;
    Complex commutator = 0.0;
    // Tr[X M] = sum_ij X_ij M_ji.
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t jf = j ^ flip;
        const Complex *xj = x.data() + j * dim;
        const Complex *rj = rho.data() + j * dim;
        const Complex *rjf = rho.data() + jf * dim;
        Complex s1 = 0.0;
        Complex s2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const std::size_t if_ = i ^ flip;
            t0 += xj[i] * std::conj(rj[i]);
            // (sigma rho sigma)_ji = phase(j^f) rho_{j^f, i^f} phase(i)
            s1 += xj[i] * std::conj(rjf[if_]) * phase[i];
            // (rho sigma)_ji = rho_{j, i^f} phase(i); (sigma rho)_ji = phase(j^f) rho_{j^f, i}
            commutator += xj[i] * std::conj(rj[if_]) * phase[i];
            s2 += xj[i] * std::conj(rjf[i]);
        }
        t1 += phase[jf] * s1;
        commutator -= phase[jf] * s2;
    }
    return {t0.real(), t1.real(), -commutator.imag()};
}

double quadratic_value(const Eigen::MatrixXcd &m, std::span<const Complex> v) {
    const Eigen::Map<const Eigen::VectorXcd> x(v.data(), static_cast<Eigen::Index>(v.size()));
    return x.dot(m * x).real();
}

} // namespace

double QuadraticCost::operator()(std::span<const double> params) const {
    double total = 0.0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const StateVector out = run_circuit(*circuit, params, inputs[s]);
        total += weights[s] * quadratic_value(observable, out.amplitudes());
    }
    return total;
}

RotosolveSweep rotosolve_sweep(const QuadraticCost &cost, std::vector<double> &params,
                               const RotosolveObserver &observer) {
    const Circuit &circuit = *cost.circuit;
    if (params.size() != circuit.parameter_count()) {
        throw DimensionError("quadratic sweep: parameter count mismatch");
    }
    const auto &gates = circuit.gates();
    const EntanglerKind kind = circuit.entangler();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << circuit.qubit_count());

    // The cost is linear in the weighted input operator rho.
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t s = 0; s < cost.inputs.size(); ++s) {
        const auto a = cost.inputs[s].amplitudes();
        const Eigen::Map<const Eigen::VectorXcd> v(a.data(), dim);
        rho.noalias() += cost.weights[s] * (v * v.adjoint());
    }

    // x: observable seen right after the current gate. Start from the one
    // after gate 0 and walk forward, undoing each later gate with the angle it
    // had at the start of the sweep (later gates have not been updated yet).
    Eigen::MatrixXcd x = cost.observable;
    for (std::size_t j = gates.size(); j-- > 1;) {
        sandwich_gate(x, gates[j], kind, params, true);
    }

    std::vector<Complex> phase;
    RotosolveSweep sweep;
    for (std::size_t j = 0; j < gates.size(); ++j) {
        if (j > 0) {
            sandwich_gate(x, gates[j], kind, params, false);
        }
        if (const auto *r = std::get_if<RotationGate>(&gates[j])) {
            const SinusoidTerms f = sinusoid_terms(x, rho, r->qubit, r->axis, phase);
            RotosolveUpdate u;
            u.index = r->parameter;
            u.old_value = params[r->parameter];
            u.probe_zero = f.at(u.old_value);
            u.probe_plus = f.at(u.old_value + kHalfPi);
            u.probe_minus = f.at(u.old_value - kHalfPi);
            const double y = 2 * u.probe_zero - u.probe_plus - u.probe_minus;
            const double xx = u.probe_plus - u.probe_minus;
            u.new_value = wrap_angle(u.old_value - kHalfPi - std::atan2(y, xx));
            params[r->parameter] = u.new_value;
            const double a = (u.probe_plus + u.probe_minus) / 2;
            u.predicted = a - std::hypot(u.probe_zero - a, xx / 2);
            ++sweep.updates;
            sweep.evaluations += 3;
            sweep.predicted = u.predicted;
            if (observer) {
                observer(u);
            }
        }
        sandwich_gate(rho, gates[j], kind, params, false);
    }
    return sweep;
}

} // namespace dvqe
