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
#include "dvqe/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dvqe/error.hpp"
#include "dvqe/oracle.hpp"

namespace dvqe {

using nlohmann::json;

std::string format_fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, s.front() == '-' ? 1 : 0); // no "-0.000"
    }
    return s;
}

std::string format_abs_error(double a, double b, int digits) {
    const double ra = std::strtod(format_fixed(a, digits).c_str(), nullptr);
    const double rb = std::strtod(format_fixed(b, digits).c_str(), nullptr);
    return format_fixed(std::abs(ra - rb), digits);
}

std::optional<std::vector<double>> oracle_energies(const PauliSum &h) {
    if (h.qubit_count() > kDenseQubitGuard) {
        return std::nullopt;
    }
    const Spectrum s = exact_spectrum(h);
    return std::vector<double>(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
}

namespace {

json spec_json(const AnsatzSpec &spec) {
    return {{"qubits", spec.qubit_count},
            {"layers", spec.layers},
            {"axes", axes_string(spec.axes)},
            {"entangler", spec.entangler == EntanglerKind::CZ ? "cz" : "cnot"}};
}

json diagnostics_json(const DiscriminatorDiagnostics &d) {
    json cross = json::array();
    for (const auto &k : d.cross_terms) {
        cross.push_back({k.real(), k.imag()});
    }
    return {{"weight", d.weight},           {"K", d.K},
            {"k_cross", d.k_cross},         {"cross_terms", cross},
            {"K_eigen", d.K_eigen},         {"alpha_squared", d.alpha_squared},
            {"generated", d.generated}};
}

std::optional<double> oracle_at(const std::optional<std::vector<double>> &oracle,
                                std::size_t level) {
    if (oracle && level < oracle->size()) {
        return (*oracle)[level];
    }
    return std::nullopt;
}

} // namespace

json ladder_to_json(const LadderResult &result, const std::optional<std::vector<double>> &oracle) {
    json levels = json::array();
    for (const auto &r : result.levels) {
        json l = {{"level", r.level},       {"energy", r.energy},
                  {"gamma", r.gamma},       {"converged", r.converged},
                  {"cycles", r.cycles},     {"theta", r.theta},
                  {"generator", spec_json(r.generator)},
                  {"trace", r.trace}};
        if (const auto o = oracle_at(oracle, r.level)) {
            l["oracle_energy"] = *o;
            l["abs_error"] = std::abs(r.energy - *o);
        }
        if (r.discriminator) {
            l["phi"] = r.phi;
            l["discriminator"] = spec_json(*r.discriminator);
        }
        if (r.diagnostics) {
            l["diagnostics"] = diagnostics_json(*r.diagnostics);
        }
        levels.push_back(std::move(l));
    }
    json by_level = json::array();
    for (std::size_t i = 0; i < result.levels.size(); ++i) {
        by_level.push_back(result.calls.total_for_level(i));
    }
    return {{"schema", 1},
            {"hamiltonian", {{"qubits", result.ladder.hamiltonian.qubit_count()},
                             {"terms", result.ladder.hamiltonian.size()}}},
            {"levels", levels},
            {"all_converged", result.all_converged()},
            {"calls", {{"total", result.calls.total()},
                       {"by_level", by_level},
                       {"arithmetic", result.calls.arithmetic()}}},
            {"warnings", result.warnings}};
}

std::string ladder_csv(const LadderResult &result,
                       const std::optional<std::vector<double>> &oracle) {
    std::ostringstream os;
    os << "level,energy,oracle_energy,abs_error,gamma,converged,cycles\n";
    for (const auto &r : result.levels) {
        os << r.level << ',' << format_fixed(r.energy) << ',';
        if (const auto o = oracle_at(oracle, r.level)) {
            os << format_fixed(*o) << ',' << format_abs_error(r.energy, *o);
        } else {
            os << ',';
        }
        os << ',' << format_fixed(r.gamma) << ',' << (r.converged ? "true" : "false") << ','
           << r.cycles << '\n';
    }
    return os.str();
}

std::string sweep_csv(const SweepReport &report, const std::vector<SweepOracle> &oracle,
                      std::size_t levels) {
    std::ostringstream os;
    os << "distance,level,energy,oracle,abs_error,status\n";
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const auto &p = report.points[i];
        const auto &o = oracle.at(i).energies;
        for (std::size_t level = 0; level < levels; ++level) {
            os << format_fixed(p.distance, 6) << ',' << level << ',';
            const auto oe = oracle_at(o, level);
            if (!p.result || level >= p.result->levels.size()) {
                os << ',' << (oe ? format_fixed(*oe) : "") << ",,failed\n";
                continue;
            }
            const auto &r = p.result->levels[level];
            os << format_fixed(r.energy) << ',';
            if (oe) {
                os << format_fixed(*oe) << ',' << format_abs_error(r.energy, *oe);
            } else {
                os << ',';
            }
            os << ',' << (r.converged ? "converged" : "not_converged") << '\n';
        }
    }
    return os.str();
}

std::string errors_by_level_csv(const SweepReport &report, const std::vector<SweepOracle> &oracle,
                                std::size_t levels) {
    std::ostringstream os;
    os << "level,mean_abs_error,max_abs_error,points\n";
    for (std::size_t level = 0; level < levels; ++level) {
        double sum = 0.0;
        double max = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < report.points.size(); ++i) {
            const auto &p = report.points[i];
            const auto oe = oracle_at(oracle.at(i).energies, level);
            if (!p.result || level >= p.result->levels.size() || !oe) {
                continue;
            }
            const double e = std::abs(p.result->levels[level].energy - *oe);
            sum += e;
            max = std::max(max, e);
            ++n;
        }
        os << level << ',' << (n ? format_fixed(sum / static_cast<double>(n)) : "") << ','
           << (n ? format_fixed(max) : "") << ',' << n << '\n';
    }
    return os.str();
}

json sweep_to_json(const SweepReport &report, const std::vector<SweepOracle> &oracle) {
    json points = json::array();
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const auto &p = report.points[i];
        json j = {{"distance", p.distance}, {"warm_started", p.warm_started}};
        if (p.warm_started) {
            j["seeded_from_distance"] = report.points[p.seeded_from].distance;
        }
        if (!p.error.empty()) {
            j["error"] = p.error;
        }
        if (p.result) {
            j["ladder"] = ladder_to_json(*p.result, oracle.at(i).energies);
        }
        points.push_back(std::move(j));
    }
    return {{"schema", 1}, {"points", points}, {"all_ok", report.all_ok()}};
}

void write_text(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw Error("failed writing " + path.string());
    }
}

} // namespace dvqe
