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
#include "dvqe/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dvqe/error.hpp"
#include "dvqe/seeding.hpp"

namespace dvqe {

using nlohmann::json;

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Best-effort line of the first occurrence of "key" in the document.
std::size_t line_of_key(std::string_view text, const std::string &key) {
    const auto pos = text.find('"' + key + '"');
    return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
  public:
    Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string &key, const std::string &message) const {
        throw ParseError(line_of_key(text_, key), message, source_);
    }

    void only_keys(const json &obj, const std::string &where,
                   std::initializer_list<const char *> allowed) const {
        if (!obj.is_object()) {
            fail(where, "'" + where + "' must be an object");
        }
        const std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto &[k, v] : obj.items()) {
            if (!ok.contains(k)) {
                fail(k, "unknown key '" + k + "' in " + where);
            }
        }
    }

    template <typename T> T get(const json &obj, const std::string &key, T fallback) const {
        if (!obj.contains(key)) {
            return fallback;
        }
        try {
            return obj.at(key).get<T>();
        } catch (const json::exception &) {
            fail(key, "key '" + key + "' has the wrong type");
        }
    }

    std::size_t count(const json &obj, const std::string &key, std::size_t fallback,
                      std::size_t min = 1) const {
        if (!obj.contains(key)) {
            return fallback;
        }
        const auto &v = obj.at(key);
        if (!v.is_number_integer() || v.get<std::int64_t>() < static_cast<std::int64_t>(min)) {
            fail(key, "key '" + key + "' must be an integer >= " + std::to_string(min));
        }
        return v.get<std::size_t>();
    }

    double real(const json &obj, const std::string &key, double fallback) const {
        if (!obj.contains(key)) {
            return fallback;
        }
        const auto &v = obj.at(key);
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
            fail(key, "key '" + key + "' must be a finite number");
        }
        return v.get<double>();
    }

    std::vector<std::size_t> counts(const json &obj, const std::string &key,
                                    std::vector<std::size_t> fallback) const {
        if (!obj.contains(key)) {
            return fallback;
        }
        const auto &v = obj.at(key);
        std::vector<std::size_t> out;
        if (!v.is_array() || v.empty()) {
            fail(key, "key '" + key + "' must be a non-empty array of positive integers");
        }
        for (const auto &e : v) {
            if (!e.is_number_integer() || e.get<std::int64_t>() < 1) {
                fail(key, "key '" + key + "' must be a non-empty array of positive integers");
            }
            out.push_back(e.get<std::size_t>());
        }
        return out;
    }

    std::vector<double> probabilities(const json &obj, const std::string &key) const {
        const auto &v = obj.at(key);
        std::vector<double> out;
        if (v.is_number()) {
            out.push_back(v.get<double>());
        } else if (v.is_array() && !v.empty()) {
            for (const auto &e : v) {
                if (!e.is_number()) {
                    fail(key, "key '" + key + "' must be a number or array of numbers");
                }
                out.push_back(e.get<double>());
            }
        } else {
            fail(key, "key '" + key + "' must be a number or array of numbers");
        }
        return out;
    }

    const std::string &source() const { return source_; }
    std::string_view text() const { return text_; }

  private:
    std::string_view text_;
    std::string source_;
};

json parse_document(std::string_view text, const std::string &source) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const std::string what = e.what();
        const auto colon = what.rfind(": ");
        throw ParseError(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1),
                         "invalid JSON: " + (colon == std::string::npos ? what : what.substr(colon + 2)),
                         source);
    }
}

void check_schema(const Reader &r, const json &doc) {
    if (!doc.is_object()) {
        throw ParseError(1, "document must be a JSON object", r.source());
    }
    if (!doc.contains("schema")) {
        throw ParseError(1, "missing 'schema' field", r.source());
    }
    if (!doc.at("schema").is_number_integer() || doc.at("schema").get<int>() != 1) {
        r.fail("schema", "unsupported schema version (expected 1)");
    }
}

EntanglerKind parse_entangler(const Reader &r, const std::string &word) {
    if (word == "cz") {
        return EntanglerKind::CZ;
    }
    if (word == "cnot") {
        return EntanglerKind::CNOT;
    }
    r.fail("entangler", "entangler must be \"cz\" or \"cnot\"");
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

void RunConfig::validate() const {
    if (sampled && !shots_given) {
        throw Error("sampled mode requires a 'shots' schedule");
    }
    if (mitigation.enabled && !sampled) {
        throw Error("mitigation requires sampled mode");
    }
    if (noise && !sampled) {
        throw Error("a readout noise model requires sampled mode");
    }
    if (mitigation.enabled && !noise) {
        throw Error("mitigation requires a readout noise model to calibrate against");
    }
    schedule.validate();
    shots.validate();
    preset.depths.validate();
    if (!(gamma.safety >= 1.0)) {
        throw Error("gamma safety must be >= 1");
    }
    if (!(theta_jitter >= 0.0)) {
        throw Error("theta_jitter must be >= 0");
    }
}

RunConfig parse_run_config(std::string_view text, const std::string &source) {
    const Reader r(text, source);
    const json doc = parse_document(text, source);
    check_schema(r, doc);
    r.only_keys(doc, "config",
                {"schema", "mode", "ansatz", "optimizer", "schedule", "shots", "noise",
                 "mitigation", "gamma", "theta_jitter", "reuse_discriminator", "diagnostics",
                 "seed", "output_dir"});
    RunConfig c;

    const auto mode = r.get<std::string>(doc, "mode", "exact");
    if (mode != "exact" && mode != "sampled") {
        r.fail("mode", "mode must be \"exact\" or \"sampled\"");
    }
    c.sampled = mode == "sampled";

    if (doc.contains("ansatz")) {
        const auto &a = doc.at("ansatz");
        r.only_keys(a, "ansatz",
                    {"preset", "axes", "generator_layers", "discriminator_layers", "entangler"});
        if (a.contains("preset")) {
            try {
                c.preset = ansatz_preset(r.get<std::string>(a, "preset", "h2"));
            } catch (const ParseError &) {
                throw;
            } catch (const Error &e) {
                r.fail("preset", e.what());
            }
        } else {
            c.preset.name = "custom";
        }
        if (a.contains("axes")) {
            try {
                c.preset.axes = parse_axes(r.get<std::string>(a, "axes", "YX"));
            } catch (const ParseError &) {
                throw;
            } catch (const Error &e) {
                r.fail("axes", e.what());
            }
        }
        c.preset.depths.generator_layers =
            r.counts(a, "generator_layers", c.preset.depths.generator_layers);
        c.preset.depths.discriminator_layers =
            r.counts(a, "discriminator_layers", c.preset.depths.discriminator_layers);
        if (a.contains("entangler")) {
            c.preset.entangler = parse_entangler(r, r.get<std::string>(a, "entangler", "cz"));
        }
    }

    if (doc.contains("optimizer")) {
        const auto &o = doc.at("optimizer");
        r.only_keys(o, "optimizer", {"kind", "eta_plus", "eta_minus", "delta_init", "delta_min",
                                     "delta_max"});
        const auto kind = r.get<std::string>(o, "kind", "rotosolve");
        if (kind == "rotosolve") {
            c.optimizer.kind = OptimizerKind::Rotosolve;
        } else if (kind == "rprop") {
            c.optimizer.kind = OptimizerKind::Rprop;
        } else {
            r.fail("kind", "optimizer kind must be \"rotosolve\" or \"rprop\"");
        }
        auto &p = c.optimizer.rprop;
        p.eta_plus = r.real(o, "eta_plus", p.eta_plus);
        p.eta_minus = r.real(o, "eta_minus", p.eta_minus);
        p.delta_init = r.real(o, "delta_init", p.delta_init);
        p.delta_min = r.real(o, "delta_min", p.delta_min);
        p.delta_max = r.real(o, "delta_max", p.delta_max);
        if (!(p.eta_plus > 1.0 && p.eta_minus > 0.0 && p.eta_minus < 1.0 && p.delta_min > 0.0 &&
              p.delta_min <= p.delta_init && p.delta_init <= p.delta_max)) {
            r.fail("optimizer", "inconsistent Rprop hyperparameters");
        }
    }

    if (doc.contains("schedule")) {
        const auto &s = doc.at("schedule");
        r.only_keys(s, "schedule",
                    {"disc_iters", "gen_iters", "outer_cycles", "convergence_tol",
                     "convergence_window", "early_stop", "vqe_max_iters", "vqe_tol",
                     "vqe_restarts", "warm_outer_cycles", "warm_vqe_iters"});
        auto &d = c.schedule;
        d.disc_iters = r.count(s, "disc_iters", d.disc_iters);
        d.gen_iters = r.count(s, "gen_iters", d.gen_iters);
        d.outer_cycles = r.count(s, "outer_cycles", d.outer_cycles);
        d.convergence_tol = r.real(s, "convergence_tol", d.convergence_tol);
        d.convergence_window = r.count(s, "convergence_window", d.convergence_window);
        d.early_stop = r.get<bool>(s, "early_stop", d.early_stop);
        d.vqe_max_iters = r.count(s, "vqe_max_iters", d.vqe_max_iters);
        d.vqe_tol = r.real(s, "vqe_tol", d.vqe_tol);
        d.vqe_restarts = r.count(s, "vqe_restarts", d.vqe_restarts);
        d.warm_outer_cycles = r.count(s, "warm_outer_cycles", d.warm_outer_cycles);
        d.warm_vqe_iters = r.count(s, "warm_vqe_iters", d.warm_vqe_iters);
        if (!(d.convergence_tol > 0.0) || !(d.vqe_tol > 0.0)) {
            r.fail("convergence_tol", "tolerances must be > 0");
        }
    }

    if (doc.contains("shots")) {
        const auto &s = doc.at("shots");
        r.only_keys(s, "shots", {"per_outer_cycle", "final_shots", "final_repeats"});
        c.shots.shots_per_outer_cycle =
            r.counts(s, "per_outer_cycle", c.shots.shots_per_outer_cycle);
        if (!std::is_sorted(c.shots.shots_per_outer_cycle.begin(),
                            c.shots.shots_per_outer_cycle.end())) {
            r.fail("per_outer_cycle", "shot schedule must be non-decreasing");
        }
        c.shots.final_shots = r.count(s, "final_shots", c.shots.final_shots);
        c.shots.final_repeats = r.count(s, "final_repeats", c.shots.final_repeats);
        c.shots_given = true;
    }

    if (doc.contains("noise") && !doc.at("noise").is_null()) {
        const auto &n = doc.at("noise");
        r.only_keys(n, "noise", {"flip_to_one", "flip_to_zero"});
        if (!n.contains("flip_to_one") || !n.contains("flip_to_zero")) {
            r.fail("noise", "noise needs 'flip_to_one' and 'flip_to_zero'");
        }
        try {
            c.noise = ReadoutNoise(r.probabilities(n, "flip_to_one"),
                                   r.probabilities(n, "flip_to_zero"));
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            r.fail("noise", e.what());
        }
    }

    if (doc.contains("mitigation")) {
        const auto &m = doc.at("mitigation");
        if (m.is_boolean()) {
            c.mitigation.enabled = m.get<bool>();
        } else {
            r.only_keys(m, "mitigation",
                        {"enabled", "calibration_shots", "nonnegative", "condition_limit"});
            c.mitigation.enabled = r.get<bool>(m, "enabled", true);
            c.mitigation.calibration_shots =
                r.count(m, "calibration_shots", c.mitigation.calibration_shots);
            c.mitigation.options.nonnegative =
                r.get<bool>(m, "nonnegative", c.mitigation.options.nonnegative);
            c.mitigation.options.condition_limit =
                r.real(m, "condition_limit", c.mitigation.options.condition_limit);
        }
    }

    if (doc.contains("gamma")) {
        const auto &g = doc.at("gamma");
        r.only_keys(g, "gamma", {"method", "safety", "cap_at_range"});
        const auto method = r.get<std::string>(g, "method", "exact");
        if (method == "exact") {
            c.gamma.method = GammaMethod::Exact;
        } else if (method == "inverse_vqe") {
            c.gamma.method = GammaMethod::InverseVqe;
        } else {
            r.fail("method", "gamma method must be \"exact\" or \"inverse_vqe\"");
        }
        c.gamma.safety = r.real(g, "safety", c.gamma.safety);
        if (c.gamma.safety < 1.0) {
            r.fail("safety", "gamma safety must be >= 1");
        }
        if (g.contains("cap_at_range")) {
            c.gamma_cap_at_range = r.get<bool>(g, "cap_at_range", false);
        }
    }

    c.theta_jitter = r.real(doc, "theta_jitter", c.theta_jitter);
    if (c.theta_jitter < 0.0) {
        r.fail("theta_jitter", "theta_jitter must be >= 0");
    }
    c.reuse_discriminator = r.get<bool>(doc, "reuse_discriminator", c.reuse_discriminator);
    c.diagnostics = r.get<bool>(doc, "diagnostics", c.diagnostics);
    if (doc.contains("seed")) {
        const auto &s = doc.at("seed");
        if (!s.is_number_unsigned()) {
            r.fail("seed", "seed must be a non-negative integer");
        }
        c.seed = s.get<std::uint64_t>();
    }
    c.output_dir = r.get<std::string>(doc, "output_dir", c.output_dir.string());

    try {
        c.validate();
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        throw ParseError(0, e.what(), source);
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path &path) {
    return parse_run_config(read_text(path), path.string());
}

json run_config_to_json(const RunConfig &c) {
    json j;
    j["schema"] = 1;
    j["mode"] = c.sampled ? "sampled" : "exact";
    j["ansatz"] = {{"preset", c.preset.name},
                   {"axes", axes_string(c.preset.axes)},
                   {"generator_layers", c.preset.depths.generator_layers},
                   {"discriminator_layers", c.preset.depths.discriminator_layers},
                   {"entangler", c.preset.entangler == EntanglerKind::CZ ? "cz" : "cnot"}};
    j["optimizer"] = {{"kind", c.optimizer.kind == OptimizerKind::Rotosolve ? "rotosolve" : "rprop"},
                      {"eta_plus", c.optimizer.rprop.eta_plus},
                      {"eta_minus", c.optimizer.rprop.eta_minus},
                      {"delta_init", c.optimizer.rprop.delta_init},
                      {"delta_min", c.optimizer.rprop.delta_min},
                      {"delta_max", c.optimizer.rprop.delta_max}};
    const auto &s = c.schedule;
    j["schedule"] = {{"disc_iters", s.disc_iters},
                     {"gen_iters", s.gen_iters},
                     {"outer_cycles", s.outer_cycles},
                     {"convergence_tol", s.convergence_tol},
                     {"convergence_window", s.convergence_window},
                     {"early_stop", s.early_stop},
                     {"vqe_max_iters", s.vqe_max_iters},
                     {"vqe_tol", s.vqe_tol},
                     {"vqe_restarts", s.vqe_restarts},
                     {"warm_outer_cycles", s.warm_outer_cycles},
                     {"warm_vqe_iters", s.warm_vqe_iters}};
    if (c.sampled) {
        j["shots"] = {{"per_outer_cycle", c.shots.shots_per_outer_cycle},
                      {"final_shots", c.shots.final_shots},
                      {"final_repeats", c.shots.final_repeats}};
    }
    if (c.noise) {
        j["noise"] = {{"flip_to_one", c.noise->flip_to_one()},
                      {"flip_to_zero", c.noise->flip_to_zero()}};
    }
    j["mitigation"] = {{"enabled", c.mitigation.enabled},
                       {"calibration_shots", c.mitigation.calibration_shots},
                       {"nonnegative", c.mitigation.options.nonnegative},
                       {"condition_limit", c.mitigation.options.condition_limit}};
    j["gamma"] = {{"method", c.gamma.method == GammaMethod::Exact ? "exact" : "inverse_vqe"},
                  {"safety", c.gamma.safety},
                  {"cap_at_range", c.gamma_cap_at_range.value_or(c.sampled)}};
    j["theta_jitter"] = c.theta_jitter;
    j["reuse_discriminator"] = c.reuse_discriminator;
    j["diagnostics"] = c.diagnostics;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir.string();
    return j;
}

RunOptions make_run_options(const RunConfig &c, std::size_t system_qubits) {
    RunOptions o;
    o.schedule = c.schedule;
    o.shots = c.shots;
    o.optimizer = c.optimizer;
    o.gamma = c.gamma;
    o.gamma.cap_at_range = c.gamma_cap_at_range.value_or(c.sampled);
    o.gamma.vqe_ansatz = {system_qubits, c.preset.depths.generator_layers.front(), c.preset.axes,
                          c.preset.entangler};
    o.seed = c.seed;
    o.diagnostics = c.diagnostics;
    o.theta_jitter = c.theta_jitter;
    o.reuse_discriminator = c.reuse_discriminator;
    if (!c.sampled) {
        o.mode = ExactEvaluation{};
        return o;
    }
    SampledEvaluation s;
    s.noise = c.noise;
    s.mitigation_options = c.mitigation.options;
    if (c.mitigation.enabled && c.noise) {
        s.system_mitigation = std::make_shared<const ConfusionMatrix>(calibrate(
            system_qubits, c.mitigation.calibration_shots, *c.noise, derive_seed(c.seed, {0xCA1, 0})));
        s.register_mitigation = std::make_shared<const ConfusionMatrix>(
            calibrate(system_qubits + 1, c.mitigation.calibration_shots, *c.noise,
                      derive_seed(c.seed, {0xCA1, 1})));
    }
    o.mode = s;
    return o;
}

std::size_t SweepPlan::anchor_index() const {
    for (std::size_t i = 0; i < bond_distances.size(); ++i) {
        if (std::abs(bond_distances[i] - anchor_distance) < 1e-9) {
            return i;
        }
    }
    throw Error("anchor distance is not one of the bond distances");
}

SweepPlan parse_sweep_plan(std::string_view text, const std::filesystem::path &base_dir,
                           const std::string &source) {
    const Reader r(text, source);
    const json doc = parse_document(text, source);
    check_schema(r, doc);
    r.only_keys(doc, "plan",
                {"schema", "anchor_distance", "bond_distances", "hamiltonian_files", "levels"});
    SweepPlan plan;
    if (!doc.contains("bond_distances") || !doc.at("bond_distances").is_array() ||
        doc.at("bond_distances").empty()) {
        r.fail("bond_distances", "plan needs a non-empty 'bond_distances' array");
    }
    for (const auto &d : doc.at("bond_distances")) {
        if (!d.is_number()) {
            r.fail("bond_distances", "bond distances must be numbers");
        }
        plan.bond_distances.push_back(d.get<double>());
    }
    if (!std::is_sorted(plan.bond_distances.begin(), plan.bond_distances.end()) ||
        std::adjacent_find(plan.bond_distances.begin(), plan.bond_distances.end()) !=
            plan.bond_distances.end()) {
        r.fail("bond_distances", "bond distances must be strictly increasing");
    }
    if (!doc.contains("anchor_distance")) {
        r.fail("anchor_distance", "plan needs 'anchor_distance'");
    }
    plan.anchor_distance = r.real(doc, "anchor_distance", 0.0);
    plan.levels = r.count(doc, "levels", plan.levels);

    if (!doc.contains("hamiltonian_files") || !doc.at("hamiltonian_files").is_object()) {
        r.fail("hamiltonian_files", "plan needs a 'hamiltonian_files' object");
    }
    std::vector<std::pair<double, std::string>> files;
    for (const auto &[k, v] : doc.at("hamiltonian_files").items()) {
        double d = 0.0;
        try {
            std::size_t used = 0;
            d = std::stod(k, &used);
            if (used != k.size()) {
                throw std::invalid_argument(k);
            }
        } catch (const std::exception &) {
            r.fail(k, "hamiltonian_files key '" + k + "' is not a distance");
        }
        if (!v.is_string()) {
            r.fail(k, "hamiltonian_files entry for '" + k + "' must be a path");
        }
        files.emplace_back(d, v.get<std::string>());
    }
    for (double d : plan.bond_distances) {
        auto it = std::find_if(files.begin(), files.end(),
                               [d](const auto &f) { return std::abs(f.first - d) < 1e-9; });
        if (it == files.end()) {
            std::ostringstream os;
            os << "no Hamiltonian file for distance " << d;
            r.fail("hamiltonian_files", os.str());
        }
        std::filesystem::path p = it->second;
        plan.hamiltonian_files.push_back(p.is_absolute() ? p : base_dir / p);
    }
    try {
        (void)plan.anchor_index();
    } catch (const Error &e) {
        r.fail("anchor_distance", e.what());
    }
    return plan;
}

SweepPlan load_sweep_plan(const std::filesystem::path &path) {
    return parse_sweep_plan(read_text(path), path.parent_path(), path.string());
}

} // namespace dvqe
