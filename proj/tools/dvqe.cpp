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
// dvqe command-line front end: solve one Hamiltonian or sweep a plan.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "dvqe/config.hpp"
#include "dvqe/driver.hpp"
#include "dvqe/error.hpp"
#include "dvqe/pauli.hpp"
#include "dvqe/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitPartial = 2;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> mode;
};

dvqe::RunConfig load_config(const std::string &path, const Overrides &o) {
    dvqe::RunConfig config = dvqe::load_run_config(path);
    if (o.seed) {
        config.seed = *o.seed;
    }
    if (o.out_dir) {
        config.output_dir = *o.out_dir;
    }
    if (o.mode) {
        config.sampled = *o.mode == "sampled";
        if (config.sampled) {
            config.shots_given = true; // default ramp unless the file gave one
        } else {
            config.noise.reset();
            config.mitigation.enabled = false;
        }
    }
    config.validate();
    return config;
}

void write_ladder(const fs::path &dir, const dvqe::LadderResult &result,
                  const std::optional<std::vector<double>> &oracle, const nlohmann::json &config) {
    nlohmann::json doc = dvqe::ladder_to_json(result, oracle);
    doc["config"] = config;
    dvqe::write_text(dir / "ladder.json", doc.dump(2) + "\n");
    dvqe::write_text(dir / "ladder.csv", dvqe::ladder_csv(result, oracle));
}

void print_warnings(const std::vector<std::string> &warnings) {
    for (const auto &w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

int cmd_solve(const std::string &config_path, const std::string &hamiltonian_path,
              std::size_t levels, const Overrides &o) {
    const dvqe::RunConfig config = load_config(config_path, o);
    const dvqe::PauliSum h = dvqe::load_pauli_sum(hamiltonian_path);
    const dvqe::RunOptions options = dvqe::make_run_options(config, h.qubit_count());
    const dvqe::LadderResult result =
        dvqe::solve_ladder(h, levels, config.preset, options, nullptr, 0);
    const auto oracle = dvqe::oracle_energies(h);
    write_ladder(config.output_dir, result, oracle, dvqe::run_config_to_json(config));
    print_warnings(result.warnings);
    for (const auto &r : result.levels) {
        std::cout << "level " << r.level << ": E = " << dvqe::format_fixed(r.energy, 8)
                  << (r.converged ? "" : "  (not converged)") << '\n';
    }
    std::cout << "wrote " << (config.output_dir / "ladder.json").string() << '\n';
    return result.all_converged() ? kExitOk : kExitPartial;
}

int cmd_sweep(const std::string &config_path, const std::string &plan_path,
              std::optional<std::size_t> levels_override, const Overrides &o) {
    const dvqe::RunConfig config = load_config(config_path, o);
    const dvqe::SweepPlan plan = dvqe::load_sweep_plan(plan_path);
    const std::size_t levels = levels_override.value_or(plan.levels);

    std::vector<dvqe::SweepPoint> points;
    std::vector<dvqe::SweepOracle> oracle;
    for (std::size_t i = 0; i < plan.bond_distances.size(); ++i) {
        dvqe::PauliSum h = dvqe::load_pauli_sum(plan.hamiltonian_files[i]);
        oracle.push_back({plan.bond_distances[i], dvqe::oracle_energies(h)});
        points.push_back({plan.bond_distances[i], std::move(h)});
    }
    const std::size_t qubits = points.front().hamiltonian.qubit_count();
    for (const auto &p : points) {
        if (p.hamiltonian.qubit_count() != qubits) {
            throw dvqe::Error("sweep plan mixes Hamiltonians of different widths");
        }
    }
    const dvqe::RunOptions options = dvqe::make_run_options(config, qubits);
    const dvqe::SweepReport report =
        dvqe::sweep(points, plan.anchor_index(), levels, config.preset, options);

    const fs::path out = config.output_dir;
    const nlohmann::json config_json = dvqe::run_config_to_json(config);
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const auto &p = report.points[i];
        if (p.result) {
            char name[32];
            std::snprintf(name, sizeof name, "d_%.3f", p.distance);
            write_ladder(out / "points" / name, *p.result, oracle[i].energies, config_json);
            print_warnings(p.result->warnings);
        }
        if (!p.error.empty()) {
            std::cerr << "point " << p.distance << " failed: " << p.error << '\n';
        }
    }
    nlohmann::json doc = dvqe::sweep_to_json(report, oracle);
    doc["config"] = config_json;
    dvqe::write_text(out / "sweep.json", doc.dump(2) + "\n");
    dvqe::write_text(out / "sweep.csv", dvqe::sweep_csv(report, oracle, levels));
    dvqe::write_text(out / "errors_by_level.csv",
                     dvqe::errors_by_level_csv(report, oracle, levels));
    std::cout << dvqe::errors_by_level_csv(report, oracle, levels);
    std::cout << "wrote " << (out / "sweep.csv").string() << '\n';

    bool ok = report.all_ok();
    for (const auto &p : report.points) {
        ok = ok && p.result && p.result->all_converged();
    }
    return ok ? kExitOk : kExitPartial;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Discriminative VQE eigensolver"};
    app.require_subcommand(1);

    Overrides o;
    std::string config_path;
    std::string mode;
    std::uint64_t seed = 0;
    std::string out_dir;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "run-config JSON")->required()->check(
            CLI::ExistingFile);
        cmd->add_option("--seed", seed, "override the root seed");
        cmd->add_option("--out-dir", out_dir, "override the output directory");
        cmd->add_option("--mode", mode, "override the evaluation mode")
            ->check(CLI::IsMember({"exact", "sampled"}));
    };

    std::string hamiltonian_path;
    std::size_t levels = 0;
    CLI::App *solve = app.add_subcommand("solve", "find the lowest levels of one Hamiltonian");
    add_common(solve);
    solve->add_option("--hamiltonian", hamiltonian_path, "Pauli-sum file")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_option("--levels", levels, "number of levels (ground included)")
        ->required()
        ->check(CLI::PositiveNumber);

    std::string plan_path;
    std::size_t sweep_levels = 0;
    CLI::App *sweep = app.add_subcommand("sweep", "solve every point of a sweep plan");
    add_common(sweep);
    sweep->add_option("--plan", plan_path, "sweep-plan JSON")->required()->check(
        CLI::ExistingFile);
    CLI::Option *levels_opt =
        sweep->add_option("--levels", sweep_levels, "override the plan's level count")
            ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    for (const CLI::App *cmd : {solve, sweep}) {
        if (cmd->parsed()) {
            if (cmd->count("--seed")) {
                o.seed = seed;
            }
            if (cmd->count("--out-dir")) {
                o.out_dir = out_dir;
            }
            if (cmd->count("--mode")) {
                o.mode = mode;
            }
        }
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(config_path, hamiltonian_path, levels, o);
        }
        std::optional<std::size_t> lv;
        if (levels_opt->count()) {
            lv = sweep_levels;
        }
        return cmd_sweep(config_path, plan_path, lv, o);
    } catch (const dvqe::ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dvqe::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPartial;
    }
}
