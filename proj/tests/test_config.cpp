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
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dvqe/config.hpp"
#include "dvqe/error.hpp"

namespace dvqe {
namespace {

std::size_t error_line(const std::string &text) {
    try {
        (void)parse_run_config(text, "cfg.json");
    } catch (const ParseError &e) {
        return e.line();
    }
    ADD_FAILURE() << "expected ParseError for:\n" << text;
    return 0;
}

TEST(RunConfig, DefaultsFromMinimalDocument) {
    const RunConfig c = parse_run_config(R"({"schema": 1})");
    EXPECT_FALSE(c.sampled);
    EXPECT_EQ(c.preset.name, "h2");
    EXPECT_EQ(c.schedule.disc_iters, 3u);
    EXPECT_DOUBLE_EQ(c.theta_jitter, 0.1);
}

TEST(RunConfig, ReadsEverySection) {
    const RunConfig c = parse_run_config(R"({
  "schema": 1,
  "mode": "sampled",
  "ansatz": {"preset": "lih", "discriminator_layers": [6, 6, 8, 8, 8]},
  "optimizer": {"kind": "rprop", "eta_plus": 1.3},
  "schedule": {"disc_iters": 2, "gen_iters": 2, "outer_cycles": 4},
  "shots": {"per_outer_cycle": [100, 200], "final_shots": 300, "final_repeats": 2},
  "noise": {"flip_to_one": 0.02, "flip_to_zero": 0.03},
  "mitigation": {"enabled": true, "calibration_shots": 1000},
  "gamma": {"method": "inverse_vqe", "safety": 1.5},
  "seed": 12,
  "output_dir": "out"
})");
    EXPECT_TRUE(c.sampled);
    EXPECT_EQ(c.preset.name, "lih");
    EXPECT_EQ(c.preset.depths.discriminator_layers.size(), 5u);
    EXPECT_EQ(c.optimizer.kind, OptimizerKind::Rprop);
    EXPECT_DOUBLE_EQ(c.optimizer.rprop.eta_plus, 1.3);
    EXPECT_EQ(c.shots.shots_per_outer_cycle, (std::vector<std::size_t>{100, 200}));
    ASSERT_TRUE(c.noise);
    EXPECT_DOUBLE_EQ(c.noise->flip_to_zero(0), 0.03);
    EXPECT_TRUE(c.mitigation.enabled);
    EXPECT_EQ(c.gamma.method, GammaMethod::InverseVqe);
    EXPECT_EQ(c.seed, 12u);
    EXPECT_EQ(c.output_dir, "out");
}

TEST(RunConfig, JsonRoundTrip) {
    const RunConfig c = parse_run_config(
        R"({"schema": 1, "mode": "sampled", "shots": {"per_outer_cycle": [10]},
            "noise": {"flip_to_one": 0.01, "flip_to_zero": 0.02}, "mitigation": true})");
    const RunConfig d = parse_run_config(run_config_to_json(c).dump());
    EXPECT_EQ(run_config_to_json(c), run_config_to_json(d));
}

TEST(RunConfig, ErrorsAreLineAnchored) {
    EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"bogus\": 3\n}"), 3u);
    EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"mode\": \"quantum\"\n}"), 3u);
    EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"schedule\": {\n    \"disc_iters\": -2\n  }\n}"),
              4u);
    EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"seed\": 1,,\n}"), 3u);
    EXPECT_EQ(error_line("{\n  \"schema\": 2\n}"), 2u);
}

TEST(RunConfig, Invariants) {
    // Sampled mode needs shots; mitigation and noise need sampled mode.
    EXPECT_THROW((void)parse_run_config(R"({"schema": 1, "mode": "sampled"})"), ParseError);
    EXPECT_THROW((void)parse_run_config(R"({"schema": 1, "mitigation": true})"), ParseError);
    EXPECT_THROW((void)parse_run_config(
                     R"({"schema": 1, "noise": {"flip_to_one": 0.1, "flip_to_zero": 0.1}})"),
                 ParseError);
    EXPECT_THROW((void)parse_run_config(R"({"schema": 1, "gamma": {"safety": 0.5}})"),
                 ParseError);
    EXPECT_THROW((void)parse_run_config(R"({"schema": 1, "ansatz": {"preset": "water"}})"),
                 ParseError);
}

TEST(RunConfig, MakeRunOptionsCalibratesWhenMitigating) {
    const RunConfig c = parse_run_config(
        R"({"schema": 1, "mode": "sampled", "shots": {"per_outer_cycle": [10]},
            "noise": {"flip_to_one": 0.02, "flip_to_zero": 0.02}, "mitigation": true})");
    const RunOptions o = make_run_options(c, 2);
    const auto *s = std::get_if<SampledEvaluation>(&o.mode);
    ASSERT_NE(s, nullptr);
    ASSERT_TRUE(s->system_mitigation);
    ASSERT_TRUE(s->register_mitigation);
    EXPECT_EQ(s->system_mitigation->qubit_count(), 2u);
    EXPECT_EQ(s->register_mitigation->qubit_count(), 3u);
    EXPECT_TRUE(o.gamma.cap_at_range);
}

TEST(SweepPlan, ParsesAndResolvesFiles) {
    const SweepPlan p = parse_sweep_plan(R"({
  "schema": 1,
  "anchor_distance": 0.7,
  "bond_distances": [0.5, 0.7],
  "hamiltonian_files": {"0.5": "a.txt", "0.7": "b.txt"},
  "levels": 3
})",
                                         "/data");
    EXPECT_EQ(p.anchor_index(), 1u);
    EXPECT_EQ(p.hamiltonian_files[0], std::filesystem::path("/data/a.txt"));
    EXPECT_EQ(p.levels, 3u);
}

TEST(SweepPlan, RejectsMissingFileEntry) {
    EXPECT_THROW((void)parse_sweep_plan(R"({"schema": 1, "anchor_distance": 0.5,
        "bond_distances": [0.5, 0.7], "hamiltonian_files": {"0.5": "a.txt"}})"),
                 ParseError);
}

TEST(Config, ShippedConfigsLoad) {
    const std::string dir = DVQE_CONFIG_DIR;
    const RunConfig h2 = load_run_config(dir + "/h2_exact.json");
    EXPECT_FALSE(h2.sampled);
    EXPECT_EQ(h2.preset.depths.discriminator_layers.back(), 8u);
    const RunConfig noisy = load_run_config(dir + "/h2_sampled.json");
    EXPECT_TRUE(noisy.sampled);
    EXPECT_TRUE(noisy.mitigation.enabled);
    const RunConfig lih = load_run_config(dir + "/lih_exact.json");
    EXPECT_EQ(lih.preset.axes.size(), 3u);
    EXPECT_EQ(make_run_options(lih, 4).schedule.gen_iters, 1u);
}

} // namespace
} // namespace dvqe
