// Copyright 2026 The jcblockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "jcb/repro.hpp"

namespace jcb::repro {
namespace {

std::string render(const RunConfig& cfg, const Table& t) {
  std::ostringstream os;
  if (cfg.format == Format::Json) write_json(os, cfg, t);
  else write_csv(os, cfg, t);
  return os.str();
}

RunConfig small(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  cfg.model.n_max = 10;
  return cfg;
}

TEST(Config, PresetsSetDrive) {
  RunConfig cfg;
  apply_preset(cfg, "fig3a");
  EXPECT_EQ(cfg.model.eps_d, 20.0);
  apply_preset(cfg, "fig5b");
  EXPECT_EQ(cfg.model.eps_d, 60.0);
  EXPECT_NEAR(resolve_detuning(cfg) / cfg.model.g, -1.0 / std::sqrt(3.0), 1e-15);
  for (const auto& name : preset_names()) EXPECT_NO_THROW(apply_preset(cfg, name));
  EXPECT_THROW(apply_preset(cfg, "fig9"), Error);
}

TEST(Config, SettingsParseAndValidate) {
  RunConfig cfg;
  apply_setting(cfg, "eps-over-kappa", "12.5");
  apply_setting(cfg, "eps-list", "1, 2,3.5");
  apply_setting(cfg, "format", "json");
  EXPECT_EQ(cfg.model.eps_d, 12.5);
  EXPECT_EQ(cfg.eps_list, (std::vector<double>{1.0, 2.0, 3.5}));
  EXPECT_EQ(cfg.format, Format::Json);
  EXPECT_THROW(apply_setting(cfg, "eps-over-kappa", "12x"), Error);
  EXPECT_THROW(apply_setting(cfg, "n-max", "3.5"), Error);
  EXPECT_THROW(apply_setting(cfg, "colour", "blue"), Error);
  EXPECT_THROW(apply_setting(cfg, "format", "xml"), Error);
  cfg.model.n_max = 2;
  EXPECT_THROW(check_config(cfg), Error);
}

TEST(Config, FlagsOverrideFileOverridesPreset) {
  const RunConfig a = build_config("g2", {{"preset", "fig3b"}, {"n-max", "20"}}, {});
  EXPECT_EQ(a.model.eps_d, 60.0);
  EXPECT_EQ(a.model.n_max, 20);
  const RunConfig b = build_config("g2", {{"preset", "fig3b"}, {"eps-over-kappa", "33"}},
                                   {{"eps-over-kappa", "44"}, {"preset", "fig3a"}});
  EXPECT_EQ(b.preset, "fig3a");
  EXPECT_EQ(b.model.eps_d, 44.0);
  EXPECT_EQ(b.command, "g2");
}

TEST(Config, ReadsFlatFile) {
  const std::string path = ::testing::TempDir() + "jcb_cfg.txt";
  {
    std::ofstream f(path);
    f << "# comment\npreset = fig2\n\neps-over-kappa = 15  # inline\n";
  }
  const auto settings = read_config_file(path);
  ASSERT_EQ(settings.size(), 2u);
  EXPECT_EQ(settings[1].first, "eps-over-kappa");
  EXPECT_EQ(settings[1].second, "15");
  {
    std::ofstream f(path);
    f << "no equals sign\n";
  }
  EXPECT_THROW(read_config_file(path), Error);
  std::remove(path.c_str());
}

TEST(Config, DetuningResolution) {
  RunConfig cfg;
  cfg.model.eps_d = 40.0;
  EXPECT_NEAR(resolve_detuning(cfg) / 1000.0, -0.7094, 5e-5);
  cfg.resonance = "doubled-shift";
  EXPECT_NEAR(resolve_detuning(cfg) / 1000.0, -0.71163, 1e-5);
  cfg.delta_over_g = -0.5;
  EXPECT_EQ(resolve_detuning(cfg), -500.0);
}

TEST(Output, PathsAndSuffixes) {
  RunConfig cfg;
  cfg.command = "g2";
  EXPECT_EQ(output_path(cfg, ""), "g2.csv");
  EXPECT_EQ(output_path(cfg, ".fft"), "g2.fft.csv");
  cfg.out = "runs.v1/out.json";
  EXPECT_EQ(output_path(cfg, ".fft"), "runs.v1/out.fft.json");
  cfg.out = "runs.v1/out";
  EXPECT_EQ(output_path(cfg, ".fft"), "runs.v1/out.fft.csv");
}

TEST(Output, CsvHasMetadataThenUnitHeader) {
  RunConfig cfg = small("blockade-window");
  Table t;
  t.columns = {"x [kappa]", "label"};
  t.rows = {{1.5, std::string("a")}, {std::nan(""), std::string("b")}};
  t.note("answer", 42.0);
  const std::string csv = render(cfg, t);
  EXPECT_NE(csv.find("# command = blockade-window\n"), std::string::npos);
  EXPECT_NE(csv.find("# answer = 42\n"), std::string::npos);
  EXPECT_NE(csv.find("x [kappa],label\n1.5,a\nnan,b\n"), std::string::npos);
}

TEST(Output, JsonCarriesResolvedConfig) {
  RunConfig cfg = small("wigner");
  cfg.format = Format::Json;
  Table t;
  t.columns = {"W [1]"};
  t.rows = {{0.25}, {std::nan("")}};
  const auto j = nlohmann::json::parse(render(cfg, t));
  EXPECT_EQ(j["config"]["command"], "wigner");
  EXPECT_EQ(j["config"]["n-max"], "10");
  EXPECT_EQ(j["rows"][0][0], 0.25);
  EXPECT_TRUE(j["rows"][1][0].is_null());
}

TEST(Commands, SweepRowsAreOrderedAndDeterministic) {
  RunConfig cfg = small("sweep-detuning");
  cfg.model.g = 100.0;
  cfg.model.eps_d = 2.0;
  cfg.sweep_points = 6;
  cfg.threads = 3;
  const auto first = run(cfg);
  ASSERT_EQ(first.size(), 1u);
  ASSERT_EQ(first[0].table.rows.size(), 6u);
  for (size_t i = 1; i < 6; ++i)
    EXPECT_GT(std::get<double>(first[0].table.rows[i][0]),
              std::get<double>(first[0].table.rows[i - 1][0]));
  cfg.threads = 1;
  const auto second = run(cfg);
  EXPECT_EQ(render(cfg, first[0].table), render(cfg, second[0].table));
}

TEST(Commands, WeakDriveSweepStaysInVacuum) {
  RunConfig cfg = small("sweep-detuning");
  cfg.model.eps_d = 0.01;
  cfg.sweep_points = 4;
  const auto out = run(cfg);
  for (const auto& row : out[0].table.rows) {
    EXPECT_NEAR(std::get<double>(row[2]), 1.0, 1e-3);  // P0
    EXPECT_LT(std::get<double>(row[3]), 1e-3);         // P1
    EXPECT_EQ(std::get<std::string>(row.back()), "ok");
  }
}

TEST(Commands, SinglePointWhenDetuningGiven) {
  RunConfig cfg = small("sweep-detuning");
  cfg.delta_over_g = -0.6;
  const auto out = run(cfg);
  ASSERT_EQ(out[0].table.rows.size(), 1u);
  EXPECT_EQ(std::get<double>(out[0].table.rows[0][0]), -0.6);
}

TEST(Commands, SpectrumSelfTestPasses) {
  RunConfig cfg = small("spectrum");
  cfg.self_test = true;
  const auto out = run(cfg);
  bool passed = false;
  for (const auto& [k, v] : out[0].table.metadata)
    if (k == "result") passed = (v == "pass");
  EXPECT_TRUE(passed);
}

TEST(Commands, WignerSelfTestPasses) {
  RunConfig cfg = small("wigner");
  cfg.self_test = true;
  cfg.grid_points = 31;
  const auto out = run(cfg);
  bool passed = false;
  for (const auto& [k, v] : out[0].table.metadata)
    if (k == "result") passed = (v == "pass");
  EXPECT_TRUE(passed);
  EXPECT_EQ(out[0].table.rows.size(), 31u * 31u);
}

TEST(Commands, BlockadeLabels) {
  EXPECT_EQ(blockade_label(2.0, 0.5), "two-photon-blockade");
  EXPECT_EQ(blockade_label(0.8, 0.3), "antibunched");
  EXPECT_EQ(blockade_label(3.0, 2.0), "bunched");
  EXPECT_EQ(blockade_label(0.5, 0.9), "other");
}

TEST(Commands, G2ProducesTraceAndFourierSidecar) {
  RunConfig cfg = small("g2");
  cfg.model.g = 100.0;
  cfg.model.eps_d = 6.0;
  const auto out = run(cfg);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].suffix, ".fft");
  const auto& rows = out[0].table.rows;
  EXPECT_EQ(std::get<double>(rows[0][0]), 0.0);
  EXPECT_NEAR(std::get<double>(rows[0][2]), 0.0, 1e-14);  // analytic
  EXPECT_NEAR(std::get<double>(rows[0][4]), 0.0, 1e-8);   // numeric
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorKind::InvalidArgument), 2);
  EXPECT_EQ(exit_code(ErrorKind::SolverFailure), 3);
  EXPECT_EQ(exit_code(ErrorKind::AmbiguousSteadyState), 3);
  EXPECT_EQ(exit_code(ErrorKind::WindowTooShort), 4);
  EXPECT_EQ(exit_code(ErrorKind::Propagation), 4);
  RunConfig cfg;
  cfg.command = "plot";
  EXPECT_THROW(run(cfg), Error);
}

}  // namespace
}  // namespace jcb::repro
