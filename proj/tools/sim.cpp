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

// sim <command> [options]: writes steady-state, correlation and spectrum data
// for the driven Jaynes-Cummings system. Settings resolve as
// flags > --config file > --preset.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "jcb/repro.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven Jaynes-Cummings simulator: steady states, correlations, "
               "spectra and Wigner functions"};
  std::string command;
  app.add_option("command", command, "What to compute")
      ->required()
      ->check(CLI::IsMember(jcb::repro::command_names()));

  // Every setting is taken as a string and routed through apply_setting, so
  // flags and config-file keys share one parser.
  const std::vector<std::pair<std::string, std::string>> valued{
      {"preset", "Named preset (fig2, fig3a, fig3b, fig4a, fig4b, fig5a, fig5b)"},
      {"g-over-kappa", "Dipole coupling g in units of kappa"},
      {"gamma-over-kappa", "Atomic spontaneous emission rate in units of kappa"},
      {"eps-over-kappa", "Drive amplitude in units of kappa"},
      {"delta-over-g", "Drive detuning omega_d - omega_0 in units of g"},
      {"resonance", "Named detuning when delta is not given: shifted, doubled-shift, bare, three-photon"},
      {"n-max", "Fock-space cutoff"},
      {"tau-max", "Correlation window in units of 1/kappa"},
      {"omega-step", "Frequency grid step in units of g"},
      {"sweep-from", "First detuning of the sweep, units of g"},
      {"sweep-to", "Last detuning of the sweep, units of g"},
      {"sweep-points", "Number of sweep points"},
      {"eps-list", "Comma-separated drive amplitudes for blockade-window"},
      {"grid-half-width", "Wigner grid half width"},
      {"grid-points", "Wigner grid points per axis"},
      {"threads", "Worker threads for sweeps (0 = all cores)"},
      {"out", "Output path (default <command>.<format>)"},
      {"format", "csv or json"},
  };
  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const auto& [name, help] : valued)
    options.emplace_back(name, app.add_option("--" + name, flag_values[name], help));
  bool self_test = false;
  auto* self_test_flag =
      app.add_flag("--self-test", self_test, "Run the analytic self-test of the command");
  std::string config_path;
  app.add_option("--config", config_path, "Flat key = value settings file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  jcb::repro::RunConfig cfg;
  try {
    std::vector<std::pair<std::string, std::string>> file_settings;
    if (!config_path.empty()) file_settings = jcb::repro::read_config_file(config_path);
    std::vector<std::pair<std::string, std::string>> flag_settings;
    for (const auto& [name, opt] : options)
      if (opt->count() > 0) flag_settings.emplace_back(name, flag_values[name]);
    if (self_test_flag->count() > 0)
      flag_settings.emplace_back("self-test", self_test ? "true" : "false");
    cfg = jcb::repro::build_config(command, file_settings, flag_settings);

    for (const auto& warning : jcb::regime_warnings(cfg.model))
      std::cerr << "warning: " << warning << '\n';

    const auto outputs = jcb::repro::run(cfg);
    for (const auto& out : outputs) {
      const std::string path = jcb::repro::output_path(cfg, out.suffix);
      std::ofstream file(path);
      if (!file) {
        std::cerr << "error: cannot write " << path << '\n';
        return kExitInvalidConfig;
      }
      if (cfg.format == jcb::repro::Format::Json) jcb::repro::write_json(file, cfg, out.table);
      else jcb::repro::write_csv(file, cfg, out.table);
      std::cout << path << '\n';
    }
  } catch (const jcb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return jcb::repro::exit_code(e.kind());
  }
  return 0;
}
