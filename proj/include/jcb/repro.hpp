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

// Run configuration, named presets and the data-producing commands behind
// the `sim` tool. Commands return tables; writing them is left to the caller.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "jcb/four_level.hpp"
#include "jcb/hilbert.hpp"
#include "jcb/liouvillian.hpp"
#include "jcb/observables.hpp"
#include "jcb/regression.hpp"
#include "jcb/steadystate.hpp"

namespace jcb::repro {

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::string preset;
  ModelParams model;                  // delta_omega is resolved per command
  std::optional<double> delta_over_g;
  std::optional<std::string> resonance;  // shifted | doubled-shift | bare | three-photon
  double sweep_from = -1.05;          // units of g
  double sweep_to = -0.5;
  int sweep_points = 111;
  std::optional<double> tau_max;      // 1/kappa
  std::optional<double> omega_step;   // units of g
  std::vector<double> eps_list{3, 10, 12, 15, 20, 26, 30, 40};
  double grid_half_width = 3.0;
  int grid_points = 121;
  bool self_test = false;
  int threads = 0;                    // 0: one per hardware thread
  std::string out;
  Format format = Format::Csv;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2",  "fig3a", "fig3b", "fig4a",
                                              "fig4b", "fig5a", "fig5b"};
  return names;
}

inline void apply_preset(RunConfig& cfg, const std::string& name) {
  cfg.preset = name;
  cfg.model = ModelParams{};  // g = 1000, gamma = 2, kappa = 1, n_max = 30
  if (name == "fig2") {
    cfg.model.eps_d = 40.0;
  } else if (name == "fig3a" || name == "fig4a") {
    cfg.model.eps_d = 20.0;
  } else if (name == "fig3b" || name == "fig4b" || name == "fig5a") {
    cfg.model.eps_d = 60.0;
  } else if (name == "fig5b") {
    cfg.model.eps_d = 60.0;
    cfg.resonance = "three-photon";
  } else {
    fail(ErrorKind::InvalidArgument, "unknown preset '" + name + "'");
  }
}

namespace detail {

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, key + ": '" + value + "' is not a number");
  }
}

inline int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    fail(ErrorKind::InvalidArgument, key + ": '" + value + "' is not an integer");
  return static_cast<int>(v);
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

/// Applies one `key = value` setting. Keys are the long flag names.
inline void apply_setting(RunConfig& cfg, const std::string& key,
                          const std::string& value) {
  using detail::parse_double;
  using detail::parse_int;
  if (key == "preset") {
    apply_preset(cfg, value);
  } else if (key == "g-over-kappa") {
    cfg.model.g = parse_double(key, value);
  } else if (key == "gamma-over-kappa") {
    cfg.model.gamma = parse_double(key, value);
  } else if (key == "eps-over-kappa") {
    cfg.model.eps_d = parse_double(key, value);
  } else if (key == "delta-over-g") {
    cfg.delta_over_g = parse_double(key, value);
  } else if (key == "resonance") {
    if (value != "shifted" && value != "doubled-shift" && value != "bare" &&
        value != "three-photon")
      fail(ErrorKind::InvalidArgument,
           "resonance must be shifted, doubled-shift, bare or three-photon");
    cfg.resonance = value;
  } else if (key == "n-max") {
    cfg.model.n_max = parse_int(key, value);
  } else if (key == "tau-max") {
    cfg.tau_max = parse_double(key, value);
  } else if (key == "omega-step") {
    cfg.omega_step = parse_double(key, value);
  } else if (key == "sweep-from") {
    cfg.sweep_from = parse_double(key, value);
  } else if (key == "sweep-to") {
    cfg.sweep_to = parse_double(key, value);
  } else if (key == "sweep-points") {
    cfg.sweep_points = parse_int(key, value);
  } else if (key == "eps-list") {
    cfg.eps_list.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      cfg.eps_list.push_back(parse_double(key, detail::trim(item)));
  } else if (key == "grid-half-width") {
    cfg.grid_half_width = parse_double(key, value);
  } else if (key == "grid-points") {
    cfg.grid_points = parse_int(key, value);
  } else if (key == "self-test") {
    if (value != "true" && value != "false" && value != "1" && value != "0")
      fail(ErrorKind::InvalidArgument, "self-test must be true or false");
    cfg.self_test = (value == "true" || value == "1");
  } else if (key == "threads") {
    cfg.threads = parse_int(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    if (value == "csv") cfg.format = Format::Csv;
    else if (value == "json") cfg.format = Format::Json;
    else fail(ErrorKind::InvalidArgument, "format must be csv or json");
  } else {
    fail(ErrorKind::InvalidArgument, "unknown setting '" + key + "'");
  }
}

/// Reads `key = value` lines; `#` starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = detail::trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::InvalidArgument,
           path + ":" + std::to_string(number) + ": expected key = value");
    out.emplace_back(detail::trim(line.substr(0, eq)),
                     detail::trim(line.substr(eq + 1)));
  }
  return out;
}

/// Resolves settings as flags > config file > preset. A preset may come from
/// either source; the flag wins.
inline RunConfig build_config(
    const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& file_settings,
    const std::vector<std::pair<std::string, std::string>>& flag_settings) {
  RunConfig cfg;
  std::optional<std::string> preset;
  for (const auto* source : {&file_settings, &flag_settings})
    for (const auto& [k, v] : *source)
      if (k == "preset") preset = v;
  if (preset) apply_preset(cfg, *preset);
  for (const auto* source : {&file_settings, &flag_settings})
    for (const auto& [k, v] : *source)
      if (k != "preset") apply_setting(cfg, k, v);
  cfg.command = command;
  return cfg;
}

inline void check_config(const RunConfig& cfg) {
  validate(cfg.model);
  if (cfg.tau_max && !(*cfg.tau_max > 0.0))
    fail(ErrorKind::InvalidArgument, "tau-max must be positive");
  if (cfg.omega_step && !(*cfg.omega_step > 0.0))
    fail(ErrorKind::InvalidArgument, "omega-step must be positive");
  if (cfg.sweep_points < 1 || !(cfg.sweep_to >= cfg.sweep_from))
    fail(ErrorKind::InvalidArgument, "sweep needs sweep-to >= sweep-from, >= 1 point");
  if (cfg.grid_points < 3 || !(cfg.grid_half_width > 0.0))
    fail(ErrorKind::InvalidArgument, "Wigner grid needs >= 3 points, half width > 0");
  if (cfg.eps_list.empty())
    fail(ErrorKind::InvalidArgument, "eps-list must not be empty");
  for (double e : cfg.eps_list)
    if (!(e > 0.0)) fail(ErrorKind::InvalidArgument, "eps-list entries must be > 0");
  if (cfg.threads < 0) fail(ErrorKind::InvalidArgument, "threads must be >= 0");
}

/// Drive detuning in units of kappa. An explicit delta-over-g wins over a
/// named resonance; `fallback` applies when neither is given.
inline double resolve_detuning(const RunConfig& cfg,
                               const std::string& fallback = "shifted") {
  if (cfg.delta_over_g) return *cfg.delta_over_g * cfg.model.g;
  const std::string mode = cfg.resonance.value_or(fallback);
  if (mode == "shifted")
    return resonant_drive_frequency(cfg.model, ResonanceConvention::ShiftedEnergies);
  if (mode == "doubled-shift")
    return resonant_drive_frequency(cfg.model, ResonanceConvention::DoubledShift);
  if (mode == "bare") return -cfg.model.g / std::sqrt(2.0);
  if (mode == "three-photon") return -cfg.model.g / std::sqrt(3.0);
  fail(ErrorKind::InvalidArgument, "unknown resonance '" + mode + "'");
}

/// Settings after presets and overrides, in a fixed order.
inline std::vector<std::pair<std::string, std::string>> resolved_settings(
    const RunConfig& cfg) {
  using detail::format_number;
  std::vector<std::pair<std::string, std::string>> s{
      {"command", cfg.command},
      {"preset", cfg.preset.empty() ? "none" : cfg.preset},
      {"g-over-kappa", format_number(cfg.model.g)},
      {"gamma-over-kappa", format_number(cfg.model.gamma)},
      {"eps-over-kappa", format_number(cfg.model.eps_d)},
      {"n-max", std::to_string(cfg.model.n_max)},
  };
  if (cfg.delta_over_g) s.emplace_back("delta-over-g", format_number(*cfg.delta_over_g));
  if (cfg.resonance) s.emplace_back("resonance", *cfg.resonance);
  if (cfg.tau_max) s.emplace_back("tau-max", format_number(*cfg.tau_max));
  if (cfg.omega_step) s.emplace_back("omega-step", format_number(*cfg.omega_step));
  if (cfg.command == "sweep-detuning") {
    s.emplace_back("sweep-from", format_number(cfg.sweep_from));
    s.emplace_back("sweep-to", format_number(cfg.sweep_to));
    s.emplace_back("sweep-points", std::to_string(cfg.sweep_points));
  }
  if (cfg.command == "blockade-window") {
    std::string list;
    for (double e : cfg.eps_list) list += (list.empty() ? "" : ",") + format_number(e);
    s.emplace_back("eps-list", list);
  }
  if (cfg.command == "wigner") {
    s.emplace_back("grid-half-width", format_number(cfg.grid_half_width));
    s.emplace_back("grid-points", std::to_string(cfg.grid_points));
  }
  s.emplace_back("self-test", cfg.self_test ? "true" : "false");
  return s;
}

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;  // "name [unit]"
  std::vector<std::vector<Cell>> rows;

  void note(const std::string& key, double value) {
    metadata.emplace_back(key, detail::format_number(value));
  }
  void note(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
  }
};

/// One output file: `suffix` is empty for the main table, otherwise it is
/// inserted before the extension (e.g. ".fft").
struct Output {
  std::string suffix;
  Table table;
};

inline void write_csv(std::ostream& os, const RunConfig& cfg, const Table& t) {
  for (const auto& [k, v] : resolved_settings(cfg)) os << "# " << k << " = " << v << '\n';
  for (const auto& [k, v] : t.metadata) os << "# " << k << " = " << v << '\n';
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const auto* d = std::get_if<double>(&row[i])) os << detail::format_number(*d);
      else os << std::get<std::string>(row[i]);
    }
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const RunConfig& cfg, const Table& t) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : resolved_settings(cfg)) j["config"][k] = v;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r.push_back(*d);
        else r.push_back(nullptr);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    j["rows"].push_back(std::move(r));
  }
  os << j.dump(1) << '\n';
}

/// Path of an output: the configured path (or `<command>.<ext>`) with the
/// suffix placed before the extension.
inline std::string output_path(const RunConfig& cfg, const std::string& suffix) {
  const std::string ext = cfg.format == Format::Json ? ".json" : ".csv";
  std::string base = cfg.out.empty() ? cfg.command + ext : cfg.out;
  if (suffix.empty()) return base;
  const auto slash = base.find_last_of('/');
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return base.substr(0, dot) + suffix + base.substr(dot);
  return base + suffix + ext;
}

namespace detail {

/// Runs task(i) for i in [0, n) on a small pool; results are written by index
/// so the thread count never changes the output.
inline void parallel_for(int n, int threads, const std::function<void(int)>& task) {
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) task(i);
    });
  for (auto& t : pool) t.join();
}

inline DensityMatrix solve_steady_state(const ModelParams& p) {
  return steady_state(build_liouvillian(p));
}

inline double default_tau_max(const ModelParams& p, double multiple) {
  return multiple / (p.gamma > 0.0 ? p.gamma : 2.0 * p.kappa);
}

}  // namespace detail

// -- sweep-detuning --------------------------------------------------------

inline std::vector<Output> cmd_sweep_detuning(const RunConfig& cfg) {
  check_config(cfg);
  std::vector<double> detunings;  // units of g
  if (cfg.delta_over_g || cfg.resonance) {
    detunings.push_back(resolve_detuning(cfg) / cfg.model.g);
  } else if (cfg.sweep_points == 1) {
    detunings.push_back(cfg.sweep_from);
  } else {
    for (int i = 0; i < cfg.sweep_points; ++i)
      detunings.push_back(cfg.sweep_from + (cfg.sweep_to - cfg.sweep_from) * i /
                                               (cfg.sweep_points - 1));
  }
  Table t;
  t.columns = {"delta_over_g [g]", "sigma_z [1]", "P0 [1]", "P1 [1]", "P2 [1]",
               "one_minus_P3 [1]", "F1 [1]", "F2 [1]", "n_mean [photons]", "status"};
  t.rows.resize(detunings.size());
  detail::parallel_for(static_cast<int>(detunings.size()), cfg.threads, [&](int i) {
    ModelParams p = cfg.model;
    p.delta_omega = detunings[i] * p.g;
    std::vector<Cell> row{detunings[i]};
    try {
      const DensityMatrix rho = detail::solve_steady_state(p);
      const DensityMatrix field = partial_trace_atom(rho);
      const auto pn = fock_occupations(field);
      row.insert(row.end(), {atomic_inversion(rho), pn[0], pn[1], pn[2], 1.0 - pn[3],
                             fidelity_m(field, 1), fidelity_m(field, 2),
                             mean_photon_number(field), std::string("ok")});
    } catch (const Error& e) {
      for (int k = 0; k < 8; ++k) row.emplace_back(std::nan(""));
      row.emplace_back(std::string("failed: ") + e.what());
    }
    t.rows[i] = std::move(row);
  });
  const auto warnings = regime_warnings(cfg.model);
  for (size_t i = 0; i < warnings.size(); ++i)
    t.note("warning_" + std::to_string(i), warnings[i]);
  return {{"", std::move(t)}};
}

// -- g2 --------------------------------------------------------------------

/// Decay tolerance for |FT[g2 - 1]| over the default 10/gamma window, where
/// g2 - 1 has only decayed to ~e^{-10} of its excursion.
inline constexpr double kBeatWindowDecayTolerance = 1e-4;

inline std::vector<Output> cmd_g2(const RunConfig& cfg) {
  check_config(cfg);
  ModelParams p = cfg.model;
  p.delta_omega = resolve_detuning(cfg);
  const FourLevelParams fp = derive_params(p);
  const double tau_max = cfg.tau_max.value_or(detail::default_tau_max(p, 10.0));
  const auto tau = beat_resolving_grid(fp.nu, tau_max);

  const Superoperator l = build_liouvillian(p);
  const DensityMatrix rho = steady_state(l);
  const CorrelationTrace numeric = g2_atomic(l, rho, tau);
  const CorrelationTrace analytic = g2_analytic(fp, tau, true);
  const CorrelationTrace envelope = g2_analytic(fp, tau, false);

  Table t;
  t.columns = {"tau [1/kappa]", "tau_beat [2pi/nu]", "g2_analytic [1]",
               "g2_analytic_no_beat [1]", "g2_numeric [1]"};
  const double period = 2.0 * std::numbers::pi / fp.nu;
  for (size_t k = 0; k < tau.size(); ++k)
    t.rows.push_back({tau[k], tau[k] / period, analytic.values[k].real(),
                      envelope.values[k].real(), numeric.values[k].real()});
  t.note("delta_over_g", p.delta_omega / p.g);
  t.note("Omega_over_kappa", fp.omega);
  t.note("nu_over_g", fp.nu / p.g);
  t.note("g2_numeric_at_zero", numeric.values[0].real());

  const double bin = fourier_bin(numeric);
  const double step = cfg.omega_step ? *cfg.omega_step * p.g : bin / 4.0;
  const auto omega = linear_grid(0.0, 3.5 * p.g, step);
  const SpectrumTrace fn = fourier_magnitude(numeric, omega, kBeatWindowDecayTolerance);
  const SpectrumTrace fa = fourier_magnitude(analytic, omega, kBeatWindowDecayTolerance);
  Table f;
  f.columns = {"omega_over_g [g]", "fft_numeric [1/kappa]", "fft_analytic [1/kappa]"};
  for (size_t k = 0; k < omega.size(); ++k)
    f.rows.push_back({omega[k] / p.g, fn.values[k], fa.values[k]});
  f.note("fft_bin_over_kappa", bin);
  const size_t beat = argmax_in(fn, 0.5 * p.g, 3.5 * p.g);
  f.note("dominant_peak_over_g", omega[beat] / p.g);
  f.note("predicted_beat_over_g", fp.nu / p.g);
  return {{"", std::move(t)}, {".fft", std::move(f)}};
}

// -- spectrum --------------------------------------------------------------

struct PeakPrediction {
  std::string label;
  double omega;  // units of kappa, relative to the drive
};

/// Emission lines of the four-level cascade, at differences of the shifted
/// energies in the drive frame, in increasing frequency at resonance.
inline std::vector<PeakPrediction> predicted_spectrum_peaks(const FourLevelParams& fp) {
  const auto e = fp.rotating_energies();
  std::vector<PeakPrediction> out{{"E3-E2", e[3] - e[2]},
                                  {"E1-E0", e[1] - e[0]},
                                  {"E3-E0", e[3] - e[0]},
                                  {"E3-E1", e[3] - e[1]},
                                  {"E2-E0", e[2] - e[0]}};
  std::sort(out.begin(), out.end(),
            [](const PeakPrediction& a, const PeakPrediction& b) { return a.omega < b.omega; });
  return out;
}

inline std::vector<Output> cmd_spectrum_self_test(const RunConfig& cfg) {
  // Single-exponential correlation; its transform is a unit-area Lorentzian.
  const double rate = cfg.model.gamma > 0.0 ? cfg.model.gamma : cfg.model.kappa;
  const auto tau = uniform_tau_grid(20.0 / rate, 1e-3 / rate);
  CorrelationTrace c{tau, {}, CorrelationKind::FirstOrderAtomic};
  for (double t : tau) c.values.emplace_back(std::exp(-rate * t));
  const auto omega = linear_grid(-10.0 * rate, 10.0 * rate, 0.05 * rate);
  const SpectrumTrace s = spectrum(c, omega);
  Table t;
  t.columns = {"omega [kappa]", "S_numeric [1/kappa]", "S_exact [1/kappa]"};
  double worst = 0.0;
  for (size_t k = 0; k < omega.size(); ++k) {
    const double exact =
        rate / (std::numbers::pi * (rate * rate + omega[k] * omega[k]));
    worst = std::max(worst, std::abs(s.values[k] - exact));
    t.rows.push_back({omega[k], s.values[k], exact});
  }
  t.note("self_test", "lorentzian");
  t.note("max_abs_error", worst);
  t.note("result", worst <= 1e-6 ? "pass" : "fail");
  return {{"", std::move(t)}};
}

inline std::vector<Output> cmd_spectrum(const RunConfig& cfg) {
  check_config(cfg);
  if (cfg.self_test) return cmd_spectrum_self_test(cfg);
  ModelParams p = cfg.model;
  p.delta_omega = resolve_detuning(cfg);
  const FourLevelParams fp = derive_params(p);
  const double tau_max = cfg.tau_max.value_or(detail::default_tau_max(p, 20.0));
  const auto tau = beat_resolving_grid(fp.nu, tau_max);
  const Superoperator l = build_liouvillian(p);
  const DensityMatrix rho = steady_state(l);
  const CorrelationTrace c = first_order_atomic(l, rho, tau, true);
  const double step = cfg.omega_step ? *cfg.omega_step * p.g : 0.25 * p.kappa;
  const auto omega = linear_grid(-2.2 * p.g, 2.2 * p.g, step);
  const SpectrumTrace s = spectrum(c, omega);

  Table t;
  t.columns = {"omega_over_g [g]", "S [1/kappa]"};
  for (size_t k = 0; k < omega.size(); ++k) t.rows.push_back({omega[k] / p.g, s.values[k]});
  t.note("delta_over_g", p.delta_omega / p.g);
  t.note("Omega_over_kappa", fp.omega);

  Table peaks;
  peaks.columns = {"line", "predicted_over_g [g]", "nearest_max_over_g [g]",
                   "offset [bins]"};
  const auto maxima = local_maxima(s.values);
  for (const auto& pred : predicted_spectrum_peaks(fp)) {
    double nearest = std::nan("");
    for (size_t idx : maxima)
      if (std::isnan(nearest) || std::abs(omega[idx] - pred.omega) < std::abs(nearest - pred.omega))
        nearest = omega[idx];
    peaks.rows.push_back({pred.label, pred.omega / p.g, nearest / p.g,
                          (nearest - pred.omega) / step});
  }
  peaks.note("omega_bin_over_kappa", step);
  return {{"", std::move(t)}, {".peaks", std::move(peaks)}};
}

// -- wigner ----------------------------------------------------------------

inline const std::vector<double>& inset_detunings() {
  static const std::vector<double> d{-1.0 / 1.40, -1.0 / std::sqrt(2.0), -1.0 / 1.42};
  return d;
}

inline std::vector<Output> cmd_wigner(const RunConfig& cfg) {
  check_config(cfg);
  const auto axis = symmetric_axis(cfg.grid_half_width, cfg.grid_points);
  Table t;
  t.columns = {"delta_over_g [g]", "x [1]", "y [1]", "W [1]"};
  auto dump = [&](double delta_over_g, const WignerGrid& w, const std::string& tag) {
    for (size_t i = 0; i < w.x.size(); ++i)
      for (size_t j = 0; j < w.y.size(); ++j)
        t.rows.push_back({delta_over_g, w.x[i], w.y[j], w.values(i, j)});
    t.note(tag + "normalization", w.normalization);
    for (const auto& warning : w.warnings) t.note(tag + "warning", warning);
  };

  if (cfg.self_test) {
    DensityMatrix vacuum = DensityMatrix::Zero(cfg.model.n_max + 1, cfg.model.n_max + 1);
    vacuum(0, 0) = 1.0;
    const WignerGrid w = wigner(vacuum, axis, axis);
    double worst = 0.0;
    for (size_t i = 0; i < axis.size(); ++i)
      for (size_t j = 0; j < axis.size(); ++j) {
        const double r2 = axis[i] * axis[i] + axis[j] * axis[j];
        worst = std::max(worst, std::abs(w.values(i, j) -
                                         2.0 / std::numbers::pi * std::exp(-2.0 * r2)));
      }
    t.note("self_test", "vacuum");
    t.note("max_abs_error", worst);
    t.note("result", worst <= 1e-12 ? "pass" : "fail");
    dump(0.0, w, "");
    return {{"", std::move(t)}};
  }

  std::vector<double> detunings;
  if (cfg.delta_over_g || cfg.resonance) detunings.push_back(resolve_detuning(cfg) / cfg.model.g);
  else detunings = inset_detunings();
  std::vector<WignerGrid> grids(detunings.size());
  std::vector<std::vector<PhasePoint>> peaks(detunings.size());
  detail::parallel_for(static_cast<int>(detunings.size()), cfg.threads, [&](int i) {
    ModelParams p = cfg.model;
    p.delta_omega = detunings[i] * p.g;
    const DensityMatrix field = partial_trace_atom(detail::solve_steady_state(p));
    grids[i] = wigner(field, axis, axis);
    for (const auto& pk : local_maxima(grids[i]))
      peaks[i].push_back(refine_peak(field, pk));
  });
  for (size_t i = 0; i < detunings.size(); ++i) {
    const std::string tag = "d" + std::to_string(i) + "_";
    t.note(tag + "delta_over_g", detunings[i]);
    t.note(tag + "local_maxima", static_cast<double>(peaks[i].size()));
    if (!peaks[i].empty()) {
      t.note(tag + "principal_x", peaks[i][0].x);
      t.note(tag + "principal_y", peaks[i][0].y);
      t.note(tag + "principal_angle_rad", peaks[i][0].angle());
    }
    dump(detunings[i], grids[i], tag);
  }
  return {{"", std::move(t)}};
}

// -- blockade-window -------------------------------------------------------

inline std::string blockade_label(double g2, double g3) {
  if (g3 < 1.0 && 1.0 < g2) return "two-photon-blockade";
  if (g3 < g2 && g2 < 1.0) return "antibunched";
  if (g2 > 1.0 && g3 > 1.0) return "bunched";
  return "other";
}

inline std::vector<Output> cmd_blockade_window(const RunConfig& cfg) {
  check_config(cfg);
  Table t;
  t.columns = {"eps_over_kappa [kappa]", "gF2_zero [1]", "gF3_zero [1]", "label"};
  t.rows.resize(cfg.eps_list.size());
  detail::parallel_for(static_cast<int>(cfg.eps_list.size()), cfg.threads, [&](int i) {
    RunConfig point = cfg;
    point.model.eps_d = cfg.eps_list[i];
    ModelParams p = point.model;
    p.delta_omega = resolve_detuning(point, "bare");
    std::vector<Cell> row{cfg.eps_list[i]};
    try {
      const DensityMatrix rho = detail::solve_steady_state(p);
      const double g2 = gn_zero_delay(rho, 2), g3 = gn_zero_delay(rho, 3);
      row.insert(row.end(), {g2, g3, blockade_label(g2, g3)});
    } catch (const Error& e) {
      row.insert(row.end(), {std::nan(""), std::nan(""), std::string("failed: ") + e.what()});
    }
    t.rows[i] = std::move(row);
  });
  return {{"", std::move(t)}};
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"sweep-detuning", "g2", "spectrum",
                                              "wigner", "blockade-window"};
  return names;
}

inline std::vector<Output> run(const RunConfig& cfg) {
  if (cfg.command == "sweep-detuning") return cmd_sweep_detuning(cfg);
  if (cfg.command == "g2") return cmd_g2(cfg);
  if (cfg.command == "spectrum") return cmd_spectrum(cfg);
  if (cfg.command == "wigner") return cmd_wigner(cfg);
  if (cfg.command == "blockade-window") return cmd_blockade_window(cfg);
  fail(ErrorKind::InvalidArgument, "unknown command '" + cfg.command + "'");
}

/// Process exit code for an error kind.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return 2;
    case ErrorKind::AmbiguousSteadyState:
    case ErrorKind::SolverFailure:
    case ErrorKind::UndefinedCorrelation:
    case ErrorKind::DegenerateParameters: return 3;
    case ErrorKind::Propagation:
    case ErrorKind::WindowTooShort: return 4;
  }
  return 3;
}

}  // namespace jcb::repro
