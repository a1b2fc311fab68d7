// Copyright 2026 The eftqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eftqc/cli.h"

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "eftqc/calibration.h"
#include "eftqc/config.h"
#include "eftqc/error.h"
#include "eftqc/io.h"
#include "eftqc/models.h"
#include "eftqc/reach.h"
#include "eftqc/rfe.h"

namespace eftqc::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::pair<Command, const char*> kCommandNames[] = {
    {Command::kFit, "fit"},
    {Command::kReach, "reach"},
    {Command::kContour, "contour"},
    {Command::kRegimes, "regimes"},
    {Command::kRfeSim, "rfe-sim"},
    {Command::kRfeCalibrate, "rfe-calibrate"},
    {Command::kMsd, "msd"},
};

// Non-finite values have no JSON encoding; write them as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return io::format_double(v);
}

json model_json(const ScalabilityModel& m) {
  return {{"kind", to_string(m.kind)}, {"p0", m.p0}, {"scale", number(m.scale)}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) {}
  void Json(const std::string& name, const json& doc) const {
    io::write_file_atomic(dir_ / name, dump(doc));
  }
  void Text(const std::string& name, const std::string& text) const {
    io::write_file_atomic(dir_ / name, text);
  }

 private:
  fs::path dir_;
};

json problem_json(const ReachProblem& p) {
  return {{"scalability", model_json(p.scalability)},
          {"surface_code", {{"A", p.code.A}, {"p_th", p.code.p_th}}},
          {"algorithm",
           {{"alpha", p.cost.alpha},
            {"beta", p.cost.beta},
            {"p_C", p.cost.p_C},
            {"error_budget_mode", to_string(p.cost.error_budget_mode)}}},
          {"distance_mode", to_string(p.distance_mode)},
          {"burden_factor", burden_factor(p.cost, p.code)}};
}

json reach_json(const ReachResult& r) {
  return {{"method", to_string(r.method)},
          {"q_logical_max", r.q_logical_max},
          {"q_logical_value", number(r.q_logical_value)}};
}

// Runs one reach method; in "all" mode failures are reported inline.
template <typename Fn>
json try_reach(Fn&& fn, bool propagate) {
  if (propagate) return reach_json(fn());
  try {
    return reach_json(fn());
  } catch (const Error& e) {
    return {{"error", e.what()}};
  }
}

void run_fit(const Parameters& params, const Writer& out) {
  const std::string input = params.GetString("fit.input");
  if (input.empty()) {
    throw ParseError(ParseError::Kind::kIo, 0,
                     "fit needs a calibration CSV (--input or fit.input)");
  }
  const auto series = calibration::load_calibration_csv(input);
  const auto outcomes = calibration::compare_fits(series);
  json fits = json::array();
  bool any = false;
  for (const auto& o : outcomes) {
    if (o.report) {
      any = true;
      const auto& r = *o.report;
      fits.push_back({{"model", model_json(r.model)},
                      {"residual_rms", r.residual_rms},
                      {"raw_rms", r.raw_rms},
                      {"r_squared", r.r_squared},
                      {"n_points", r.n_points},
                      {"weighted", r.weighted}});
    } else {
      fits.push_back({{"model", {{"kind", to_string(o.kind)}}}, {"error", o.error}});
    }
  }
  out.Json("result.json", {{"source", series.source_label},
                           {"n_points", series.points.size()},
                           {"ranking_metric", "raw_rms"},
                           {"fits", fits}});
  if (!any) throw FitError("no scalability model fits the calibration data");
}

void run_reach(const Parameters& params, const Writer& out) {
  const ReachProblem problem = params.reach_problem();
  const std::string method = params.GetString("reach.method");
  const bool power_law = problem.scalability.kind == ScalabilityModel::Kind::kPowerLaw;
  if (method != "all" && method != "closed_form" && method != "lower_bound" &&
      method != "numeric") {
    throw ConfigError("reach.method must be all, closed_form, lower_bound or numeric");
  }
  if (!power_law && (method == "closed_form" || method == "lower_bound")) {
    throw ConfigError("reach.method=" + method +
                      " needs the power-law scalability model; use numeric");
  }

  json result = {{"problem", problem_json(problem)},
                 {"burden_reduction", params.GetDouble("reach.burden_reduction")},
                 {"q_phys_opt", number(optimal_physical_qubits(problem.scalability, problem.code))},
                 {"q_phys_max", number(max_physical_qubits(problem.scalability, problem.code))}};
  const bool all = method == "all";
  if (all || method == "closed_form") {
    result["closed_form"] =
        try_reach([&] { return max_logical_qubits_closed_form(problem); }, !all);
  }
  if (all || method == "lower_bound") {
    result["lower_bound"] =
        try_reach([&] { return max_logical_qubits_lower_bound(problem); }, !all);
  }
  if (all || method == "numeric") {
    result["numeric"] =
        try_reach([&] { return max_logical_qubits_numeric(problem); }, !all);
  }
  out.Json("result.json", result);

  // Reach versus burden reduction.
  const std::uint64_t decades = params.GetUint("reach.sweep_max_decades");
  const std::uint64_t per_decade = params.GetUint("reach.sweep_points_per_decade");
  if (per_decade == 0 || problem.scalability.infinite()) return;
  std::ostringstream csv;
  csv << "burden_reduction,q_logical_max_closed_form,q_logical_max_numeric\n";
  for (std::uint64_t i = 0; i <= decades * per_decade; ++i) {
    const double factor =
        std::pow(10.0, static_cast<double>(i) / static_cast<double>(per_decade));
    const ReachProblem reduced = problem.WithBurdenReduction(factor);
    csv << io::format_double(factor) << ',';
    if (power_law) {
      try {
        csv << io::format_double(max_logical_qubits_closed_form(reduced).q_logical_value);
      } catch (const Error&) {
        csv << "nan";
      }
    } else {
      csv << "nan";
    }
    csv << ',' << max_logical_qubits_numeric(reduced).q_logical_max << '\n';
  }
  out.Text("burden_sweep.csv", csv.str());
}

std::string file_label(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (c != '=') out.push_back(c);
  }
  return out;
}

void run_contour(const Parameters& params, const Writer& out) {
  const ReachProblem base = params.reach_problem();
  std::vector<double> scales = params.contour_scales();
  if (scales.empty()) scales.push_back(base.scalability.scale);
  const std::uint64_t q_min = params.GetUint("contour.q_min");
  const std::uint64_t q_max = params.GetUint("contour.q_max");
  const std::uint64_t step = params.GetUint("contour.step");

  json series_json = json::array();
  for (double scale : scales) {
    ScalabilityModel model = base.scalability;
    model.scale = scale;
    ReachProblem problem = base;
    problem.scalability = model;
    problem.scalability.Validate();
    const ContourSeries series = contour(problem, q_min, q_max, step);
    std::ostringstream csv;
    csv << "q_logical,q_phys_required,feasible\n";
    std::uint64_t last_feasible = 0;
    std::uint64_t n_feasible = 0;
    for (const auto& p : series.points) {
      csv << p.q_logical << ',' << io::format_double(p.q_phys_required) << ','
          << (p.feasible ? "true" : "false") << '\n';
      if (p.feasible) {
        last_feasible = p.q_logical;
        ++n_feasible;
      }
    }
    const std::string file = "contour_" + file_label(series.scalability_label) + ".csv";
    out.Text(file, csv.str());
    series_json.push_back({{"label", series.scalability_label},
                           {"scale", number(scale)},
                           {"file", file},
                           {"n_points", series.points.size()},
                           {"n_feasible", n_feasible},
                           {"last_feasible_q_logical", last_feasible}});
  }
  out.Json("result.json", {{"problem", problem_json(base)},
                           {"q_logical_range", {q_min, q_max}},
                           {"step", step},
                           {"series", series_json}});
}

void run_regimes(const Parameters& params, const Writer& out) {
  const std::string spacing = params.GetString("regimes.ratio_spacing");
  if (spacing != "linear" && spacing != "log") {
    throw ConfigError("regimes.ratio_spacing must be linear or log");
  }
  const RegimeGrid grid = regimes_grid(
      params.GetDouble("regimes.s_min"), params.GetDouble("regimes.s_max"),
      params.GetUint("regimes.s_points"), params.GetDouble("regimes.ratio_min"),
      params.GetDouble("regimes.ratio_max"), params.GetUint("regimes.ratio_points"),
      spacing == "log");
  std::ostringstream csv;
  csv << "s,ratio,q_max,regime\n";
  for (const auto& c : grid.cells) {
    csv << io::format_double(c.s) << ',' << io::format_double(c.ratio) << ','
        << io::format_double(c.q_max) << ',' << to_string(c.regime) << '\n';
  }
  out.Text("regimes.csv", csv.str());
  out.Json("result.json",
           {{"file", "regimes.csv"},
            {"s_values", grid.s_values},
            {"ratio_values", grid.ratio_values},
            {"contour_levels", kRegimeLevels},
            {"bands",
             {{"nisq_to_eftqc", {kRegimeLevels[0], kRegimeLevels[1]}},
              {"eftqc_to_ftqc", {kRegimeLevels[2], kRegimeLevels[3]}}}},
            {"labels_advisory", true}});
}

json experiment_json(const rfe::RfeExperiment& e) {
  return {{"theta", e.theta},
          {"K", e.K},
          {"J", e.J},
          {"M", e.M},
          {"epsilon", e.epsilon()},
          {"seed", e.seed},
          {"noise",
           {{"kind", rfe::to_string(e.noise.kind)},
            {"sigma", e.noise.sigma},
            {"lambda", number(e.noise.lambda)},
            {"eta_resample", rfe::to_string(e.noise.eta_resample)}}}};
}

json failure_json(const rfe::FailureEstimate& f) {
  return {{"trials", f.trials},
          {"failures", f.failures},
          {"rate", f.rate},
          {"ci_low", f.ci_low},
          {"ci_high", f.ci_high},
          {"confidence", 0.95}};
}

void run_rfe_sim(const Parameters& params, const Writer& out) {
  const rfe::RfeExperiment e = params.rfe_experiment();
  const rfe::RfeResult r = rfe::run_rfe(e);
  std::ostringstream csv;
  csv << "j,re,im,abs\n";
  for (std::size_t j = 0; j < r.spectrum.size(); ++j) {
    csv << j << ',' << io::format_double(r.spectrum[j].real()) << ','
        << io::format_double(r.spectrum[j].imag()) << ','
        << io::format_double(std::abs(r.spectrum[j])) << '\n';
  }
  out.Text("spectrum.csv", csv.str());
  json result = {{"experiment", experiment_json(e)},
                 {"theta_hat", r.theta_hat},
                 {"peak_index", r.peak_index},
                 {"shots_used", r.shots_used},
                 {"clamp_events", r.clamp_events},
                 {"circular_error", rfe::circular_error(r.theta_hat, e.theta)},
                 {"success", !rfe::is_failure(e, r)}};
  const std::uint64_t trials = params.GetUint("rfe.trials");
  if (trials > 0) result["failure"] = failure_json(rfe::estimate_failure_rate(e, trials));
  out.Json("result.json", result);
}

void run_rfe_calibrate(const Parameters& params, const Writer& out) {
  const rfe::RfeExperiment e = params.rfe_experiment();
  rfe::CalibrationOptions options;
  options.max_M = params.GetUint("rfe.max_M");
  const double delta = params.GetDouble("rfe.delta");
  const auto cal =
      rfe::calibrate_samples(e, delta, params.GetUint("rfe.trials_per_probe"), options);
  json exp = experiment_json(e);
  exp.erase("M");
  out.Json("result.json", {{"experiment", exp},
                           {"delta", delta},
                           {"M", cal.M},
                           {"probes", cal.probes},
                           {"failure_at_M", failure_json(cal.at_M)}});
}

void run_msd(const Writer& out) {
  json records = json::array();
  for (auto [quality, label] : {std::pair{MsdQuality::kHigh, "high"},
                                std::pair{MsdQuality::kLower, "lower"}}) {
    const MsdFactoryRecord& r = msd_minimum_footprint(quality);
    records.push_back({{"quality", label},
                       {"name", r.name},
                       {"p_phys", r.p_phys},
                       {"q_factory", r.q_factory},
                       {"p_out", r.p_out},
                       {"q_min_eftqc", r.q_min_eftqc},
                       {"p_L", r.p_L}});
  }
  out.Json("result.json", {{"records", records}});
}

Parameters resolve(const RunConfig& config) {
  Parameters params = Parameters::Defaults();
  if (config.preset) params.ApplyPreset(*config.preset);
  if (config.config_path) params.MergeFile(*config.config_path);
  for (const auto& o : config.overrides) params.Set(o);
  if (config.seed) params.Set("rfe.seed", std::to_string(*config.seed));
  if (config.input) params.Set("fit.input", config.input->string());
  if (config.distance_mode) params.Set("reach.distance_mode", *config.distance_mode);
  if (config.error_budget_mode) {
    params.Set("algorithm.error_budget_mode", *config.error_budget_mode);
  }
  return params;
}

struct Failure {
  int code;
  const char* type;
};

Failure classify(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return {kExitConfig, "config"};
  if (dynamic_cast<const ParseError*>(&e)) return {kExitInput, "input"};
  if (dynamic_cast<const ConvergenceError*>(&e)) return {kExitConvergence, "convergence"};
  if (dynamic_cast<const UnboundedError*>(&e)) return {kExitConvergence, "unbounded"};
  if (dynamic_cast<const FitError*>(&e)) return {kExitDomain, "fit"};
  if (dynamic_cast<const AboveThresholdError*>(&e)) return {kExitDomain, "above_threshold"};
  if (dynamic_cast<const DomainError*>(&e)) return {kExitDomain, "domain"};
  return {kExitInternal, "internal"};
}

}  // namespace

const char* to_string(Command command) {
  for (const auto& [c, name] : kCommandNames) {
    if (c == command) return name;
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [c, n] : kCommandNames) {
    if (name == n) return c;
  }
  return std::nullopt;
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    const Parameters params = resolve(config);
    fs::create_directories(config.out_dir);
    const Writer out(config.out_dir);
    out.Json("manifest.json", {{"tool", "eftqc"},
                               {"format_version", 1},
                               {"command", to_string(config.command)},
                               {"parameters", params.tree()}});
    switch (config.command) {
      case Command::kFit:
        run_fit(params, out);
        break;
      case Command::kReach:
        run_reach(params, out);
        break;
      case Command::kContour:
        run_contour(params, out);
        break;
      case Command::kRegimes:
        run_regimes(params, out);
        break;
      case Command::kRfeSim:
        run_rfe_sim(params, out);
        break;
      case Command::kRfeCalibrate:
        run_rfe_calibrate(params, out);
        break;
      case Command::kMsd:
        run_msd(out);
        break;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    const Failure f = classify(e);
    json doc = {{"error", {{"type", f.type}, {"message", e.what()}, {"exit_code", f.code}}}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && pe->line() > 0) {
      doc["error"]["line"] = pe->line();
    }
    err << doc.dump() << '\n';
    std::error_code ec;
    if (fs::is_directory(config.out_dir, ec)) {
      try {
        io::write_file_atomic(config.out_dir / "error.json", dump(doc));
      } catch (const std::exception&) {
      }
    }
    return f.code;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Early fault-tolerant quantum computing reach and RFE toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string config_path, preset, input, distance_mode, budget_mode, out_dir = ".";
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON parameter file or emitted manifest");
  app.add_option("--preset", preset, "Named parameter preset")
      ->check(CLI::IsMember(Parameters::PresetNames()));
  app.add_option("--set", config.overrides, "Override key=value (repeatable)");
  app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (rfe.seed)");
  app.add_option("--input", input, "Calibration CSV for `fit`");
  app.add_option("--distance-mode", distance_mode, "continuous | discrete_odd");
  app.add_option("--error-budget-mode", budget_mode, "union_bound | log_refined");

  for (const auto& [command, name] : kCommandNames) {
    app.add_subcommand(name, "")->callback([&config, c = command] { config.command = c; });
  }
  app.get_subcommand("fit")->description("Fit scalability models to calibration data");
  app.get_subcommand("reach")->description("Maximum logical qubit count");
  app.get_subcommand("contour")->description("Required physical qubits vs logical qubits");
  app.get_subcommand("regimes")->description("Max physical qubits over (s, p0/p_th)");
  app.get_subcommand("rfe-sim")->description("Run one RFE experiment and its failure rate");
  app.get_subcommand("rfe-calibrate")->description("Calibrate the RFE shot count");
  app.get_subcommand("msd")->description("Minimum magic-state-distillation footprints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    json doc = {{"error", {{"type", "usage"}, {"message", e.what()}, {"exit_code", kExitConfig}}}};
    std::cerr << doc.dump() << '\n';
    return kExitConfig;
  }
  if (!config_path.empty()) config.config_path = config_path;
  if (!preset.empty()) config.preset = preset;
  if (!input.empty()) config.input = input;
  if (!distance_mode.empty()) config.distance_mode = distance_mode;
  if (!budget_mode.empty()) config.error_budget_mode = budget_mode;
  if (seed_opt->count() > 0) config.seed = seed;
  config.out_dir = out_dir;
  return run(config, std::cerr);
}

}  // namespace eftqc::cli
