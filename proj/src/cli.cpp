// Copyright 2026 The langevin-bias Authors.
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

#include "langevin/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "langevin/error.hpp"
#include "langevin/experiment.hpp"
#include "langevin/oracles.hpp"

namespace langevin::cli {

namespace {

// Flag name -> config key, in the order they are reported to resolve_config.
const std::vector<std::pair<std::string, std::string>>& flag_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"preset", "preset"},         {"algorithm", "algorithm"},
      {"target", "target"},         {"steps", "steps"},
      {"step-size", "step_size"},   {"burn-in", "burn_in"},
      {"seed", "seed"},             {"chains", "chains"},
      {"alpha", "alpha"},           {"beta", "beta"},
      {"beta2", "beta2"},           {"lambda", "lambda"},
      {"a", "a"},                   {"gamma-mode", "gamma_mode"},
      {"metric", "metric"},         {"bins", "bins"},
      {"range", "range"},           {"out", "out"},
      {"format", "format"},         {"theta0", "theta0"},
      {"name", "name"}};
  return keys;
}

struct ExperimentFlags {
  std::map<std::string, std::string> values;
  std::string config_path;
  bool quiet = false;
};

void add_experiment_flags(CLI::App& app, ExperimentFlags& flags) {
  app.add_option("--config", flags.config_path, "key = value configuration file");
  for (const auto& [flag, key] : flag_keys()) {
    app.add_option("--" + flag, flags.values[flag], "sets '" + key + "'");
  }
  app.add_flag("--quiet", flags.quiet, "no progress output");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? env : "out";
}

ExperimentConfig build_config(const CLI::App& app, const ExperimentFlags& flags) {
  KeyValues file_values;
  if (!flags.config_path.empty()) file_values = parse_key_values(read_text(flags.config_path));
  KeyValues flag_values;
  for (const auto& [flag, key] : flag_keys()) {
    if (app.count("--" + flag) > 0) flag_values.emplace_back(key, flags.values.at(flag));
  }
  if (flags.quiet) flag_values.emplace_back("quiet", "true");
  return resolve_config(file_values, flag_values, default_out_dir());
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const ExperimentResult result = run_experiment(cfg, &err);
  const WrittenFiles files = write_outputs(result, cfg.quiet ? nullptr : &err);
  for (const auto* f : {&files.csv, &files.json, &files.svg}) {
    if (*f) out << **f << "\n";
  }
  if (result.diverged) {
    err << "error: " << result.message << " (partial outputs written)\n";
    return kDivergence;
  }
  if (!cfg.quiet) {
    err << std::setprecision(4) << "tv(empirical, closed form) = "
        << result.report.tv_emp_vs_closed
        << ", tv(empirical, target) = " << result.report.tv_emp_vs_target << "\n";
  }
  return kSuccess;
}

int cmd_closed_form(const std::optional<ExperimentConfig>& cfg, bool verify,
                    std::ostream& out, std::ostream& err) {
  if (cfg) {
    const TargetModel target = make_target(cfg->target);
    const double lo = std::min(kDefaultGridLo, cfg->hist_lo);
    const double hi = std::max(kDefaultGridHi, cfg->hist_hi);
    const GridDensity closed =
        predicted_stationary(cfg->sampler, target, lo, hi, kDefaultGridPoints);
    const GridDensity tdens = target_density(target, lo, hi, kDefaultGridPoints);
    std::error_code ec;
    std::filesystem::create_directories(cfg->out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg->out_dir + "'");
    const auto path = (std::filesystem::path(cfg->out_dir) / cfg->name).concat(".closed.csv");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << density_csv(tdens, closed, nullptr, cfg->hist_lo, cfg->hist_hi, cfg->bin_width);
    if (!f.flush()) throw IoError("failed writing '" + path.string() + "'");
    out << path.string() << "\n" << std::setprecision(6) << "Z = " << closed.z << " ("
        << to_string(closed.provenance) << ")\n";
    if (!verify) return kSuccess;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto checks = check_published_constants();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = true;
  out << std::left << std::setw(11) << "density" << std::setw(12) << "Z" << std::setw(12)
      << "Z_oracle" << std::setw(13) << "Z_published" << "status\n";
  for (const auto& c : checks) {
    const bool pass = c.within_published_tolerance && c.within_oracle_tolerance;
    ok = ok && pass;
    out << std::setw(11) << c.name << std::setw(12) << std::fixed << std::setprecision(6)
        << c.z_stationary << std::setw(12) << c.z_oracle << std::setw(13)
        << std::setprecision(3) << c.z_published << (pass ? "ok" : "MISMATCH") << "\n";
  }
  out << std::defaultfloat << "computed in " << std::setprecision(3) << secs << " s\n";
  if (verify && !ok) {
    err << "error: normalization constants disagree beyond 0.005\n";
    return kValidationError;
  }
  return kSuccess;
}

int cmd_compare(const std::vector<std::string>& paths, std::ostream& out) {
  for (const auto& p : paths) {
    const ComparisonReport rep = compare_csv(read_density_csv(p));
    nlohmann::ordered_json j;
    j["csv"] = p;
    j["tv_emp_vs_closed"] = rep.tv_emp_vs_closed;
    j["tv_emp_vs_target"] = rep.tv_emp_vs_target;
    j["kl_emp_vs_closed"] =
        std::isfinite(rep.kl_emp_vs_closed) ? nlohmann::ordered_json(rep.kl_emp_vs_closed)
                                            : nlohmann::ordered_json(nullptr);
    j["max_bin_error"] = rep.max_bin_error;
    j["mean_bin_error"] = rep.mean_bin_error;
    out << j.dump() << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive-step-size Langevin samplers and their stationary densities",
               "langevin"};
  app.require_subcommand(1);

  ExperimentFlags sim_flags, cf_flags;
  auto* simulate = app.add_subcommand("simulate", "run chains and write CSV/JSON/SVG");
  add_experiment_flags(*simulate, sim_flags);

  bool verify = false;
  auto* closed = app.add_subcommand("closed-form", "closed-form stationary densities only");
  add_experiment_flags(*closed, cf_flags);
  closed->add_flag("--verify", verify, "cross-check normalization constants against oracles");

  std::vector<std::string> compare_paths;
  auto* compare = app.add_subcommand("compare", "recompute reports from density CSVs");
  compare->add_option("csv", compare_paths, "density CSV files")->required();

  std::string plot_csv, plot_svg;
  auto* plot = app.add_subcommand("plot", "render a density CSV as SVG");
  plot->add_option("csv", plot_csv, "density CSV")->required();
  plot->add_option("-o,--output", plot_svg, "SVG path (default: CSV stem + .svg)");

  auto* presets = app.add_subcommand("presets", "list named presets");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (*simulate) return cmd_simulate(build_config(*simulate, sim_flags), out, err);
    if (*closed) {
      const bool any = !cf_flags.config_path.empty() ||
                       std::any_of(flag_keys().begin(), flag_keys().end(), [&](const auto& fk) {
                         return closed->count("--" + fk.first) > 0;
                       });
      std::optional<ExperimentConfig> cfg;
      if (any) cfg = build_config(*closed, cf_flags);
      return cmd_closed_form(cfg, verify, out, err);
    }
    if (*compare) return cmd_compare(compare_paths, out);
    if (*plot) {
      out << emit_plot(plot_csv, plot_svg.empty() ? std::nullopt
                                                  : std::optional<std::string>(plot_svg),
                       &err)
          << "\n";
      return kSuccess;
    }
    if (*presets) {
      for (const auto& p : preset_list()) {
        out << std::left << std::setw(26) << p.name << p.description << "\n";
      }
      return kSuccess;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const DegenerateMetricError& e) {
    err << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kSuccess;
}

}  // namespace langevin::cli
