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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "langevin/analysis.hpp"
#include "langevin/estimation.hpp"
#include "langevin/samplers.hpp"
#include "langevin/stationary.hpp"

namespace langevin {

enum class OutputFormat { kCsv, kJson, kSvg };

struct ExperimentConfig {
  std::string name = "experiment";  // output file stem
  std::string target = "std_normal";
  SamplerConfig sampler;
  int chains = 8;
  double hist_lo = -4.0;
  double hist_hi = 4.0;
  double bin_width = 0.1;
  std::string out_dir = "out";
  std::set<OutputFormat> formats = {OutputFormat::kCsv, OutputFormat::kJson,
                                    OutputFormat::kSvg};
  bool quiet = false;

  void validate() const;
};

/// Ordered key = value pairs, as read from a config file or from flags.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Keys are not checked here.
KeyValues parse_key_values(const std::string& text);

/// Builds a validated config: defaults (or the named preset), then file
/// values, then flag values. Unknown keys, bad values and hyperparameters
/// that the chosen algorithm does not use are ValidationErrors.
ExperimentConfig resolve_config(const KeyValues& file_values,
                                const KeyValues& flag_values,
                                const std::string& default_out_dir = "out");

/// Convenience: resolve_config(parse_key_values(text), {}).
ExperimentConfig parse_config(const std::string& text);

struct PresetInfo {
  std::string name;
  std::string description;
};
std::vector<PresetInfo> preset_list();
ExperimentConfig make_preset(const std::string& name);

/// Everything one experiment produces, before anything is written.
struct ExperimentResult {
  ExperimentConfig config;
  HistogramDensity histogram;
  std::vector<ChainReport> chains;
  GridDensity closed_form;
  GridDensity target;
  ComparisonReport report;
  bool diverged = false;
  std::int64_t divergence_step = -1;
  std::int64_t stiff_steps = 0;
  std::string message;
};

/// Runs cfg.chains independent chains (stream ids 0..chains-1) on worker
/// threads, merges their histograms in chain order and compares against the
/// predicted stationary density and the target. Progress lines go to
/// `diagnostics` unless cfg.quiet.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                std::ostream* diagnostics = nullptr);

/// The density CSV: bin_left,bin_right,target_density,closed_form_density,
/// empirical_density with 9 significant digits. Without a histogram the
/// empirical column is omitted.
std::string density_csv(const GridDensity& target, const GridDensity& closed,
                        const HistogramDensity* histogram, double lo,
                        double hi, double width);
std::string density_csv(const ExperimentResult& result);

std::string report_json(const ExperimentResult& result);

/// Files written for an experiment, keyed by format.
struct WrittenFiles {
  std::optional<std::string> csv, json, svg;
};
WrittenFiles write_outputs(const ExperimentResult& result,
                           std::ostream* diagnostics = nullptr);

/// Parsed form of the density CSV.
struct DensityCsv {
  std::vector<double> left, right, target, closed, empirical;
  bool has_empirical = false;
};
DensityCsv parse_density_csv(const std::string& text);
DensityCsv read_density_csv(const std::string& path);

/// SVG with the target (p), closed form (pi) and empirical step plot
/// (pi_hat). Missing empirical data drops that series with a warning.
std::string render_plot_svg(const DensityCsv& csv, const std::string& title,
                            std::ostream* diagnostics = nullptr);
/// Reads csv_path, writes svg_path (default: same stem, .svg).
std::string emit_plot(const std::string& csv_path,
                      std::optional<std::string> svg_path = std::nullopt,
                      std::ostream* diagnostics = nullptr);

/// Report recomputed from a density CSV (bin masses = density * width,
/// outside mass = 1 - sum).
ComparisonReport compare_csv(const DensityCsv& csv);

struct ConstantCheck {
  std::string name;
  double z_stationary;
  double z_oracle;
  double oracle_error_bound;
  double z_published;
  bool within_published_tolerance;
  bool within_oracle_tolerance;
};

/// The four normalization constants of the standard-normal experiments
/// computed by the stationary module and checked against the oracles.
std::vector<ConstantCheck> check_published_constants(double tolerance = 5e-3);

}  // namespace langevin
