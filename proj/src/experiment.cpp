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

#include "langevin/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "langevin/error.hpp"
#include "langevin/oracles.hpp"
#include "langevin/targets.hpp"

namespace langevin {

namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (v.empty() || ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw ValidationError("invalid value for '" + key + "': '" + value + "'");
  }
  return out;
}

// Integers may be written as 1e7.
std::int64_t parse_integer(const std::string& key, const std::string& value) {
  const double d = parse_number(key, value);
  if (d != std::floor(d) || std::fabs(d) > 9.0e15) {
    throw ValidationError("'" + key + "' must be an integer, got '" + value + "'");
  }
  return static_cast<std::int64_t>(d);
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ValidationError("'" + key + "' must be a boolean, got '" + value + "'");
}

std::pair<double, double> parse_range(const std::string& value) {
  std::string v = value;
  std::replace(v.begin(), v.end(), ':', ',');
  const auto parts = split(v, ',');
  if (parts.size() != 2) {
    throw ValidationError("'range' must look like lo,hi; got '" + value + "'");
  }
  return {parse_number("range", parts[0]), parse_number("range", parts[1])};
}

std::set<OutputFormat> parse_formats(const std::string& value) {
  std::set<OutputFormat> out;
  for (const auto& f : split(value, ',')) {
    if (f == "csv") out.insert(OutputFormat::kCsv);
    else if (f == "json") out.insert(OutputFormat::kJson);
    else if (f == "svg") out.insert(OutputFormat::kSvg);
    else throw ValidationError("unknown output format '" + f + "'");
  }
  if (out.empty()) throw ValidationError("'format' must name at least one format");
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "preset", "name", "algorithm", "target", "steps", "step_size",
      "burn_in", "seed", "chains", "alpha", "beta", "beta2", "lambda", "a",
      "gamma_mode", "metric", "bins", "range", "out", "format", "quiet",
      "theta0", "zero_init", "precondition_before_update"};
  return keys;
}

// Hyperparameters each algorithm actually reads.
const std::set<std::string>& hyper_keys() {
  static const std::set<std::string> keys = {"alpha", "beta", "beta2", "lambda",
                                             "a", "gamma_mode", "metric"};
  return keys;
}

std::set<std::string> allowed_hyper_keys(Algorithm a) {
  switch (a) {
    case Algorithm::kSgld: return {};
    case Algorithm::kPsgld: return {"alpha", "lambda", "gamma_mode"};
    case Algorithm::kShampoo1d: return {"alpha", "gamma_mode"};
    case Algorithm::kMonge: return {"alpha", "beta2", "gamma_mode"};
    case Algorithm::kAdamSgld: return {"alpha", "beta", "lambda", "a"};
    case Algorithm::kSgrldExact: return {"metric", "lambda", "beta2"};
    case Algorithm::kLimitDownscaledGamma:
      return {"metric", "alpha", "lambda", "beta2", "gamma_mode"};
    case Algorithm::kLimitAdam: return {"lambda", "a"};
  }
  return {};
}

void apply_algorithm_defaults(ExperimentConfig& cfg, Algorithm a) {
  SamplerConfig& s = cfg.sampler;
  s.algorithm = a;
  s.gamma_mode = GammaMode::kDrop;
  // V = h(0) = 0 puts G at 1/lambda, and the first step lands near |theta| ~ 1e2.
  s.theta0 = {1.0};
  switch (a) {
    case Algorithm::kPsgld:
    case Algorithm::kLimitDownscaledGamma:
      s.gamma_mode = GammaMode::kEma;
      break;
    case Algorithm::kMonge:
      s.beta2 = 1.0;
      break;
    case Algorithm::kAdamSgld:
      s.beta = 0.5;
      s.a = 1.0;
      break;
    default:
      break;
  }
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  SamplerConfig& s = cfg.sampler;
  if (key == "name") cfg.name = trim(value);
  else if (key == "target") {
    make_target(trim(value));
    cfg.target = trim(value);
  } else if (key == "steps") s.steps = parse_integer(key, value);
  else if (key == "step_size") s.step_size = parse_number(key, value);
  else if (key == "burn_in") s.burn_in = parse_integer(key, value);
  else if (key == "seed") {
    const std::int64_t seed = parse_integer(key, value);
    if (seed < 0) throw ValidationError("'seed' must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
  } else if (key == "chains") {
    const std::int64_t c = parse_integer(key, value);
    if (c < 1 || c > 4096) throw ValidationError("'chains' must lie in [1, 4096]");
    cfg.chains = static_cast<int>(c);
  } else if (key == "alpha") s.alpha = parse_number(key, value);
  else if (key == "beta") s.beta = parse_number(key, value);
  else if (key == "beta2") s.beta2 = parse_number(key, value);
  else if (key == "lambda") s.lambda = parse_number(key, value);
  else if (key == "a") s.a = parse_number(key, value);
  else if (key == "gamma_mode") s.gamma_mode = gamma_mode_from_string(trim(value));
  else if (key == "metric") s.metric = metric_tag_from_string(trim(value));
  else if (key == "bins") cfg.bin_width = parse_number(key, value);
  else if (key == "range") std::tie(cfg.hist_lo, cfg.hist_hi) = parse_range(value);
  else if (key == "out") cfg.out_dir = trim(value);
  else if (key == "format") cfg.formats = parse_formats(value);
  else if (key == "quiet") cfg.quiet = parse_bool(key, value);
  else if (key == "theta0") {
    s.theta0.clear();
    for (const auto& p : split(value, ',')) s.theta0.push_back(parse_number(key, p));
  } else if (key == "zero_init") s.zero_init_preconditioner = parse_bool(key, value);
  else if (key == "precondition_before_update") {
    s.precondition_before_update = parse_bool(key, value);
  } else {
    throw ValidationError("unknown configuration key '" + key + "'");
  }
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

nlohmann::ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
  sampler.validate();
  make_target(target);
  if (chains < 1) throw ValidationError("chains must be >= 1");
  HistogramDensity shape(hist_lo, hist_hi, bin_width);
  if (formats.empty()) throw ValidationError("no output format selected");
  if (name.empty()) throw ValidationError("experiment name must not be empty");
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": expected 'key = value'");
    }
    std::string key = trim(t.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
    }
    out.emplace_back(std::move(key), value);
  }
  return out;
}

ExperimentConfig resolve_config(const KeyValues& file_values,
                                const KeyValues& flag_values,
                                const std::string& default_out_dir) {
  KeyValues merged = file_values;
  merged.insert(merged.end(), flag_values.begin(), flag_values.end());

  std::set<std::string> explicit_keys;
  std::optional<std::string> preset, algorithm, name;
  for (const auto& [k, v] : merged) {
    if (!known_keys().contains(k)) {
      throw ValidationError("unknown configuration key '" + k + "'");
    }
    explicit_keys.insert(k);
    if (k == "preset") preset = trim(v);
    if (k == "algorithm") algorithm = trim(v);
    if (k == "name") name = trim(v);
  }

  ExperimentConfig cfg;
  cfg.out_dir = default_out_dir;
  if (preset) {
    cfg = make_preset(*preset);
    cfg.out_dir = default_out_dir;
  }
  if (algorithm) apply_algorithm_defaults(cfg, algorithm_from_string(*algorithm));
  if (!name) cfg.name = (preset && !algorithm) ? *preset : to_string(cfg.sampler.algorithm);

  for (const auto& [k, v] : merged) {
    if (k == "preset" || k == "algorithm") continue;
    apply_key(cfg, k, v);
  }

  const auto allowed = allowed_hyper_keys(cfg.sampler.algorithm);
  for (const auto& k : explicit_keys) {
    if (hyper_keys().contains(k) && !allowed.contains(k)) {
      throw ValidationError("'" + k + "' does not apply to algorithm " +
                            to_string(cfg.sampler.algorithm));
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
  return resolve_config(parse_key_values(text), {});
}

std::vector<PresetInfo> preset_list() {
  return {
      {"figure1-psgld", "PSGLD, lambda = 1e-8, alpha = 0.9, EMA correction term"},
      {"figure1-shampoo", "SGRLD in the 1-D Shampoo metric (lambda = 0), Gamma dropped"},
      {"figure1-monge", "SGRLD in the Monge metric, beta2 = 1, Gamma dropped"},
      {"figure1-adamsgld", "Adam SGLD, a = 1, beta = 0.5, lambda = 1e-8"},
      {"figure1-sgld-control", "plain SGLD, unbiased control"},
      {"figure1-corrected-psgld",
       "PSGLD, lambda = 1, correction rescaled by 1/(1 - alpha)"},
  };
}

ExperimentConfig make_preset(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  SamplerConfig& s = cfg.sampler;
  s.step_size = 1e-4;
  s.steps = 10'000'000;
  s.burn_in = 100'000;
  s.seed = 42;
  s.alpha = 0.9;
  s.lambda = 1e-8;
  if (name == "figure1-psgld") {
    apply_algorithm_defaults(cfg, Algorithm::kPsgld);
  } else if (name == "figure1-shampoo") {
    apply_algorithm_defaults(cfg, Algorithm::kShampoo1d);
  } else if (name == "figure1-monge") {
    apply_algorithm_defaults(cfg, Algorithm::kMonge);
  } else if (name == "figure1-adamsgld") {
    apply_algorithm_defaults(cfg, Algorithm::kAdamSgld);
  } else if (name == "figure1-sgld-control") {
    apply_algorithm_defaults(cfg, Algorithm::kSgld);
  } else if (name == "figure1-corrected-psgld") {
    apply_algorithm_defaults(cfg, Algorithm::kPsgld);
    s.lambda = 1.0;
    s.gamma_mode = GammaMode::kExactRescaled;
  } else {
    throw ValidationError("unknown preset '" + name + "'");
  }
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                std::ostream* diagnostics) {
  cfg.validate();
  const TargetModel target = make_target(cfg.target);
  if (target.dim != 1) throw ValidationError("experiments need a 1-D target");

  const double grid_lo = std::min(kDefaultGridLo, cfg.hist_lo);
  const double grid_hi = std::max(kDefaultGridHi, cfg.hist_hi);

  ExperimentResult result{
      cfg,
      HistogramDensity(cfg.hist_lo, cfg.hist_hi, cfg.bin_width),
      {},
      predicted_stationary(cfg.sampler, target, grid_lo, grid_hi, kDefaultGridPoints),
      target_density(target, grid_lo, grid_hi, kDefaultGridPoints),
      {},
      false,
      -1,
      0,
      {},
  };

  const auto start = std::chrono::steady_clock::now();
  const int n = cfg.chains;
  std::vector<HistogramDensity> hists(
      n, HistogramDensity(cfg.hist_lo, cfg.hist_hi, cfg.bin_width));
  std::vector<ChainReport> reports(n);
  std::vector<std::exception_ptr> errors(n);
  std::mutex diag_mutex;
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int k = next++; k < n; k = next++) {
      try {
        SamplerConfig sc = cfg.sampler;
        sc.stream = static_cast<std::uint64_t>(k);
        HistogramDensity& h = hists[k];
        const std::vector<Sink> sinks = {
            [&h](std::int64_t, std::span<const double> theta) { h.accumulate(theta[0]); }};
        ProgressFn progress;
        if (diagnostics && !cfg.quiet) {
          progress = [&, k](std::int64_t done, std::int64_t total) {
            std::lock_guard lock(diag_mutex);
            *diagnostics << "[" << cfg.name << "] chain " << k << ": " << done << "/"
                         << total << " steps\n";
          };
        }
        reports[k] = run_chain(sc, target, sinks, progress);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = std::min<int>(n, static_cast<int>(hw));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (int k = 0; k < n; ++k) {
    result.histogram = merge(result.histogram, hists[k]);
    result.stiff_steps += reports[k].final_state.stiff_steps;
    if (reports[k].diverged && !result.diverged) {
      result.diverged = true;
      result.divergence_step = reports[k].divergence_step;
      result.message = "chain " + std::to_string(k) + ": " + reports[k].message;
    }
  }
  result.chains = std::move(reports);

  ComparisonReport& rep = result.report;
  rep.algorithm = to_string(cfg.sampler.algorithm);
  rep.seed = cfg.sampler.seed;
  rep.steps = cfg.sampler.steps;
  rep.z_constant = result.closed_form.z;
  const auto edges = uniform_edges(cfg.hist_lo, cfg.hist_hi, cfg.bin_width);
  if (result.histogram.total() > 0) {
    fill_distances(rep, histogram_masses(result.histogram),
                   bin_average(result.closed_form, edges),
                   bin_average(result.target, edges));
  } else {
    rep.tv_emp_vs_closed = rep.tv_emp_vs_target = rep.kl_emp_vs_closed = NAN;
    rep.max_bin_error = rep.mean_bin_error = NAN;
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (diagnostics && !cfg.quiet && result.stiff_steps > 0) {
    *diagnostics << "warning: correction drift was stiff (|Gamma| eps / 2 > 1) on "
                 << result.stiff_steps << " steps\n";
  }
  return result;
}

std::string density_csv(const GridDensity& target, const GridDensity& closed,
                        const HistogramDensity* histogram, double lo, double hi,
                        double width) {
  const HistogramDensity shape(lo, hi, width);
  std::string out = "bin_left,bin_right,target_density,closed_form_density";
  out += histogram ? ",empirical_density\n" : "\n";
  const double n = histogram ? static_cast<double>(histogram->total()) : 0.0;
  for (std::size_t i = 0; i < shape.bin_count(); ++i) {
    const double left = shape.edge(i);
    const double right = shape.edge(i + 1);
    const double center = 0.5 * (left + right);
    out += fmt9(left) + "," + fmt9(right) + "," + fmt9(target.at(center)) + "," +
           fmt9(closed.at(center));
    if (histogram) {
      const double emp =
          n > 0 ? static_cast<double>(histogram->counts()[i]) / (n * width) : 0.0;
      out += "," + fmt9(emp);
    }
    out += "\n";
  }
  return out;
}

std::string density_csv(const ExperimentResult& r) {
  return density_csv(r.target, r.closed_form, &r.histogram, r.config.hist_lo,
                     r.config.hist_hi, r.config.bin_width);
}

std::string report_json(const ExperimentResult& r) {
  const ComparisonReport& rep = r.report;
  nlohmann::ordered_json j;
  j["algorithm"] = rep.algorithm;
  j["seed"] = rep.seed;
  j["steps"] = rep.steps;
  j["tv_emp_vs_closed"] = finite_or_null(rep.tv_emp_vs_closed);
  j["tv_emp_vs_target"] = finite_or_null(rep.tv_emp_vs_target);
  j["kl_emp_vs_closed"] = finite_or_null(rep.kl_emp_vs_closed);
  j["max_bin_error"] = finite_or_null(rep.max_bin_error);
  j["z_constant"] = finite_or_null(rep.z_constant);
  j["wall_seconds"] = rep.wall_seconds;
  j["preset"] = r.config.name;
  j["chains"] = r.config.chains;
  j["step_size"] = r.config.sampler.step_size;
  j["gamma_mode"] = to_string(r.config.sampler.gamma_mode);
  j["mean_bin_error"] = finite_or_null(rep.mean_bin_error);
  j["stiff_steps"] = r.stiff_steps;
  j["diverged"] = r.diverged;
  if (r.diverged) {
    j["divergence_step"] = r.divergence_step;
    j["divergence_message"] = r.message;
  }
  return j.dump(2) + "\n";
}

WrittenFiles write_outputs(const ExperimentResult& r, std::ostream* diagnostics) {
  const ExperimentConfig& cfg = r.config;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());

  WrittenFiles files;
  const fs::path stem = fs::path(cfg.out_dir) / cfg.name;
  const bool need_csv = cfg.formats.contains(OutputFormat::kCsv) ||
                        cfg.formats.contains(OutputFormat::kSvg);
  const std::string csv = need_csv ? density_csv(r) : std::string();
  if (cfg.formats.contains(OutputFormat::kCsv)) {
    const fs::path p = fs::path(stem).concat(".csv");
    write_file(p, csv);
    files.csv = p.string();
  }
  if (cfg.formats.contains(OutputFormat::kJson)) {
    const fs::path p = fs::path(stem).concat(".json");
    write_file(p, report_json(r));
    files.json = p.string();
  }
  if (cfg.formats.contains(OutputFormat::kSvg)) {
    const fs::path p = fs::path(stem).concat(".svg");
    write_file(p, render_plot_svg(parse_density_csv(csv), cfg.name, diagnostics));
    files.svg = p.string();
  }
  return files;
}

DensityCsv parse_density_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("malformed CSV: empty input");
  const auto header = split(trim(line), ',');
  const std::vector<std::string> required = {"bin_left", "bin_right", "target_density",
                                             "closed_form_density"};
  if (header.size() < 4 || header.size() > 5 ||
      !std::equal(required.begin(), required.end(), header.begin()) ||
      (header.size() == 5 && header[4] != "empirical_density")) {
    throw ValidationError("malformed CSV: unexpected header '" + trim(line) + "'");
  }
  DensityCsv csv;
  csv.has_empirical = header.size() == 5;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != header.size()) {
      throw ValidationError("malformed CSV: line " + std::to_string(lineno) +
                            " has " + std::to_string(cells.size()) + " fields");
    }
    try {
      csv.left.push_back(parse_number("bin_left", cells[0]));
      csv.right.push_back(parse_number("bin_right", cells[1]));
      csv.target.push_back(parse_number("target_density", cells[2]));
      csv.closed.push_back(parse_number("closed_form_density", cells[3]));
      if (csv.has_empirical) csv.empirical.push_back(parse_number("empirical_density", cells[4]));
    } catch (const ValidationError& e) {
      throw ValidationError("malformed CSV: line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (csv.left.empty()) throw ValidationError("malformed CSV: no data rows");
  return csv;
}

DensityCsv read_density_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_density_csv(ss.str());
}

std::string render_plot_svg(const DensityCsv& csv, const std::string& title,
                            std::ostream* diagnostics) {
  constexpr double kWidth = 720, kHeight = 440;
  constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;
  const double x0 = csv.left.front();
  const double x1 = csv.right.back();
  double ymax = 0.0;
  for (std::size_t i = 0; i < csv.left.size(); ++i) {
    ymax = std::max({ymax, csv.target[i], csv.closed[i],
                     csv.has_empirical ? csv.empirical[i] : 0.0});
  }
  ymax = ymax > 0.0 ? 1.1 * ymax : 1.0;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); };
  auto py = [&](double y) { return kHeight - kBottom - y / ymax * (kHeight - kTop - kBottom); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

  // Axes and ticks.
  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kWidth - kRight
      << "\" y2=\"" << py(0) << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop << "\"/>\n</g>\n";
  svg << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  const double xstep = (x1 - x0) > 4.0 ? 1.0 : (x1 - x0) / 4.0;
  for (double x = std::ceil(x0 / xstep) * xstep; x <= x1 + 1e-12; x += xstep) {
    svg << "<line x1=\"" << fmt3(px(x)) << "\" y1=\"" << fmt3(py(0)) << "\" x2=\""
        << fmt3(px(x)) << "\" y2=\"" << fmt3(py(0) + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fmt3(px(x)) << "\" y=\"" << fmt3(py(0) + 18)
        << "\" text-anchor=\"middle\">" << fmt9(std::round(x * 1e6) / 1e6) << "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double y = ymax / 1.1 * k / 5.0;
    svg << "<line x1=\"" << fmt3(kLeft - 5) << "\" y1=\"" << fmt3(py(y)) << "\" x2=\""
        << fmt3(kLeft) << "\" y2=\"" << fmt3(py(y)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fmt3(kLeft - 8) << "\" y=\"" << fmt3(py(y) + 4)
        << "\" text-anchor=\"end\">" << fmt3(y) << "</text>\n";
  }
  svg << "</g>\n";

  struct Series {
    std::string label, css, color, points;
  };
  std::vector<Series> series;
  auto curve = [&](const std::vector<double>& ys) {
    std::string pts;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const double c = 0.5 * (csv.left[i] + csv.right[i]);
      pts += fmt3(px(c)) + "," + fmt3(py(ys[i])) + " ";
    }
    return pts;
  };
  series.push_back({"p", "target", "#1f77b4", curve(csv.target)});
  series.push_back({"pi", "closed-form", "#d62728", curve(csv.closed)});
  if (csv.has_empirical) {
    std::string pts;
    for (std::size_t i = 0; i < csv.empirical.size(); ++i) {
      pts += fmt3(px(csv.left[i])) + "," + fmt3(py(csv.empirical[i])) + " " +
             fmt3(px(csv.right[i])) + "," + fmt3(py(csv.empirical[i])) + " ";
    }
    series.push_back({"pi_hat", "empirical", "#2ca02c", pts});
  } else if (diagnostics) {
    *diagnostics << "warning: no empirical_density column; plotting 2 series\n";
  }

  for (const auto& s : series) {
    svg << "<polyline class=\"series " << s.css << "\" data-label=\"" << s.label
        << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\""
        << trim(s.points) << "\"/>\n";
  }
  svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    const double x = kWidth - kRight - 90;
    svg << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 24 << "\" y2=\"" << y
        << "\" stroke=\"" << series[i].color << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << x + 30 << "\" y=\"" << y + 4 << "\">" << series[i].label
        << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string emit_plot(const std::string& csv_path, std::optional<std::string> svg_path,
                      std::ostream* diagnostics) {
  const DensityCsv csv = read_density_csv(csv_path);
  const fs::path out =
      svg_path ? fs::path(*svg_path) : fs::path(csv_path).replace_extension(".svg");
  write_file(out, render_plot_svg(csv, fs::path(csv_path).stem().string(), diagnostics));
  return out.string();
}

ComparisonReport compare_csv(const DensityCsv& csv) {
  if (!csv.has_empirical) {
    throw ValidationError("compare: CSV has no empirical_density column");
  }
  auto masses = [&](const std::vector<double>& dens) {
    BinMasses m;
    double sum = 0.0;
    for (std::size_t i = 0; i < dens.size(); ++i) {
      m.mass.push_back(dens[i] * (csv.right[i] - csv.left[i]));
      sum += m.mass.back();
    }
    m.outside = std::max(0.0, 1.0 - sum);
    return m;
  };
  ComparisonReport rep;
  rep.algorithm = "unknown";
  fill_distances(rep, masses(csv.empirical), masses(csv.closed), masses(csv.target));
  return rep;
}

std::vector<ConstantCheck> check_published_constants(double tolerance) {
  const TargetModel target = make_standard_normal();
  const double lo = kDefaultGridLo, hi = kDefaultGridHi;
  const std::size_t n = kDefaultGridPoints;
  const std::map<std::string, double> computed = {
      {"psgld", stationary_downscaled_gamma(target, MetricKind::rmsprop(1e-8), 0.9, lo, hi, n).z},
      {"shampoo", stationary_downscaled_gamma(target, MetricKind::shampoo_1d(), 1.0, lo, hi, n).z},
      {"monge", stationary_downscaled_gamma(target, MetricKind::monge(1.0), 1.0, lo, hi, n).z},
      {"adam_sgld", stationary_adam(target, MetricKind::rmsprop(1e-8), 1.0, lo, hi, n).z},
  };
  std::vector<ConstantCheck> out;
  for (const auto& ref : oracles::analytic_constants()) {
    const double z = computed.at(ref.name);
    out.push_back({ref.name, z, ref.z.value, ref.z.error_bound, ref.published_value,
                   std::fabs(z - ref.published_value) <= tolerance,
                   std::fabs(z - ref.z.value) <= tolerance});
  }
  return out;
}

}  // namespace langevin
