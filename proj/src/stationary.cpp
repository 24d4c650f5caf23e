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

#include "langevin/stationary.hpp"

#include <algorithm>
#include <cmath>

#include "langevin/error.hpp"

namespace langevin {

namespace {

void check_grid(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError("grid: need finite lo < hi");
  }
  if (n < 3) throw ValidationError("grid: need at least 3 points");
}

double grid_x(double lo, double hi, std::size_t n, std::size_t i) {
  if (i + 1 == n) return hi;
  return lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(n - 1);
}

// Simpson's rule on [a, b], bisected until the two halves agree. Smooth
// integrands stop at the first level; the steep features near u' = 0 that a
// small lambda produces get resolved instead of sampled at one node.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  if (!std::isfinite(flm) || !std::isfinite(frm)) {
    throw NumericalError("non-finite integrand near theta = " + std::to_string(m));
  }
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

constexpr double kSimpsonTol = 1e-12;
constexpr int kSimpsonDepth = 30;

double simpson_segment(const std::function<double(double)>& f, double a, double b,
                       double fa, double fb) {
  const double fm = f(0.5 * (a + b));
  if (!std::isfinite(fm)) {
    throw NumericalError("non-finite integrand near theta = " + std::to_string(0.5 * (a + b)));
  }
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, kSimpsonTol, kSimpsonDepth);
}

// Running integral of f over the grid nodes, anchored at lo.
std::vector<double> simpson_antiderivative(const std::function<double(double)>& f,
                                           double lo, double hi, std::size_t n) {
  std::vector<double> acc(n, 0.0);
  double f_left = f(lo);
  if (!std::isfinite(f_left)) throw NumericalError("non-finite integrand at lo");
  for (std::size_t i = 1; i < n; ++i) {
    const double a = grid_x(lo, hi, n, i - 1);
    const double b = grid_x(lo, hi, n, i);
    const double f_right = f(b);
    if (!std::isfinite(f_right)) {
      throw NumericalError("non-finite integrand at theta = " + std::to_string(b));
    }
    acc[i] = acc[i - 1] + simpson_segment(f, a, b, f_left, f_right);
    f_left = f_right;
  }
  return acc;
}

// exp of log values shifted by their maximum.
std::vector<double> exp_shifted(std::vector<double> logs) {
  double mx = -INFINITY;
  for (double v : logs) mx = std::max(mx, v);
  if (!std::isfinite(mx)) throw NumericalError("density is zero everywhere on the grid");
  for (double& v : logs) v = std::exp(v - mx);
  return logs;
}

}  // namespace

std::string to_string(DensityProvenance p) {
  switch (p) {
    case DensityProvenance::kGenericBorodin: return "generic_borodin";
    case DensityProvenance::kDownscaledGamma: return "downscaled_gamma";
    case DensityProvenance::kAdamForm: return "adam_form";
    case DensityProvenance::kTarget: return "target";
  }
  return "?";
}

double GridDensity::at(double theta) const {
  if (!(theta >= lo && theta <= hi) || values.empty()) return 0.0;
  const double pos = (theta - lo) / spacing();
  const std::size_t i =
      std::min(static_cast<std::size_t>(pos), values.size() - 2);
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

double trapezoid(std::span<const double> values, double spacing) {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return s * spacing;
}

GridDensity normalize(double lo, double hi, std::vector<double> raw,
                      DensityProvenance provenance) {
  check_grid(lo, hi, raw.size());
  for (double v : raw) {
    if (!std::isfinite(v) || v < 0.0) {
      throw NumericalError("normalize: raw values must be finite and >= 0");
    }
  }
  const double mass =
      trapezoid(raw, (hi - lo) / static_cast<double>(raw.size() - 1));
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw NumericalError("normalize: zero or non-finite mass");
  }
  GridDensity d;
  d.lo = lo;
  d.hi = hi;
  d.z = 1.0 / mass;
  d.provenance = provenance;
  d.values = std::move(raw);
  for (double& v : d.values) v *= d.z;
  return d;
}

GridDensity stationary_generic_1d(const std::function<double(double)>& drift,
                                  const std::function<double(double)>& diffusion_sq,
                                  double lo, double hi, std::size_t n_points) {
  check_grid(lo, hi, n_points);
  auto inv_sigma2 = [&](double x) {
    const double s2 = diffusion_sq(x);
    if (std::isnan(s2) || !(s2 > 0.0)) {
      throw NumericalError("stationary_generic_1d: sigma^2 must be > 0 (theta = " +
                           std::to_string(x) + ")");
    }
    return 1.0 / s2;
  };
  auto integrand = [&](double x) {
    const double mu = drift(x);
    const double inv = inv_sigma2(x);
    return (mu == 0.0 || inv == 0.0) ? 0.0 : 2.0 * mu * inv;
  };
  std::vector<double> logs = simpson_antiderivative(integrand, lo, hi, n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double inv = inv_sigma2(grid_x(lo, hi, n_points, i));
    logs[i] = inv == 0.0 ? -INFINITY : logs[i] + std::log(inv);
  }
  return normalize(lo, hi, exp_shifted(std::move(logs)),
                   DensityProvenance::kGenericBorodin);
}

GridDensity stationary_downscaled_gamma(const TargetModel& target,
                                        const MetricKind& kind, double alpha,
                                        double lo, double hi,
                                        std::size_t n_points) {
  check_grid(lo, hi, n_points);
  kind.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("stationary_downscaled_gamma: alpha must lie in [0, 1]");
  }
  std::vector<double> raw(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = grid_x(lo, hi, n_points, i);
    const double g = fixed_point_metric_1d(kind, target, x);
    raw[i] = eval_density(target, x) * std::pow(g, -alpha);
  }
  return normalize(lo, hi, std::move(raw),
                   alpha == 0.0 ? DensityProvenance::kTarget
                                : DensityProvenance::kDownscaledGamma);
}

GridDensity stationary_adam(const TargetModel& target, const MetricKind& kind,
                            double a, double lo, double hi,
                            std::size_t n_points) {
  check_grid(lo, hi, n_points);
  kind.validate();
  if (!(a >= 0.0)) throw ValidationError("stationary_adam: a must be >= 0");
  auto integrand = [&](double x) {
    const double g = target.grad_at(x);
    if (g == 0.0) return 0.0;
    return a * fixed_point_metric_1d(kind, target, x) * g;
  };
  std::vector<double> extra = simpson_antiderivative(integrand, lo, hi, n_points);
  double anchor = 0.0;
  if (lo <= 0.0 && hi >= 0.0) {
    // Simpson from the grid node below 0 up to 0 itself.
    const double h = (hi - lo) / static_cast<double>(n_points - 1);
    const std::size_t i0 = std::min(static_cast<std::size_t>((0.0 - lo) / h), n_points - 2);
    const double x0 = grid_x(lo, hi, n_points, i0);
    anchor = x0 == 0.0 ? extra[i0]
                       : extra[i0] + simpson_segment(integrand, x0, 0.0, integrand(x0),
                                                     integrand(0.0));
  }
  std::vector<double> raw(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = grid_x(lo, hi, n_points, i);
    raw[i] = eval_density(target, x) * std::exp(extra[i] - anchor);
  }
  return normalize(lo, hi, std::move(raw), DensityProvenance::kAdamForm);
}

GridDensity stationary_adam_std_normal_closed(double a, double lambda,
                                              double lo, double hi,
                                              std::size_t n_points) {
  check_grid(lo, hi, n_points);
  const TargetModel target = make_standard_normal();
  std::vector<double> raw(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = grid_x(lo, hi, n_points, i);
    const double ax = std::fabs(x);
    raw[i] = eval_density(target, x) * std::exp(-a * ax) *
             std::pow(ax + lambda, a * lambda);
  }
  return normalize(lo, hi, std::move(raw), DensityProvenance::kAdamForm);
}

GridDensity target_density(const TargetModel& target, double lo, double hi,
                           std::size_t n_points) {
  check_grid(lo, hi, n_points);
  std::vector<double> raw(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = grid_x(lo, hi, n_points, i);
    raw[i] = target.has_analytic_constant ? eval_density(target, x)
                                          : std::exp(target.log_density_at(x));
  }
  return normalize(lo, hi, std::move(raw), DensityProvenance::kTarget);
}

double effective_metric_exponent(const SamplerConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kSgld:
    case Algorithm::kSgrldExact:
      return 0.0;
    case Algorithm::kAdamSgld:
    case Algorithm::kLimitAdam:
      throw ValidationError("Adam SGLD densities are not of the p G^-alpha form");
    default:
      break;
  }
  switch (cfg.gamma_mode) {
    case GammaMode::kDrop: return 1.0;
    case GammaMode::kEma: return cfg.alpha;
    case GammaMode::kExactRescaled: return 0.0;
  }
  return 1.0;
}

GridDensity predicted_stationary(const SamplerConfig& cfg,
                                 const TargetModel& target, double lo,
                                 double hi, std::size_t n_points) {
  cfg.validate();
  switch (cfg.algorithm) {
    case Algorithm::kSgld:
      return target_density(target, lo, hi, n_points);
    case Algorithm::kAdamSgld:
    case Algorithm::kLimitAdam:
      return stationary_adam(target, cfg.metric_kind(), cfg.a, lo, hi, n_points);
    default:
      break;
  }
  const double exponent = effective_metric_exponent(cfg);
  if (exponent == 0.0) return target_density(target, lo, hi, n_points);
  return stationary_downscaled_gamma(target, cfg.metric_kind(), exponent, lo, hi,
                                     n_points);
}

}  // namespace langevin
