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

#include "langevin/samplers.hpp"

#include <chrono>
#include <cmath>

#include "langevin/error.hpp"

namespace langevin {

namespace {

bool needs_1d(const SamplerConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kSgld:
    case Algorithm::kAdamSgld:
      return false;
    case Algorithm::kPsgld:
    case Algorithm::kMonge:
      return cfg.gamma_mode != GammaMode::kDrop;
    default:
      return true;
  }
}

void draw_noise(ChainState& s, const SamplerConfig& cfg) {
  const double scale = std::sqrt(cfg.step_size);
  for (double& z : s.noise) z = cfg.inject_noise ? scale * s.rng.next() : 0.0;
}

// theta += (eps / 2) drift + noise, then the divergence check.
void apply_update(ChainState& s, const SamplerConfig& cfg,
                  std::span<const double> drift, std::span<const double> noise) {
  const double half_eps = 0.5 * cfg.step_size;
  bool finite = true;
  for (std::size_t i = 0; i < s.theta.size(); ++i) {
    const double d = cfg.include_drift ? half_eps * drift[i] : 0.0;
    s.theta[i] = s.theta[i] + d + noise[i];
    finite = finite && std::isfinite(s.theta[i]);
  }
  ++s.step;
  if (!finite) {
    throw DivergenceError(
        "chain diverged: non-finite theta at step " + std::to_string(s.step),
        s.step);
  }
}

void note_stiffness(ChainState& s, const SamplerConfig& cfg, double gamma) {
  if (std::fabs(gamma) * 0.5 * cfg.step_size > 1.0) ++s.stiff_steps;
}

double correction_1d(ChainState& s, const SamplerConfig& cfg,
                     const TargetModel& t, const MetricKind& kind) {
  double gamma = 0.0;
  switch (cfg.gamma_mode) {
    case GammaMode::kDrop:
      return 0.0;
    case GammaMode::kEma:
      gamma = gamma_ema_at_state_1d(kind, s.precond.v[0], s.grad[0],
                                    t.second_derivative_at(s.theta[0]),
                                    cfg.alpha);
      break;
    case GammaMode::kExactRescaled:
      gamma = gamma_exact_1d(kind, t, s.theta[0]);
      break;
  }
  note_stiffness(s, cfg, gamma);
  return gamma;
}

// Shared by the PSGLD/Shampoo and Monge kernels: EMA metric on h(theta).
void step_ema_riemannian(ChainState& s, const SamplerConfig& cfg,
                         const TargetModel& t, const MetricKind& kind) {
  t.grad_log_density(s.theta, s.grad);
  metric_input(kind.tag, s.grad, s.h);
  if (!cfg.precondition_before_update) {
    ema_update_inplace(s.precond.v, s.h, cfg.alpha);
  }
  metric_apply_into(kind, s.precond.v, s.grad, s.work);
  if (cfg.gamma_mode != GammaMode::kDrop) {
    s.work[0] += correction_1d(s, cfg, t, kind);
  }
  draw_noise(s, cfg);
  std::vector<double>& scaled = s.h;  // h is no longer needed
  metric_sqrt_apply_into(kind, s.precond.v, s.noise, scaled);
  if (cfg.precondition_before_update) {
    metric_input(kind.tag, s.grad, s.noise);
    ema_update_inplace(s.precond.v, s.noise, cfg.alpha);
  }
  apply_update(s, cfg, s.work, scaled);
}

// Euler-Maruyama step of dtheta = (G u' + scale Gamma) / 2 dt + G^{1/2} dB with
// G at its fixed point.
void step_riemannian_limit(ChainState& s, const SamplerConfig& cfg,
                           const TargetModel& t, double gamma_scale) {
  const MetricKind kind = cfg.metric_kind();
  const double theta = s.theta[0];
  const double g = t.grad_at(theta);
  const double metric = fixed_point_metric_1d(kind, t, theta);
  if (!std::isfinite(metric)) {
    throw DegenerateMetricError("degenerate metric: G(theta) is infinite at theta = " +
                                std::to_string(theta));
  }
  double gamma = 0.0;
  if (gamma_scale != 0.0) {
    gamma = gamma_exact_1d(kind, t, theta);
    note_stiffness(s, cfg, gamma_scale * gamma);
  }
  s.grad[0] = g;
  s.work[0] = metric * g + gamma_scale * gamma;
  draw_noise(s, cfg);
  s.h[0] = std::sqrt(metric) * s.noise[0];
  apply_update(s, cfg, s.work, s.h);
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kSgld: return "sgld";
    case Algorithm::kSgrldExact: return "sgrld_exact";
    case Algorithm::kPsgld: return "psgld";
    case Algorithm::kMonge: return "monge";
    case Algorithm::kShampoo1d: return "shampoo";
    case Algorithm::kAdamSgld: return "adam_sgld";
    case Algorithm::kLimitDownscaledGamma: return "limit_downscaled_gamma";
    case Algorithm::kLimitAdam: return "limit_adam";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  for (Algorithm a : {Algorithm::kSgld, Algorithm::kSgrldExact, Algorithm::kPsgld,
                      Algorithm::kMonge, Algorithm::kShampoo1d, Algorithm::kAdamSgld,
                      Algorithm::kLimitDownscaledGamma, Algorithm::kLimitAdam}) {
    if (to_string(a) == s) return a;
  }
  throw ValidationError("unknown algorithm '" + s + "'");
}

std::string to_string(GammaMode m) {
  switch (m) {
    case GammaMode::kDrop: return "drop";
    case GammaMode::kEma: return "ema";
    case GammaMode::kExactRescaled: return "exact_rescaled";
  }
  return "?";
}

GammaMode gamma_mode_from_string(const std::string& s) {
  if (s == "drop") return GammaMode::kDrop;
  if (s == "ema") return GammaMode::kEma;
  if (s == "exact_rescaled") return GammaMode::kExactRescaled;
  throw ValidationError("unknown gamma mode '" + s + "'");
}

MetricKind SamplerConfig::metric_kind() const {
  switch (algorithm) {
    case Algorithm::kSgld:
      return MetricKind::identity();
    case Algorithm::kPsgld:
    case Algorithm::kAdamSgld:
    case Algorithm::kLimitAdam:
      return MetricKind::rmsprop(lambda);
    case Algorithm::kShampoo1d:
      return MetricKind::shampoo_1d();
    case Algorithm::kMonge:
      return MetricKind::monge(beta2);
    case Algorithm::kSgrldExact:
    case Algorithm::kLimitDownscaledGamma:
      switch (metric) {
        case MetricTag::kRmsprop: return MetricKind::rmsprop(lambda);
        case MetricTag::kMonge: return MetricKind::monge(beta2);
        case MetricTag::kShampoo1d: return MetricKind::shampoo_1d();
        case MetricTag::kIdentity: return MetricKind::identity();
      }
  }
  return MetricKind::identity();
}

void SamplerConfig::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw ValidationError("step size must be > 0");
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie in [0, 1)");
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw ValidationError("beta must lie in [0, 1)");
  }
  if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("a must be >= 0");
  if (steps <= 0) throw ValidationError("steps must be > 0");
  if (burn_in < 0 || burn_in >= steps) {
    throw ValidationError("burn-in must satisfy 0 <= burn_in < steps");
  }
  if (theta0.empty()) throw ValidationError("theta0 must not be empty");
  for (double x : theta0) {
    if (!std::isfinite(x)) throw ValidationError("theta0 must be finite");
  }
  metric_kind().validate();
}

ChainState make_initial_state(const SamplerConfig& cfg,
                              const TargetModel& target) {
  cfg.validate();
  if (static_cast<int>(cfg.theta0.size()) != target.dim) {
    throw ValidationError("theta0 has dimension " +
                          std::to_string(cfg.theta0.size()) +
                          " but target '" + target.name + "' has dimension " +
                          std::to_string(target.dim));
  }
  if (needs_1d(cfg) && target.dim != 1) {
    throw ValidationError(to_string(cfg.algorithm) + " with gamma mode " +
                          to_string(cfg.gamma_mode) +
                          " is only implemented for 1-D targets");
  }

  const std::size_t d = cfg.theta0.size();
  ChainState s;
  s.theta = cfg.theta0;
  s.grad.assign(d, 0.0);
  s.h.assign(d, 0.0);
  s.noise.assign(d, 0.0);
  s.work.assign(d, 0.0);
  s.rng = GaussianStream(cfg.seed, cfg.stream);
  s.precond.alpha = cfg.alpha;
  s.precond.beta = cfg.beta;
  s.precond.v.assign(d, 0.0);
  s.precond.m.assign(d, 0.0);
  if (!cfg.zero_init_preconditioner) {
    target.grad_log_density(s.theta, s.grad);
    metric_input(cfg.metric_kind().tag, s.grad, s.precond.v);
    if (cfg.algorithm == Algorithm::kAdamSgld) s.precond.m = s.grad;
  }
  s.precond.initialized = true;
  return s;
}

void step_sgld(ChainState& s, const SamplerConfig& cfg, const TargetModel& t) {
  t.grad_log_density(s.theta, s.grad);
  draw_noise(s, cfg);
  apply_update(s, cfg, s.grad, s.noise);
}

void step_psgld(ChainState& s, const SamplerConfig& cfg, const TargetModel& t) {
  const MetricKind kind = cfg.algorithm == Algorithm::kShampoo1d
                              ? MetricKind::shampoo_1d()
                              : MetricKind::rmsprop(cfg.lambda);
  step_ema_riemannian(s, cfg, t, kind);
}

void step_monge(ChainState& s, const SamplerConfig& cfg, const TargetModel& t) {
  step_ema_riemannian(s, cfg, t, MetricKind::monge(cfg.beta2));
}

void step_adam_sgld(ChainState& s, const SamplerConfig& cfg,
                    const TargetModel& t) {
  t.grad_log_density(s.theta, s.grad);
  metric_input(MetricTag::kRmsprop, s.grad, s.h);
  ema_update_inplace(s.precond.v, s.h, cfg.alpha);
  ema_update_inplace(s.precond.m, s.grad, cfg.beta);
  for (std::size_t i = 0; i < s.theta.size(); ++i) {
    const double g = rmsprop_diagonal(cfg.lambda, s.precond.v[i]);
    s.work[i] = s.grad[i] + cfg.a * g * s.precond.m[i];
  }
  draw_noise(s, cfg);
  apply_update(s, cfg, s.work, s.noise);
}

void step_limit_sde(ChainState& s, const SamplerConfig& cfg,
                    const TargetModel& t) {
  if (cfg.algorithm == Algorithm::kLimitAdam) {
    const double theta = s.theta[0];
    const double g = t.grad_at(theta);
    const double metric =
        fixed_point_metric_1d(MetricKind::rmsprop(cfg.lambda), t, theta);
    s.grad[0] = g;
    s.work[0] = (1.0 + cfg.a * metric) * g;
    draw_noise(s, cfg);
    apply_update(s, cfg, s.work, s.noise);
    return;
  }
  double scale = 0.0;
  switch (cfg.gamma_mode) {
    case GammaMode::kDrop: scale = 0.0; break;
    case GammaMode::kEma: scale = 1.0 - cfg.alpha; break;
    case GammaMode::kExactRescaled: scale = 1.0; break;
  }
  step_riemannian_limit(s, cfg, t, scale);
}

void step_sgrld_exact(ChainState& s, const SamplerConfig& cfg,
                      const TargetModel& t) {
  step_riemannian_limit(s, cfg, t, 1.0);
}

void step(ChainState& s, const SamplerConfig& cfg, const TargetModel& t) {
  switch (cfg.algorithm) {
    case Algorithm::kSgld: return step_sgld(s, cfg, t);
    case Algorithm::kSgrldExact: return step_sgrld_exact(s, cfg, t);
    case Algorithm::kPsgld:
    case Algorithm::kShampoo1d: return step_psgld(s, cfg, t);
    case Algorithm::kMonge: return step_monge(s, cfg, t);
    case Algorithm::kAdamSgld: return step_adam_sgld(s, cfg, t);
    case Algorithm::kLimitDownscaledGamma:
    case Algorithm::kLimitAdam: return step_limit_sde(s, cfg, t);
  }
}

ChainReport run_chain(const SamplerConfig& cfg, const TargetModel& target,
                      std::span<const Sink> sinks, const ProgressFn& progress,
                      std::int64_t progress_every) {
  ChainReport report;
  report.final_state = make_initial_state(cfg, target);
  ChainState& s = report.final_state;

  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t k = 1; k <= cfg.steps; ++k) {
    try {
      step(s, cfg, target);
    } catch (const DivergenceError& e) {
      report.diverged = true;
      report.divergence_step = e.step();
      report.message = e.what();
      break;
    }
    report.steps_completed = k;
    if (k > cfg.burn_in) {
      for (const Sink& sink : sinks) sink(k, s.theta);
    }
    if (progress && progress_every > 0 && k % progress_every == 0) {
      progress(k, cfg.steps);
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

LimitCoefficients limit_coefficients(const SamplerConfig& cfg,
                                     const TargetModel& target) {
  cfg.validate();
  if (target.dim != 1) {
    throw ValidationError("limit_coefficients: target must be 1-D");
  }
  const MetricKind kind = cfg.metric_kind();
  const TargetModel* t = &target;
  LimitCoefficients out;
  switch (cfg.algorithm) {
    case Algorithm::kSgld:
      out.drift = [t](double x) { return 0.5 * t->grad_at(x); };
      out.diffusion_sq = [](double) { return 1.0; };
      return out;
    case Algorithm::kAdamSgld:
    case Algorithm::kLimitAdam: {
      const double a = cfg.a;
      out.drift = [t, kind, a](double x) {
        return 0.5 * (1.0 + a * fixed_point_metric_1d(kind, *t, x)) * t->grad_at(x);
      };
      out.diffusion_sq = [](double) { return 1.0; };
      return out;
    }
    default:
      break;
  }
  double scale = 1.0;
  if (cfg.algorithm != Algorithm::kSgrldExact) {
    switch (cfg.gamma_mode) {
      case GammaMode::kDrop: scale = 0.0; break;
      case GammaMode::kEma: scale = 1.0 - cfg.alpha; break;
      case GammaMode::kExactRescaled: scale = 1.0; break;
    }
  }
  out.drift = [t, kind, scale](double x) {
    const double g = t->grad_at(x);
    const double metric = fixed_point_metric_1d(kind, *t, x);
    // G u' stays finite where G blows up for the lambda = 0 metric.
    const double gu = g == 0.0 ? 0.0 : metric * g;
    const double gamma = scale == 0.0 ? 0.0 : scale * gamma_exact_1d(kind, *t, x);
    return 0.5 * (gu + gamma);
  };
  out.diffusion_sq = [t, kind](double x) {
    return fixed_point_metric_1d(kind, *t, x);
  };
  return out;
}

}  // namespace langevin
