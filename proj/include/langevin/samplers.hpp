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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "langevin/geometry.hpp"
#include "langevin/rng.hpp"
#include "langevin/targets.hpp"

namespace langevin {

enum class Algorithm {
  kSgld,
  kSgrldExact,
  kPsgld,
  kMonge,
  kShampoo1d,
  kAdamSgld,
  kLimitDownscaledGamma,
  kLimitAdam,
};

/// How the correction drift enters the Riemannian kernels.
///   kDrop          no correction term
///   kEma           Gamma^{alpha,t}, the derivative of the EMA metric with
///                  respect to the current parameter (~ (1 - alpha) Gamma)
///   kExactRescaled Gamma(theta), i.e. the EMA term rescaled by 1/(1 - alpha)
enum class GammaMode { kDrop, kEma, kExactRescaled };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
std::string to_string(GammaMode m);
GammaMode gamma_mode_from_string(const std::string& s);

struct SamplerConfig {
  Algorithm algorithm = Algorithm::kSgld;
  double step_size = 1e-4;
  double alpha = 0.9;
  double beta = 0.9;
  double beta2 = 1.0;
  double lambda = 1e-8;
  double a = 1.0;
  // Metric for kSgrldExact and kLimitDownscaledGamma; the other algorithms
  // imply theirs.
  MetricTag metric = MetricTag::kRmsprop;
  GammaMode gamma_mode = GammaMode::kDrop;
  std::int64_t steps = 10'000'000;
  std::int64_t burn_in = 100'000;
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  std::vector<double> theta0 = {0.0};

  // Start V and m at zero instead of at their fixed points h(theta0), u'(theta0).
  bool zero_init_preconditioner = false;
  // Form G from V_{t-eps} and update V afterwards (default: update first).
  bool precondition_before_update = false;
  // Test hooks: turn the Gaussian increment or the drift off.
  bool inject_noise = true;
  bool include_drift = true;

  MetricKind metric_kind() const;
  void validate() const;
};

struct ChainState {
  std::vector<double> theta;
  PreconditionerState precond;
  std::int64_t step = 0;
  GaussianStream rng;
  // Steps on which the correction drift exceeded 1 / (eps / 2).
  std::int64_t stiff_steps = 0;

  // Per-step scratch, kept here so kernels do not allocate.
  std::vector<double> grad, h, noise, work;
};

ChainState make_initial_state(const SamplerConfig& cfg,
                              const TargetModel& target);

void step_sgld(ChainState& s, const SamplerConfig& cfg, const TargetModel& t);
void step_psgld(ChainState& s, const SamplerConfig& cfg, const TargetModel& t);
void step_monge(ChainState& s, const SamplerConfig& cfg, const TargetModel& t);
void step_adam_sgld(ChainState& s, const SamplerConfig& cfg,
                    const TargetModel& t);
void step_limit_sde(ChainState& s, const SamplerConfig& cfg,
                    const TargetModel& t);
void step_sgrld_exact(ChainState& s, const SamplerConfig& cfg,
                      const TargetModel& t);

/// Dispatches on cfg.algorithm.
void step(ChainState& s, const SamplerConfig& cfg, const TargetModel& t);

/// Receives (step index, theta) for every post-burn-in state.
using Sink = std::function<void(std::int64_t, std::span<const double>)>;
using ProgressFn = std::function<void(std::int64_t done, std::int64_t total)>;

struct ChainReport {
  ChainState final_state;
  std::int64_t steps_completed = 0;
  bool diverged = false;
  std::int64_t divergence_step = -1;
  std::string message;
  double wall_seconds = 0.0;
};

/// Runs cfg.steps transitions from cfg.theta0 and feeds the states after
/// steps burn_in + 1 .. steps to every sink. A non-finite state stops the
/// chain and is reported (not thrown); other errors propagate.
ChainReport run_chain(const SamplerConfig& cfg, const TargetModel& target,
                      std::span<const Sink> sinks,
                      const ProgressFn& progress = {},
                      std::int64_t progress_every = 1'000'000);

/// Drift mu(theta) and squared diffusion sigma^2(theta) of the 1-D Ito
/// diffusion an algorithm approaches as eps -> 0 (V, m at their fixed points).
struct LimitCoefficients {
  std::function<double(double)> drift;
  std::function<double(double)> diffusion_sq;
};
LimitCoefficients limit_coefficients(const SamplerConfig& cfg,
                                     const TargetModel& target);

}  // namespace langevin
