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

#include <span>
#include <string>
#include <vector>

#include "langevin/targets.hpp"

namespace langevin {

enum class MetricTag { kRmsprop, kMonge, kShampoo1d, kIdentity };

std::string to_string(MetricTag tag);
MetricTag metric_tag_from_string(const std::string& s);

/// Metric family plus its hyperparameters.
///
/// RMSPROP:    G = diag(1 / (lambda + sqrt(V)))
/// SHAMPOO_1D: RMSPROP with lambda = 0 (the 1-D Shampoo metric)
/// MONGE:      G = I - beta2 / (1 + beta2 |V|^2) V V^T
struct MetricKind {
  MetricTag tag = MetricTag::kIdentity;
  double lambda = 0.0;
  double beta2 = 1.0;

  static MetricKind rmsprop(double lambda) { return {MetricTag::kRmsprop, lambda, 1.0}; }
  static MetricKind shampoo_1d() { return {MetricTag::kShampoo1d, 0.0, 1.0}; }
  static MetricKind monge(double beta2) { return {MetricTag::kMonge, 0.0, beta2}; }
  static MetricKind identity() { return {MetricTag::kIdentity, 0.0, 1.0}; }

  bool is_diagonal() const { return tag != MetricTag::kMonge; }
  /// Stability constant actually used; always 0 for SHAMPOO_1D.
  double effective_lambda() const {
    return tag == MetricTag::kShampoo1d ? 0.0 : lambda;
  }
  void validate() const;
};

/// EMA accumulators of the adaptive samplers.
struct PreconditionerState {
  std::vector<double> v;  // EMA of h(theta), rate alpha
  std::vector<double> m;  // EMA of the gradient, rate beta (Adam SGLD only)
  double alpha = 0.9;
  double beta = 0.0;
  bool initialized = false;
};

/// V' = alpha V + (1 - alpha) h.
PreconditionerState ema_update(const PreconditionerState& state,
                               std::span<const double> h, double alpha);
void ema_update_inplace(std::span<double> acc, std::span<const double> h,
                        double rate);

/// The function whose EMA drives the metric: grad^2 for the RMSprop family,
/// the raw gradient for Monge, nothing for the identity.
void metric_input(MetricTag tag, std::span<const double> grad,
                  std::span<double> h);

/// Diagonal entry 1 / (lambda + sqrt(v)). Throws DegenerateMetricError for
/// lambda = 0 and v = 0.
double rmsprop_diagonal(double lambda, double v);

/// out = G(V) z.
void metric_apply_into(const MetricKind& kind, std::span<const double> v,
                       std::span<const double> z, std::span<double> out);
/// out = G(V)^{1/2} z. For Monge the rank-one square root
/// I + c V V^T / |V|^2 with c = 1/sqrt(1 + beta2 |V|^2) - 1.
void metric_sqrt_apply_into(const MetricKind& kind, std::span<const double> v,
                            std::span<const double> z, std::span<double> out);

/// G(V) as a value that can be applied, square-rooted, or (in 1-D) read off.
class Metric {
 public:
  Metric(MetricKind kind, std::vector<double> v);

  const MetricKind& kind() const { return kind_; }
  std::size_t dim() const { return v_.size(); }

  std::vector<double> apply(std::span<const double> z) const;
  std::vector<double> sqrt_apply(std::span<const double> z) const;
  /// Dense matrix, row major. Mostly for tests.
  std::vector<double> dense() const;
  /// Only meaningful for dim() == 1.
  double scalar() const;

 private:
  MetricKind kind_;
  std::vector<double> v_;
};

Metric metric_apply(const MetricKind& kind, std::span<const double> v);
std::vector<double> metric_sqrt_apply(const MetricKind& kind,
                                      std::span<const double> v,
                                      std::span<const double> z);

/// G(theta) in 1-D with V at its fixed point h(theta). The lambda = 0
/// metric returns +inf where the gradient vanishes instead of throwing,
/// which is the right limit for G^{-alpha} style densities.
double fixed_point_metric_1d(const MetricKind& kind, const TargetModel& target,
                             double theta);

/// Gamma(theta) = dG(theta)/dtheta in 1-D, V at the fixed point.
/// Analytic via the chain rule when the target has a Hessian, otherwise a
/// central difference with step 1e-5. Uses sign(0) = 0 at the |u'| kink.
double gamma_exact_1d(const MetricKind& kind, const TargetModel& target,
                      double theta);

/// Correction term of the EMA metric: d/dtheta' of G(alpha h(theta) +
/// (1 - alpha) h(theta')) at theta' = theta, by Richardson-extrapolated
/// central differences. Tends to (1 - alpha) Gamma(theta).
double gamma_ema_1d(const MetricKind& kind, const TargetModel& target,
                    double theta, double alpha);

/// Gamma^{alpha,t} evaluated at the live EMA state of a 1-D chain:
/// (1 - alpha) h'(theta) dG/dV at V. grad / second are u' and u''.
double gamma_ema_at_state_1d(const MetricKind& kind, double v, double grad,
                             double second, double alpha);

}  // namespace langevin
