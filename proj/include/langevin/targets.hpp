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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace langevin {

/// A target posterior p(theta | D) described through u(theta) = log p.
///
/// `log_density` may omit the normalizer unless `has_analytic_constant` is
/// set. `hessian_diag` is optional; consumers that need second derivatives
/// fall back to central differences of `grad_log_density` when it is empty.
/// Immutable after construction and safe to share between chains.
struct TargetModel {
  using ScalarFn = std::function<double(std::span<const double>)>;
  using VectorFn =
      std::function<void(std::span<const double>, std::span<double>)>;

  std::string name;
  int dim = 1;
  ScalarFn log_density;
  VectorFn grad_log_density;
  VectorFn hessian_diag;
  bool has_analytic_constant = false;

  double log_density_at(double theta) const;
  double grad_at(double theta) const;
  /// d^2 u / d theta^2 in 1-D; analytic when available, else central FD.
  double second_derivative_at(double theta) const;
};

/// Standard normal target, log density includes -log(2 pi)/2.
TargetModel make_standard_normal();

/// 1-D Gaussian mixture. No analytic Hessian is supplied, so geometry falls
/// back to finite differences for it.
TargetModel make_gaussian_mixture(std::vector<double> weights,
                                  std::vector<double> means,
                                  std::vector<double> sds);

/// Looks a target up by its CLI name ("std_normal", "gauss_mix").
TargetModel make_target(const std::string& name);
std::vector<std::string> target_names();

/// exp(log_density(theta)) for normalized targets; otherwise the caller must
/// pass log_normalizer such that p = exp(log_density + log_normalizer).
double eval_density(const TargetModel& target, std::span<const double> theta,
                    std::optional<double> log_normalizer = std::nullopt);
double eval_density(const TargetModel& target, double theta,
                    std::optional<double> log_normalizer = std::nullopt);

}  // namespace langevin
