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

#include "langevin/targets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "langevin/error.hpp"

namespace langevin {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kFdStep = 1e-5;

}  // namespace

double TargetModel::log_density_at(double theta) const {
  const std::array<double, 1> x{theta};
  return log_density(x);
}

double TargetModel::grad_at(double theta) const {
  const std::array<double, 1> x{theta};
  std::array<double, 1> g{};
  grad_log_density(x, g);
  return g[0];
}

double TargetModel::second_derivative_at(double theta) const {
  if (hessian_diag) {
    const std::array<double, 1> x{theta};
    std::array<double, 1> h{};
    hessian_diag(x, h);
    return h[0];
  }
  return (grad_at(theta + kFdStep) - grad_at(theta - kFdStep)) /
         (2.0 * kFdStep);
}

TargetModel make_standard_normal() {
  TargetModel t;
  t.name = "std_normal";
  t.dim = 1;
  t.has_analytic_constant = true;
  t.log_density = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return -0.5 * s - kHalfLog2Pi * static_cast<double>(x.size());
  };
  t.grad_log_density = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = -x[i];
  };
  t.hessian_diag = [](std::span<const double> x, std::span<double> h) {
    for (std::size_t i = 0; i < x.size(); ++i) h[i] = -1.0;
  };
  return t;
}

TargetModel make_gaussian_mixture(std::vector<double> weights,
                                  std::vector<double> means,
                                  std::vector<double> sds) {
  if (weights.empty() || weights.size() != means.size() ||
      weights.size() != sds.size()) {
    throw ValidationError("gaussian mixture: component arrays must be "
                          "non-empty and of equal length");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] > 0.0) || !(sds[k] > 0.0)) {
      throw ValidationError("gaussian mixture: weights and sds must be > 0");
    }
    total += weights[k];
  }
  for (double& w : weights) w /= total;

  struct Mixture {
    std::vector<double> w, mu, sd;
    // Component log densities and the log-sum-exp of them.
    double log_pdf(double x, std::vector<double>* comps) const {
      double mx = -INFINITY;
      std::vector<double> lc(w.size());
      for (std::size_t k = 0; k < w.size(); ++k) {
        const double z = (x - mu[k]) / sd[k];
        lc[k] = std::log(w[k]) - 0.5 * z * z - std::log(sd[k]) - kHalfLog2Pi;
        mx = std::max(mx, lc[k]);
      }
      double s = 0.0;
      for (double v : lc) s += std::exp(v - mx);
      if (comps) *comps = std::move(lc);
      return mx + std::log(s);
    }
  };
  auto mix = std::make_shared<Mixture>(
      Mixture{std::move(weights), std::move(means), std::move(sds)});

  TargetModel t;
  t.name = "gauss_mix";
  t.dim = 1;
  t.has_analytic_constant = true;
  t.log_density = [mix](std::span<const double> x) {
    return mix->log_pdf(x[0], nullptr);
  };
  t.grad_log_density = [mix](std::span<const double> x, std::span<double> g) {
    std::vector<double> lc;
    const double lp = mix->log_pdf(x[0], &lc);
    double d = 0.0;
    for (std::size_t k = 0; k < lc.size(); ++k) {
      const double resp = std::exp(lc[k] - lp);
      d += resp * (mix->mu[k] - x[0]) / (mix->sd[k] * mix->sd[k]);
    }
    g[0] = d;
  };
  return t;
}

TargetModel make_target(const std::string& name) {
  if (name == "std_normal") return make_standard_normal();
  if (name == "gauss_mix") {
    return make_gaussian_mixture({0.5, 0.5}, {-1.5, 1.5}, {0.7, 0.7});
  }
  throw ValidationError("unknown target '" + name + "'");
}

std::vector<std::string> target_names() { return {"std_normal", "gauss_mix"}; }

double eval_density(const TargetModel& target, std::span<const double> theta,
                    std::optional<double> log_normalizer) {
  for (double v : theta) {
    if (!std::isfinite(v)) throw ValidationError("eval_density: non-finite theta");
  }
  if (static_cast<int>(theta.size()) != target.dim) {
    throw ValidationError("eval_density: dimension mismatch");
  }
  if (!target.has_analytic_constant && !log_normalizer) {
    throw ValidationError("eval_density: target '" + target.name +
                          "' has no known normalizer; pass one explicitly");
  }
  return std::exp(target.log_density(theta) + log_normalizer.value_or(0.0));
}

double eval_density(const TargetModel& target, double theta,
                    std::optional<double> log_normalizer) {
  const std::array<double, 1> x{theta};
  return eval_density(target, std::span<const double>(x), log_normalizer);
}

}  // namespace langevin
