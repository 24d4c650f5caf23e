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

#include "langevin/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "langevin/error.hpp"

namespace langevin {

namespace {

constexpr double kFdStep = 1e-5;

double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

void check_same_size(std::span<const double> a, std::span<const double> b,
                     const char* where) {
  if (a.size() != b.size()) {
    throw ValidationError(std::string(where) + ": dimension mismatch");
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// G as a function of the scalar metric input h (1-D).
double metric_of_input_1d(const MetricKind& kind, double h) {
  switch (kind.tag) {
    case MetricTag::kRmsprop:
    case MetricTag::kShampoo1d:
      return rmsprop_diagonal(kind.effective_lambda(), h);
    case MetricTag::kMonge:
      return 1.0 / (1.0 + kind.beta2 * h * h);
    case MetricTag::kIdentity:
      return 1.0;
  }
  return 1.0;
}

double metric_input_1d(MetricTag tag, double grad) {
  switch (tag) {
    case MetricTag::kRmsprop:
    case MetricTag::kShampoo1d:
      return grad * grad;
    case MetricTag::kMonge:
      return grad;
    case MetricTag::kIdentity:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

std::string to_string(MetricTag tag) {
  switch (tag) {
    case MetricTag::kRmsprop: return "rmsprop";
    case MetricTag::kMonge: return "monge";
    case MetricTag::kShampoo1d: return "shampoo";
    case MetricTag::kIdentity: return "identity";
  }
  return "?";
}

MetricTag metric_tag_from_string(const std::string& s) {
  if (s == "rmsprop") return MetricTag::kRmsprop;
  if (s == "monge") return MetricTag::kMonge;
  if (s == "shampoo") return MetricTag::kShampoo1d;
  if (s == "identity") return MetricTag::kIdentity;
  throw ValidationError("unknown metric '" + s + "'");
}

void MetricKind::validate() const {
  switch (tag) {
    case MetricTag::kRmsprop:
      if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("rmsprop metric requires lambda > 0");
      }
      break;
    case MetricTag::kMonge:
      if (!(beta2 > 0.0) || !std::isfinite(beta2)) {
        throw ValidationError("monge metric requires beta2 > 0");
      }
      break;
    case MetricTag::kShampoo1d:
    case MetricTag::kIdentity:
      break;
  }
}

PreconditionerState ema_update(const PreconditionerState& state,
                               std::span<const double> h, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ValidationError("ema_update: alpha must lie in [0, 1)");
  }
  check_same_size(state.v, h, "ema_update");
  for (double x : h) {
    if (!std::isfinite(x)) throw ValidationError("ema_update: non-finite input");
  }
  PreconditionerState next = state;
  ema_update_inplace(next.v, h, alpha);
  return next;
}

void ema_update_inplace(std::span<double> acc, std::span<const double> h,
                        double rate) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    acc[i] = rate * acc[i] + (1.0 - rate) * h[i];
  }
}

void metric_input(MetricTag tag, std::span<const double> grad,
                  std::span<double> h) {
  for (std::size_t i = 0; i < grad.size(); ++i) {
    h[i] = metric_input_1d(tag, grad[i]);
  }
}

double rmsprop_diagonal(double lambda, double v) {
  if (v < 0.0) throw ValidationError("rmsprop metric: V must be >= 0");
  const double denom = lambda + std::sqrt(v);
  if (denom == 0.0) {
    throw DegenerateMetricError(
        "degenerate metric: lambda = 0 with V = 0 (Shampoo metric at a "
        "vanishing gradient)");
  }
  return 1.0 / denom;
}

void metric_apply_into(const MetricKind& kind, std::span<const double> v,
                       std::span<const double> z, std::span<double> out) {
  switch (kind.tag) {
    case MetricTag::kRmsprop:
    case MetricTag::kShampoo1d: {
      const double lam = kind.effective_lambda();
      for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = rmsprop_diagonal(lam, v[i]) * z[i];
      }
      return;
    }
    case MetricTag::kMonge: {
      const double vv = dot(v, v);
      const double c = kind.beta2 / (1.0 + kind.beta2 * vv) * dot(v, z);
      for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] - c * v[i];
      return;
    }
    case MetricTag::kIdentity:
      for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i];
      return;
  }
}

void metric_sqrt_apply_into(const MetricKind& kind, std::span<const double> v,
                            std::span<const double> z, std::span<double> out) {
  switch (kind.tag) {
    case MetricTag::kRmsprop:
    case MetricTag::kShampoo1d: {
      const double lam = kind.effective_lambda();
      for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = std::sqrt(rmsprop_diagonal(lam, v[i])) * z[i];
      }
      return;
    }
    case MetricTag::kMonge: {
      const double vv = dot(v, v);
      if (vv == 0.0) {
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i];
        return;
      }
      const double c = 1.0 / std::sqrt(1.0 + kind.beta2 * vv) - 1.0;
      const double s = c * dot(v, z) / vv;
      for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] + s * v[i];
      return;
    }
    case MetricTag::kIdentity:
      for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i];
      return;
  }
}

Metric::Metric(MetricKind kind, std::vector<double> v)
    : kind_(kind), v_(std::move(v)) {
  kind_.validate();
  if (kind_.tag == MetricTag::kShampoo1d && v_.size() != 1) {
    throw ValidationError("shampoo_1d metric is only defined in 1-D");
  }
  if (kind_.tag == MetricTag::kRmsprop || kind_.tag == MetricTag::kShampoo1d) {
    for (double x : v_) {
      if (!(x >= 0.0)) throw ValidationError("metric: V must be >= 0");
      rmsprop_diagonal(kind_.effective_lambda(), x);
    }
  }
  for (double x : v_) {
    if (!std::isfinite(x)) throw ValidationError("metric: non-finite V");
  }
}

std::vector<double> Metric::apply(std::span<const double> z) const {
  check_same_size(v_, z, "metric apply");
  std::vector<double> out(z.size());
  metric_apply_into(kind_, v_, z, out);
  return out;
}

std::vector<double> Metric::sqrt_apply(std::span<const double> z) const {
  check_same_size(v_, z, "metric sqrt apply");
  std::vector<double> out(z.size());
  metric_sqrt_apply_into(kind_, v_, z, out);
  return out;
}

std::vector<double> Metric::dense() const {
  const std::size_t n = v_.size();
  std::vector<double> g(n * n, 0.0);
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    metric_apply_into(kind_, v_, e, col);
    for (std::size_t i = 0; i < n; ++i) g[i * n + j] = col[i];
    e[j] = 0.0;
  }
  return g;
}

double Metric::scalar() const {
  if (v_.size() != 1) throw ValidationError("metric scalar: not 1-D");
  const double one = 1.0;
  double out = 0.0;
  metric_apply_into(kind_, v_, std::span<const double>(&one, 1),
                    std::span<double>(&out, 1));
  return out;
}

Metric metric_apply(const MetricKind& kind, std::span<const double> v) {
  return Metric(kind, std::vector<double>(v.begin(), v.end()));
}

std::vector<double> metric_sqrt_apply(const MetricKind& kind,
                                      std::span<const double> v,
                                      std::span<const double> z) {
  return metric_apply(kind, v).sqrt_apply(z);
}

double fixed_point_metric_1d(const MetricKind& kind, const TargetModel& target,
                             double theta) {
  const double h = metric_input_1d(kind.tag, target.grad_at(theta));
  if ((kind.tag == MetricTag::kRmsprop || kind.tag == MetricTag::kShampoo1d) &&
      kind.effective_lambda() == 0.0 && h == 0.0) {
    return INFINITY;
  }
  return metric_of_input_1d(kind, h);
}

double gamma_exact_1d(const MetricKind& kind, const TargetModel& target,
                      double theta) {
  if (target.dim != 1) throw ValidationError("gamma_exact_1d: target is not 1-D");
  if (kind.tag == MetricTag::kIdentity) return 0.0;

  if (target.hessian_diag) {
    const double g = target.grad_at(theta);
    const double gg = target.second_derivative_at(theta);
    switch (kind.tag) {
      case MetricTag::kRmsprop:
      case MetricTag::kShampoo1d: {
        const double s = sign(g);
        if (s == 0.0) return 0.0;
        const double d = kind.effective_lambda() + std::fabs(g);
        return -s * gg / (d * d);
      }
      case MetricTag::kMonge: {
        const double d = 1.0 + kind.beta2 * g * g;
        return -2.0 * kind.beta2 * g * gg / (d * d);
      }
      case MetricTag::kIdentity:
        return 0.0;
    }
  }
  return (fixed_point_metric_1d(kind, target, theta + kFdStep) -
          fixed_point_metric_1d(kind, target, theta - kFdStep)) /
         (2.0 * kFdStep);
}

double gamma_ema_1d(const MetricKind& kind, const TargetModel& target,
                    double theta, double alpha) {
  if (target.dim != 1) throw ValidationError("gamma_ema_1d: target is not 1-D");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("gamma_ema_1d: alpha must lie in [0, 1]");
  }
  if (kind.tag == MetricTag::kIdentity) return 0.0;

  // V_{t-eps} sits at the fixed point h(theta); only the (1 - alpha) h(theta')
  // part of the update depends on the current parameter.
  const double v_prev = metric_input_1d(kind.tag, target.grad_at(theta));
  auto g_of = [&](double x) -> double {
    const double h = metric_input_1d(kind.tag, target.grad_at(x));
    const double v = alpha * v_prev + (1.0 - alpha) * h;
    if ((kind.tag == MetricTag::kRmsprop || kind.tag == MetricTag::kShampoo1d) &&
        kind.effective_lambda() == 0.0 && v == 0.0) {
      return INFINITY;
    }
    return metric_of_input_1d(kind, v);
  };
  // Keep the stencil away from the kink of |u'| for small |theta|.
  const double step = kFdStep * std::min(1.0, std::max(std::fabs(theta), 1e-3));
  auto central = [&](double hs) { return (g_of(theta + hs) - g_of(theta - hs)) / (2.0 * hs); };
  const double coarse = central(step);
  const double fine = central(0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

double gamma_ema_at_state_1d(const MetricKind& kind, double v, double grad,
                             double second, double alpha) {
  const double rate = 1.0 - alpha;
  switch (kind.tag) {
    case MetricTag::kRmsprop:
    case MetricTag::kShampoo1d: {
      // h = u'^2, dh/dtheta = 2 u' u'', dG/dV = -1 / (2 sqrt(V) (lambda + sqrt(V))^2).
      const double num = grad * second;
      if (num == 0.0) return 0.0;
      const double sv = std::sqrt(v);
      const double d = kind.effective_lambda() + sv;
      return -rate * num / (sv * d * d);
    }
    case MetricTag::kMonge: {
      // h = u', dh/dtheta = u'', dG/dV = -2 beta2 V / (1 + beta2 V^2)^2.
      const double d = 1.0 + kind.beta2 * v * v;
      return -rate * second * 2.0 * kind.beta2 * v / (d * d);
    }
    case MetricTag::kIdentity:
      return 0.0;
  }
  return 0.0;
}

}  // namespace langevin
