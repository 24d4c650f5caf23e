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
#include <span>
#include <string>
#include <vector>

#include "langevin/geometry.hpp"
#include "langevin/samplers.hpp"
#include "langevin/targets.hpp"

namespace langevin {

enum class DensityProvenance { kGenericBorodin, kDownscaledGamma, kAdamForm, kTarget };

std::string to_string(DensityProvenance p);

/// A normalized density tabulated on a uniform grid over [lo, hi].
///
/// `z` is the factor that turned the raw values into a density, i.e.
/// values = z * raw. For the closed forms built on p(theta | D) this is the
/// constant in pi = Z p(theta | D) (...).
struct GridDensity {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> values;
  double z = 0.0;
  DensityProvenance provenance = DensityProvenance::kTarget;

  std::size_t size() const { return values.size(); }
  double spacing() const {
    return (hi - lo) / static_cast<double>(values.size() - 1);
  }
  double abscissa(std::size_t i) const {
    return i + 1 == values.size() ? hi : lo + static_cast<double>(i) * spacing();
  }
  /// Linear interpolation; zero outside [lo, hi].
  double at(double theta) const;
};

/// Z = 1 / trapezoid(raw); values = Z * raw. Throws NumericalError on
/// negative, non-finite or zero mass.
GridDensity normalize(double lo, double hi, std::vector<double> raw,
                      DensityProvenance provenance = DensityProvenance::kTarget);

double trapezoid(std::span<const double> values, double spacing);

/// Stationary density of d theta = mu dt + sigma dB,
///   pi ∝ exp(2 ∫_lo^theta mu / sigma^2) / sigma^2,
/// with the inner integral accumulated by per-interval Simpson rules.
/// sigma^2 = +inf is accepted (its reciprocal is 0); sigma^2 <= 0 or NaN is
/// rejected.
GridDensity stationary_generic_1d(const std::function<double(double)>& drift,
                                  const std::function<double(double)>& diffusion_sq,
                                  double lo, double hi, std::size_t n_points);

/// pi = Z p(theta | D) G(theta)^{-alpha}, G at its fixed point.
GridDensity stationary_downscaled_gamma(const TargetModel& target,
                                        const MetricKind& kind, double alpha,
                                        double lo, double hi,
                                        std::size_t n_points);

/// pi = Z p(theta | D) exp(∫_0^theta a G(x) u'(x) dx), integral by Simpson
/// accumulation. Anchored at 0 (or lo when 0 is outside the range) so Z is
/// comparable with the closed forms.
GridDensity stationary_adam(const TargetModel& target, const MetricKind& kind,
                            double a, double lo, double hi,
                            std::size_t n_points);

/// Closed form for the standard normal target with the RMSprop metric:
/// pi = Z p(theta) exp(-a |theta|) (|theta| + lambda)^{a lambda}.
GridDensity stationary_adam_std_normal_closed(double a, double lambda,
                                              double lo, double hi,
                                              std::size_t n_points);

/// p(theta | D) itself, normalized on the grid.
GridDensity target_density(const TargetModel& target, double lo, double hi,
                           std::size_t n_points);

/// The density an algorithm is expected to sample in the eps -> 0 limit.
GridDensity predicted_stationary(const SamplerConfig& cfg,
                                 const TargetModel& target, double lo,
                                 double hi, std::size_t n_points);

/// Exponent alpha_eff in pi ∝ p G^{-alpha_eff} for the Riemannian
/// algorithms: 1 when Gamma is dropped, alpha for the EMA term, 0 when the
/// full term is used.
double effective_metric_exponent(const SamplerConfig& cfg);

inline constexpr double kDefaultGridLo = -8.0;
inline constexpr double kDefaultGridHi = 8.0;
inline constexpr std::size_t kDefaultGridPoints = 16001;

}  // namespace langevin
