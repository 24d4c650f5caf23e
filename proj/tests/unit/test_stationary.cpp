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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "langevin/error.hpp"
#include "langevin/stationary.hpp"

using namespace langevin;

namespace {

constexpr double kLo = kDefaultGridLo, kHi = kDefaultGridHi;
constexpr std::size_t kN = kDefaultGridPoints;

double sup_diff(const GridDensity& a, const GridDensity& b, double window = 4.0,
                double exclude = -1.0) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.abscissa(i);
    if (std::fabs(x) > window || std::fabs(x) < exclude) continue;
    m = std::max(m, std::fabs(a.values[i] - b.values[i]));
  }
  return m;
}

double gauss(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

SamplerConfig config(Algorithm alg, GammaMode mode, double lambda = 1e-8) {
  SamplerConfig c;
  c.algorithm = alg;
  c.gamma_mode = mode;
  c.lambda = lambda;
  c.alpha = 0.9;
  c.beta2 = 1.0;
  c.a = 1.0;
  return c;
}

GridDensity generic_for(const SamplerConfig& c, const TargetModel& t) {
  const auto coeff = limit_coefficients(c, t);
  return stationary_generic_1d(coeff.drift, coeff.diffusion_sq, kLo, kHi, kN);
}

}  // namespace

TEST_CASE("generic engine on plain sgld recovers the target") {
  const auto d = stationary_generic_1d([](double x) { return -0.5 * x; },
                                       [](double) { return 1.0; }, kLo, kHi, kN);
  CHECK(d.provenance == DensityProvenance::kGenericBorodin);
  double m = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.abscissa(i);
    if (std::fabs(x) <= 4.0) m = std::max(m, std::fabs(d.values[i] - gauss(x)));
  }
  CHECK(m < 1e-6);
}

TEST_CASE("generic engine on exact sgrld recovers the target") {
  // G = 1/(1 + |theta|), Gamma = -sign(theta)/(1 + |theta|)^2
  auto G = [](double x) { return 1.0 / (1.0 + std::fabs(x)); };
  auto drift = [&](double x) {
    const double s = (x > 0) - (x < 0);
    return 0.5 * G(x) * (-x) + 0.5 * (-s * G(x) * G(x));
  };
  const auto d = stationary_generic_1d(drift, G, kLo, kHi, kN);
  double m = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.abscissa(i);
    if (std::fabs(x) <= 4.0) m = std::max(m, std::fabs(d.values[i] - gauss(x)));
  }
  CHECK(m < 1e-4);
}

TEST_CASE("generic engine on shampoo without gamma matches the alpha one formula") {
  auto G = [](double x) { return x == 0.0 ? INFINITY : 1.0 / std::fabs(x); };
  auto drift = [&](double x) { return x == 0.0 ? 0.0 : 0.5 * G(x) * (-x); };
  const auto generic = stationary_generic_1d(drift, G, kLo, kHi, kN);
  const auto special = stationary_downscaled_gamma(make_standard_normal(),
                                                   MetricKind::shampoo_1d(), 1.0, kLo, kHi, kN);
  CHECK(sup_diff(generic, special, 4.0, 5e-4) < 1e-4);
}

TEST_CASE("generic engine rejects a bad diffusion") {
  auto drift = [](double x) { return -0.5 * x; };
  CHECK_THROWS_AS(stationary_generic_1d(drift, [](double x) { return x > 1.0 ? -1.0 : 1.0; }, -4, 4, 101),
                  NumericalError);
  CHECK_THROWS_AS(stationary_generic_1d(drift, [](double) { return NAN; }, -4, 4, 101),
                  NumericalError);
  CHECK_THROWS_AS(stationary_generic_1d([](double) { return NAN; }, [](double) { return 1.0; }, -4, 4, 101),
                  NumericalError);
}

TEST_CASE("downscaled gamma examples") {
  const auto t = make_standard_normal();
  for (const auto& kind : {MetricKind::rmsprop(1e-8), MetricKind::monge(1.0), MetricKind::shampoo_1d()}) {
    const auto d = stationary_downscaled_gamma(t, kind, 0.0, kLo, kHi, kN);
    for (std::size_t i = 0; i < d.size(); i += 97) {
      CHECK(d.values[i] == doctest::Approx(gauss(d.abscissa(i))).epsilon(1e-9));
    }
  }

  const auto ps = stationary_downscaled_gamma(t, MetricKind::rmsprop(1e-8), 0.9, kLo, kHi, kN);
  CHECK(std::fabs(ps.z - 1.258) < 5e-3);
  for (double x : {-2.5, -0.3, 0.7, 1.9}) {
    CHECK(ps.at(x) == doctest::Approx(ps.z * gauss(x) * std::pow(1e-8 + std::fabs(x), 0.9)).epsilon(1e-5));
  }

  const auto sh = stationary_downscaled_gamma(t, MetricKind::shampoo_1d(), 1.0, kLo, kHi, kN);
  CHECK(std::fabs(sh.z - 1.253) < 5e-3);
  CHECK(sh.z == doctest::Approx(std::sqrt(2.0 * std::numbers::pi) / 2.0).epsilon(1e-6));

  const auto mo = stationary_downscaled_gamma(t, MetricKind::monge(1.0), 1.0, kLo, kHi, kN);
  CHECK(std::fabs(mo.z - 0.5) < 5e-3);
  CHECK(mo.z == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(mo.at(1.0) == doctest::Approx(0.5 * gauss(1.0) * 2.0).epsilon(1e-6));
}

TEST_CASE("adam form examples") {
  const auto t = make_standard_normal();
  const auto plain = stationary_adam(t, MetricKind::rmsprop(1e-8), 0.0, kLo, kHi, kN);
  for (std::size_t i = 0; i < plain.size(); i += 97) {
    CHECK(plain.values[i] == doctest::Approx(gauss(plain.abscissa(i))).epsilon(1e-9));
  }

  const auto ad = stationary_adam(t, MetricKind::rmsprop(1e-8), 1.0, kLo, kHi, kN);
  CHECK(std::fabs(ad.z - 1.912) < 5e-3);
  // 1/(2 e^{1/2} (1 - Phi(1))) with Phi from erfc
  const double z_ref = 1.0 / (2.0 * std::exp(0.5) * 0.5 * std::erfc(1.0 / std::sqrt(2.0)));
  CHECK(ad.z == doctest::Approx(z_ref).epsilon(1e-6));

  const auto closed = stationary_adam_std_normal_closed(1.0, 1e-8, kLo, kHi, kN);
  CHECK(sup_diff(ad, closed) < 1e-4);
}

TEST_CASE("normalize examples") {
  std::vector<double> raw(kN), raw_abs(kN), raw_exp(kN);
  const double h = (kHi - kLo) / (kN - 1);
  for (std::size_t i = 0; i < kN; ++i) {
    const double x = kLo + h * static_cast<double>(i);
    raw[i] = std::exp(-0.5 * x * x);
    raw_abs[i] = gauss(x) * std::fabs(x);
    raw_exp[i] = gauss(x) * std::exp(-std::fabs(x));
  }
  CHECK(normalize(kLo, kHi, raw).z == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-9));
  CHECK(normalize(kLo, kHi, raw_abs).z == doctest::Approx(std::sqrt(2.0 * std::numbers::pi) / 2.0).epsilon(1e-6));
  const double z_ref = 1.0 / (std::exp(0.5) * std::erfc(1.0 / std::sqrt(2.0)));
  CHECK(normalize(kLo, kHi, raw_exp).z == doctest::Approx(z_ref).epsilon(1e-6));

  CHECK_THROWS(normalize(kLo, kHi, std::vector<double>(kN, 0.0)));
  std::vector<double> bad(kN, 1.0);
  bad[7] = INFINITY;
  CHECK_THROWS(normalize(kLo, kHi, bad));
  bad[7] = -1.0;
  CHECK_THROWS(normalize(kLo, kHi, bad));
}

TEST_CASE("generic engine matches the specialized forms for every limiting diffusion") {
  const auto t = make_standard_normal();
  struct Case {
    std::string name;
    SamplerConfig cfg;
    double exclude;
  };
  std::vector<Case> cases;
  cases.push_back({"sgld", config(Algorithm::kSgld, GammaMode::kDrop), -1});
  for (auto mode : {GammaMode::kDrop, GammaMode::kEma}) {
    cases.push_back({"psgld " + to_string(mode), config(Algorithm::kPsgld, mode), -1});
    cases.push_back({"monge " + to_string(mode), config(Algorithm::kMonge, mode), -1});
    cases.push_back({"shampoo " + to_string(mode), config(Algorithm::kShampoo1d, mode), 5e-4});
    cases.push_back({"limit " + to_string(mode), config(Algorithm::kLimitDownscaledGamma, mode), -1});
  }
  cases.push_back({"psgld exact_rescaled", config(Algorithm::kPsgld, GammaMode::kExactRescaled, 1.0), -1});
  cases.push_back({"monge exact_rescaled", config(Algorithm::kMonge, GammaMode::kExactRescaled), -1});
  cases.push_back({"sgrld_exact rmsprop", config(Algorithm::kSgrldExact, GammaMode::kDrop, 1.0), -1});
  auto exact_monge = config(Algorithm::kSgrldExact, GammaMode::kDrop);
  exact_monge.metric = MetricTag::kMonge;
  cases.push_back({"sgrld_exact monge", exact_monge, -1});
  cases.push_back({"adam_sgld", config(Algorithm::kAdamSgld, GammaMode::kDrop), -1});
  cases.push_back({"limit_adam", config(Algorithm::kLimitAdam, GammaMode::kDrop), -1});
  auto adam_half = config(Algorithm::kAdamSgld, GammaMode::kDrop, 0.5);
  adam_half.a = 2.5;
  cases.push_back({"adam_sgld a=2.5", adam_half, -1});

  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto special = predicted_stationary(c.cfg, t, kLo, kHi, kN);
    const auto generic = generic_for(c.cfg, t);
    CHECK(sup_diff(generic, special, 4.0, c.exclude) < 1e-4);
  }
}

TEST_CASE("grid refinement moves Z by less than 1e-6") {
  const auto t = make_standard_normal();
  const auto a = config(Algorithm::kAdamSgld, GammaMode::kDrop);
  auto z_at = [&](std::size_t n, int which) {
    switch (which) {
      case 0: return stationary_downscaled_gamma(t, MetricKind::rmsprop(1e-8), 0.9, kLo, kHi, n).z;
      case 1: return stationary_downscaled_gamma(t, MetricKind::shampoo_1d(), 1.0, kLo, kHi, n).z;
      case 2: return stationary_downscaled_gamma(t, MetricKind::monge(1.0), 1.0, kLo, kHi, n).z;
      default: return predicted_stationary(a, t, kLo, kHi, n).z;
    }
  };
  for (int which = 0; which < 4; ++which) {
    CAPTURE(which);
    CHECK(std::fabs(z_at(16001, which) - z_at(32001, which)) < 1e-6);
  }
}

TEST_CASE("benchmark densities are even, non-negative and integrate to one") {
  const auto t = make_standard_normal();
  std::vector<GridDensity> all{
      stationary_downscaled_gamma(t, MetricKind::rmsprop(1e-8), 0.9, kLo, kHi, kN),
      stationary_downscaled_gamma(t, MetricKind::shampoo_1d(), 1.0, kLo, kHi, kN),
      stationary_downscaled_gamma(t, MetricKind::monge(1.0), 1.0, kLo, kHi, kN),
      stationary_adam(t, MetricKind::rmsprop(1e-8), 1.0, kLo, kHi, kN),
      target_density(t, kLo, kHi, kN)};
  for (const auto& d : all) {
    const std::size_t n = d.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(std::isfinite(d.values[i]));
      REQUIRE(d.values[i] >= 0.0);
      worst = std::max(worst, std::fabs(d.values[i] - d.values[n - 1 - i]));
    }
    CHECK(worst < 1e-12);
    const double mass = trapezoid(d.values, d.spacing());
    CHECK(std::fabs(mass - 1.0) < 1e-6);
    // tail beyond the grid: the heaviest case is p (1 + theta^2), still < 1e-12
    CHECK(d.values.front() < 1e-12);
  }
}

TEST_CASE("grid density interpolation") {
  const auto d = target_density(make_standard_normal(), -1.0, 1.0, 3);
  CHECK(d.at(-2.0) == 0.0);
  CHECK(d.at(2.0) == 0.0);
  CHECK(d.at(0.0) == doctest::Approx(d.values[1]));
  CHECK(d.at(0.5) == doctest::Approx(0.5 * (d.values[1] + d.values[2])));
  CHECK(d.abscissa(2) == 1.0);
}

TEST_CASE("effective metric exponent") {
  CHECK(effective_metric_exponent(config(Algorithm::kPsgld, GammaMode::kDrop)) == 1.0);
  CHECK(effective_metric_exponent(config(Algorithm::kPsgld, GammaMode::kEma)) == 0.9);
  CHECK(effective_metric_exponent(config(Algorithm::kPsgld, GammaMode::kExactRescaled)) == 0.0);
  CHECK(effective_metric_exponent(config(Algorithm::kSgrldExact, GammaMode::kDrop)) == 0.0);
  CHECK(effective_metric_exponent(config(Algorithm::kSgld, GammaMode::kEma)) == 0.0);
  CHECK_THROWS_AS(effective_metric_exponent(config(Algorithm::kAdamSgld, GammaMode::kDrop)), ValidationError);
}
