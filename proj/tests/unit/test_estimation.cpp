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
#include <random>
#include <vector>

#include "doctest.h"
#include "langevin/analysis.hpp"
#include "langevin/error.hpp"
#include "langevin/estimation.hpp"
#include "langevin/rng.hpp"
#include "langevin/samplers.hpp"

using namespace langevin;

namespace {

double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

BinMasses normal_bins(double lo, double hi, double w) {
  BinMasses b;
  b.edges = uniform_edges(lo, hi, w);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < b.edges.size(); ++i) {
    b.mass.push_back(phi_cdf(b.edges[i + 1]) - phi_cdf(b.edges[i]));
    sum += b.mass.back();
  }
  b.outside = 1.0 - sum;
  return b;
}

}  // namespace

TEST_CASE("half-open bins") {
  HistogramDensity h(0.0, 1.0, 0.1);
  CHECK(h.bin_count() == 10);
  h.accumulate(h.edge(3));  // interior edge
  CHECK(h.counts()[3] == 1);
  CHECK(h.counts()[2] == 0);
  h.accumulate(0.0);
  CHECK(h.counts()[0] == 1);
  h.accumulate(1.0);
  CHECK(h.overflow() == 1);
  h.accumulate(-1e-300);
  CHECK(h.underflow() == 1);
  CHECK(h.total() == 4);
}

TEST_CASE("every interior edge lands in the bin to its right") {
  HistogramDensity h(-4.0, 4.0, 0.1);
  for (std::size_t i = 1; i < h.bin_count(); ++i) {
    HistogramDensity one(-4.0, 4.0, 0.1);
    one.accumulate(h.edge(i));
    CHECK(one.counts()[i] == 1);
    HistogramDensity below(-4.0, 4.0, 0.1);
    below.accumulate(std::nextafter(h.edge(i), -INFINITY));
    CHECK(below.counts()[i - 1] == 1);
  }
}

TEST_CASE("point mass gives density ten") {
  HistogramDensity h(0.0, 1.0, 0.1);
  for (int i = 0; i < 100; ++i) h.accumulate(0.05);
  const auto t = to_density(h);
  REQUIRE(t.rows.size() == 10);
  CHECK(t.rows[0].density == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(t.rows[0].center == doctest::Approx(0.05));
  for (std::size_t i = 1; i < 10; ++i) CHECK(t.rows[i].density == 0.0);
  CHECK(t.in_range_mass == 1.0);
}

TEST_CASE("uniform counts give density one") {
  const int k = 8;
  HistogramDensity h(0.0, 1.0, 1.0 / k);
  for (int i = 0; i < k; ++i) {
    for (int r = 0; r < 3; ++r) h.accumulate((i + 0.5) / k);
  }
  for (const auto& row : to_density(h).rows) CHECK(row.density == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("histogram errors") {
  CHECK_THROWS_AS(HistogramDensity(0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(HistogramDensity(1.0, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(HistogramDensity(0.0, 1.0, 0.3), ValidationError);
  HistogramDensity h(0.0, 1.0, 0.1);
  CHECK_THROWS_AS(h.accumulate(NAN), ValidationError);
  CHECK_THROWS_AS(h.accumulate(INFINITY), ValidationError);
  CHECK(h.total() == 0);
  CHECK_THROWS_AS(to_density(h), ValidationError);
  CHECK_THROWS_AS(merge(h, HistogramDensity(0.0, 2.0, 0.1)), ValidationError);
}

TEST_CASE("mass conservation") {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd(0.0, 2.5);
  HistogramDensity h(-4.0, 4.0, 0.1);
  for (int i = 0; i < 100000; ++i) h.accumulate(nd(gen));
  std::int64_t sum = 0;
  for (auto c : h.counts()) sum += c;
  CHECK(sum + h.underflow() + h.overflow() == h.total());
  const auto t = to_density(h);
  double integral = 0.0;
  for (const auto& r : t.rows) integral += r.density * (r.right - r.left);
  const double outside = static_cast<double>(h.underflow() + h.overflow()) / h.total();
  CHECK(integral + outside == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.in_range_mass == doctest::Approx(static_cast<double>(sum) / h.total()).epsilon(1e-15));
}

TEST_CASE("merge identity, commutativity and associativity") {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> nd(0.0, 2.0);
  HistogramDensity a(-4.0, 4.0, 0.1), b = a, c = a;
  const HistogramDensity empty = a;
  for (int i = 0; i < 5000; ++i) {
    a.accumulate(nd(gen));
    b.accumulate(nd(gen));
    c.accumulate(nd(gen));
  }
  CHECK(merge(a, empty) == a);
  CHECK(merge(empty, a) == a);
  CHECK(merge(a, b) == merge(b, a));
  CHECK(merge(merge(a, b), c) == merge(a, merge(b, c)));
}

TEST_CASE("merged chains equal one accumulation of the concatenated stream") {
  const auto t = make_standard_normal();
  SamplerConfig cfg;
  cfg.steps = 5000000;
  cfg.burn_in = 0;
  HistogramDensity h1(-4.0, 4.0, 0.1), h2 = h1, both = h1;
  std::vector<double> s1, s2;
  s1.reserve(5000000);
  s2.reserve(5000000);
  std::vector<Sink> sink1{[&](std::int64_t, std::span<const double> th) { h1.accumulate(th[0]); s1.push_back(th[0]); }};
  std::vector<Sink> sink2{[&](std::int64_t, std::span<const double> th) { h2.accumulate(th[0]); s2.push_back(th[0]); }};
  cfg.stream = 0;
  run_chain(cfg, t, sink1);
  cfg.stream = 1;
  run_chain(cfg, t, sink2);
  for (double x : s1) both.accumulate(x);
  for (double x : s2) both.accumulate(x);
  CHECK(merge(h1, h2) == both);
  HistogramDensity reversed(-4.0, 4.0, 0.1);
  for (double x : s2) reversed.accumulate(x);
  for (double x : s1) reversed.accumulate(x);
  CHECK(merge(h2, h1) == reversed);
}

TEST_CASE("iid normal draws sit within the estimator noise floor") {
  GaussianStream g(99, 0);
  HistogramDensity h(-4.0, 4.0, 0.1);
  for (int i = 0; i < 10000000; ++i) h.accumulate(g.next());
  const double tv = total_variation(histogram_masses(h), normal_bins(-4.0, 4.0, 0.1));
  MESSAGE("TV(iid histogram, N(0,1)) = " << tv);
  CHECK(tv < 0.005);
}

TEST_CASE("sgld histogram matches the standard normal") {
  // Pooled over 8 independent streams; see the acceptance budget.
  const auto t = make_standard_normal();
  SamplerConfig cfg;
  HistogramDensity h(-4.0, 4.0, 0.1);
  std::vector<Sink> sinks{[&](std::int64_t, std::span<const double> th) { h.accumulate(th[0]); }};
  for (std::uint64_t s = 0; s < 8; ++s) {
    cfg.stream = s;
    run_chain(cfg, t, sinks);
  }
  const double tv = total_variation(histogram_masses(h), normal_bins(-4.0, 4.0, 0.1));
  MESSAGE("TV(sgld histogram, N(0,1)) = " << tv);
  CHECK(tv < 0.02);
}
