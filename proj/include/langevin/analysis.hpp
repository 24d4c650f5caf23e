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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "langevin/estimation.hpp"
#include "langevin/stationary.hpp"

namespace langevin {

/// Probability mass per histogram bin plus whatever falls outside them.
struct BinMasses {
  std::vector<double> edges;  // bin_count + 1 entries
  std::vector<double> mass;
  double outside = 0.0;
};

/// Integrates a closed-form density over each bin (trapezoid on the density
/// grid, linear interpolation at bin edges). `outside` is 1 - sum(mass).
BinMasses bin_average(const GridDensity& density, std::span<const double> edges);

/// Uniform bins on [lo, hi) of the given width.
std::vector<double> uniform_edges(double lo, double hi, double width);

/// Empirical masses counts / n with outside = (under + over) / n.
BinMasses histogram_masses(const HistogramDensity& hist);

/// 1/2 sum |p_i - q_i| + 1/2 |p_out - q_out|.
double total_variation(const BinMasses& p, const BinMasses& q);

/// sum p_i log(p_i / q_i) with 0 log 0 = 0; +inf if p_i > 0 where q_i = 0.
/// The outside cell takes part like any bin.
double kl_divergence(const BinMasses& p, const BinMasses& q);

inline constexpr double kInfiniteKl = std::numeric_limits<double>::infinity();

struct ComparisonReport {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  double tv_emp_vs_closed = 0.0;
  double tv_emp_vs_target = 0.0;
  double kl_emp_vs_closed = 0.0;
  double max_bin_error = 0.0;
  double mean_bin_error = 0.0;
  double z_constant = 0.0;
  double wall_seconds = 0.0;
};

/// Fills the distance fields of a report from bin masses. Bin errors compare
/// empirical against closed-form masses.
void fill_distances(ComparisonReport& report, const BinMasses& empirical,
                    const BinMasses& closed, const BinMasses& target);

}  // namespace langevin
