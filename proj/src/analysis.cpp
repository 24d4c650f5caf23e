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

#include "langevin/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "langevin/error.hpp"

namespace langevin {

namespace {

void check_masses(const BinMasses& p, const BinMasses& q, const char* where) {
  if (p.mass.size() != q.mass.size()) {
    throw ValidationError(std::string(where) + ": binning mismatch");
  }
  auto bad = [](double v) { return !(v >= 0.0) || !std::isfinite(v); };
  for (std::size_t i = 0; i < p.mass.size(); ++i) {
    if (bad(p.mass[i]) || bad(q.mass[i])) {
      throw ValidationError(std::string(where) + ": masses must be finite and >= 0");
    }
  }
  if (bad(p.outside) || bad(q.outside)) {
    throw ValidationError(std::string(where) + ": masses must be finite and >= 0");
  }
}

// ∫_a^b of the piecewise-linear interpolant of the grid density.
double integrate_piecewise(const GridDensity& d, double a, double b) {
  const double h = d.spacing();
  const std::size_t n = d.size();
  auto index_of = [&](double x) {
    const double pos = (x - d.lo) / h;
    return std::min(static_cast<std::size_t>(std::max(pos, 0.0)), n - 2);
  };
  double total = 0.0;
  double x = a;
  std::size_t i = index_of(a);
  while (x < b) {
    const double seg_end = std::min(b, d.abscissa(i + 1));
    if (seg_end > x) total += 0.5 * (d.at(x) + d.at(seg_end)) * (seg_end - x);
    x = seg_end;
    if (++i >= n - 1) break;
  }
  return total;
}

}  // namespace

std::vector<double> uniform_edges(double lo, double hi, double width) {
  const HistogramDensity shape(lo, hi, width);
  std::vector<double> edges(shape.bin_count() + 1);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = shape.edge(i);
  return edges;
}

BinMasses bin_average(const GridDensity& density, std::span<const double> edges) {
  if (edges.size() < 2) throw ValidationError("bin_average: need at least one bin");
  if (edges.front() < density.lo || edges.back() > density.hi) {
    throw ValidationError("bin_average: density grid does not cover the bins");
  }
  BinMasses out;
  out.edges.assign(edges.begin(), edges.end());
  out.mass.resize(edges.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    out.mass[i] = integrate_piecewise(density, edges[i], edges[i + 1]);
    sum += out.mass[i];
  }
  out.outside = std::max(0.0, 1.0 - sum);
  return out;
}

BinMasses histogram_masses(const HistogramDensity& hist) {
  if (hist.total() == 0) throw ValidationError("histogram_masses: empty histogram");
  BinMasses out;
  const double n = static_cast<double>(hist.total());
  out.edges.resize(hist.bin_count() + 1);
  for (std::size_t i = 0; i < out.edges.size(); ++i) out.edges[i] = hist.edge(i);
  out.mass.resize(hist.bin_count());
  for (std::size_t i = 0; i < hist.bin_count(); ++i) {
    out.mass[i] = static_cast<double>(hist.counts()[i]) / n;
  }
  out.outside = static_cast<double>(hist.underflow() + hist.overflow()) / n;
  return out;
}

double total_variation(const BinMasses& p, const BinMasses& q) {
  check_masses(p, q, "total_variation");
  double s = std::fabs(p.outside - q.outside);
  for (std::size_t i = 0; i < p.mass.size(); ++i) s += std::fabs(p.mass[i] - q.mass[i]);
  return 0.5 * s;
}

double kl_divergence(const BinMasses& p, const BinMasses& q) {
  check_masses(p, q, "kl_divergence");
  auto term = [](double pi, double qi) {
    if (pi == 0.0) return 0.0;
    if (qi == 0.0) return kInfiniteKl;
    return pi * std::log(pi / qi);
  };
  double s = term(p.outside, q.outside);
  for (std::size_t i = 0; i < p.mass.size(); ++i) s += term(p.mass[i], q.mass[i]);
  // Rounding can push a tiny true KL below zero.
  return std::max(s, 0.0);
}

void fill_distances(ComparisonReport& report, const BinMasses& empirical,
                    const BinMasses& closed, const BinMasses& target) {
  report.tv_emp_vs_closed = total_variation(empirical, closed);
  report.tv_emp_vs_target = total_variation(empirical, target);
  report.kl_emp_vs_closed = kl_divergence(empirical, closed);
  double mx = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < empirical.mass.size(); ++i) {
    const double e = std::fabs(empirical.mass[i] - closed.mass[i]);
    mx = std::max(mx, e);
    sum += e;
  }
  report.max_bin_error = mx;
  report.mean_bin_error =
      empirical.mass.empty() ? 0.0 : sum / static_cast<double>(empirical.mass.size());
}

}  // namespace langevin
