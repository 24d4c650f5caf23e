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

#include "langevin/estimation.hpp"

#include <algorithm>
#include <cmath>

#include "langevin/error.hpp"

namespace langevin {

HistogramDensity::HistogramDensity(double lo, double hi, double width)
    : lo_(lo), hi_(hi), width_(width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw ValidationError("histogram: bin width must be > 0");
  }
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError("histogram: need finite lo < hi");
  }
  const double nbins = (hi - lo) / width;
  const double rounded = std::round(nbins);
  if (std::fabs(nbins - rounded) > 1e-9 * std::max(1.0, nbins)) {
    throw ValidationError("histogram: range must be a whole number of bins");
  }
  counts_.assign(static_cast<std::size_t>(rounded), 0);
}

double HistogramDensity::edge(std::size_t i) const {
  if (i == counts_.size()) return hi_;
  return lo_ + static_cast<double>(i) * width_;
}

void HistogramDensity::accumulate(double theta) {
  if (!std::isfinite(theta)) {
    throw ValidationError("histogram: non-finite sample");
  }
  ++total_;
  if (theta < lo_) {
    ++underflow_;
    return;
  }
  if (theta >= hi_) {
    ++overflow_;
    return;
  }
  // Correct the floating-point quotient against the canonical edges so a
  // sample on an interior edge lands in the bin to its right.
  const std::size_t last = counts_.size() - 1;
  std::size_t i = static_cast<std::size_t>((theta - lo_) / width_);
  if (i > last) i = last;
  while (i > 0 && theta < edge(i)) --i;
  while (i < last && theta >= edge(i + 1)) ++i;
  ++counts_[i];
}

bool HistogramDensity::same_shape(const HistogramDensity& o) const {
  return lo_ == o.lo_ && hi_ == o.hi_ && width_ == o.width_ &&
         counts_.size() == o.counts_.size();
}

HistogramDensity merge(const HistogramDensity& a, const HistogramDensity& b) {
  if (!a.same_shape(b)) throw ValidationError("histogram merge: shape mismatch");
  HistogramDensity out = a;
  for (std::size_t i = 0; i < out.counts_.size(); ++i) out.counts_[i] += b.counts_[i];
  out.underflow_ += b.underflow_;
  out.overflow_ += b.overflow_;
  out.total_ += b.total_;
  return out;
}

DensityTable to_density(const HistogramDensity& hist) {
  if (hist.total() == 0) throw ValidationError("to_density: empty histogram");
  DensityTable table;
  const double n = static_cast<double>(hist.total());
  table.rows.reserve(hist.bin_count());
  for (std::size_t i = 0; i < hist.bin_count(); ++i) {
    const double left = hist.edge(i);
    const double right = hist.edge(i + 1);
    table.rows.push_back({left, right, 0.5 * (left + right),
                          static_cast<double>(hist.counts()[i]) / (n * hist.width())});
  }
  table.in_range_mass =
      static_cast<double>(hist.total() - hist.underflow() - hist.overflow()) / n;
  return table;
}

}  // namespace langevin
