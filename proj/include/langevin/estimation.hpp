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
#include <span>
#include <vector>

namespace langevin {

/// Ergodic time-average density estimate: occupation counts of half-open
/// bins [lo + i w, lo + (i + 1) w) plus under/overflow.
class HistogramDensity {
 public:
  HistogramDensity(double lo, double hi, double width);

  /// Throws ValidationError for non-finite theta.
  void accumulate(double theta);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return width_; }
  std::size_t bin_count() const { return counts_.size(); }
  double edge(std::size_t i) const;

  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t underflow() const { return underflow_; }
  std::int64_t overflow() const { return overflow_; }
  std::int64_t total() const { return total_; }

  bool same_shape(const HistogramDensity& other) const;

  friend bool operator==(const HistogramDensity&, const HistogramDensity&) = default;

 private:
  double lo_, hi_, width_;
  std::vector<std::int64_t> counts_;
  std::int64_t underflow_ = 0;
  std::int64_t overflow_ = 0;
  std::int64_t total_ = 0;

  friend HistogramDensity merge(const HistogramDensity&, const HistogramDensity&);
};

/// Elementwise sum; throws ValidationError on a shape mismatch.
HistogramDensity merge(const HistogramDensity& a, const HistogramDensity& b);

struct DensityRow {
  double left;
  double right;
  double center;
  double density;
};

struct DensityTable {
  std::vector<DensityRow> rows;
  /// Fraction of samples that landed inside [lo, hi).
  double in_range_mass = 0.0;
};

/// counts / (n w) per bin. Throws ValidationError when the histogram is empty.
DensityTable to_density(const HistogramDensity& hist);

}  // namespace langevin
