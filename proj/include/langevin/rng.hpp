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

#include <array>
#include <cstdint>

namespace langevin {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The output block is a pure function of (key, counter), so a chain can be
/// identified by its key and any position in its stream is addressable.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

/// Stream of standard normal variates for one chain.
///
/// key = seed, counter = (block index, stream id). Each Philox block yields
/// two 53-bit uniforms and hence two Box-Muller normals.
class GaussianStream {
 public:
  GaussianStream() = default;
  GaussianStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  double next() noexcept;
  /// Uniform on the open interval (0, 1).
  double next_uniform() noexcept;

  std::uint64_t blocks_consumed() const noexcept { return block_; }

  friend bool operator==(const GaussianStream&, const GaussianStream&) = default;

 private:
  void refill() noexcept;

  Philox4x32::Key key_{};
  std::uint64_t stream_id_ = 0;
  std::uint64_t block_ = 0;
  std::array<double, 2> cache_{};
  int cached_ = 0;
};

}  // namespace langevin
