// Copyright 2026 the stlcalib authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

namespace stlcalib {

/// A finite discrete-time sequence of confidence samples.
///
/// Samples live in [0,1] and are conventionally addressed by step t = 1..T
/// (the indexing the temporal-logic layer uses); `step(t)` does that mapping.
/// Instances are immutable after construction.
class Signal {
 public:
  /// Validates and takes ownership. Throws Error(invalid_argument) if the
  /// sequence is empty or any sample is non-finite or outside [0,1].
  explicit Signal(std::vector<double> samples);

  std::size_t size() const noexcept { return samples_.size(); }

  /// Sample at step t, 1-based; t must be in [1, size()].
  double step(std::size_t t) const { return samples_[t - 1]; }

  /// Delta at step t: step(t) - step(t-1); t must be in [2, size()].
  double delta(std::size_t t) const { return samples_[t - 1] - samples_[t - 2]; }

  const std::vector<double>& samples() const noexcept { return samples_; }

 private:
  std::vector<double> samples_;
};

}  // namespace stlcalib
