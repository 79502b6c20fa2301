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

#include "stlcalib/signal.hpp"

#include <cmath>
#include <string>

#include "stlcalib/errors.hpp"

namespace stlcalib {

Signal::Signal(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw Error(ErrorKind::invalid_argument, "signal must be non-empty");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double v = samples_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error(ErrorKind::invalid_argument,
                  "signal sample at step " + std::to_string(i + 1) +
                      " is outside [0,1]: " + std::to_string(v));
    }
  }
}

}  // namespace stlcalib
