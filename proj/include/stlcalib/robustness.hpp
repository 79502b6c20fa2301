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

#include "stlcalib/formula.hpp"
#include "stlcalib/signal.hpp"

namespace stlcalib {

/// Degree of satisfaction of a formula on a signal. A positive value is the
/// satisfaction margin, a negative one the violation magnitude; the tie
/// rho = 0 counts as satisfied.
struct Robustness {
  double value = 0.0;
  bool satisfied = false;
};

/// Discrete-time quantitative semantics:
///   sig > k / sig >= k at t : sig(t) - k           (t in [1,T])
///   delta >= k at t         : delta(t) - k         (t in [2,T])
///   |delta| <= k at t       : k - |delta(t)|       (t in [2,T])
///   not                     : -rho
///   and / or                : min / max
///   G[lo,hi] / F[lo,hi]     : min / max of the body over the window,
///                             clipped to the steps where the body is
///                             defined; END resolves to T
/// The formula itself is evaluated at step 1.
///
/// Throws Error(eval) when a temporal window is empty after clipping (for
/// example a delta predicate on a length-1 signal) or when a bare delta
/// predicate is evaluated at step 1.
Robustness robustness(const Formula& f, const Signal& s);

/// The clamped confidence score min(max(rho, 0), 1). ReLU maps violation to
/// zero confidence; the upper clamp keeps delta-based formulas, whose margin
/// can exceed 1, inside the confidence range.
double score(const Formula& f, const Signal& s);

}  // namespace stlcalib
