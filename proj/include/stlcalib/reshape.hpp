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

#include <string>
#include <string_view>

#include "stlcalib/signal.hpp"

namespace stlcalib {

enum class Strategy { cms, eds, mps, gs, identity };

Strategy strategy_from_name(std::string_view name);
const char* strategy_name(Strategy s);

/// Parameters for one reshaping run. Only the fields the selected strategy
/// consumes are read: cms -> delta, eds -> alpha, mps -> tau,
/// gs -> tau + epsilon, identity -> none.
///
/// `recursive` switches the prefix terms and guard conditions from the
/// original signal to the already-reshaped prefix. It is an experimental
/// variant, off by default, and never used by the preset pipelines.
struct ReshapeParams {
  Strategy strategy = Strategy::identity;
  double delta = 0.0;    // cms margin, >= 0
  double alpha = 1.0;    // eds blend weight, in [0,1]
  double tau = 0.5;      // mps/gs spike threshold, in [0,1]
  double epsilon = 0.0;  // gs jump tolerance, >= 0; gs requires tau + epsilon <= 1
  bool recursive = false;

  void validate() const;  // throws Error(invalid_argument)
};

/// Causal minimum smoothing: out[t] = min(s[t], min(s[1..t-1]) + delta),
/// out[1] = s[1]. The prefix minimum is taken over the original signal.
Signal cms(const Signal& s, double delta, bool recursive = false);

/// Exponential decay smoothing:
/// out[t] = alpha*s[t] + (1-alpha)*(1/t)*sum(s[1..t-1]), out[1] = s[1].
/// Note the divisor is t, not t-1, so the past-average term is biased low.
Signal eds(const Signal& s, double alpha, bool recursive = false);

/// Monotonic penalty smoothing: upward moves from a step below tau are
/// replaced by the midpoint (s[t-1]+s[t])/2; everything else passes through.
Signal mps(const Signal& s, double tau, bool recursive = false);

/// Guarded smoothing: jumps from below tau to above tau+epsilon are capped
/// at tau+epsilon; everything else passes through.
Signal gs(const Signal& s, double tau, double epsilon, bool recursive = false);

/// Dispatch on p.strategy; identity returns s unchanged.
Signal apply(const Signal& s, const ReshapeParams& p);

}  // namespace stlcalib
