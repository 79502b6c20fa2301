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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlcalib/calibration.hpp"
#include "stlcalib/formula.hpp"
#include "stlcalib/reshape.hpp"
#include "stlcalib/trace.hpp"

namespace stlcalib {

enum class FormulaKind { stl1, stl2, stl3 };

FormulaKind formula_from_name(std::string_view name);
const char* formula_kind_name(FormulaKind f);

/// One resolved grid point. Only the parameters the (formula, strategy)
/// pair consumes are set. When formula and strategy consume the same symbol
/// (stl1 x mps share tau, stl2 x gs share epsilon, stl3 x cms share delta)
/// a single value drives both uses.
struct ParamAssignment {
  std::optional<double> tau;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> alpha;
  std::optional<int> window_lo;
  std::optional<int> window_hi;

  friend bool operator==(const ParamAssignment&, const ParamAssignment&) = default;
};

/// Grid search space. A grid is consulted only if the (formula, strategy)
/// pair consumes its parameter, and must then be non-empty and ascending.
/// The window grids are optional; empty means the preset default window
/// (the full trace).
struct GridSpec {
  std::vector<double> tau_grid;
  std::vector<double> epsilon_grid;
  std::vector<double> delta_grid;
  std::vector<double> alpha_grid;
  std::vector<int> window_lo_grid;
  std::vector<int> window_hi_grid;
  FormulaKind formula = FormulaKind::stl1;
  Strategy strategy = Strategy::identity;
  std::size_t bins = 10;
};

struct Evaluation {
  ParamAssignment params;
  double ece = 0.0;
};

struct SkippedPoint {
  ParamAssignment params;
  std::string reason;
};

/// best_ece is the minimum over `evaluations`, and best_params the first
/// assignment attaining it in enumeration order (grids iterated in field
/// order tau, epsilon, delta, alpha, window_lo, window_hi, each ascending).
struct TuneResult {
  ParamAssignment best_params;
  double best_ece = 0.0;
  std::vector<Evaluation> evaluations;
  std::vector<SkippedPoint> skipped;
};

/// Builds the formula + reshape parameters a grid point denotes.
ReshapeParams reshape_params_for(Strategy strategy, const ParamAssignment& a);
Formula formula_for(FormulaKind kind, const ParamAssignment& a);

/// Reshapes every trace of the selected split with `reshape`, scores the
/// reshaped signal against `formula`, then reports ECE and Brier over the
/// resulting predictions (ordered by trace id). Traces the formula is
/// undefined on are excluded with a reason, not fatal.
CalibrationReport evaluate_config(const Dataset& data, Split split,
                                  const ReshapeParams& reshape,
                                  const Formula& formula, std::size_t bins,
                                  const std::string& method_label = {});

/// Exhaustive search over the Cartesian product of the consumed grids,
/// minimizing ECE on the validation split. Ties break toward the earlier
/// point in enumeration order. Grid points that violate a precondition
/// (gs with tau+epsilon > 1) or score no traces are recorded as skipped.
TuneResult grid_search(const Dataset& data, const GridSpec& spec);

}  // namespace stlcalib
