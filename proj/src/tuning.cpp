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

#include "stlcalib/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "stlcalib/errors.hpp"
#include "stlcalib/robustness.hpp"
#include "stlcalib/signal.hpp"

namespace stlcalib {

namespace {

enum class Param { tau, epsilon, delta, alpha, window_lo, window_hi };

const char* param_label(Param p) {
  switch (p) {
    case Param::tau: return "tau";
    case Param::epsilon: return "epsilon";
    case Param::delta: return "delta";
    case Param::alpha: return "alpha";
    case Param::window_lo: return "window_lo";
    case Param::window_hi: return "window_hi";
  }
  throw Error(ErrorKind::internal, "unhandled param");
}

// Which scalar grids a (formula, strategy) pair consumes. A symbol shared
// by both sides (stl1 x mps, stl2 x gs, stl3 x cms) appears once: one grid
// value drives both uses.
std::vector<Param> consumed_params(FormulaKind formula, Strategy strategy) {
  std::vector<Param> out;
  auto add = [&out](Param p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  switch (formula) {
    case FormulaKind::stl1: add(Param::tau); break;
    case FormulaKind::stl2: add(Param::epsilon); break;
    case FormulaKind::stl3: add(Param::delta); break;
  }
  switch (strategy) {
    case Strategy::cms: add(Param::delta); break;
    case Strategy::eds: add(Param::alpha); break;
    case Strategy::mps: add(Param::tau); break;
    case Strategy::gs:
      add(Param::tau);
      add(Param::epsilon);
      break;
    case Strategy::identity: break;
  }
  // Field order tau, epsilon, delta, alpha regardless of insertion order.
  std::sort(out.begin(), out.end());
  return out;
}

void check_grid(const std::vector<double>& grid, Param p, double lo, double hi) {
  if (grid.empty()) {
    throw Error(ErrorKind::invalid_argument,
                std::string("consumed grid \"") + param_label(p) + "\" is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < lo || grid[i] > hi) {
      throw Error(ErrorKind::invalid_argument,
                  std::string("grid \"") + param_label(p) +
                      "\" holds a value outside its legal range");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw Error(ErrorKind::invalid_argument,
                  std::string("grid \"") + param_label(p) +
                      "\" must be strictly ascending");
    }
  }
}

struct TraceOutcome {
  bool scored = false;
  double score_value = 0.0;
  std::string reason;
};

}  // namespace

FormulaKind formula_from_name(std::string_view name) {
  if (name == "stl1") return FormulaKind::stl1;
  if (name == "stl2") return FormulaKind::stl2;
  if (name == "stl3") return FormulaKind::stl3;
  throw Error(ErrorKind::invalid_argument,
              "unknown formula \"" + std::string(name) +
                  "\" (expected stl1, stl2 or stl3)");
}

const char* formula_kind_name(FormulaKind f) {
  switch (f) {
    case FormulaKind::stl1: return "stl1";
    case FormulaKind::stl2: return "stl2";
    case FormulaKind::stl3: return "stl3";
  }
  throw Error(ErrorKind::internal, "unhandled formula kind");
}

ReshapeParams reshape_params_for(Strategy strategy, const ParamAssignment& a) {
  ReshapeParams p;
  p.strategy = strategy;
  switch (strategy) {
    case Strategy::cms:
      if (!a.delta) throw Error(ErrorKind::invalid_argument, "cms needs delta");
      p.delta = *a.delta;
      break;
    case Strategy::eds:
      if (!a.alpha) throw Error(ErrorKind::invalid_argument, "eds needs alpha");
      p.alpha = *a.alpha;
      break;
    case Strategy::mps:
      if (!a.tau) throw Error(ErrorKind::invalid_argument, "mps needs tau");
      p.tau = *a.tau;
      break;
    case Strategy::gs:
      if (!a.tau || !a.epsilon) {
        throw Error(ErrorKind::invalid_argument, "gs needs tau and epsilon");
      }
      p.tau = *a.tau;
      p.epsilon = *a.epsilon;
      break;
    case Strategy::identity:
      break;
  }
  p.validate();
  return p;
}

Formula formula_for(FormulaKind kind, const ParamAssignment& a) {
  switch (kind) {
    case FormulaKind::stl1: {
      if (!a.tau) throw Error(ErrorKind::invalid_argument, "stl1 needs tau");
      const int lo = a.window_lo.value_or(1);
      return stl1(*a.tau, lo, a.window_hi.value_or(Formula::kEnd));
    }
    case FormulaKind::stl2: {
      if (!a.epsilon) throw Error(ErrorKind::invalid_argument, "stl2 needs epsilon");
      const int lo = a.window_lo.value_or(2);
      return stl2(*a.epsilon, lo, a.window_hi.value_or(Formula::kEnd));
    }
    case FormulaKind::stl3: {
      if (!a.delta) throw Error(ErrorKind::invalid_argument, "stl3 needs delta");
      const int lo = a.window_lo.value_or(2);
      return stl3(*a.delta, lo, a.window_hi.value_or(Formula::kEnd));
    }
  }
  throw Error(ErrorKind::internal, "unhandled formula kind");
}

CalibrationReport evaluate_config(const Dataset& data, Split split,
                                  const ReshapeParams& reshape,
                                  const Formula& formula, std::size_t bins,
                                  const std::string& method_label) {
  reshape.validate();
  std::vector<const ConfidenceTrace*> selected;
  for (const auto& t : data.traces) {
    if (t.split == split) selected.push_back(&t);
  }
  if (selected.empty()) {
    throw Error(ErrorKind::invalid_argument,
                std::string("split \"") + split_name(split) + "\" is empty");
  }
  std::sort(selected.begin(), selected.end(),
            [](const ConfidenceTrace* a, const ConfidenceTrace* b) {
              return a->id < b->id;
            });

  std::vector<TraceOutcome> outcomes(selected.size());
  detail::parallel_for(selected.size(), [&](std::size_t i) {
    const ConfidenceTrace& t = *selected[i];
    try {
      const Signal reshaped = apply(Signal(t.steps), reshape);
      outcomes[i].score_value = score(formula, reshaped);
      outcomes[i].scored = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::eval) throw;
      outcomes[i].reason = e.what();
    }
  });

  CalibrationReport report;
  report.method = method_label;
  report.strategy = reshape.strategy == Strategy::identity
                        ? ""
                        : strategy_name(reshape.strategy);
  std::vector<Prediction> preds;
  preds.reserve(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (outcomes[i].scored) {
      preds.push_back(Prediction{outcomes[i].score_value, selected[i]->correct,
                                 selected[i]->id});
    } else {
      report.excluded.push_back(Exclusion{selected[i]->id, outcomes[i].reason});
    }
  }
  report.n = preds.size();
  if (preds.empty()) {
    report.ece = std::numeric_limits<double>::quiet_NaN();
    report.brier = std::numeric_limits<double>::quiet_NaN();
  } else {
    auto [value, table] = ece(preds, bins);
    report.ece = value;
    report.bin_table = std::move(table);
    report.brier = brier(preds);
  }
  return report;
}

TuneResult grid_search(const Dataset& data, const GridSpec& spec) {
  bool has_validation = false;
  for (const auto& t : data.traces) {
    if (t.split == Split::validation) {
      has_validation = true;
      break;
    }
  }
  if (!has_validation) {
    throw Error(ErrorKind::invalid_argument, "validation split is empty");
  }
  if (spec.bins == 0) {
    throw Error(ErrorKind::invalid_argument, "bin count must be positive");
  }

  const std::vector<Param> scalars = consumed_params(spec.formula, spec.strategy);
  for (Param p : scalars) {
    switch (p) {
      case Param::tau: check_grid(spec.tau_grid, p, 0.0, 1.0); break;
      case Param::epsilon: check_grid(spec.epsilon_grid, p, 0.0, std::numeric_limits<double>::infinity()); break;
      case Param::delta: check_grid(spec.delta_grid, p, 0.0, std::numeric_limits<double>::infinity()); break;
      case Param::alpha: check_grid(spec.alpha_grid, p, 0.0, 1.0); break;
      default: break;
    }
  }

  // Axes in field order; window grids, when provided, come last.
  struct Axis {
    Param param;
    const std::vector<double>* dvals = nullptr;
    const std::vector<int>* ivals = nullptr;
    std::size_t size() const { return dvals ? dvals->size() : ivals->size(); }
  };
  std::vector<Axis> axes;
  for (Param p : scalars) {
    switch (p) {
      case Param::tau: axes.push_back({p, &spec.tau_grid, nullptr}); break;
      case Param::epsilon: axes.push_back({p, &spec.epsilon_grid, nullptr}); break;
      case Param::delta: axes.push_back({p, &spec.delta_grid, nullptr}); break;
      case Param::alpha: axes.push_back({p, &spec.alpha_grid, nullptr}); break;
      default: break;
    }
  }
  if (!spec.window_lo_grid.empty()) {
    axes.push_back({Param::window_lo, nullptr, &spec.window_lo_grid});
  }
  if (!spec.window_hi_grid.empty()) {
    axes.push_back({Param::window_hi, nullptr, &spec.window_hi_grid});
  }

  TuneResult result;
  result.best_ece = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> odometer(axes.size(), 0);
  bool done = false;
  while (!done) {
    ParamAssignment assignment;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const Axis& axis = axes[i];
      switch (axis.param) {
        case Param::tau: assignment.tau = (*axis.dvals)[odometer[i]]; break;
        case Param::epsilon: assignment.epsilon = (*axis.dvals)[odometer[i]]; break;
        case Param::delta: assignment.delta = (*axis.dvals)[odometer[i]]; break;
        case Param::alpha: assignment.alpha = (*axis.dvals)[odometer[i]]; break;
        case Param::window_lo: assignment.window_lo = (*axis.ivals)[odometer[i]]; break;
        case Param::window_hi: assignment.window_hi = (*axis.ivals)[odometer[i]]; break;
      }
    }

    try {
      const ReshapeParams reshape = reshape_params_for(spec.strategy, assignment);
      const Formula formula = formula_for(spec.formula, assignment);
      const CalibrationReport report = evaluate_config(
          data, Split::validation, reshape, formula, spec.bins,
          formula_kind_name(spec.formula));
      if (report.n == 0) {
        result.skipped.push_back(SkippedPoint{assignment, "no scored traces"});
      } else {
        result.evaluations.push_back(Evaluation{assignment, report.ece});
        if (report.ece < result.best_ece) {
          result.best_ece = report.ece;
          result.best_params = assignment;
        }
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::invalid_argument) throw;
      result.skipped.push_back(SkippedPoint{assignment, e.what()});
    }

    // Odometer step: last axis fastest, so enumeration is lexicographic in
    // field order with each grid ascending.
    done = true;
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++odometer[i] < axes[i].size()) {
        done = false;
        break;
      }
      odometer[i] = 0;
    }
    if (axes.empty()) done = true;
  }

  if (result.evaluations.empty()) {
    throw Error(ErrorKind::invalid_argument,
                "every grid point was skipped; nothing to tune");
  }
  return result;
}

}  // namespace stlcalib
