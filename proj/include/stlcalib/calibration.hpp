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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stlcalib/trace.hpp"

namespace stlcalib {

/// One scored example: a confidence in [0,1] against a correctness label.
struct Prediction {
  double confidence = 0.0;
  bool correct = false;
  std::string trace_id;
};

struct ReliabilityBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double mean_confidence = 0.0;  // 0 for empty bins
  double accuracy = 0.0;         // 0 for empty bins
};

/// Equal-width partition of [0,1]: bin m covers [(m-1)/M, m/M), the last
/// bin is closed at 1 so confidence 1.0 lands in it.
struct BinTable {
  std::size_t bin_count = 0;
  std::vector<ReliabilityBin> bins;  // size bin_count, ascending

  std::string to_csv() const;  // header bin_lo,bin_hi,count,conf,acc
};

/// 1-based bin index of a confidence under the partition above, computed as
/// floor(c*M) + 1 in double arithmetic, clamped to M.
std::size_t bin_index(double confidence, std::size_t bin_count);

/// Expected calibration error over M equal-width bins:
/// sum_m (|B_m|/n) * |acc(B_m) - conf(B_m)|, empty bins contributing 0.
/// Returns the score together with the reliability table behind it.
std::pair<double, BinTable> ece(std::span<const Prediction> preds, std::size_t bin_count);

/// Mean squared error between confidence and the 0/1 correctness label.
double brier(std::span<const Prediction> preds);

/// Final-step confidence, the conventional single-value baseline.
Prediction one_step(const ConfidenceTrace& trace);

/// Arithmetic mean of all step confidences.
Prediction cot_average(const ConfidenceTrace& trace);

/// Temperature scaling on confidences: sigma(logit(c) / T), with c squashed
/// into [1e-6, 1-1e-6] before the logit. T = 1 is the identity; T > 1
/// flattens toward 0.5, T < 1 sharpens.
double apply_temperature(double confidence, double temperature);

/// Fits T by minimizing the binary negative log-likelihood over the
/// validation predictions, via golden-section search on log T in
/// [log 0.05, log 20] to absolute tolerance 1e-4 in log T. Refuses
/// all-correct or all-incorrect validation sets (Error(invalid_argument)).
double fit_temperature(std::span<const Prediction> val);

/// Nonparametric recalibration: a confidence maps to the empirical accuracy
/// of its validation bin; bins unseen during fitting fall back to the
/// overall validation accuracy.
struct HistogramBinning {
  std::size_t bin_count = 0;
  std::vector<double> bin_accuracy;  // size bin_count; fallback where unseen
  std::vector<bool> occupied;        // size bin_count
  double fallback_accuracy = 0.0;    // global validation accuracy
};

HistogramBinning fit_histogram_binning(std::span<const Prediction> val, std::size_t bin_count);
double apply_histogram_binning(double confidence, const HistogramBinning& map);

/// The exclusion record for a trace a method could not score.
struct Exclusion {
  std::string trace_id;
  std::string reason;
};

/// Per-method calibration result. When n == 0 (everything excluded) the
/// metric fields are NaN and the bin table is empty.
struct CalibrationReport {
  std::string method;
  std::string strategy;  // empty when no reshaping is involved
  double ece = 0.0;
  double brier = 0.0;
  std::size_t n = 0;
  BinTable bin_table;
  std::vector<Exclusion> excluded;
};

}  // namespace stlcalib
