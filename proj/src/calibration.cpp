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

#include "stlcalib/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "stlcalib/errors.hpp"

namespace stlcalib {

namespace {

constexpr double kSquashLo = 1e-6;
constexpr double kSquashHi = 1.0 - 1e-6;

void check_predictions(std::span<const Prediction> preds) {
  if (preds.empty()) {
    throw Error(ErrorKind::invalid_argument, "prediction list must be non-empty");
  }
  for (const auto& p : preds) {
    if (!std::isfinite(p.confidence) || p.confidence < 0.0 || p.confidence > 1.0) {
      throw Error(ErrorKind::invalid_argument,
                  "prediction confidence outside [0,1] for trace \"" +
                      p.trace_id + "\"");
    }
  }
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double log_sigmoid(double z) {
  // -log(1 + e^-z), evaluated without overflow on either tail.
  return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
}

double mean_nll(std::span<const Prediction> preds, double temperature) {
  double total = 0.0;
  for (const auto& p : preds) {
    const double c = std::clamp(p.confidence, kSquashLo, kSquashHi);
    const double z = logit(c) / temperature;
    total += p.correct ? -log_sigmoid(z) : -log_sigmoid(-z);
  }
  return total / static_cast<double>(preds.size());
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::size_t bin_index(double confidence, std::size_t bin_count) {
  const auto raw = static_cast<std::size_t>(
      confidence * static_cast<double>(bin_count));
  return std::min(bin_count, raw + 1);
}

std::pair<double, BinTable> ece(std::span<const Prediction> preds,
                                std::size_t bin_count) {
  check_predictions(preds);
  if (bin_count == 0) {
    throw Error(ErrorKind::invalid_argument, "bin count must be positive");
  }

  std::vector<std::size_t> counts(bin_count, 0);
  std::vector<double> conf_sums(bin_count, 0.0);
  std::vector<std::size_t> correct_counts(bin_count, 0);
  for (const auto& p : preds) {
    const std::size_t m = bin_index(p.confidence, bin_count) - 1;
    counts[m] += 1;
    conf_sums[m] += p.confidence;
    correct_counts[m] += p.correct ? 1 : 0;
  }

  BinTable table;
  table.bin_count = bin_count;
  table.bins.resize(bin_count);
  const double n = static_cast<double>(preds.size());
  double total = 0.0;
  for (std::size_t m = 0; m < bin_count; ++m) {
    ReliabilityBin& bin = table.bins[m];
    bin.lower = static_cast<double>(m) / static_cast<double>(bin_count);
    bin.upper = static_cast<double>(m + 1) / static_cast<double>(bin_count);
    bin.count = counts[m];
    if (counts[m] > 0) {
      bin.mean_confidence = conf_sums[m] / static_cast<double>(counts[m]);
      bin.accuracy =
          static_cast<double>(correct_counts[m]) / static_cast<double>(counts[m]);
      total += (static_cast<double>(counts[m]) / n) *
               std::fabs(bin.accuracy - bin.mean_confidence);
    }
  }
  return {total, std::move(table)};
}

double brier(std::span<const Prediction> preds) {
  check_predictions(preds);
  double total = 0.0;
  for (const auto& p : preds) {
    const double err = p.confidence - (p.correct ? 1.0 : 0.0);
    total += err * err;
  }
  return total / static_cast<double>(preds.size());
}

Prediction one_step(const ConfidenceTrace& trace) {
  if (trace.steps.empty()) {
    throw Error(ErrorKind::invalid_argument,
                "trace \"" + trace.id + "\" has no steps");
  }
  return Prediction{trace.steps.back(), trace.correct, trace.id};
}

Prediction cot_average(const ConfidenceTrace& trace) {
  if (trace.steps.empty()) {
    throw Error(ErrorKind::invalid_argument,
                "trace \"" + trace.id + "\" has no steps");
  }
  double sum = 0.0;
  for (double v : trace.steps) sum += v;
  return Prediction{sum / static_cast<double>(trace.steps.size()), trace.correct,
                    trace.id};
}

double apply_temperature(double confidence, double temperature) {
  if (!std::isfinite(temperature) || temperature <= 0.0) {
    throw Error(ErrorKind::invalid_argument, "temperature must be positive");
  }
  const double c = std::clamp(confidence, kSquashLo, kSquashHi);
  const double z = logit(c) / temperature;
  return 1.0 / (1.0 + std::exp(-z));
}

double fit_temperature(std::span<const Prediction> val) {
  check_predictions(val);
  bool any_correct = false;
  bool any_incorrect = false;
  for (const auto& p : val) (p.correct ? any_correct : any_incorrect) = true;
  if (!any_correct || !any_incorrect) {
    throw Error(ErrorKind::invalid_argument,
                "temperature fitting needs both correct and incorrect "
                "validation predictions");
  }

  // Golden-section search on log T; the NLL of this one-parameter family is
  // unimodal in practice, and the bracket covers [0.05, 20].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(0.05);
  double b = std::log(20.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = mean_nll(val, std::exp(x1));
  double f2 = mean_nll(val, std::exp(x2));
  while (b - a > 1e-4) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = mean_nll(val, std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = mean_nll(val, std::exp(x2));
    }
  }
  return std::exp((a + b) / 2.0);
}

HistogramBinning fit_histogram_binning(std::span<const Prediction> val,
                                       std::size_t bin_count) {
  check_predictions(val);
  if (bin_count == 0) {
    throw Error(ErrorKind::invalid_argument, "bin count must be positive");
  }
  HistogramBinning map;
  map.bin_count = bin_count;
  map.bin_accuracy.assign(bin_count, 0.0);
  map.occupied.assign(bin_count, false);

  std::vector<std::size_t> counts(bin_count, 0);
  std::vector<std::size_t> correct_counts(bin_count, 0);
  std::size_t total_correct = 0;
  for (const auto& p : val) {
    const std::size_t m = bin_index(p.confidence, bin_count) - 1;
    counts[m] += 1;
    correct_counts[m] += p.correct ? 1 : 0;
    total_correct += p.correct ? 1 : 0;
  }
  map.fallback_accuracy =
      static_cast<double>(total_correct) / static_cast<double>(val.size());
  for (std::size_t m = 0; m < bin_count; ++m) {
    if (counts[m] > 0) {
      map.occupied[m] = true;
      map.bin_accuracy[m] =
          static_cast<double>(correct_counts[m]) / static_cast<double>(counts[m]);
    } else {
      map.bin_accuracy[m] = map.fallback_accuracy;
    }
  }
  return map;
}

double apply_histogram_binning(double confidence, const HistogramBinning& map) {
  if (map.bin_count == 0 || map.bin_accuracy.size() != map.bin_count) {
    throw Error(ErrorKind::invalid_argument, "histogram binning map is empty");
  }
  return map.bin_accuracy[bin_index(confidence, map.bin_count) - 1];
}

std::string BinTable::to_csv() const {
  std::string out = "bin_lo,bin_hi,count,conf,acc\n";
  for (const auto& bin : bins) {
    out += format_double(bin.lower);
    out += ',';
    out += format_double(bin.upper);
    out += ',';
    out += std::to_string(bin.count);
    out += ',';
    out += format_double(bin.mean_confidence);
    out += ',';
    out += format_double(bin.accuracy);
    out += '\n';
  }
  return out;
}

}  // namespace stlcalib
