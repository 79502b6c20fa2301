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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stlcalib {

/// Channel a per-step confidence was elicited through. Opaque provenance;
/// the pipeline treats all three identically.
enum class Source { logit, self_eval, internal };

enum class Split { train, validation, test };

Source source_from_name(std::string_view name);
const char* source_name(Source s);
Split split_from_name(std::string_view name);
const char* split_name(Split s);

/// One problem instance: the ordered per-step confidences of a reasoning
/// trace plus the final-answer correctness label.
struct ConfidenceTrace {
  std::string id;
  std::vector<double> steps;  // length T >= 1, each in [0,1]
  bool correct = false;
  Source source = Source::logit;
  Split split = Split::test;
};

struct Dataset {
  std::vector<ConfidenceTrace> traces;
  std::map<std::string, std::string> metadata;  // provenance, generation seed
};

enum class DataFormat { jsonl, csv };

DataFormat format_from_name(std::string_view name);
const char* format_name(DataFormat f);

/// Shape of a synthetic confidence trajectory before noise:
///   rising     : linear ramp 0.3 -> 0.9
///   flat_high  : constant 0.9
///   spiky      : alternating 0.3 / 0.9, starting at 0.3
///   collapsing : linear ramp 0.9 -> 0.3
enum class Profile { rising, flat_high, spiky, collapsing };

Profile profile_from_name(std::string_view name);
const char* profile_name(Profile p);

struct SynthConfig {
  std::size_t count = 0;
  std::size_t min_steps = 1;
  std::size_t max_steps = 1;
  double accuracy = 0.5;  // fraction of correct traces, exact after rounding
  Profile correct_profile = Profile::rising;
  Profile incorrect_profile = Profile::spiky;
  double noise_sd = 0.0;  // Gaussian noise added per step, then clipped
  std::uint64_t seed = 0;

  void validate() const;  // throws Error(invalid_argument)
};

/// Parses a dataset from text. JSONL is canonical: one trace object per
/// line with fields id, steps, correct, source and an optional split
/// (default "test"); an optional first line {"_metadata": {...}} carries
/// dataset-level key/value metadata. CSV is a convenience import with
/// header id,step_index,confidence,correct,source,split, contiguous rows
/// per id and step_index running 1..T.
///
/// Every violated record aborts ingestion with Error(parse) naming the
/// line and the offending record.
Dataset parse_dataset(std::string_view text, DataFormat format);

/// Inverse of parse_dataset: parse(serialize(d), f) == d for every valid
/// dataset (CSV carries no metadata). Numbers print with shortest
/// round-trip precision.
std::string serialize_dataset(const Dataset& d, DataFormat format);

Dataset load_dataset(const std::string& path, DataFormat format);
void save_dataset(const Dataset& d, const std::string& path, DataFormat format);

/// Re-tags splits: the floor(val_fraction * n) traces with the lowest
/// hash(seed, id) rank become validation, the rest test. Trace order and
/// contents are untouched. Throws Error(invalid_argument) when either
/// partition would be empty.
Dataset split_dataset(const Dataset& d, double val_fraction, std::uint64_t seed);

/// Deterministic synthetic generator: identical configs (including seed)
/// produce bit-identical datasets. Exactly round(accuracy * count) traces
/// are correct; every confidence is clipped to [0,1].
Dataset synthesize(const SynthConfig& cfg);

/// Human-readable one-line digest, e.g. `3 traces, T∈[2,5], sources: logit`.
std::string dataset_summary(const Dataset& d);

}  // namespace stlcalib
