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

#include "stlcalib/calibration.hpp"
#include "stlcalib/tuning.hpp"

namespace stlcalib {

// Calibration reports serialize to JSON, to an aligned plain-text table
// (fixed 6 decimal places) and, for the reliability bins, to CSV for
// external plotting. JSON keeps full precision.

std::string report_to_json(const CalibrationReport& r);
CalibrationReport report_from_json(std::string_view json_text);
std::string report_to_text(const CalibrationReport& r);

std::string tune_result_to_json(const TuneResult& r);
std::string tune_result_to_text(const TuneResult& r);

/// Grid landscape as CSV: one column per consumed parameter plus `ece`,
/// rows in evaluation order.
std::string tune_evaluations_to_csv(const TuneResult& r);

/// Dataset digest as JSON (trace/split/source counts, step-length range).
std::string summary_to_json(const Dataset& d);

}  // namespace stlcalib
