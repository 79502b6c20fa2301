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

#include "stlcalib/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "rng.hpp"
#include "stlcalib/errors.hpp"

namespace stlcalib {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(std::size_t line, const std::string& message) {
  throw ParseError(message + " at line " + std::to_string(line), line);
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void check_confidence(double v, std::size_t line, const std::string& id,
                      std::size_t step) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw ParseError("confidence out of range at line " + std::to_string(line) +
                         " (id \"" + id + "\", step " + std::to_string(step) + ")",
                     line);
  }
}

void register_id(std::unordered_set<std::string>& seen, const std::string& id,
                 std::size_t line) {
  if (!seen.insert(id).second) {
    parse_fail(line, "duplicate id \"" + id + "\"");
  }
}

ConfidenceTrace trace_from_json(const json& record, std::size_t line) {
  if (!record.is_object()) parse_fail(line, "malformed record: not an object");
  static const char* known[] = {"id", "steps", "correct", "source", "split"};
  for (auto it = record.begin(); it != record.end(); ++it) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return it.key() == k;
        }) == std::end(known)) {
      parse_fail(line, "malformed record: unknown field \"" + it.key() + "\"");
    }
  }
  ConfidenceTrace t;
  if (!record.contains("id") || !record["id"].is_string() ||
      record["id"].get<std::string>().empty()) {
    parse_fail(line, "malformed record: field \"id\" missing or not a non-empty string");
  }
  t.id = record["id"].get<std::string>();
  if (!record.contains("steps") || !record["steps"].is_array()) {
    parse_fail(line, "malformed record: field \"steps\" missing or not an array");
  }
  const auto& steps = record["steps"];
  if (steps.empty()) {
    parse_fail(line, "empty steps list for id \"" + t.id + "\"");
  }
  t.steps.reserve(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!steps[i].is_number()) {
      parse_fail(line, "malformed record: steps[" + std::to_string(i) +
                           "] is not a number");
    }
    const double v = steps[i].get<double>();
    check_confidence(v, line, t.id, i + 1);
    t.steps.push_back(v);
  }
  if (!record.contains("correct") || !record["correct"].is_boolean()) {
    parse_fail(line, "malformed record: field \"correct\" missing or not a boolean");
  }
  t.correct = record["correct"].get<bool>();
  if (!record.contains("source") || !record["source"].is_string()) {
    parse_fail(line, "malformed record: field \"source\" missing or not a string");
  }
  const bool has_split = record.contains("split") && !record["split"].is_null();
  if (has_split && !record["split"].is_string()) {
    parse_fail(line, "malformed record: field \"split\" is not a string");
  }
  try {
    t.source = source_from_name(record["source"].get<std::string>());
    t.split = has_split ? split_from_name(record["split"].get<std::string>())
                        : Split::test;
  } catch (const Error& e) {
    parse_fail(line, std::string("malformed record: ") + e.what());
  }
  return t;
}

Dataset parse_jsonl(std::string_view text) {
  Dataset d;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (pos > text.size()) break;
      continue;
    }
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      parse_fail(line_no, std::string("malformed record: ") + e.what());
    }
    if (line_no == 1 && record.is_object() && record.contains("_metadata")) {
      if (record.size() != 1 || !record["_metadata"].is_object()) {
        parse_fail(line_no, "malformed record: _metadata must be the only field");
      }
      for (auto it = record["_metadata"].begin(); it != record["_metadata"].end(); ++it) {
        if (!it.value().is_string()) {
          parse_fail(line_no, "malformed record: _metadata values must be strings");
        }
        d.metadata[it.key()] = it.value().get<std::string>();
      }
      continue;
    }
    ConfidenceTrace t = trace_from_json(record, line_no);
    register_id(seen, t.id, line_no);
    d.traces.push_back(std::move(t));
  }
  return d;
}

// Minimal RFC 4180 quoting: fields holding the separator, quotes or
// newlines are wrapped in double quotes, with embedded quotes doubled.
std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) parse_fail(line_no, "malformed record: unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

Dataset parse_csv(std::string_view text) {
  Dataset d;
  std::unordered_set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw ParseError("missing csv header at line 1", 1);
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "id,step_index,confidence,correct,source,split") {
    parse_fail(line_no,
               "malformed record: header must be "
               "\"id,step_index,confidence,correct,source,split\"");
  }

  ConfidenceTrace current;
  bool open = false;
  auto flush = [&]() {
    if (open) {
      d.traces.push_back(std::move(current));
      current = ConfidenceTrace{};
      open = false;
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = csv_split(line, line_no);
    if (fields.size() != 6) {
      parse_fail(line_no, "malformed record: expected 6 fields, got " +
                              std::to_string(fields.size()));
    }
    const std::string& id = fields[0];
    if (id.empty()) parse_fail(line_no, "malformed record: empty id");

    std::size_t step_index = 0;
    {
      auto res = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), step_index);
      if (res.ec != std::errc() || res.ptr != fields[1].data() + fields[1].size()) {
        parse_fail(line_no, "malformed record: step_index \"" + fields[1] +
                                "\" is not an integer");
      }
    }
    double confidence = 0.0;
    {
      auto res = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), confidence);
      if (res.ec != std::errc() || res.ptr != fields[2].data() + fields[2].size()) {
        parse_fail(line_no, "malformed record: confidence \"" + fields[2] +
                                "\" is not a number");
      }
    }
    check_confidence(confidence, line_no, id, step_index);
    bool correct;
    if (fields[3] == "true") {
      correct = true;
    } else if (fields[3] == "false") {
      correct = false;
    } else {
      parse_fail(line_no, "malformed record: correct must be true or false");
    }
    Source source;
    Split split;
    try {
      source = source_from_name(fields[4]);
      split = fields[5].empty() ? Split::test : split_from_name(fields[5]);
    } catch (const Error& e) {
      parse_fail(line_no, std::string("malformed record: ") + e.what());
    }

    if (open && id != current.id) flush();
    if (!open) {
      register_id(seen, id, line_no);
      current.id = id;
      current.correct = correct;
      current.source = source;
      current.split = split;
      open = true;
    } else if (correct != current.correct || source != current.source ||
               split != current.split) {
      parse_fail(line_no, "malformed record: correct/source/split differ "
                          "within id \"" + id + "\"");
    }
    if (step_index != current.steps.size() + 1) {
      parse_fail(line_no, "malformed record: step_index must run 1..T, expected " +
                              std::to_string(current.steps.size() + 1) + " got " +
                              std::to_string(step_index));
    }
    current.steps.push_back(confidence);
  }
  flush();
  return d;
}

std::string serialize_jsonl(const Dataset& d) {
  std::string out;
  if (!d.metadata.empty()) {
    json meta = json::object();
    for (const auto& [k, v] : d.metadata) meta[k] = v;
    out += json{{"_metadata", meta}}.dump();
    out += '\n';
  }
  for (const auto& t : d.traces) {
    json record = {{"id", t.id},
                   {"steps", t.steps},
                   {"correct", t.correct},
                   {"source", source_name(t.source)},
                   {"split", split_name(t.split)}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::string serialize_csv(const Dataset& d) {
  std::string out = "id,step_index,confidence,correct,source,split\n";
  for (const auto& t : d.traces) {
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      out += csv_escape(t.id);
      out += ',';
      out += std::to_string(i + 1);
      out += ',';
      out += format_double(t.steps[i]);
      out += ',';
      out += t.correct ? "true" : "false";
      out += ',';
      out += source_name(t.source);
      out += ',';
      out += split_name(t.split);
      out += '\n';
    }
  }
  return out;
}

double profile_base(Profile p, std::size_t step, std::size_t length) {
  const double frac =
      length > 1 ? static_cast<double>(step - 1) / static_cast<double>(length - 1) : 1.0;
  switch (p) {
    case Profile::rising: return 0.3 + 0.6 * frac;
    case Profile::flat_high: return 0.9;
    case Profile::spiky: return step % 2 == 1 ? 0.3 : 0.9;
    case Profile::collapsing: return 0.9 - 0.6 * frac;
  }
  throw Error(ErrorKind::internal, "unhandled profile");
}

}  // namespace

Source source_from_name(std::string_view name) {
  if (name == "logit") return Source::logit;
  if (name == "self_eval") return Source::self_eval;
  if (name == "internal") return Source::internal;
  throw Error(ErrorKind::invalid_argument,
              "unknown source \"" + std::string(name) +
                  "\" (expected logit, self_eval or internal)");
}

const char* source_name(Source s) {
  switch (s) {
    case Source::logit: return "logit";
    case Source::self_eval: return "self_eval";
    case Source::internal: return "internal";
  }
  throw Error(ErrorKind::internal, "unhandled source");
}

Split split_from_name(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "validation") return Split::validation;
  if (name == "test") return Split::test;
  throw Error(ErrorKind::invalid_argument,
              "unknown split \"" + std::string(name) +
                  "\" (expected train, validation or test)");
}

const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  throw Error(ErrorKind::internal, "unhandled split");
}

DataFormat format_from_name(std::string_view name) {
  if (name == "jsonl") return DataFormat::jsonl;
  if (name == "csv") return DataFormat::csv;
  throw Error(ErrorKind::invalid_argument,
              "unknown format \"" + std::string(name) + "\" (expected jsonl or csv)");
}

const char* format_name(DataFormat f) {
  return f == DataFormat::jsonl ? "jsonl" : "csv";
}

Profile profile_from_name(std::string_view name) {
  if (name == "rising") return Profile::rising;
  if (name == "flat_high") return Profile::flat_high;
  if (name == "spiky") return Profile::spiky;
  if (name == "collapsing") return Profile::collapsing;
  throw Error(ErrorKind::invalid_argument,
              "unknown profile \"" + std::string(name) +
                  "\" (expected rising, flat_high, spiky or collapsing)");
}

const char* profile_name(Profile p) {
  switch (p) {
    case Profile::rising: return "rising";
    case Profile::flat_high: return "flat_high";
    case Profile::spiky: return "spiky";
    case Profile::collapsing: return "collapsing";
  }
  throw Error(ErrorKind::internal, "unhandled profile");
}

void SynthConfig::validate() const {
  if (count == 0) {
    throw Error(ErrorKind::invalid_argument, "synth count must be positive");
  }
  if (min_steps == 0 || min_steps > max_steps) {
    throw Error(ErrorKind::invalid_argument,
                "synth requires 1 <= min_steps <= max_steps");
  }
  if (!std::isfinite(accuracy) || accuracy < 0.0 || accuracy > 1.0) {
    throw Error(ErrorKind::invalid_argument, "synth accuracy must be in [0,1]");
  }
  if (!std::isfinite(noise_sd) || noise_sd < 0.0) {
    throw Error(ErrorKind::invalid_argument, "synth noise_sd must be >= 0");
  }
}

Dataset parse_dataset(std::string_view text, DataFormat format) {
  return format == DataFormat::jsonl ? parse_jsonl(text) : parse_csv(text);
}

std::string serialize_dataset(const Dataset& d, DataFormat format) {
  return format == DataFormat::jsonl ? serialize_jsonl(d) : serialize_csv(d);
}

Dataset load_dataset(const std::string& path, DataFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open \"" + path + "\" for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), format);
}

void save_dataset(const Dataset& d, const std::string& path, DataFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open \"" + path + "\" for writing");
  out << serialize_dataset(d, format);
  if (!out) throw Error(ErrorKind::io, "failed writing \"" + path + "\"");
}

Dataset split_dataset(const Dataset& d, double val_fraction, std::uint64_t seed) {
  if (d.traces.size() < 2) {
    throw Error(ErrorKind::invalid_argument,
                "split requires at least 2 traces");
  }
  if (!std::isfinite(val_fraction) || val_fraction <= 0.0 || val_fraction >= 1.0) {
    throw Error(ErrorKind::invalid_argument, "val_fraction must be in (0,1)");
  }
  const std::size_t n = d.traces.size();
  const auto k = static_cast<std::size_t>(val_fraction * static_cast<double>(n));
  if (k == 0 || k == n) {
    throw Error(ErrorKind::invalid_argument,
                "val_fraction " + format_double(val_fraction) + " yields an empty " +
                    (k == 0 ? "validation" : "test") + " partition for n=" +
                    std::to_string(n));
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::uint64_t ha = detail::split_hash(seed, d.traces[a].id);
    const std::uint64_t hb = detail::split_hash(seed, d.traces[b].id);
    if (ha != hb) return ha < hb;
    return d.traces[a].id < d.traces[b].id;
  });

  Dataset out = d;
  for (auto& t : out.traces) t.split = Split::test;
  for (std::size_t i = 0; i < k; ++i) out.traces[order[i]].split = Split::validation;
  return out;
}

Dataset synthesize(const SynthConfig& cfg) {
  cfg.validate();
  detail::Rng rng(cfg.seed);

  const auto correct_count = static_cast<std::size_t>(
      std::llround(cfg.accuracy * static_cast<double>(cfg.count)));
  std::vector<bool> labels(cfg.count, false);
  for (std::size_t i = 0; i < correct_count; ++i) labels[i] = true;
  // Fisher-Yates so correctness is not correlated with the id sequence.
  for (std::size_t i = cfg.count - 1; i > 0; --i) {
    const std::size_t j = rng.uniform_int(0, i);
    std::swap(labels[i], labels[j]);
  }

  Dataset d;
  d.metadata["generator"] = "stlcalib-synth";
  d.metadata["seed"] = std::to_string(cfg.seed);
  d.metadata["count"] = std::to_string(cfg.count);
  d.metadata["accuracy"] = format_double(cfg.accuracy);
  d.metadata["correct_profile"] = profile_name(cfg.correct_profile);
  d.metadata["incorrect_profile"] = profile_name(cfg.incorrect_profile);
  d.metadata["noise_sd"] = format_double(cfg.noise_sd);
  d.metadata["min_steps"] = std::to_string(cfg.min_steps);
  d.metadata["max_steps"] = std::to_string(cfg.max_steps);

  char id_buf[32];
  d.traces.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    ConfidenceTrace t;
    std::snprintf(id_buf, sizeof(id_buf), "synth-%06zu", i + 1);
    t.id = id_buf;
    t.correct = labels[i];
    t.source = Source::internal;
    t.split = Split::test;
    const auto length = static_cast<std::size_t>(
        rng.uniform_int(cfg.min_steps, cfg.max_steps));
    const Profile profile = t.correct ? cfg.correct_profile : cfg.incorrect_profile;
    t.steps.reserve(length);
    for (std::size_t step = 1; step <= length; ++step) {
      double v = profile_base(profile, step, length);
      if (cfg.noise_sd > 0.0) v += cfg.noise_sd * rng.gauss();
      t.steps.push_back(std::clamp(v, 0.0, 1.0));
    }
    d.traces.push_back(std::move(t));
  }
  return d;
}

std::string dataset_summary(const Dataset& d) {
  if (d.traces.empty()) return "0 traces";
  std::size_t min_len = d.traces.front().steps.size();
  std::size_t max_len = min_len;
  bool sources[3] = {false, false, false};
  for (const auto& t : d.traces) {
    min_len = std::min(min_len, t.steps.size());
    max_len = std::max(max_len, t.steps.size());
    sources[static_cast<int>(t.source)] = true;
  }
  std::string out = std::to_string(d.traces.size()) +
                    (d.traces.size() == 1 ? " trace" : " traces") + ", T∈[" +
                    std::to_string(min_len) + "," + std::to_string(max_len) +
                    "], sources:";
  bool first = true;
  for (Source s : {Source::logit, Source::self_eval, Source::internal}) {
    if (sources[static_cast<int>(s)]) {
      out += first ? " " : ", ";
      out += source_name(s);
      first = false;
    }
  }
  return out;
}

}  // namespace stlcalib
