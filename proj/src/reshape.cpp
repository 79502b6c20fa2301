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

#include "stlcalib/reshape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stlcalib/errors.hpp"

namespace stlcalib {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::invalid_argument, what);
}

}  // namespace

Strategy strategy_from_name(std::string_view name) {
  if (name == "cms") return Strategy::cms;
  if (name == "eds") return Strategy::eds;
  if (name == "mps") return Strategy::mps;
  if (name == "gs") return Strategy::gs;
  if (name == "identity") return Strategy::identity;
  throw Error(ErrorKind::invalid_argument,
              "unknown strategy \"" + std::string(name) +
                  "\" (expected cms, eds, mps, gs or identity)");
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::cms: return "cms";
    case Strategy::eds: return "eds";
    case Strategy::mps: return "mps";
    case Strategy::gs: return "gs";
    case Strategy::identity: return "identity";
  }
  throw Error(ErrorKind::internal, "unhandled strategy");
}

void ReshapeParams::validate() const {
  switch (strategy) {
    case Strategy::cms:
      require(std::isfinite(delta) && delta >= 0.0, "cms requires delta >= 0");
      break;
    case Strategy::eds:
      require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
              "eds requires alpha in [0,1]");
      break;
    case Strategy::mps:
      require(std::isfinite(tau) && tau >= 0.0 && tau <= 1.0,
              "mps requires tau in [0,1]");
      break;
    case Strategy::gs:
      require(std::isfinite(tau) && tau >= 0.0 && tau <= 1.0,
              "gs requires tau in [0,1]");
      require(std::isfinite(epsilon) && epsilon >= 0.0,
              "gs requires epsilon >= 0");
      require(tau + epsilon <= 1.0, "gs requires tau + epsilon <= 1");
      break;
    case Strategy::identity:
      break;
  }
}

Signal cms(const Signal& s, double delta, bool recursive) {
  require(std::isfinite(delta) && delta >= 0.0, "cms requires delta >= 0");
  const auto& in = s.samples();
  std::vector<double> out(in.size());
  out[0] = in[0];
  double prefix_min = recursive ? out[0] : in[0];
  for (std::size_t t = 1; t < in.size(); ++t) {
    out[t] = std::min(in[t], prefix_min + delta);
    prefix_min = std::min(prefix_min, recursive ? out[t] : in[t]);
  }
  return Signal(std::move(out));
}

Signal eds(const Signal& s, double alpha, bool recursive) {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
          "eds requires alpha in [0,1]");
  const auto& in = s.samples();
  std::vector<double> out(in.size());
  out[0] = in[0];
  double prefix_sum = recursive ? out[0] : in[0];
  for (std::size_t t = 1; t < in.size(); ++t) {
    // Divisor is t+1 here because the spec's step index is 1-based: the sum
    // of the first t past values is divided by the current step number.
    out[t] = alpha * in[t] + (1.0 - alpha) * prefix_sum / static_cast<double>(t + 1);
    prefix_sum += recursive ? out[t] : in[t];
  }
  return Signal(std::move(out));
}

Signal mps(const Signal& s, double tau, bool recursive) {
  require(std::isfinite(tau) && tau >= 0.0 && tau <= 1.0,
          "mps requires tau in [0,1]");
  const auto& in = s.samples();
  std::vector<double> out(in.size());
  out[0] = in[0];
  for (std::size_t t = 1; t < in.size(); ++t) {
    const double prev = recursive ? out[t - 1] : in[t - 1];
    out[t] = (prev < tau && in[t] > prev) ? (prev + in[t]) / 2.0 : in[t];
  }
  return Signal(std::move(out));
}

Signal gs(const Signal& s, double tau, double epsilon, bool recursive) {
  require(std::isfinite(tau) && tau >= 0.0 && tau <= 1.0,
          "gs requires tau in [0,1]");
  require(std::isfinite(epsilon) && epsilon >= 0.0, "gs requires epsilon >= 0");
  require(tau + epsilon <= 1.0, "gs requires tau + epsilon <= 1");
  const auto& in = s.samples();
  std::vector<double> out(in.size());
  out[0] = in[0];
  const double cap = tau + epsilon;
  for (std::size_t t = 1; t < in.size(); ++t) {
    const double prev = recursive ? out[t - 1] : in[t - 1];
    out[t] = (prev < tau && in[t] > cap) ? cap : in[t];
  }
  return Signal(std::move(out));
}

Signal apply(const Signal& s, const ReshapeParams& p) {
  p.validate();
  switch (p.strategy) {
    case Strategy::cms: return cms(s, p.delta, p.recursive);
    case Strategy::eds: return eds(s, p.alpha, p.recursive);
    case Strategy::mps: return mps(s, p.tau, p.recursive);
    case Strategy::gs: return gs(s, p.tau, p.epsilon, p.recursive);
    case Strategy::identity: return s;
  }
  throw Error(ErrorKind::internal, "unhandled strategy");
}

}  // namespace stlcalib
