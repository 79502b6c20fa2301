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

#include "stlcalib/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stlcalib/errors.hpp"

namespace stlcalib {

namespace {

using Node = Formula::Node;
using Kind = Formula::Kind;

// Closed range of steps where a node's value is defined. Temporal nodes are
// step-independent constants, so they are defined everywhere.
struct StepRange {
  int lo;
  int hi;
  bool empty() const { return lo > hi; }
};

StepRange node_domain(const Node& n, int length) {
  switch (n.kind) {
    case Kind::sig_cmp:
      return {1, length};
    case Kind::delta_ge:
    case Kind::abs_delta_le:
      return {2, length};
    case Kind::negation:
      return node_domain(*n.left, length);
    case Kind::conjunction:
    case Kind::disjunction: {
      StepRange a = node_domain(*n.left, length);
      StepRange b = node_domain(*n.right, length);
      return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
    case Kind::always:
    case Kind::eventually:
      return {1, length};
  }
  throw Error(ErrorKind::internal, "unhandled formula node kind");
}

double eval_at(const Node& n, const Signal& s, int t) {
  switch (n.kind) {
    case Kind::sig_cmp:
      return s.step(static_cast<std::size_t>(t)) - n.constant;
    case Kind::delta_ge:
      return s.delta(static_cast<std::size_t>(t)) - n.constant;
    case Kind::abs_delta_le:
      return n.constant - std::fabs(s.delta(static_cast<std::size_t>(t)));
    case Kind::negation:
      return -eval_at(*n.left, s, t);
    case Kind::conjunction:
      return std::min(eval_at(*n.left, s, t), eval_at(*n.right, s, t));
    case Kind::disjunction:
      return std::max(eval_at(*n.left, s, t), eval_at(*n.right, s, t));
    case Kind::always:
    case Kind::eventually: {
      const int length = static_cast<int>(s.size());
      const StepRange body = node_domain(*n.left, length);
      const int lo = std::max(n.lo, body.lo);
      const int hi = n.hi == Formula::kEnd ? body.hi : std::min(n.hi, body.hi);
      if (lo > hi) {
        if (body.lo == 2 && length < 2) {
          throw Error(ErrorKind::eval,
                      "no delta samples: a length-1 signal defines no "
                      "step-to-step differences");
        }
        throw Error(ErrorKind::eval,
                    "temporal window [" + std::to_string(n.lo) + "," +
                        (n.hi == Formula::kEnd ? std::string("END")
                                               : std::to_string(n.hi)) +
                        "] is empty after clipping to steps [" +
                        std::to_string(body.lo) + "," + std::to_string(body.hi) +
                        "]");
      }
      double acc = eval_at(*n.left, s, lo);
      for (int u = lo + 1; u <= hi; ++u) {
        const double v = eval_at(*n.left, s, u);
        acc = n.kind == Kind::always ? std::min(acc, v) : std::max(acc, v);
      }
      return acc;
    }
  }
  throw Error(ErrorKind::internal, "unhandled formula node kind");
}

}  // namespace

Robustness robustness(const Formula& f, const Signal& s) {
  const int length = static_cast<int>(s.size());
  const StepRange d = node_domain(f.root(), length);
  // The formula as a whole is evaluated at step 1.
  if (d.empty() || d.lo > 1) {
    throw Error(ErrorKind::eval,
                "formula is evaluated at step 1 where a delta predicate is "
                "undefined; wrap delta predicates in a temporal operator "
                "starting at step >= 2");
  }
  const double value = eval_at(f.root(), s, 1);
  return Robustness{value, value >= 0.0};
}

double score(const Formula& f, const Signal& s) {
  return std::clamp(robustness(f, s).value, 0.0, 1.0);
}

}  // namespace stlcalib
