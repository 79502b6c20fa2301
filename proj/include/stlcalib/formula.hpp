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

#include <memory>
#include <string>
#include <string_view>

namespace stlcalib {

/// Comparator of a `sig` predicate. Robustness is identical for both;
/// the parser keeps which one was written so printing round-trips.
enum class SigComparator { greater, greater_equal };

/// Immutable AST of a temporal specification over one signal.
///
/// Concrete syntax (whitespace-insensitive):
///
///   formula  := term (("and"|"or") term)*        -- left-associative chain
///   term     := "not" term | "(" formula ")" | temporal | pred
///   temporal := ("G"|"F") "[" bound "," bound "]" "(" formula ")"
///   bound    := integer | "END"
///   pred     := "sig" (">"|">=") number
///             | "delta" ">=" number
///             | "|delta|" "<=" number
///
/// Window bounds are 1-based step indices; END stands for the signal length.
/// `delta` refers to the step-to-step difference sig(t) - sig(t-1), which
/// exists for t >= 2 only.
class Formula {
 public:
  enum class Kind {
    sig_cmp,       // sig > k  /  sig >= k
    delta_ge,      // delta >= k
    abs_delta_le,  // |delta| <= k
    negation,
    conjunction,
    disjunction,
    always,        // G[lo,hi]
    eventually     // F[lo,hi]
  };

  /// Symbolic upper bound meaning "the last step of the signal".
  static constexpr int kEnd = -1;

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    SigComparator cmp = SigComparator::greater;  // sig_cmp only
    double constant = 0.0;                       // predicates only
    int lo = 0;                                  // temporal only
    int hi = kEnd;                               // temporal only; kEnd = END
    NodePtr left;                                // unary child / left operand
    NodePtr right;                               // right operand
  };

  // Builders. Each validates its node invariants (finite constants,
  // 0 <= lo <= hi) and throws Error(invalid_argument) on violation.
  static Formula sig_gt(double k);
  static Formula sig_ge(double k);
  static Formula delta_ge(double k);
  static Formula abs_delta_le(double k);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula always(int lo, int hi, Formula body);
  static Formula eventually(int lo, int hi, Formula body);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend Formula parse_formula(std::string_view text);

 private:
  explicit Formula(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

/// Parses the DSL above. Rejections carry a 0-based character position and
/// the expected tokens; see ParseError.
Formula parse_formula(std::string_view text);

/// Prints a formula in the same DSL such that
/// parse_formula(pretty_print(f)) == f for every valid AST.
std::string pretty_print(const Formula& f);

// Preset specifications, one per temporal property. Window defaults are the
// full trace: steps 1..END, or 2..END where the body is a delta predicate.
Formula stl1(double tau, int lo = 1, int hi = Formula::kEnd);     // F[lo,hi](sig > tau)
Formula stl2(double epsilon, int lo = 2, int hi = Formula::kEnd); // G[lo,hi](delta >= -epsilon)
Formula stl3(double delta, int lo = 2, int hi = Formula::kEnd);   // G[lo,hi](|delta| <= delta)

}  // namespace stlcalib
