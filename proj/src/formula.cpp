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

#include "stlcalib/formula.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "stlcalib/errors.hpp"

namespace stlcalib {

namespace {

using Node = Formula::Node;
using NodePtr = Formula::NodePtr;
using Kind = Formula::Kind;

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

void require_finite(double k) {
  if (!std::isfinite(k)) {
    throw Error(ErrorKind::invalid_argument, "formula constant must be finite");
  }
}

void require_window(int lo, int hi) {
  if (lo < 0) {
    throw Error(ErrorKind::invalid_argument,
                "temporal lower bound must be >= 0, got " + std::to_string(lo));
  }
  if (hi != Formula::kEnd && hi < lo) {
    throw Error(ErrorKind::invalid_argument,
                "malformed interval: lower bound " + std::to_string(lo) +
                    " exceeds upper bound " + std::to_string(hi));
  }
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool is_binary(const Node& n) {
  return n.kind == Kind::conjunction || n.kind == Kind::disjunction;
}

void print_node(const Node& n, std::string& out);

void print_operand(const Node& n, std::string& out) {
  // and/or chains are flat and left-associative, so only binary nodes in a
  // term position (right operand, not-child) need explicit parentheses.
  if (is_binary(n)) {
    out += '(';
    print_node(n, out);
    out += ')';
  } else {
    print_node(n, out);
  }
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::sig_cmp:
      out += n.cmp == SigComparator::greater ? "sig > " : "sig >= ";
      out += format_double(n.constant);
      return;
    case Kind::delta_ge:
      out += "delta >= ";
      out += format_double(n.constant);
      return;
    case Kind::abs_delta_le:
      out += "|delta| <= ";
      out += format_double(n.constant);
      return;
    case Kind::negation:
      out += "not ";
      print_operand(*n.left, out);
      return;
    case Kind::conjunction:
    case Kind::disjunction:
      print_node(*n.left, out);
      out += n.kind == Kind::conjunction ? " and " : " or ";
      print_operand(*n.right, out);
      return;
    case Kind::always:
    case Kind::eventually:
      out += n.kind == Kind::always ? 'G' : 'F';
      out += '[';
      out += std::to_string(n.lo);
      out += ',';
      out += n.hi == Formula::kEnd ? "END" : std::to_string(n.hi);
      out += "](";
      print_node(*n.left, out);
      out += ')';
      return;
  }
  throw Error(ErrorKind::internal, "unhandled formula node kind");
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::sig_cmp:
      return a.cmp == b.cmp && a.constant == b.constant;
    case Kind::delta_ge:
    case Kind::abs_delta_le:
      return a.constant == b.constant;
    case Kind::negation:
      return nodes_equal(*a.left, *b.left);
    case Kind::conjunction:
    case Kind::disjunction:
      return nodes_equal(*a.left, *b.left) && nodes_equal(*a.right, *b.right);
    case Kind::always:
    case Kind::eventually:
      return a.lo == b.lo && a.hi == b.hi && nodes_equal(*a.left, *b.left);
  }
  return false;
}

// Recursive-descent parser over the raw character stream. Keywords are
// whole words; whitespace is insignificant everywhere.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr f = parse_chain();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("expected end of input, 'and' or 'or'");
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    std::string found =
        pos_ < text_.size()
            ? "'" + std::string(1, text_[pos_]) + "'"
            : std::string("end of input");
    throw ParseError("syntax error at position " + std::to_string(pos_) +
                         ": expected " + expected + ", found " + found,
                     pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Reads the identifier starting at the cursor, empty if none.
  std::string_view peek_word() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && is_word_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  bool consume_word(std::string_view word) {
    if (peek_word() == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  bool consume_symbol(std::string_view sym) {
    skip_ws();
    if (text_.substr(pos_, sym.size()) == sym) {
      pos_ += sym.size();
      return true;
    }
    return false;
  }

  void expect_symbol(std::string_view sym) {
    if (!consume_symbol(sym)) fail("'" + std::string(sym) + "'");
  }

  double parse_number() {
    skip_ws();
    double value = 0.0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (res.ec != std::errc() || !std::isfinite(value)) {
      fail("a number");
    }
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return value;
  }

  int parse_bound() {
    if (consume_word("END")) return Formula::kEnd;
    skip_ws();
    int value = 0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (res.ec != std::errc() || value < 0) {
      fail("a non-negative integer or END");
    }
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return value;
  }

  NodePtr parse_chain() {
    NodePtr left = parse_term();
    for (;;) {
      skip_ws();
      if (consume_word("and")) {
        left = make_node({.kind = Kind::conjunction, .left = left, .right = parse_term()});
      } else if (consume_word("or")) {
        left = make_node({.kind = Kind::disjunction, .left = left, .right = parse_term()});
      } else {
        return left;
      }
    }
  }

  NodePtr parse_term() {
    skip_ws();
    if (consume_word("not")) {
      return make_node({.kind = Kind::negation, .left = parse_term()});
    }
    if (consume_symbol("(")) {
      NodePtr f = parse_chain();
      expect_symbol(")");
      return f;
    }
    std::string_view word = peek_word();
    if (word == "G" || word == "F") {
      return parse_temporal(word == "G" ? Kind::always : Kind::eventually);
    }
    if (word == "sig") return parse_sig_pred();
    if (word == "delta") return parse_delta_pred();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '|') return parse_abs_delta_pred();
    fail("'not', '(', 'G', 'F', 'sig', 'delta' or '|delta|'");
  }

  NodePtr parse_temporal(Kind kind) {
    std::size_t word_pos = pos_;
    pos_ += 1;  // the G/F itself
    expect_symbol("[");
    std::size_t lo_pos = pos_;
    int lo = parse_bound();
    if (lo == Formula::kEnd) {
      pos_ = lo_pos;
      fail("an integer lower bound");
    }
    expect_symbol(",");
    int hi = parse_bound();
    expect_symbol("]");
    if (hi != Formula::kEnd && hi < lo) {
      throw ParseError("malformed interval at position " +
                           std::to_string(word_pos) + ": lower bound " +
                           std::to_string(lo) + " exceeds upper bound " +
                           std::to_string(hi),
                       word_pos);
    }
    expect_symbol("(");
    NodePtr body = parse_chain();
    expect_symbol(")");
    return make_node({.kind = kind, .lo = lo, .hi = hi, .left = body});
  }

  NodePtr parse_sig_pred() {
    consume_word("sig");
    SigComparator cmp;
    if (consume_symbol(">=")) {
      cmp = SigComparator::greater_equal;
    } else if (consume_symbol(">")) {
      cmp = SigComparator::greater;
    } else {
      fail("'>' or '>='");
    }
    return make_node({.kind = Kind::sig_cmp, .cmp = cmp, .constant = parse_number()});
  }

  NodePtr parse_delta_pred() {
    consume_word("delta");
    if (!consume_symbol(">=")) fail("'>='");
    return make_node({.kind = Kind::delta_ge, .constant = parse_number()});
  }

  NodePtr parse_abs_delta_pred() {
    expect_symbol("|");
    if (!consume_word("delta")) fail("'delta'");
    expect_symbol("|");
    if (!consume_symbol("<=")) fail("'<='");
    return make_node({.kind = Kind::abs_delta_le, .constant = parse_number()});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula Formula::sig_gt(double k) {
  require_finite(k);
  return Formula(make_node({.kind = Kind::sig_cmp, .cmp = SigComparator::greater, .constant = k}));
}

Formula Formula::sig_ge(double k) {
  require_finite(k);
  return Formula(make_node(
      {.kind = Kind::sig_cmp, .cmp = SigComparator::greater_equal, .constant = k}));
}

Formula Formula::delta_ge(double k) {
  require_finite(k);
  return Formula(make_node({.kind = Kind::delta_ge, .constant = k}));
}

Formula Formula::abs_delta_le(double k) {
  require_finite(k);
  return Formula(make_node({.kind = Kind::abs_delta_le, .constant = k}));
}

Formula Formula::negation(Formula f) {
  return Formula(make_node({.kind = Kind::negation, .left = std::move(f.root_)}));
}

Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(make_node(
      {.kind = Kind::conjunction, .left = std::move(a.root_), .right = std::move(b.root_)}));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(make_node(
      {.kind = Kind::disjunction, .left = std::move(a.root_), .right = std::move(b.root_)}));
}

Formula Formula::always(int lo, int hi, Formula body) {
  require_window(lo, hi);
  return Formula(make_node({.kind = Kind::always, .lo = lo, .hi = hi, .left = std::move(body.root_)}));
}

Formula Formula::eventually(int lo, int hi, Formula body) {
  require_window(lo, hi);
  return Formula(
      make_node({.kind = Kind::eventually, .lo = lo, .hi = hi, .left = std::move(body.root_)}));
}

bool operator==(const Formula& a, const Formula& b) {
  return nodes_equal(*a.root_, *b.root_);
}

Formula parse_formula(std::string_view text) {
  Parser parser(text);
  return Formula(parser.parse());
}

std::string pretty_print(const Formula& f) {
  std::string out;
  print_node(f.root(), out);
  return out;
}

Formula stl1(double tau, int lo, int hi) {
  if (!std::isfinite(tau) || tau < 0.0 || tau > 1.0) {
    throw Error(ErrorKind::invalid_argument, "stl1 requires tau in [0,1]");
  }
  return Formula::eventually(lo, hi, Formula::sig_gt(tau));
}

Formula stl2(double epsilon, int lo, int hi) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw Error(ErrorKind::invalid_argument, "stl2 requires epsilon >= 0");
  }
  return Formula::always(lo, hi, Formula::delta_ge(-epsilon));
}

Formula stl3(double delta, int lo, int hi) {
  if (!std::isfinite(delta) || delta < 0.0) {
    throw Error(ErrorKind::invalid_argument, "stl3 requires delta >= 0");
  }
  return Formula::always(lo, hi, Formula::abs_delta_le(delta));
}

}  // namespace stlcalib
