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

#include <stdexcept>
#include <string>

namespace stlcalib {

enum class ErrorKind {
  invalid_argument,  // bad parameter or violated precondition
  parse,             // malformed input text (dataset record, formula DSL)
  eval,              // formula undefined on the given signal (empty window)
  io,                // file system failure
  internal           // broken invariant; a bug, not a user error
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the offset (0-based character position or 1-based
/// line, depending on the producer) where it was detected.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position)
      : Error(ErrorKind::parse, std::move(message)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace stlcalib
