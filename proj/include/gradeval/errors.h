/*
 * Copyright 2026 The gradeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GRADEVAL_ERRORS_H_
#define GRADEVAL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace gradeval {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors tied to a location in an input file. `line()` is 1-based; 0 when
// no line applies. `source()` is the file path once a loader attaches it.
class LocatedError : public Error {
 public:
  LocatedError(std::string source, std::size_t line, std::string detail)
      : Error(Format(source, line, detail)),
        source_(std::move(source)),
        line_(line),
        detail_(std::move(detail)) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  static std::string Format(const std::string& source, std::size_t line,
                            const std::string& detail) {
    std::string out;
    if (!source.empty()) out += source + ": ";
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    return out + detail;
  }

  std::string source_;
  std::size_t line_;
  std::string detail_;
};

// Malformed input text.
class ParseError : public LocatedError {
 public:
  ParseError(std::size_t line, std::string detail)
      : LocatedError("", line, std::move(detail)) {}
  ParseError(std::string source, std::size_t line, std::string detail)
      : LocatedError(std::move(source), line, std::move(detail)) {}
};

// Well-formed input that violates a domain invariant.
class ValidationError : public LocatedError {
 public:
  explicit ValidationError(std::string detail)
      : LocatedError("", 0, std::move(detail)) {}
  ValidationError(std::size_t line, std::string detail)
      : LocatedError("", line, std::move(detail)) {}
  ValidationError(std::string source, std::size_t line, std::string detail)
      : LocatedError(std::move(source), line, std::move(detail)) {}
};

// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gradeval

#endif  // GRADEVAL_ERRORS_H_
