// Copyright 2026 The pairrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAIRRANK_ERRORS_H_
#define PAIRRANK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace pairrank {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Invalid data: broken invariants, unknown ids, out-of-range parameters.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error(message) {}
};

// Malformed input files (CSV, JSON, JSON-lines).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(message) {}
};

}  // namespace pairrank

#endif  // PAIRRANK_ERRORS_H_
