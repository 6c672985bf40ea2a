// Copyright 2026 The dasv Authors.
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

#ifndef DASV_ERRORS_H_
#define DASV_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dasv {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated an operation's precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A scenario or run configuration is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A coalition plan is malformed or does not type-check against the tables.
class PlanError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed one of its configured size caps.
class CostError : public Error {
 public:
  using Error::Error;
};

// Input text (CSV, JSON, rationals) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A metric is undefined for its inputs (e.g. zero denominator).
class MetricError : public Error {
 public:
  using Error::Error;
};

// A deadline expired before the computation finished.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace dasv

#endif  // DASV_ERRORS_H_
