// Copyright 2026 The arealaw Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace arealaw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured combination limit.
class CombinatorialLimitError : public Error {
 public:
  using Error::Error;
};

/// A dimension or resource guard was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Transport instance cannot be realized with local pair creation.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure (invalid flow decomposition, failed
/// certificate). Signals a bug rather than bad input.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver or factorization failure.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace arealaw
