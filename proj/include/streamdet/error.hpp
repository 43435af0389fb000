// Copyright 2026 The Streamdet Authors
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

namespace streamdet {

// Base type for all library errors. The CLI maps subtypes to exit codes:
// ContractViolation-like errors exit 1, I/O and configuration errors exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller handed in data that violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A stateful sequence was driven out of contract (e.g. slices out of order).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A metric was requested that is undefined for the given data
// (e.g. average precision with zero ground truths).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

// Scene generation could not place an object within the attempt budget.
class PlacementError : public Error {
 public:
  using Error::Error;
};

// File could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace streamdet
