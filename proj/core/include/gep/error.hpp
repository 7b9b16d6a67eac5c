// Copyright 2026 The gep-tsa Authors
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

namespace gep {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates the documented invariants of its type or the
// precondition of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An LpProblem, solution or schedule does not have the expected shape
// (missing variable, duplicate tag, dimension mismatch, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// External input (CSV, JSON) could not be parsed or validated.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// A quantity is mathematically undefined for the given arguments.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The solver could not continue for numerical reasons.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace gep
