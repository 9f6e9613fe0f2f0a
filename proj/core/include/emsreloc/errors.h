// Copyright 2026 The emsreloc Authors
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

#ifndef EMSRELOC_ERRORS_H_
#define EMSRELOC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace emsreloc {

// Base for every error the library throws. Infeasibility and validation
// findings are reported as data, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix or vector sizes disagree with the instance they are used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// r1 >= r2 passed where r1 < r2 is required.
class ThresholdOrderError : public Error {
 public:
  using Error::Error;
};

// Malformed input document. The message starts with the JSON path of the
// offending field, e.g. "points[3].d1: expected a number".
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the search space is too large.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

// A dynamics event that does not apply to the current fleet state.
class EventError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace emsreloc

#endif  // EMSRELOC_ERRORS_H_
