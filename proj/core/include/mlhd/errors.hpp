// mlhd/errors.hpp

// Copyright 2026  The MLHD authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MLHD_ERRORS_HPP_
#define MLHD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mlhd {

/// Base class of all library exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, empty inputs, bad indices.
struct InputError : Error {
  using Error::Error;
};

/// Inconsistent configuration (e.g. bound ordering, nonpositive weights).
struct ConfigError : Error {
  using Error::Error;
};

/// Unreadable or inconsistent data: parse failures, protocol shortfalls.
struct DataError : Error {
  using Error::Error;
};

/// Model file violations: bad magic, version mismatch, truncated payload.
struct FormatError : DataError {
  using DataError::DataError;
};

/// Numerical breakdown: singular matrices, lost positive definiteness,
/// divergent iterations.
struct NumericalError : Error {
  using Error::Error;
};

/// Operation not defined for the given model variant.
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace mlhd

#endif  // MLHD_ERRORS_HPP_
