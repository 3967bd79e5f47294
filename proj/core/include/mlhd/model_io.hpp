// mlhd/model_io.hpp
//
// Versioned text persistence for linear and kernelized models. Values are
// printed with 17 significant digits, so a load reproduces the saved
// model's distances bit-exactly.

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

#ifndef MLHD_MODEL_IO_HPP_
#define MLHD_MODEL_IO_HPP_

#include <string>
#include <variant>

#include "mlhd/kernel.hpp"

namespace mlhd {

using AnyModel = std::variant<MetricModel, KernelModel>;

inline constexpr int kModelFormatVersion = 1;

/// "linear" or "kernelized".
std::string model_kind(const AnyModel& model);

void save_model(const std::string& path, const AnyModel& model);

/// Throws FormatError on bad magic, version mismatch or truncation; never
/// returns a partially populated model.
AnyModel load_model(const std::string& path);

}  // namespace mlhd

#endif  // MLHD_MODEL_IO_HPP_
