// mlhd/toy.hpp
//
// Synthetic two-class playground: a 2-D source domain and a 3-D target
// domain drawn from fixed Gaussians, with the target's few labeled
// samples deliberately drawn off-center so that methods ignoring the
// unlabeled mass misplace the classes.

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

#ifndef MLHD_TOY_HPP_
#define MLHD_TOY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mlhd/domain.hpp"

namespace mlhd {

namespace toy_constants {

inline constexpr int kSourceDim = 2;
inline constexpr int kTargetDim = 3;
inline constexpr int kNumClasses = 2;
inline constexpr double kSourceMeans[kNumClasses][kSourceDim] = {
    {0.0, 0.0}, {3.0, 0.5}};
inline constexpr double kTargetMeans[kNumClasses][kTargetDim] = {
    {0.0, 0.0, 0.0}, {0.5, 3.0, 1.0}};
inline constexpr double kSourceStddev = 1.0;
inline constexpr double kTargetStddev = 1.0;
// 1.5 standard deviations along the first target axis.
inline constexpr double kDefaultBias[kTargetDim] = {1.5, 0.0, 0.0};

}  // namespace toy_constants

struct ToySpec {
  std::uint64_t seed = 0;
  int n_labeled_source_per_class = 40;
  int n_unlabeled_target_per_class = 40;
  int n_labeled_target_per_class = 2;
  Eigen::VectorXd bias_shift;  // size 0 selects the default

  void validate() const;
  Eigen::VectorXd resolved_bias() const;
};

struct ToyDataset {
  DomainData source;               // fully labeled
  DomainData target;               // labeled block first (biased draws)
  std::vector<int> target_truth;   // ground truth for every target column
};

/// Full dataset including the ground truth of the unlabeled block.
ToyDataset gen_toy_dataset(const ToySpec& spec);

/// The training-form pair: labeled 2-D source, partially labeled 3-D
/// target whose labeled samples are drawn from the class Gaussians
/// shifted by the bias.
std::pair<DomainData, DomainData> gen_toy(const ToySpec& spec);

/// Human-readable dump of the generator constants and the given spec.
std::string toy_spec_description(const ToySpec& spec);

}  // namespace mlhd

#endif  // MLHD_TOY_HPP_
