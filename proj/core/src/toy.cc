// mlhd/toy.cc

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

#include "mlhd/toy.hpp"

#include <random>
#include <sstream>

namespace mlhd {

void ToySpec::validate() const {
  if (n_labeled_source_per_class < 1 || n_unlabeled_target_per_class < 1 ||
      n_labeled_target_per_class < 1)
    throw ConfigError("ToySpec: per-class counts must be >= 1");
  if (bias_shift.size() != 0 && bias_shift.size() != toy_constants::kTargetDim)
    throw ConfigError("ToySpec: bias_shift must have the target dimension");
}

Eigen::VectorXd ToySpec::resolved_bias() const {
  if (bias_shift.size() == toy_constants::kTargetDim) return bias_shift;
  Eigen::VectorXd b(toy_constants::kTargetDim);
  for (int i = 0; i < toy_constants::kTargetDim; ++i)
    b[i] = toy_constants::kDefaultBias[i];
  return b;
}

namespace {

Eigen::VectorXd Draw(std::mt19937_64& rng, const double* mean, int dim,
                     double stddev, const Eigen::VectorXd* shift = nullptr) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = mean[i] + stddev * gauss(rng);
    if (shift) v[i] += (*shift)[i];
  }
  return v;
}

}  // namespace

ToyDataset gen_toy_dataset(const ToySpec& spec) {
  using namespace toy_constants;
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const Eigen::VectorXd bias = spec.resolved_bias();

  const int ns = spec.n_labeled_source_per_class;
  Eigen::MatrixXd src(kSourceDim, kNumClasses * ns);
  std::vector<int> src_labels(kNumClasses * ns);
  for (int cls = 0; cls < kNumClasses; ++cls)
    for (int i = 0; i < ns; ++i) {
      src.col(cls * ns + i) = Draw(rng, kSourceMeans[cls], kSourceDim,
                                   kSourceStddev);
      src_labels[cls * ns + i] = cls;
    }

  const int nl = spec.n_labeled_target_per_class;
  const int nu = spec.n_unlabeled_target_per_class;
  Eigen::MatrixXd tgt(kTargetDim, kNumClasses * (nl + nu));
  std::vector<int> tgt_labels(kNumClasses * nl);
  std::vector<int> truth(kNumClasses * (nl + nu));
  // Labeled block first: biased draws.
  for (int cls = 0; cls < kNumClasses; ++cls)
    for (int i = 0; i < nl; ++i) {
      const int col = cls * nl + i;
      tgt.col(col) = Draw(rng, kTargetMeans[cls], kTargetDim, kTargetStddev,
                          &bias);
      tgt_labels[col] = cls;
      truth[col] = cls;
    }
  for (int cls = 0; cls < kNumClasses; ++cls)
    for (int i = 0; i < nu; ++i) {
      const int col = kNumClasses * nl + cls * nu + i;
      tgt.col(col) = Draw(rng, kTargetMeans[cls], kTargetDim, kTargetStddev);
      truth[col] = cls;
    }

  return {DomainData(std::move(src), std::move(src_labels)),
          DomainData(std::move(tgt), std::move(tgt_labels)), std::move(truth)};
}

std::pair<DomainData, DomainData> gen_toy(const ToySpec& spec) {
  ToyDataset ds = gen_toy_dataset(spec);
  return {std::move(ds.source), std::move(ds.target)};
}

std::string toy_spec_description(const ToySpec& spec) {
  using namespace toy_constants;
  const Eigen::VectorXd bias = spec.resolved_bias();
  std::ostringstream os;
  os << "seed " << spec.seed << "\n"
     << "classes " << kNumClasses << "\n"
     << "source dim " << kSourceDim << ", " << spec.n_labeled_source_per_class
     << " labeled per class, stddev " << kSourceStddev << "\n";
  for (int c = 0; c < kNumClasses; ++c)
    os << "  source class " << c << " mean (" << kSourceMeans[c][0] << ", "
       << kSourceMeans[c][1] << ")\n";
  os << "target dim " << kTargetDim << ", " << spec.n_labeled_target_per_class
     << " labeled + " << spec.n_unlabeled_target_per_class
     << " unlabeled per class, stddev " << kTargetStddev << "\n";
  for (int c = 0; c < kNumClasses; ++c)
    os << "  target class " << c << " mean (" << kTargetMeans[c][0] << ", "
       << kTargetMeans[c][1] << ", " << kTargetMeans[c][2] << ")\n";
  os << "labeled-target bias shift (" << bias[0] << ", " << bias[1] << ", "
     << bias[2] << ")\n";
  return os.str();
}

}  // namespace mlhd
