// mlhd/evaluation.hpp
//
// Cross-domain nearest-neighbor evaluation: seeded trial splits, k-NN
// classification against a labeled reference set, per-method accuracy
// aggregation (mean and standard deviation over trials) and the
// lambda1/lambda2 accuracy surface.
//
// Determinism contract: (protocol seed, trial index) fully determines the
// split; all methods evaluated within one trial share it, so comparisons
// are paired.

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

#ifndef MLHD_EVALUATION_HPP_
#define MLHD_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mlhd/baselines.hpp"
#include "mlhd/kernel.hpp"

namespace mlhd {

inline constexpr int kAllRemaining = -1;

struct TrialProtocol {
  int n_source_labeled_per_class = 20;
  int n_target_labeled_per_class = 1;
  int n_target_unlabeled_per_class = 20;
  int n_test = kAllRemaining;
  int n_trials = 10;
  std::uint64_t seed = 0;
};

enum class MethodId { kMlhd, kArc, kCcaNn, kCcaItml };

std::string method_name(MethodId id);
MethodId method_from_name(const std::string& name);

/// Everything a method may tune. Fields outside a method's scope are
/// ignored by it.
struct MethodHyper {
  SolverConfig solver;

  // mlhd
  bool kernelized = false;
  KernelSpec spec_x = KernelSpec::Linear();
  KernelSpec spec_y = KernelSpec::Linear();
  double kernel_ridge = -1.0;
  double u = -1.0, l = -1.0;  // <= 0: estimate from percentiles below
  double p_low = 5.0, p_high = 95.0;
  ConstraintDirection direction = ConstraintDirection::kCorrected;

  // cca-nn / cca-itml
  int cca_dim = 0;  // 0: min(dim_x, dim_y)
  double cca_ridge = -1.0;

  // arc (similarity floor l > ceiling u)
  double arc_lambda = 1.0;
  double arc_u = -1.0;
  double arc_l = 1.0;
  int arc_steps = 300;
  double arc_rate = 1e-3;

  // classification
  int k = 1;
  bool refs_include_target = true;
};

struct ExperimentResult {
  std::vector<double> per_trial_accuracy;
  double mean = 0.0;
  double stddev = 0.0;
  std::string method_name;
  std::string config_snapshot;
};

/// Deterministic seed stream: mixes a base seed with an index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Population (or sample) mean and standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& values,
                                   bool population = true);

struct TrialSplit {
  std::vector<int> source_labeled;
  std::vector<int> target_labeled;
  std::vector<int> target_unlabeled;
  std::vector<int> test;

  std::uint64_t hash() const;
};

/// Seeded per-class sampling of the trial sets. Pools must be fully
/// labeled; throws DataError naming the class when a pool cannot supply
/// the per-class counts. Training samples never enter the test set.
TrialSplit sample_split(const DomainData& x_pool, const DomainData& y_pool,
                        const TrialProtocol& protocol,
                        std::uint64_t trial_seed);

/// k-NN over an abstract distance: majority label among the k nearest
/// references, ties broken by the smaller summed distance, then the lower
/// class id. distance(q, r) must be valid for q in [0, n_queries) and
/// r in [0, ref_labels.size()).
std::vector<int> knn_classify(
    const std::function<double(int, int)>& distance,
    const std::vector<int>& ref_labels, int n_queries, int k);

/// A trained per-trial scorer: its own reference-label list and a
/// distance to each query (smaller = closer).
struct TrialScorer {
  std::vector<int> ref_labels;
  std::function<double(int q, int r)> distance;
};

/// Per-trial training context handed to scorer factories.
struct TrialContext {
  const DomainData* x_pool;
  const DomainData* y_pool;
  TrialSplit split;
  DomainData x_train;  // labeled source samples
  DomainData y_train;  // labeled target columns first, then unlabeled
  std::uint64_t method_seed;

  Eigen::VectorXd query(int q) const;
  int query_label(int q) const;
  int n_queries() const { return static_cast<int>(split.test.size()); }
};

using ScorerFactory = std::function<TrialScorer(const TrialContext&)>;

/// One seeded trial with a custom scorer; returns test accuracy.
double run_trial(const DomainData& x_pool, const DomainData& y_pool,
                 const TrialProtocol& protocol, const ScorerFactory& factory,
                 int k, std::uint64_t trial_seed);

/// One seeded trial of a named method.
double run_trial(const DomainData& x_pool, const DomainData& y_pool,
                 const TrialProtocol& protocol, MethodId method,
                 const MethodHyper& hyper, std::uint64_t trial_seed);

/// n_trials per method with derived per-trial seeds; splits are shared
/// across methods within each trial.
std::vector<ExperimentResult> run_experiment(const DomainData& x_pool,
                                             const DomainData& y_pool,
                                             const TrialProtocol& protocol,
                                             const std::vector<MethodId>& methods,
                                             const MethodHyper& hyper);

struct SweepCell {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  ExperimentResult result;
};

/// Accuracy surface of the main method over the (lambda1, lambda2) grid.
std::vector<SweepCell> param_sweep(const DomainData& x_pool,
                                   const DomainData& y_pool,
                                   const TrialProtocol& protocol,
                                   const std::vector<double>& grid_l1,
                                   const std::vector<double>& grid_l2,
                                   const MethodHyper& base_hyper);

}  // namespace mlhd

#endif  // MLHD_EVALUATION_HPP_
