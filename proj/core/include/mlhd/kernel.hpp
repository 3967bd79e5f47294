// mlhd/kernel.hpp
//
// Kernelized variant: the metric is learned as an (N_x+N_y)-order PSD
// matrix L over the block-diagonal Gram matrix K = blkdiag(K_x, K_y),
// with pair vectors K^{1/2} e_ij standing in for the concatenated sample
// vectors. Out-of-sample pairs are scored by the algebraic substitution
// M* = Q K^{-1/2} L K^{-1/2} Q': with c the raw kernel response vector of
// a query pair, d^2 = (K^{-1/2} c)' L (K^{-1/2} c). The square-root
// factor used for training vectors is derived from the cached inverse
// root (K^{1/2} := (K + ridge I)^{-1/2} K) so training and out-of-sample
// evaluations share one map; near-null Gram directions then contribute
// nothing rather than 1/sqrt(ridge) noise.

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

#ifndef MLHD_KERNEL_HPP_
#define MLHD_KERNEL_HPP_

#include <Eigen/Core>
#include <utility>

#include "mlhd/solver.hpp"

namespace mlhd {

enum class KernelKind { kLinear, kRbf };

struct KernelSpec {
  KernelKind kind = KernelKind::kLinear;
  double gamma = 0.0;  // RBF width; <= 0 requests the median heuristic

  static KernelSpec Linear() { return {KernelKind::kLinear, 0.0}; }
  static KernelSpec Rbf(double gamma = 0.0) { return {KernelKind::kRbf, gamma}; }
};

/// Gram matrix with entries k(a_i, b_j); columns of a and b are samples.
/// LINEAR: a_i' b_j. RBF: exp(-gamma ||a_i - b_j||^2), gamma > 0 required.
Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a,
                     const Eigen::MatrixXd& b);

/// 1 / median of the pairwise squared distances between distinct columns;
/// the usual RBF width heuristic. Falls back to 1 on degenerate data.
double median_sq_dist_gamma(const Eigen::MatrixXd& samples);

/// blkdiag(kx, ky); both inputs must be square and symmetric.
SymMatrix build_block_kernel(const Eigen::MatrixXd& kx,
                             const Eigen::MatrixXd& ky);

/// k_sqrt * e_ij where e_ij carries +1 at source slot i and -1 at target
/// slot n_x + j.
Eigen::VectorXd constraint_vector(const SymMatrix& k_sqrt, int i, int j,
                                  int n_x, int n_y);

/// k_sqrt * ebar with ebar = [1/n_x ... ; -1/n_y ...].
Eigen::VectorXd mmd_constraint_vector(const SymMatrix& k_sqrt, int n_x,
                                      int n_y);

struct KernelModel {
  SymMatrix l{1};  // learned PSD matrix, order n_x + n_y
  KernelSpec spec_x, spec_y;       // resolved (gamma filled in)
  Eigen::MatrixXd train_x, train_y;
  Eigen::MatrixXd k_inv_sqrt_x, k_inv_sqrt_y;  // cached (K + ridge I)^{-1/2}
  double ridge_x = 0.0, ridge_y = 0.0;

  int n_x() const { return static_cast<int>(train_x.cols()); }
  int n_y() const { return static_cast<int>(train_y.cols()); }
  int dim_x() const { return static_cast<int>(train_x.rows()); }
  int dim_y() const { return static_cast<int>(train_y.rows()); }
};

/// Kernelized fit: identical cyclic solve with L in place of M and
/// K^{1/2}-mapped indicator vectors in place of the pair vectors.
/// ridge < 0 requests the default 1e-8 * trace(K_block) / order per
/// block.
std::pair<KernelModel, FitReport> fit_kernelized(
    const DomainData& x, const DomainData& y, const ConstraintSet& cs,
    const SolverConfig& config, const KernelSpec& spec_x,
    const KernelSpec& spec_y, double ridge = -1.0);

/// Squared cross-domain distance for arbitrary query points.
double cross_distance_oos(const KernelModel& model,
                          const Eigen::VectorXd& x_new,
                          const Eigen::VectorXd& y_new);

/// Squared distance between two target-domain points under the learned
/// metric (the target block of the implied M*).
double target_distance_oos(const KernelModel& model,
                           const Eigen::VectorXd& y_a,
                           const Eigen::VectorXd& y_b);

/// Materializes M* = Q K^{-1/2} L K^{-1/2} Q'. LINEAR kernels only.
MetricModel recover_M(const KernelModel& model);

}  // namespace mlhd

#endif  // MLHD_KERNEL_HPP_
