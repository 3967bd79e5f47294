// mlhd/baselines.hpp
//
// Comparison methods: regularized linear CCA (shared-subspace projection
// for the +NN and +ITML pipelines) and the ARC asymmetric similarity
// learner (Frobenius-regularized bilinear score with squared hinges).

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

#ifndef MLHD_BASELINES_HPP_
#define MLHD_BASELINES_HPP_

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "mlhd/domain.hpp"

namespace mlhd {

struct CcaModel {
  Eigen::MatrixXd proj_x;       // dim_x x d
  Eigen::MatrixXd proj_y;       // dim_y x d
  Eigen::VectorXd correlations; // descending, in [0, 1 + eps]
  Eigen::VectorXd mean_x, mean_y;

  Eigen::VectorXd map_x(const Eigen::VectorXd& x) const {
    return proj_x.transpose() * (x - mean_x);
  }
  Eigen::VectorXd map_y(const Eigen::VectorXd& y) const {
    return proj_y.transpose() * (y - mean_y);
  }
};

/// Canonical correlation on column-paired samples, whitened through the
/// ridged within-domain covariances. ridge < 0 requests the default
/// 1e-3 * trace(covariance) per side; an explicit value applies to both.
/// Component signs are fixed so that the largest-magnitude entry of each
/// source direction is positive.
CcaModel fit_cca(const Eigen::MatrixXd& x_paired,
                 const Eigen::MatrixXd& y_paired, int d, double ridge = -1.0);

struct ArcModel {
  Eigen::MatrixXd w;  // dim_x x dim_y
  double lambda = 0.0;
  double u = 0.0;  // similarity ceiling for different-class pairs
  double l = 0.0;  // similarity floor for same-class pairs
};

struct ArcFitReport {
  int steps_run = 0;
  double final_objective = 0.0;
  std::vector<double> objective_trace;  // value after every step
};

/// ||W||_F^2 + lambda * (sum_same max(0, l - x'Wy)^2
///                       + sum_diff max(0, x'Wy - u)^2).
double arc_objective(const Eigen::MatrixXd& w, const DomainData& x,
                     const DomainData& y, const ConstraintSet& cs,
                     double lambda, double u, double l);

/// Exact gradient of arc_objective (the objective is smooth).
Eigen::MatrixXd arc_gradient(const Eigen::MatrixXd& w, const DomainData& x,
                             const DomainData& y, const ConstraintSet& cs,
                             double lambda, double u, double l);

/// Full-batch gradient descent from W = 0 with a fixed step budget.
/// With backtracking the step is halved until the objective does not
/// increase; without it a divergent objective raises NumericalError.
std::pair<ArcModel, ArcFitReport> fit_arc(const DomainData& x,
                                          const DomainData& y,
                                          const ConstraintSet& cs,
                                          double lambda, double u, double l,
                                          int steps, double rate,
                                          bool backtracking = true);

/// x' W y; larger means more similar.
double arc_similarity(const ArcModel& model, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& y);

}  // namespace mlhd

#endif  // MLHD_BASELINES_HPP_
