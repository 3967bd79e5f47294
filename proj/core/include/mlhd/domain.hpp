// mlhd/domain.hpp
//
// Data model for metric learning across two heterogeneous domains: sample
// containers, the concatenated pair vector z = [x; -y], squared distances
// z'Mz under a PSD block metric M, the linear mean-discrepancy statistic,
// LogDet divergences, cross-domain pair constraints and the common-space
// embedding used for visualization.

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

#ifndef MLHD_DOMAIN_HPP_
#define MLHD_DOMAIN_HPP_

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "mlhd/linalg.hpp"

namespace mlhd {

/// One domain's samples: a dim x N matrix with one column per sample.
/// Labels, when present, align with the first labeled_count() columns;
/// the remaining columns are unlabeled.
class DomainData {
 public:
  DomainData(Eigen::MatrixXd samples, std::vector<int> labels);

  int dim() const { return static_cast<int>(samples_.rows()); }
  int count() const { return static_cast<int>(samples_.cols()); }
  int labeled_count() const { return static_cast<int>(labels_.size()); }

  const Eigen::MatrixXd& samples() const { return samples_; }
  Eigen::VectorXd sample(int i) const { return samples_.col(i); }
  int label(int i) const;
  const std::vector<int>& labels() const { return labels_; }

  /// Distinct labels in ascending order.
  std::vector<int> label_vocabulary() const;

 private:
  Eigen::MatrixXd samples_;
  std::vector<int> labels_;
};

/// The learned metric over the concatenated (dim_x + dim_y)-space.
struct MetricModel {
  int dim_x = 0;
  int dim_y = 0;
  SymMatrix m;

  MetricModel(int dx, int dy, SymMatrix matrix);
  static MetricModel Identity(int dx, int dy);
};

enum class PairRelation { kSame, kDifferent };

/// Which side of the slack the squared distance is bounded by.
enum class BoundSide { kUpper, kLower };

struct PairConstraint {
  int source_index = 0;  // into the labeled source columns
  int target_index = 0;  // into the labeled target columns
  PairRelation relation = PairRelation::kSame;
  BoundSide bound = BoundSide::kUpper;
  int slack_index = 0;
};

struct ConstraintSet {
  std::vector<PairConstraint> constraints;
  Eigen::VectorXd xi0;  // per-constraint slack initialization, all > 0
  double u = 0.0;       // same-class bound (small)
  double l = 0.0;       // different-class bound (large), u < l
};

/// As printed, the source model bounds same-class distances from below;
/// the slack initialization text and the stated goal (same class close,
/// different far) require the opposite. kCorrected applies
/// same -> upper(u), different -> lower(l); kLiteral keeps the printed
/// directions (same -> lower(l), different -> upper(u)) for auditing.
enum class ConstraintDirection { kCorrected, kLiteral };

/// z = [x; -y].
Eigen::VectorXd make_z(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// z'Mz, clamped into [0, inf) against -1e-9 rounding.
double squared_distance(const MetricModel& model, const Eigen::VectorXd& z);

/// Concatenation of the source sample mean and the negated target sample
/// mean; every sample of each domain contributes, labeled or not.
Eigen::VectorXd mmd_vector(const DomainData& x, const DomainData& y);

/// zbar' M zbar, clamped at 0.
double mmd_sq(const MetricModel& model, const Eigen::VectorXd& zbar);

/// tr(M M0^-1) - log det(M M0^-1) - order. Nonnegative; zero iff M == M0.
double logdet_div_matrix(const SymMatrix& m, const SymMatrix& m0);

/// Diagonal-matrix specialization: sum_i (v_i/v0_i - log(v_i/v0_i) - 1).
double logdet_div_vector(const Eigen::VectorXd& v, const Eigen::VectorXd& v0);

/// One constraint per (labeled source, labeled target) pair. Requires
/// 0 < u < l.
ConstraintSet build_constraints(
    const DomainData& x, const DomainData& y, double u, double l,
    ConstraintDirection direction = ConstraintDirection::kCorrected);

/// Percentile bounds of the initial squared distances {z'z} over all
/// labeled cross-domain pairs. Degenerate spreads are forced apart:
/// u <- max(u, tiny), l <- u * (1 + 1e-6) when l <= u.
std::pair<double, double> estimate_bounds(const DomainData& x,
                                          const DomainData& y,
                                          double p_low = 5.0,
                                          double p_high = 95.0);

/// Linear interpolation percentile (rank p/100 * (n-1)) of arbitrary data.
double percentile(std::vector<double> values, double p);

/// Per-domain factors of a rank-d_c factorization M ~ W W' with
/// W = V_dc * sqrt(S_dc); wx holds the first dim_x rows. Intended for
/// plotting; requires the top d_c eigenvalues to be positive.
struct CommonSpaceEmbedding {
  Eigen::MatrixXd wx;  // dim_x x d_c
  Eigen::MatrixXd wy;  // dim_y x d_c
};

CommonSpaceEmbedding embed_common_space(const MetricModel& model, int d_c);

}  // namespace mlhd

#endif  // MLHD_DOMAIN_HPP_
