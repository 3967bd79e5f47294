// mlhd/domain.cc

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

#include "mlhd/domain.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace mlhd {

DomainData::DomainData(Eigen::MatrixXd samples, std::vector<int> labels)
    : samples_(std::move(samples)), labels_(std::move(labels)) {
  if (samples_.cols() < 1) throw InputError("DomainData: no samples");
  if (samples_.rows() < 1) throw InputError("DomainData: zero dimension");
  if (static_cast<int>(labels_.size()) > samples_.cols())
    throw InputError("DomainData: more labels than samples");
  if (!samples_.allFinite())
    throw InputError("DomainData: non-finite sample entries");
}

int DomainData::label(int i) const {
  if (i < 0 || i >= labeled_count())
    throw InputError("DomainData::label: index " + std::to_string(i) +
                     " is not a labeled sample");
  return labels_[i];
}

std::vector<int> DomainData::label_vocabulary() const {
  std::set<int> vocab(labels_.begin(), labels_.end());
  return {vocab.begin(), vocab.end()};
}

MetricModel::MetricModel(int dx, int dy, SymMatrix matrix)
    : dim_x(dx), dim_y(dy), m(std::move(matrix)) {
  if (dx < 1 || dy < 1) throw InputError("MetricModel: dimensions must be >= 1");
  if (m.order() != dx + dy)
    throw InputError("MetricModel: matrix order does not match dim_x + dim_y");
}

MetricModel MetricModel::Identity(int dx, int dy) {
  return MetricModel(dx, dy, SymMatrix::Identity(dx + dy));
}

Eigen::VectorXd make_z(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd z(x.size() + y.size());
  z.head(x.size()) = x;
  z.tail(y.size()) = -y;
  return z;
}

double squared_distance(const MetricModel& model, const Eigen::VectorXd& z) {
  if (z.size() != model.m.order())
    throw InputError("squared_distance: z has wrong dimension");
  const double d = model.m.quad_form(z);
  if (d < -1e-9)
    throw NumericalError("squared_distance: quadratic form is negative (" +
                         std::to_string(d) + "); metric is not PSD");
  return std::max(d, 0.0);
}

Eigen::VectorXd mmd_vector(const DomainData& x, const DomainData& y) {
  return make_z(x.samples().rowwise().mean(), y.samples().rowwise().mean());
}

double mmd_sq(const MetricModel& model, const Eigen::VectorXd& zbar) {
  return squared_distance(model, zbar);
}

double logdet_div_matrix(const SymMatrix& m, const SymMatrix& m0) {
  if (m.order() != m0.order())
    throw InputError("logdet_div_matrix: order mismatch");
  // tr(M M0^-1) via the solve, log det via the difference of logdets.
  Eigen::LLT<Eigen::MatrixXd> llt(m0.dense());
  if (llt.info() != Eigen::Success)
    throw NumericalError("logdet_div_matrix: reference matrix is singular");
  const double tr = llt.solve(m.dense()).trace();
  const double div = tr - (logdet_psd(m) - logdet_psd(m0)) - m.order();
  return std::max(div, 0.0);
}

double logdet_div_vector(const Eigen::VectorXd& v, const Eigen::VectorXd& v0) {
  if (v.size() != v0.size())
    throw InputError("logdet_div_vector: length mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] <= 0.0 || v0[i] <= 0.0)
      throw InputError("logdet_div_vector: nonpositive entry at index " +
                       std::to_string(i));
    const double r = v[i] / v0[i];
    acc += r - std::log(r) - 1.0;
  }
  return acc;
}

ConstraintSet build_constraints(const DomainData& x, const DomainData& y,
                                double u, double l,
                                ConstraintDirection direction) {
  if (x.labeled_count() < 1 || y.labeled_count() < 1)
    throw InputError("build_constraints: both domains need labeled samples");
  if (!(0.0 < u && u < l))
    throw ConfigError("build_constraints: bounds must satisfy 0 < u < l");

  ConstraintSet cs;
  cs.u = u;
  cs.l = l;
  const int n = x.labeled_count() * y.labeled_count();
  cs.constraints.reserve(n);
  cs.xi0.resize(n);
  int slack = 0;
  for (int i = 0; i < x.labeled_count(); ++i) {
    for (int j = 0; j < y.labeled_count(); ++j) {
      PairConstraint c;
      c.source_index = i;
      c.target_index = j;
      c.relation = (x.label(i) == y.label(j)) ? PairRelation::kSame
                                              : PairRelation::kDifferent;
      const bool same = c.relation == PairRelation::kSame;
      if (direction == ConstraintDirection::kCorrected) {
        c.bound = same ? BoundSide::kUpper : BoundSide::kLower;
        cs.xi0[slack] = same ? u : l;
      } else {
        c.bound = same ? BoundSide::kLower : BoundSide::kUpper;
        cs.xi0[slack] = same ? l : u;
      }
      c.slack_index = slack++;
      cs.constraints.push_back(c);
    }
  }
  return cs;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("percentile: empty data");
  if (p < 0.0 || p > 100.0) throw InputError("percentile: p out of [0, 100]");
  std::sort(values.begin(), values.end());
  const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::pair<double, double> estimate_bounds(const DomainData& x,
                                          const DomainData& y, double p_low,
                                          double p_high) {
  if (x.labeled_count() < 1 || y.labeled_count() < 1)
    throw InputError("estimate_bounds: no labeled cross-domain pairs");
  if (!(0.0 < p_low && p_low < p_high && p_high < 100.0))
    throw ConfigError("estimate_bounds: need 0 < p_low < p_high < 100");

  std::vector<double> sq;
  sq.reserve(static_cast<std::size_t>(x.labeled_count()) * y.labeled_count());
  for (int i = 0; i < x.labeled_count(); ++i) {
    const double xx = x.sample(i).squaredNorm();
    for (int j = 0; j < y.labeled_count(); ++j)
      sq.push_back(xx + y.sample(j).squaredNorm());  // z'z with z = [x; -y]
  }
  double u = percentile(sq, p_low);
  double l = percentile(sq, p_high);
  if (u <= 0.0) u = 1e-12;
  if (l <= u) l = u * (1.0 + 1e-6);
  return {u, l};
}

CommonSpaceEmbedding embed_common_space(const MetricModel& model, int d_c) {
  if (d_c < 1) throw InputError("embed_common_space: d_c must be >= 1");
  if (d_c > model.m.order())
    throw InputError("embed_common_space: d_c exceeds the metric order");
  const EigenPair ep = eig_sym(model.m);
  if (ep.eigenvalues[d_c - 1] <= 0.0)
    throw NumericalError(
        "embed_common_space: fewer than d_c positive eigenvalues");
  Eigen::MatrixXd w = ep.eigenvectors.leftCols(d_c);
  for (int k = 0; k < d_c; ++k) w.col(k) *= std::sqrt(ep.eigenvalues[k]);
  return {w.topRows(model.dim_x), w.bottomRows(model.dim_y)};
}

}  // namespace mlhd
