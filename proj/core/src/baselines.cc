// mlhd/baselines.cc

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

#include "mlhd/baselines.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

namespace mlhd {

CcaModel fit_cca(const Eigen::MatrixXd& x_paired,
                 const Eigen::MatrixXd& y_paired, int d, double ridge) {
  const int n = static_cast<int>(x_paired.cols());
  if (y_paired.cols() != n)
    throw InputError("fit_cca: pairing requires equal sample counts");
  if (d < 1) throw InputError("fit_cca: d must be >= 1");
  if (d > std::min(x_paired.rows(), y_paired.rows()))
    throw InputError("fit_cca: d exceeds the smaller feature dimension");
  if (n < std::max(2, d))
    throw InputError("fit_cca: fewer pairs (" + std::to_string(n) +
                     ") than requested components");

  CcaModel model;
  model.mean_x = x_paired.rowwise().mean();
  model.mean_y = y_paired.rowwise().mean();
  const Eigen::MatrixXd xc = x_paired.colwise() - model.mean_x;
  const Eigen::MatrixXd yc = y_paired.colwise() - model.mean_y;
  const double denom = n - 1;
  const Eigen::MatrixXd cxx = xc * xc.transpose() / denom;
  const Eigen::MatrixXd cyy = yc * yc.transpose() / denom;
  const Eigen::MatrixXd cxy = xc * yc.transpose() / denom;

  const double ridge_x = ridge >= 0.0 ? ridge : 1e-3 * cxx.trace();
  const double ridge_y = ridge >= 0.0 ? ridge : 1e-3 * cyy.trace();
  const Eigen::MatrixXd wx =
      inv_sqrt_psd(SymMatrix::FromDense(cxx, 1e-9), ridge_x).dense();
  const Eigen::MatrixXd wy =
      inv_sqrt_psd(SymMatrix::FromDense(cyy, 1e-9), ridge_y).dense();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(wx * cxy * wy,
                                        Eigen::ComputeThinU |
                                            Eigen::ComputeThinV);
  model.proj_x = wx * svd.matrixU().leftCols(d);
  model.proj_y = wy * svd.matrixV().leftCols(d);
  model.correlations = svd.singularValues().head(d);

  // Deterministic component signs: largest-|entry| of each source
  // direction positive, target flipped in lockstep.
  for (int k = 0; k < d; ++k) {
    int arg = 0;
    model.proj_x.col(k).cwiseAbs().maxCoeff(&arg);
    if (model.proj_x(arg, k) < 0.0) {
      model.proj_x.col(k) = -model.proj_x.col(k);
      model.proj_y.col(k) = -model.proj_y.col(k);
    }
  }
  return model;
}

namespace {

struct ArcTerms {
  double objective;
  Eigen::MatrixXd gradient;
};

ArcTerms ArcEval(const Eigen::MatrixXd& w, const DomainData& x,
                 const DomainData& y, const ConstraintSet& cs, double lambda,
                 double u, double l, bool want_gradient) {
  ArcTerms out{w.squaredNorm(), Eigen::MatrixXd()};
  if (want_gradient) out.gradient = 2.0 * w;
  for (const PairConstraint& c : cs.constraints) {
    const Eigen::VectorXd xi = x.sample(c.source_index);
    const Eigen::VectorXd yj = y.sample(c.target_index);
    const double s = xi.dot(w * yj);
    double hinge = 0.0, slope = 0.0;
    if (c.relation == PairRelation::kSame) {
      hinge = std::max(0.0, l - s);
      slope = -2.0 * hinge;  // d/ds of hinge^2
    } else {
      hinge = std::max(0.0, s - u);
      slope = 2.0 * hinge;
    }
    out.objective += lambda * hinge * hinge;
    if (want_gradient && slope != 0.0)
      out.gradient.noalias() += lambda * slope * (xi * yj.transpose());
  }
  return out;
}

}  // namespace

double arc_objective(const Eigen::MatrixXd& w, const DomainData& x,
                     const DomainData& y, const ConstraintSet& cs,
                     double lambda, double u, double l) {
  return ArcEval(w, x, y, cs, lambda, u, l, false).objective;
}

Eigen::MatrixXd arc_gradient(const Eigen::MatrixXd& w, const DomainData& x,
                             const DomainData& y, const ConstraintSet& cs,
                             double lambda, double u, double l) {
  return ArcEval(w, x, y, cs, lambda, u, l, true).gradient;
}

std::pair<ArcModel, ArcFitReport> fit_arc(const DomainData& x,
                                          const DomainData& y,
                                          const ConstraintSet& cs,
                                          double lambda, double u, double l,
                                          int steps, double rate,
                                          bool backtracking) {
  if (lambda < 0.0) throw ConfigError("fit_arc: lambda must be >= 0");
  if (steps < 0 || rate <= 0.0)
    throw ConfigError("fit_arc: need steps >= 0 and rate > 0");
  for (const PairConstraint& c : cs.constraints)
    if (c.source_index >= x.labeled_count() ||
        c.target_index >= y.labeled_count())
      throw InputError("fit_arc: constraint references an unlabeled sample");

  ArcModel model{Eigen::MatrixXd::Zero(x.dim(), y.dim()), lambda, u, l};
  ArcFitReport report;
  double f = arc_objective(model.w, x, y, cs, lambda, u, l);
  const double f_start = f;
  for (int step = 0; step < steps; ++step) {
    const Eigen::MatrixXd g = arc_gradient(model.w, x, y, cs, lambda, u, l);
    const double gnorm = g.norm();
    if (gnorm < 1e-12) break;
    double eta = rate;
    Eigen::MatrixXd candidate = model.w - eta * g;
    double f_new = arc_objective(candidate, x, y, cs, lambda, u, l);
    if (backtracking) {
      int halvings = 0;
      while (f_new > f && halvings < 60) {
        eta *= 0.5;
        candidate = model.w - eta * g;
        f_new = arc_objective(candidate, x, y, cs, lambda, u, l);
        ++halvings;
      }
      if (f_new > f) break;  // stalled at roundoff scale
    } else if (!std::isfinite(f_new) || f_new > 1e12 * (f_start + 1.0)) {
      throw NumericalError("fit_arc: objective diverged at step " +
                           std::to_string(step) + " (rate too large)");
    }
    model.w = candidate;
    f = f_new;
    report.objective_trace.push_back(f);
    report.steps_run = step + 1;
  }
  report.final_objective = f;
  return {std::move(model), std::move(report)};
}

double arc_similarity(const ArcModel& model, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& y) {
  if (x.size() != model.w.rows() || y.size() != model.w.cols())
    throw InputError("arc_similarity: dimension mismatch");
  return x.dot(model.w * y);
}

}  // namespace mlhd
