// mlhd/kernel.cc

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

#include "mlhd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mlhd {

namespace {

constexpr double kDefaultRidgeScale = 1e-8;

double ResolveRidge(const Eigen::MatrixXd& gram_block, double requested) {
  if (requested >= 0.0) return requested;
  const int n = static_cast<int>(gram_block.rows());
  return kDefaultRidgeScale * gram_block.trace() / n;
}

KernelSpec ResolveSpec(const KernelSpec& spec, const Eigen::MatrixXd& train) {
  KernelSpec out = spec;
  if (out.kind == KernelKind::kRbf && out.gamma <= 0.0)
    out.gamma = median_sq_dist_gamma(train);
  return out;
}

Eigen::MatrixXd Symmetrized(const Eigen::MatrixXd& a) {
  return 0.5 * (a + a.transpose());
}

}  // namespace

Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a,
                     const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows())
    throw InputError("gram: sample matrices disagree on feature dimension");
  if (spec.kind == KernelKind::kLinear) return a.transpose() * b;
  if (spec.gamma <= 0.0)
    throw ConfigError("gram: RBF kernel requires gamma > 0");
  const Eigen::VectorXd aa = a.colwise().squaredNorm();
  const Eigen::VectorXd bb = b.colwise().squaredNorm();
  Eigen::MatrixXd g = -2.0 * (a.transpose() * b);
  g.colwise() += aa;
  g.rowwise() += bb.transpose();
  return (-spec.gamma * g.cwiseMax(0.0)).array().exp();
}

double median_sq_dist_gamma(const Eigen::MatrixXd& samples) {
  const int n = static_cast<int>(samples.cols());
  std::vector<double> sq;
  sq.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      sq.push_back((samples.col(i) - samples.col(j)).squaredNorm());
  if (sq.empty()) return 1.0;
  const double med = percentile(std::move(sq), 50.0);
  return med > 0.0 ? 1.0 / med : 1.0;
}

SymMatrix build_block_kernel(const Eigen::MatrixXd& kx,
                             const Eigen::MatrixXd& ky) {
  if (kx.rows() != kx.cols() || ky.rows() != ky.cols())
    throw InputError("build_block_kernel: blocks must be square");
  const int nx = static_cast<int>(kx.rows());
  const int ny = static_cast<int>(ky.rows());
  SymMatrix k(nx + ny);
  auto check_and_fill = [&k](const Eigen::MatrixXd& block, int offset) {
    const double scale = std::max(block.cwiseAbs().maxCoeff(), 1.0);
    for (int i = 0; i < block.rows(); ++i)
      for (int j = 0; j <= i; ++j) {
        if (std::abs(block(i, j) - block(j, i)) > 1e-10 * scale)
          throw InputError("build_block_kernel: block is not symmetric");
        k.set(offset + i, offset + j, block(i, j));
      }
  };
  check_and_fill(kx, 0);
  check_and_fill(ky, nx);
  return k;
}

Eigen::VectorXd constraint_vector(const SymMatrix& k_sqrt, int i, int j,
                                  int n_x, int n_y) {
  if (k_sqrt.order() != n_x + n_y)
    throw InputError("constraint_vector: order must equal n_x + n_y");
  if (i < 0 || i >= n_x || j < 0 || j >= n_y)
    throw InputError("constraint_vector: index out of range");
  Eigen::VectorXd v(n_x + n_y);
  for (int r = 0; r < n_x + n_y; ++r)
    v[r] = k_sqrt(r, i) - k_sqrt(r, n_x + j);
  return v;
}

Eigen::VectorXd mmd_constraint_vector(const SymMatrix& k_sqrt, int n_x,
                                      int n_y) {
  if (k_sqrt.order() != n_x + n_y)
    throw InputError("mmd_constraint_vector: order must equal n_x + n_y");
  if (n_x < 1 || n_y < 1)
    throw InputError("mmd_constraint_vector: empty domain");
  Eigen::VectorXd ebar(n_x + n_y);
  ebar.head(n_x).setConstant(1.0 / n_x);
  ebar.tail(n_y).setConstant(-1.0 / n_y);
  return k_sqrt.multiply(ebar);
}

std::pair<KernelModel, FitReport> fit_kernelized(
    const DomainData& x, const DomainData& y, const ConstraintSet& cs,
    const SolverConfig& config, const KernelSpec& spec_x,
    const KernelSpec& spec_y, double ridge) {
  const int nx = x.count();
  const int ny = y.count();

  KernelModel model;
  model.spec_x = ResolveSpec(spec_x, x.samples());
  model.spec_y = ResolveSpec(spec_y, y.samples());
  model.train_x = x.samples();
  model.train_y = y.samples();

  const Eigen::MatrixXd kx =
      Symmetrized(gram(model.spec_x, x.samples(), x.samples()));
  const Eigen::MatrixXd ky =
      Symmetrized(gram(model.spec_y, y.samples(), y.samples()));
  model.ridge_x = ResolveRidge(kx, ridge);
  model.ridge_y = ResolveRidge(ky, ridge);

  const SymMatrix sinv_x = inv_sqrt_psd(SymMatrix::FromDense(kx, 1e-10),
                                        model.ridge_x);
  const SymMatrix sinv_y = inv_sqrt_psd(SymMatrix::FromDense(ky, 1e-10),
                                        model.ridge_y);
  model.k_inv_sqrt_x = sinv_x.dense();
  model.k_inv_sqrt_y = sinv_y.dense();

  // Effective square root K^{1/2} = K^{-1/2} K, block by block.
  const SymMatrix k_sqrt = build_block_kernel(
      Symmetrized(model.k_inv_sqrt_x * kx), Symmetrized(model.k_inv_sqrt_y * ky));

  Eigen::MatrixXd vectors(nx + ny, static_cast<Eigen::Index>(cs.constraints.size()));
  for (const PairConstraint& c : cs.constraints) {
    if (c.source_index >= x.labeled_count() ||
        c.target_index >= y.labeled_count())
      throw InputError("fit_kernelized: constraint references an unlabeled sample");
    vectors.col(c.slack_index) =
        constraint_vector(k_sqrt, c.source_index, c.target_index, nx, ny);
  }

  auto [state, report] =
      solve_cyclic(vectors, mmd_constraint_vector(k_sqrt, nx, ny), cs, config);
  model.l = std::move(state.m);
  return {std::move(model), report};
}

namespace {

// d^2 = (K^{-1/2} c)' L (K^{-1/2} c) for a raw kernel response c.
double QuadFromResponses(const KernelModel& model, const Eigen::VectorXd& cx,
                         const Eigen::VectorXd& cy) {
  Eigen::VectorXd w(model.n_x() + model.n_y());
  w.head(model.n_x()) = model.k_inv_sqrt_x * cx;
  w.tail(model.n_y()) = model.k_inv_sqrt_y * cy;
  const double d = model.l.quad_form(w);
  return std::max(d, 0.0);
}

}  // namespace

double cross_distance_oos(const KernelModel& model,
                          const Eigen::VectorXd& x_new,
                          const Eigen::VectorXd& y_new) {
  if (x_new.size() != model.dim_x() || y_new.size() != model.dim_y())
    throw InputError("cross_distance_oos: query dimension mismatch");
  const Eigen::VectorXd cx = gram(model.spec_x, model.train_x, x_new);
  const Eigen::VectorXd cy = gram(model.spec_y, model.train_y, y_new);
  return QuadFromResponses(model, cx, -cy);
}

double target_distance_oos(const KernelModel& model,
                           const Eigen::VectorXd& y_a,
                           const Eigen::VectorXd& y_b) {
  if (y_a.size() != model.dim_y() || y_b.size() != model.dim_y())
    throw InputError("target_distance_oos: query dimension mismatch");
  const Eigen::VectorXd ca = gram(model.spec_y, model.train_y, y_a);
  const Eigen::VectorXd cb = gram(model.spec_y, model.train_y, y_b);
  return QuadFromResponses(model, Eigen::VectorXd::Zero(model.n_x()), ca - cb);
}

MetricModel recover_M(const KernelModel& model) {
  if (model.spec_x.kind != KernelKind::kLinear ||
      model.spec_y.kind != KernelKind::kLinear)
    throw UnsupportedError("recover_M: only defined for LINEAR kernels");
  const int dx = model.dim_x();
  const int dy = model.dim_y();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dx + dy, model.n_x() + model.n_y());
  b.topLeftCorner(dx, model.n_x()) = model.train_x * model.k_inv_sqrt_x;
  b.bottomRightCorner(dy, model.n_y()) = model.train_y * model.k_inv_sqrt_y;
  const Eigen::MatrixXd m_star = b * model.l.dense() * b.transpose();
  return MetricModel(dx, dy,
                     SymMatrix::FromDense(0.5 * (m_star + m_star.transpose()), 0.0));
}

}  // namespace mlhd
