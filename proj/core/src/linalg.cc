// mlhd/linalg.cc

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

#include "mlhd/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace mlhd {

SymMatrix::SymMatrix(int order) : order_(order) {
  if (order < 1) throw InputError("SymMatrix: order must be >= 1");
  tri_.assign(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0);
}

SymMatrix SymMatrix::Identity(int order) {
  SymMatrix s(order);
  for (int i = 0; i < order; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::FromDense(const Eigen::MatrixXd& dense, double sym_tol) {
  if (dense.rows() != dense.cols())
    throw InputError("SymMatrix::FromDense: matrix is not square");
  const int n = static_cast<int>(dense.rows());
  const double scale = dense.cwiseAbs().maxCoeff();
  SymMatrix s(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (std::abs(dense(i, j) - dense(j, i)) > sym_tol * std::max(scale, 1.0))
        throw InputError("SymMatrix::FromDense: input is not symmetric");
      s.set(i, j, dense(i, j));
    }
  }
  return s;
}

std::size_t SymMatrix::PackedIndex(int i, int j) const {
  if (i < 0 || j < 0 || i >= order_ || j >= order_)
    throw InputError("SymMatrix: index out of range");
  if (j > i) std::swap(i, j);
  return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
}

Eigen::MatrixXd SymMatrix::dense() const {
  Eigen::MatrixXd d(order_, order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j <= i; ++j) d(i, j) = d(j, i) = (*this)(i, j);
  return d;
}

Eigen::VectorXd SymMatrix::multiply(const Eigen::VectorXd& x) const {
  if (x.size() != order_)
    throw InputError("SymMatrix::multiply: dimension mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(order_);
  for (int i = 0; i < order_; ++i) {
    const double xi = x[i];
    double acc = (*this)(i, i) * xi;
    for (int j = 0; j < i; ++j) {
      const double a = (*this)(i, j);
      acc += a * x[j];
      y[j] += a * xi;
    }
    y[i] += acc;
  }
  return y;
}

double SymMatrix::quad_form(const Eigen::VectorXd& x) const {
  if (x.size() != order_)
    throw InputError("SymMatrix::quad_form: dimension mismatch");
  double diag = 0.0, off = 0.0;
  for (int i = 0; i < order_; ++i) {
    diag += (*this)(i, i) * x[i] * x[i];
    for (int j = 0; j < i; ++j) off += (*this)(i, j) * x[i] * x[j];
  }
  return diag + 2.0 * off;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < order_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_norm() const {
  double diag = 0.0, off = 0.0;
  for (int i = 0; i < order_; ++i) {
    diag += (*this)(i, i) * (*this)(i, i);
    for (int j = 0; j < i; ++j) off += (*this)(i, j) * (*this)(i, j);
  }
  return std::sqrt(diag + 2.0 * off);
}

double SymMatrix::frobenius_distance(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order())
    throw InputError("frobenius_distance: order mismatch");
  double diag = 0.0, off = 0.0;
  for (int i = 0; i < a.order(); ++i) {
    const double dd = a(i, i) - b(i, i);
    diag += dd * dd;
    for (int j = 0; j < i; ++j) {
      const double d = a(i, j) - b(i, j);
      off += d * d;
    }
  }
  return std::sqrt(diag + 2.0 * off);
}

bool SymMatrix::all_finite() const {
  for (double v : tri_)
    if (!std::isfinite(v)) return false;
  return true;
}

EigenPair eig_sym(const SymMatrix& a) {
  if (!a.all_finite()) throw InputError("eig_sym: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.dense());
  if (es.info() != Eigen::Success)
    throw NumericalError("eig_sym: eigendecomposition failed to converge");
  // Eigen returns ascending order; flip to descending.
  const int n = a.order();
  EigenPair out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k)
    out.eigenvectors.col(k) = es.eigenvectors().col(n - 1 - k);
  return out;
}

SymMatrix inv_sqrt_psd(const SymMatrix& k, double ridge) {
  if (ridge < 0.0) throw InputError("inv_sqrt_psd: negative ridge");
  const EigenPair ep = eig_sym(k);
  const double max_eig = ep.eigenvalues[0];
  const double min_eig = ep.eigenvalues[ep.eigenvalues.size() - 1];
  if (min_eig < -1e-8 * std::max(max_eig, 0.0))
    throw NumericalError("inv_sqrt_psd: matrix is indefinite, eigenvalue " +
                         std::to_string(min_eig));
  const int n = k.order();
  Eigen::VectorXd shifted = ep.eigenvalues.array() + ridge;
  const double floor = std::max(ridge, 1e-12 * shifted[0]);
  if (floor <= 0.0)
    throw NumericalError("inv_sqrt_psd: matrix has no positive spectrum");
  Eigen::VectorXd inv_roots(n);
  for (int i = 0; i < n; ++i)
    inv_roots[i] = 1.0 / std::sqrt(std::max(shifted[i], floor));
  Eigen::MatrixXd r = ep.eigenvectors * inv_roots.asDiagonal() *
                      ep.eigenvectors.transpose();
  // Symmetrize away the last-bit asymmetry of the triple product.
  return SymMatrix::FromDense(0.5 * (r + r.transpose()), 0.0);
}

SymMatrix sandwich_rank_one(const SymMatrix& m, const Eigen::VectorXd& v,
                            double c) {
  if (v.size() != m.order())
    throw InputError("sandwich_rank_one: dimension mismatch");
  const Eigen::VectorXd w = m.multiply(v);
  SymMatrix out = m;
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j <= i; ++j) out.set(i, j, m(i, j) + c * w[i] * w[j]);
  return out;
}

double logdet_psd(const SymMatrix& a) {
  if (!a.all_finite()) throw InputError("logdet_psd: non-finite entries");
  Eigen::LLT<Eigen::MatrixXd> llt(a.dense());
  if (llt.info() != Eigen::Success)
    throw NumericalError("logdet_psd: matrix is not positive definite");
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (int i = 0; i < a.order(); ++i) acc += std::log(l(i, i));
  return 2.0 * acc;
}

}  // namespace mlhd
