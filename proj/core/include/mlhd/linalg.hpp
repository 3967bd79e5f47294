// mlhd/linalg.hpp
//
// Dense symmetric/PSD primitives used by the solver and the kernel path:
// packed symmetric storage, eigendecomposition, inverse square root,
// sandwich rank-one updates and log-determinants.

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

#ifndef MLHD_LINALG_HPP_
#define MLHD_LINALG_HPP_

#include <Eigen/Core>
#include <vector>

#include "mlhd/errors.hpp"

namespace mlhd {

/// Symmetric matrix with a single packed copy of each (i,j)/(j,i) pair.
/// Symmetry therefore holds bit-exactly by construction; every mutation
/// path writes one storage cell.
class SymMatrix {
 public:
  /// Zero matrix of the given order (order >= 1).
  explicit SymMatrix(int order);

  static SymMatrix Identity(int order);

  /// Packs a dense matrix. The input must be symmetric within
  /// `sym_tol * max|entry|` entrywise; the lower triangle is stored.
  static SymMatrix FromDense(const Eigen::MatrixXd& dense,
                             double sym_tol = 1e-12);

  int order() const { return order_; }

  double operator()(int i, int j) const { return tri_[PackedIndex(i, j)]; }
  void set(int i, int j, double value) { tri_[PackedIndex(i, j)] = value; }

  Eigen::MatrixXd dense() const;

  /// y = S x
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

  /// x' S x
  double quad_form(const Eigen::VectorXd& x) const;

  double trace() const;
  double frobenius_norm() const;

  /// ||A - B||_F over packed pairs; orders must match.
  static double frobenius_distance(const SymMatrix& a, const SymMatrix& b);

  bool all_finite() const;

  const std::vector<double>& packed() const { return tri_; }
  std::vector<double>& packed() { return tri_; }

 private:
  std::size_t PackedIndex(int i, int j) const;

  int order_;
  std::vector<double> tri_;  // lower triangle, row-major: (i,j) with j <= i
};

/// Eigendecomposition of a symmetric matrix: descending eigenvalues and
/// orthonormal eigenvector columns, A = V diag(w) V'.
struct EigenPair {
  Eigen::VectorXd eigenvalues;   // descending
  Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Full symmetric eigendecomposition. Throws InputError on non-finite
/// entries.
EigenPair eig_sym(const SymMatrix& a);

/// (K + ridge*I)^(-1/2) via eigendecomposition. Eigenvalues of the shifted
/// matrix below the clamp floor max(ridge, 1e-12 * max_eigenvalue) are
/// raised to the floor before inversion; Gram matrices of near-duplicate
/// samples are routinely rank-deficient. Throws NumericalError (reporting
/// the most negative eigenvalue) if K is indefinite beyond
/// 1e-8 * max_eigenvalue.
SymMatrix inv_sqrt_psd(const SymMatrix& k, double ridge);

/// M + c * (Mv)(Mv)', symmetric bit-exactly by packed construction.
SymMatrix sandwich_rank_one(const SymMatrix& m, const Eigen::VectorXd& v,
                            double c);

/// log det(A) for positive definite A, via Cholesky. Throws NumericalError
/// if the factorization fails (A not positive definite within roundoff).
double logdet_psd(const SymMatrix& a);

}  // namespace mlhd

#endif  // MLHD_LINALG_HPP_
