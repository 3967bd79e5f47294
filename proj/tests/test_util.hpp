// tests/test_util.hpp
//
// Seeded generators shared by the unit and acceptance suites.

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

#ifndef MLHD_TESTS_TEST_UTIL_HPP_
#define MLHD_TESTS_TEST_UTIL_HPP_

#include <Eigen/Core>
#include <Eigen/Householder>
#include <Eigen/QR>
#include <cmath>
#include <random>
#include <vector>

#include "mlhd/domain.hpp"

namespace mlhd::testing {

inline Eigen::MatrixXd random_gaussian(std::mt19937_64& rng, int rows,
                                       int cols, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int n) {
  const Eigen::MatrixXd g = random_gaussian(rng, n, n);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n,
                                        double scale = 1.0) {
  const Eigen::MatrixXd g = random_gaussian(rng, n, n, scale);
  return 0.5 * (g + g.transpose());
}

/// SPD with eigenvalues log-uniform in [scale/cond, scale].
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n,
                                  double cond = 100.0, double scale = 1.0) {
  const Eigen::MatrixXd v = random_orthogonal(rng, n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd eigs(n);
  for (int i = 0; i < n; ++i)
    eigs[i] = scale * std::pow(cond, -unif(rng));
  eigs[0] = scale;                // pin the extremes so cond is realized
  if (n > 1) eigs[n - 1] = scale / cond;
  const Eigen::MatrixXd a = v * eigs.asDiagonal() * v.transpose();
  return 0.5 * (a + a.transpose());
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n,
                                     double scale = 1.0) {
  return random_gaussian(rng, n, 1, scale);
}

/// Two-class Gaussian domain, labeled_per_class + unlabeled_per_class
/// samples per class, class means +/- separation along alternating axes.
inline DomainData random_domain(std::mt19937_64& rng, int dim,
                                int labeled_per_class, int unlabeled_per_class,
                                double separation = 3.0) {
  const int classes = 2;
  const int n = classes * (labeled_per_class + unlabeled_per_class);
  Eigen::MatrixXd samples(dim, n);
  std::vector<int> labels;
  std::normal_distribution<double> gauss(0.0, 1.0);
  int col = 0;
  auto draw = [&](int cls) {
    Eigen::VectorXd v(dim);
    for (int k = 0; k < dim; ++k) v[k] = gauss(rng);
    v[cls % dim] += separation * (cls == 0 ? -0.5 : 0.5);
    return v;
  };
  for (int cls = 0; cls < classes; ++cls)
    for (int i = 0; i < labeled_per_class; ++i) {
      samples.col(col++) = draw(cls);
      labels.push_back(cls);
    }
  for (int cls = 0; cls < classes; ++cls)
    for (int i = 0; i < unlabeled_per_class; ++i) samples.col(col++) = draw(cls);
  return {samples, labels};
}

}  // namespace mlhd::testing

#endif  // MLHD_TESTS_TEST_UTIL_HPP_
