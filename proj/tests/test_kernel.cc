// tests/test_kernel.cc

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

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "mlhd/kernel.hpp"
#include "test_util.hpp"

using namespace mlhd;
using namespace mlhd::testing;

TEST_SUITE_BEGIN("kernel");

TEST_CASE("gram matrices") {
  SUBCASE("linear gram of orthonormal columns is the identity") {
    const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(3, 3);
    CHECK((gram(KernelSpec::Linear(), e, e) -
           Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  }
  SUBCASE("rbf diagonal is one") {
    std::mt19937_64 rng(51);
    const Eigen::MatrixXd a = random_gaussian(rng, 4, 6);
    const Eigen::MatrixXd g = gram(KernelSpec::Rbf(0.7), a, a);
    for (int i = 0; i < 6; ++i) CHECK(g(i, i) == doctest::Approx(1.0));
  }
  SUBCASE("rbf grams are symmetric PSD") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXd a = random_gaussian(rng, 3, 8);
      const Eigen::MatrixXd g = gram(KernelSpec::Rbf(0.4), a, a);
      CHECK((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
      CHECK(es.eigenvalues()[0] >= -1e-9);
    }
  }
  SUBCASE("feature dimension mismatch") {
    CHECK_THROWS_AS(gram(KernelSpec::Linear(), Eigen::MatrixXd::Zero(2, 1),
                         Eigen::MatrixXd::Zero(3, 1)),
                    InputError);
  }
  SUBCASE("rbf needs a positive width") {
    CHECK_THROWS_AS(gram(KernelSpec::Rbf(0.0), Eigen::MatrixXd::Zero(2, 1),
                         Eigen::MatrixXd::Zero(2, 1)),
                    ConfigError);
  }
}

TEST_CASE("build_block_kernel") {
  const SymMatrix k = build_block_kernel(Eigen::MatrixXd::Identity(2, 2),
                                         Eigen::MatrixXd::Identity(3, 3));
  CHECK(SymMatrix::frobenius_distance(k, SymMatrix::Identity(5)) == 0.0);

  std::mt19937_64 rng(53);
  const Eigen::MatrixXd kx = random_spd(rng, 3, 10.0);
  const Eigen::MatrixXd ky = random_spd(rng, 4, 10.0);
  const SymMatrix block = build_block_kernel(kx, ky);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) CHECK(block(i, 3 + j) == 0.0);

  // eigenvalues are the union of the block eigenvalues
  Eigen::VectorXd expected(7);
  expected.head(3) = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(kx)
                         .eigenvalues();
  expected.tail(4) = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ky)
                         .eigenvalues();
  std::sort(expected.data(), expected.data() + 7,
            [](double a, double b) { return a > b; });
  const EigenPair ep = eig_sym(block);
  CHECK((ep.eigenvalues - expected).cwiseAbs().maxCoeff() <= 1e-9);

  Eigen::MatrixXd skew = kx;
  skew(0, 1) += 1.0;
  CHECK_THROWS_AS(build_block_kernel(skew, ky), InputError);
}

TEST_CASE("constraint vectors against the dense multiply") {
  SUBCASE("identity root reproduces the indicator") {
    const Eigen::VectorXd v = constraint_vector(SymMatrix::Identity(5), 1, 2,
                                                3, 2);
    CHECK(v[1] == 1.0);
    CHECK(v[3 + 2 - 1] == 0.0);
    CHECK(v[4] == -1.0);
    CHECK(v.cwiseAbs().sum() == 2.0);
  }
  SUBCASE("scaled identity doubles it") {
    SymMatrix four = SymMatrix::Identity(4);
    for (int i = 0; i < 4; ++i) four.set(i, i, 2.0);
    const Eigen::VectorXd v = constraint_vector(four, 0, 1, 2, 2);
    CHECK(v[0] == 2.0);
    CHECK(v[3] == -2.0);
  }
  SUBCASE("random root matches the dense product") {
    std::mt19937_64 rng(54);
    const Eigen::MatrixXd k = random_spd(rng, 6, 10.0);
    const SymMatrix root = SymMatrix::FromDense(k, 1e-9);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(6);
    e[2] = 1.0;
    e[4 + 1] = -1.0;
    CHECK((constraint_vector(root, 2, 1, 4, 2) - k * e).norm() <= 1e-10);
    CHECK_THROWS_AS(constraint_vector(root, 4, 0, 4, 2), InputError);
  }
  SUBCASE("mmd vector forms") {
    const Eigen::VectorXd v = mmd_constraint_vector(SymMatrix::Identity(4), 2,
                                                    2);
    CHECK(v[0] == 0.5);
    CHECK(v[1] == 0.5);
    CHECK(v[2] == -0.5);
    CHECK(v[3] == -0.5);
    const Eigen::VectorXd w = mmd_constraint_vector(SymMatrix::Identity(2), 1,
                                                    1);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == -1.0);

    std::mt19937_64 rng(55);
    const Eigen::MatrixXd k = random_spd(rng, 5, 10.0);
    Eigen::VectorXd ebar(5);
    ebar << 1.0 / 3, 1.0 / 3, 1.0 / 3, -0.5, -0.5;
    CHECK((mmd_constraint_vector(SymMatrix::FromDense(k, 1e-9), 3, 2) -
           k * ebar).norm() <= 1e-10);
  }
}

namespace {

struct KernelFixture {
  DomainData x;
  DomainData y;
  ConstraintSet cs;
  SolverConfig config;

  explicit KernelFixture(std::uint64_t seed, int dx = 4, int dy = 3,
                         int labeled = 4, int unlabeled = 6)
      : x(make_domain(seed, dx, labeled, unlabeled)),
        y(make_domain(seed + 1, dy, labeled, unlabeled)),
        cs(make_cs(x, y)) {
    config.max_cycles = 200;
    config.tol = 1e-8;
  }

  static DomainData make_domain(std::uint64_t seed, int dim, int labeled,
                                int unlabeled) {
    std::mt19937_64 rng(seed);
    return random_domain(rng, dim, labeled, unlabeled);
  }

  static ConstraintSet make_cs(const DomainData& x, const DomainData& y) {
    const auto [u, l] = estimate_bounds(x, y, 20.0, 80.0);
    return build_constraints(x, y, u, l);
  }
};

}  // namespace

TEST_CASE("linear-kernel fit reproduces the linear fit") {
  KernelFixture f(61, 4, 3, 5, 15);  // 20 samples per domain, spans features
  auto [linear_model, linear_report] = fit(f.x, f.y, f.cs, f.config);
  auto [kernel_model, kernel_report] =
      fit_kernelized(f.x, f.y, f.cs, f.config, KernelSpec::Linear(),
                     KernelSpec::Linear());

  for (const PairConstraint& c : f.cs.constraints) {
    const double d_lin = squared_distance(
        linear_model,
        make_z(f.x.sample(c.source_index), f.y.sample(c.target_index)));
    const double d_ker = cross_distance_oos(
        kernel_model, f.x.sample(c.source_index), f.y.sample(c.target_index));
    CHECK(d_ker == doctest::Approx(d_lin).epsilon(1e-4));
  }
  CHECK(kernel_report.final_objective ==
        doctest::Approx(linear_report.final_objective).epsilon(1e-3));
}

TEST_CASE("kernelized fit with nothing to pull keeps L at the identity") {
  std::mt19937_64 rng(62);
  // centered data turns the discrepancy vector into zero
  Eigen::MatrixXd xs = random_gaussian(rng, 3, 5);
  xs.colwise() -= Eigen::VectorXd(xs.rowwise().mean());
  Eigen::MatrixXd ys = random_gaussian(rng, 2, 4);
  ys.colwise() -= Eigen::VectorXd(ys.rowwise().mean());
  const DomainData x(xs, {0, 0, 1, 1, 0});
  const DomainData y(ys, {});

  ConstraintSet cs;  // no distance constraints
  cs.u = 0.5;
  cs.l = 2.0;
  cs.xi0 = Eigen::VectorXd(0);
  SolverConfig config;
  auto [model, report] = fit_kernelized(x, y, cs, config, KernelSpec::Linear(),
                                        KernelSpec::Linear());
  CHECK(SymMatrix::frobenius_distance(model.l, SymMatrix::Identity(9)) <=
        1e-12);
  CHECK(report.mmd_final <= 1e-16);
}

TEST_CASE("kernelized fit is deterministic") {
  KernelFixture f(63);
  auto [a, ra] = fit_kernelized(f.x, f.y, f.cs, f.config, KernelSpec::Rbf(),
                                KernelSpec::Rbf());
  auto [b, rb] = fit_kernelized(f.x, f.y, f.cs, f.config, KernelSpec::Rbf(),
                                KernelSpec::Rbf());
  CHECK(SymMatrix::frobenius_distance(a.l, b.l) == 0.0);
  CHECK(a.spec_x.gamma == b.spec_x.gamma);
}

TEST_CASE("out-of-sample distances are consistent with training values") {
  KernelFixture f(64);
  auto [model, report] = fit_kernelized(f.x, f.y, f.cs, f.config,
                                        KernelSpec::Rbf(), KernelSpec::Rbf());
  // d^2 on a training pair equals the constraint quadratic form the
  // solver saw; reconstruct it through the cached factors.
  const Eigen::MatrixXd kx =
      gram(model.spec_x, model.train_x, model.train_x);
  const Eigen::MatrixXd ky =
      gram(model.spec_y, model.train_y, model.train_y);
  const Eigen::MatrixXd shat_x = model.k_inv_sqrt_x * kx;
  const Eigen::MatrixXd shat_y = model.k_inv_sqrt_y * ky;
  for (const PairConstraint& c : f.cs.constraints) {
    Eigen::VectorXd v(model.n_x() + model.n_y());
    v.head(model.n_x()) = shat_x.col(c.source_index);
    v.tail(model.n_y()) = -shat_y.col(c.target_index);
    const double training_value = model.l.quad_form(v);
    const double oos = cross_distance_oos(model,
                                          f.x.sample(c.source_index),
                                          f.y.sample(c.target_index));
    CHECK(oos == doctest::Approx(training_value).epsilon(1e-8));
  }
}

TEST_CASE("far rbf queries collapse to the source term") {
  KernelFixture f(65);
  auto [model, report] = fit_kernelized(f.x, f.y, f.cs, f.config,
                                        KernelSpec::Rbf(), KernelSpec::Rbf());
  const Eigen::VectorXd x_new = f.x.sample(0);
  const Eigen::VectorXd y_far = Eigen::VectorXd::Constant(f.y.dim(), 1e6);
  const double d = cross_distance_oos(model, x_new, y_far);
  // with the target response vanishing, only the source block remains
  const Eigen::VectorXd cx = gram(model.spec_x, model.train_x, x_new);
  Eigen::VectorXd w(model.n_x() + model.n_y());
  w.head(model.n_x()) = model.k_inv_sqrt_x * cx;
  w.tail(model.n_y()).setZero();
  CHECK(d == doctest::Approx(model.l.quad_form(w)).epsilon(1e-9));
}

TEST_CASE("recover_M materializes the implied metric") {
  SUBCASE("identity L with orthonormal training columns") {
    Eigen::MatrixXd xs = Eigen::MatrixXd::Identity(3, 2);  // orthonormal
    Eigen::MatrixXd ys = Eigen::MatrixXd::Identity(2, 2);
    const DomainData x(xs, {0, 1});
    const DomainData y(ys, {0, 1});
    ConstraintSet cs;
    cs.u = 0.5;
    cs.l = 2.0;
    cs.xi0 = Eigen::VectorXd(0);
    SolverConfig config;
    config.max_cycles = 1;
    auto [model, report] = fit_kernelized(x, y, cs, config,
                                          KernelSpec::Linear(),
                                          KernelSpec::Linear(), 0.0);
    model.l = SymMatrix::Identity(4);  // pin L = I for the closed form
    const MetricModel m = recover_M(model);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(5, 4);
    q.topLeftCorner(3, 2) = xs;
    q.bottomRightCorner(2, 2) = ys;
    CHECK((m.m.dense() - q * q.transpose()).norm() <= 1e-9);
  }
  SUBCASE("distances via the recovered metric match the kernel path") {
    KernelFixture f(66, 4, 3, 4, 8);
    auto [model, report] =
        fit_kernelized(f.x, f.y, f.cs, f.config, KernelSpec::Linear(),
                       KernelSpec::Linear());
    const MetricModel m = recover_M(model);
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd xq = random_vector(rng, 4);
      const Eigen::VectorXd yq = random_vector(rng, 3);
      const double via_m = squared_distance(m, make_z(xq, yq));
      const double via_kernel = cross_distance_oos(model, xq, yq);
      CHECK(via_m == doctest::Approx(via_kernel).epsilon(1e-8));
    }
    const EigenPair ep = eig_sym(m.m);
    CHECK(ep.eigenvalues[m.m.order() - 1] >=
          -1e-8 * std::abs(ep.eigenvalues[0]));
  }
  SUBCASE("rbf models cannot be materialized") {
    KernelFixture f(68);
    auto [model, report] = fit_kernelized(f.x, f.y, f.cs, f.config,
                                          KernelSpec::Rbf(), KernelSpec::Rbf());
    CHECK_THROWS_AS(recover_M(model), UnsupportedError);
  }
}

TEST_CASE("kernel path keeps L positive semidefinite") {
  KernelFixture f(69);
  auto [model, report] = fit_kernelized(f.x, f.y, f.cs, f.config,
                                        KernelSpec::Rbf(), KernelSpec::Rbf());
  const EigenPair ep = eig_sym(model.l);
  CHECK(ep.eigenvalues[model.l.order() - 1] >=
        -1e-8 * std::abs(ep.eigenvalues[0]));
}

TEST_SUITE_END();
