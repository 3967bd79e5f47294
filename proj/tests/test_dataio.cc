// tests/test_dataio.cc

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

#include <cmath>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>

#include <Eigen/Eigenvalues>

#include "mlhd/dataio.hpp"
#include "mlhd/model_io.hpp"
#include "mlhd/solver.hpp"
#include "mlhd/toy.hpp"
#include "test_util.hpp"

using namespace mlhd;
using namespace mlhd::testing;

TEST_SUITE_BEGIN("dataio");

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mlhd-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("dense csv loading") {
  TempDir dir;
  SUBCASE("basic labeled file") {
    WriteFile(dir.file("a.csv"), "x1,x2,label\n1,2,0\n3,4,1\n5,6,0\n");
    const LoadedDomain loaded = load_dense_csv(dir.file("a.csv"), "label");
    CHECK(loaded.data.dim() == 2);
    CHECK(loaded.data.count() == 3);
    CHECK(loaded.data.labeled_count() == 3);
    CHECK(loaded.data.samples()(1, 2) == 6.0);
    CHECK(loaded.data.label(1) == 1);
  }
  SUBCASE("empty label cells mean unlabeled, labeled rows move first") {
    WriteFile(dir.file("b.csv"), "x1,label\n1,\n2,5\n3,\n4,6\n");
    const LoadedDomain loaded = load_dense_csv(dir.file("b.csv"), "label");
    CHECK(loaded.data.count() == 4);
    CHECK(loaded.data.labeled_count() == 2);
    CHECK(loaded.data.label(0) == 5);
    CHECK(loaded.data.label(1) == 6);
    CHECK(loaded.data.samples()(0, 0) == 2.0);
    CHECK(loaded.row_order == std::vector<int>{1, 3, 0, 2});
  }
  SUBCASE("round trip preserves the matrix exactly") {
    std::mt19937_64 rng(101);
    const DomainData original = random_domain(rng, 4, 3, 2);
    write_dense_csv(dir.file("c.csv"), original);
    const LoadedDomain loaded = load_dense_csv(dir.file("c.csv"), "label");
    CHECK(loaded.data.dim() == original.dim());
    CHECK(loaded.data.count() == original.count());
    CHECK((loaded.data.samples() - original.samples()).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK(loaded.data.labels() == original.labels());
  }
  SUBCASE("ragged rows report the line number") {
    WriteFile(dir.file("d.csv"), "x1,x2,label\n1,2,0\n3,1\n");
    CHECK_THROWS_WITH_AS(load_dense_csv(dir.file("d.csv"), "label"),
                         doctest::Contains("line 3"), DataError);
  }
  SUBCASE("non-numeric features report the line number") {
    WriteFile(dir.file("e.csv"), "x1,label\nok,1\n");
    CHECK_THROWS_WITH_AS(load_dense_csv(dir.file("e.csv"), "label"),
                         doctest::Contains("line 2"), DataError);
  }
  SUBCASE("missing label column is rejected") {
    WriteFile(dir.file("f.csv"), "x1,x2\n1,2\n");
    CHECK_THROWS_AS(load_dense_csv(dir.file("f.csv"), "label"), DataError);
    CHECK(load_dense_csv(dir.file("f.csv"), "").data.labeled_count() == 0);
  }
}

TEST_CASE("sparse loading") {
  TempDir dir;
  SUBCASE("labeled index:value lines") {
    WriteFile(dir.file("a.svm"), "1 1:0.5 3:0.25\n2 2:1\n");
    const LoadedDomain loaded =
        load_sparse(dir.file("a.svm"), SparseLabelPosition::kFirst);
    CHECK(loaded.data.dim() == 3);
    CHECK(loaded.data.count() == 2);
    CHECK(loaded.data.label(0) == 1);
    CHECK(loaded.data.samples()(0, 0) == 0.5);
    CHECK(loaded.data.samples()(1, 0) == 0.0);
    CHECK(loaded.data.samples()(2, 0) == 0.25);
  }
  SUBCASE("empty feature list densifies to zero") {
    WriteFile(dir.file("b.svm"), "7\n1 2:1.5\n");
    const LoadedDomain loaded =
        load_sparse(dir.file("b.svm"), SparseLabelPosition::kFirst);
    CHECK(loaded.data.samples().col(0).norm() == 0.0);
    CHECK(loaded.data.label(0) == 7);
  }
  SUBCASE("agrees with the dense loader on the same data") {
    WriteFile(dir.file("c.svm"), "0 1:1 2:2\n1 1:3 2:4\n");
    WriteFile(dir.file("c.csv"), "f1,f2,label\n1,2,0\n3,4,1\n");
    const LoadedDomain sparse =
        load_sparse(dir.file("c.svm"), SparseLabelPosition::kFirst);
    const LoadedDomain dense = load_dense_csv(dir.file("c.csv"), "label");
    CHECK((sparse.data.samples() - dense.data.samples()).norm() == 0.0);
    CHECK(sparse.data.labels() == dense.data.labels());
  }
  SUBCASE("malformed pairs and ordering are rejected with line numbers") {
    WriteFile(dir.file("d.svm"), "1 1:0.5\n1 3:0.5 2:0.5\n");
    CHECK_THROWS_WITH_AS(load_sparse(dir.file("d.svm"),
                                     SparseLabelPosition::kFirst),
                         doctest::Contains("line 2"), DataError);
    WriteFile(dir.file("e.svm"), "1 1:\n");
    CHECK_THROWS_AS(load_sparse(dir.file("e.svm"),
                                SparseLabelPosition::kFirst),
                    DataError);
    WriteFile(dir.file("f.svm"), "1 0:0.5\n");
    CHECK_THROWS_AS(load_sparse(dir.file("f.svm"),
                                SparseLabelPosition::kFirst),
                    DataError);
  }
  SUBCASE("dimension override pads the tail") {
    WriteFile(dir.file("g.svm"), "1 1:1\n");
    const LoadedDomain loaded =
        load_sparse(dir.file("g.svm"), SparseLabelPosition::kFirst, 5);
    CHECK(loaded.data.dim() == 5);
    CHECK_THROWS_AS(
        load_sparse(dir.file("g.svm"), SparseLabelPosition::kNone),
        DataError);  // '1' alone is not an index:value pair
  }
}

TEST_CASE("pca_reduce") {
  std::mt19937_64 rng(102);
  SUBCASE("data in a low-dimensional subspace reconstructs exactly") {
    const Eigen::MatrixXd basis = random_gaussian(rng, 5, 2);
    const Eigen::MatrixXd coeffs = random_gaussian(rng, 2, 30);
    const DomainData x(basis * coeffs, {});
    const PcaResult r = pca_reduce(x, 2);
    const Eigen::MatrixXd recon =
        (r.projection * r.data.samples()).colwise() + Eigen::VectorXd(r.mean);
    CHECK((recon - x.samples()).norm() <= 1e-8 * (1.0 + x.samples().norm()));
  }
  SUBCASE("full-dimensional pca preserves pairwise distances") {
    const DomainData x(random_gaussian(rng, 4, 25), {});
    const PcaResult r = pca_reduce(x, 4);
    for (int trial = 0; trial < 10; ++trial) {
      const int i = static_cast<int>(rng() % 25);
      const int j = static_cast<int>(rng() % 25);
      const double before = (x.samples().col(i) - x.samples().col(j)).norm();
      const double after =
          (r.data.samples().col(i) - r.data.samples().col(j)).norm();
      CHECK(after == doctest::Approx(before).epsilon(1e-8));
    }
  }
  SUBCASE("explained variance matches the covariance eigenvalues") {
    const DomainData x(random_gaussian(rng, 6, 40), {});
    const PcaResult r = pca_reduce(x, 3);
    const Eigen::MatrixXd centered =
        x.samples().colwise() - Eigen::VectorXd(x.samples().rowwise().mean());
    const Eigen::MatrixXd cov = centered * centered.transpose() / 39.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    for (int k = 0; k < 3; ++k)
      CHECK(r.variances[k] ==
            doctest::Approx(es.eigenvalues()[5 - k]).epsilon(1e-8));
    const Eigen::MatrixXd gram = r.projection.transpose() * r.projection;
    CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-10);
  }
  SUBCASE("labels survive the reduction and d is validated") {
    const DomainData x(random_gaussian(rng, 3, 10), {1, 0, 1});
    CHECK(pca_reduce(x, 2).data.labels() == std::vector<int>{1, 0, 1});
    CHECK_THROWS_AS(pca_reduce(x, 4), InputError);
  }
}

TEST_CASE("gen_toy counts, determinism, and bias") {
  SUBCASE("default spec matches the published counts") {
    const ToyDataset ds = gen_toy_dataset(ToySpec{});
    CHECK(ds.source.dim() == 2);
    CHECK(ds.target.dim() == 3);
    CHECK(ds.source.count() == 80);
    CHECK(ds.source.labeled_count() == 80);
    CHECK(ds.target.count() == 84);
    CHECK(ds.target.labeled_count() == 4);
    CHECK(ds.target_truth.size() == 84);
  }
  SUBCASE("same seed reproduces the dataset bitwise") {
    ToySpec spec;
    spec.seed = 31;
    const auto [sa, ta] = gen_toy(spec);
    const auto [sb, tb] = gen_toy(spec);
    CHECK((sa.samples() - sb.samples()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ta.samples() - tb.samples()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("zero bias leaves labeled means near the class means") {
    ToySpec spec;
    spec.seed = 5;
    spec.n_labeled_target_per_class = 40;
    spec.bias_shift = Eigen::VectorXd::Zero(3);
    const ToyDataset ds = gen_toy_dataset(spec);
    for (int cls = 0; cls < 2; ++cls) {
      Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
      for (int i = 0; i < 40; ++i) mean += ds.target.sample(cls * 40 + i);
      mean /= 40.0;
      Eigen::VectorXd true_mean(3);
      for (int k = 0; k < 3; ++k)
        true_mean[k] = toy_constants::kTargetMeans[cls][k];
      CHECK((mean - true_mean).norm() <=
            3.0 * std::sqrt(3.0) / std::sqrt(40.0));
    }
  }
  SUBCASE("the default bias is detectable across seeds") {
    double total_deviation = 0.0;
    const Eigen::VectorXd bias = ToySpec{}.resolved_bias();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      ToySpec spec;
      spec.seed = seed;
      const ToyDataset ds = gen_toy_dataset(spec);
      for (int cls = 0; cls < 2; ++cls) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
        for (int i = 0; i < 2; ++i) mean += ds.target.sample(cls * 2 + i);
        mean /= 2.0;
        Eigen::VectorXd true_mean(3);
        for (int k = 0; k < 3; ++k)
          true_mean[k] = toy_constants::kTargetMeans[cls][k];
        total_deviation += (mean - true_mean).norm();
      }
    }
    CHECK(total_deviation / 100.0 >= bias.norm() / 2.0);
  }
}

TEST_CASE("model round-trips") {
  TempDir dir;
  std::mt19937_64 rng(103);
  SUBCASE("linear models reproduce M exactly") {
    const MetricModel model(2, 3,
                            SymMatrix::FromDense(random_spd(rng, 5), 1e-9));
    save_model(dir.file("m.txt"), AnyModel(model));
    const AnyModel loaded = load_model(dir.file("m.txt"));
    REQUIRE(model_kind(loaded) == "linear");
    const auto& back = std::get<MetricModel>(loaded);
    CHECK(back.dim_x == 2);
    CHECK(SymMatrix::frobenius_distance(back.m, model.m) == 0.0);
  }
  SUBCASE("kernelized models reproduce distances bit for bit") {
    const DomainData x = random_domain(rng, 3, 4, 4);
    const DomainData y = random_domain(rng, 2, 4, 4);
    const auto [u, l] = estimate_bounds(x, y, 20.0, 80.0);
    SolverConfig config;
    config.max_cycles = 40;
    auto [model, report] =
        fit_kernelized(x, y, build_constraints(x, y, u, l), config,
                       KernelSpec::Rbf(), KernelSpec::Rbf());
    save_model(dir.file("k.txt"), AnyModel(model));
    const AnyModel loaded = load_model(dir.file("k.txt"));
    REQUIRE(model_kind(loaded) == "kernelized");
    const auto& back = std::get<KernelModel>(loaded);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd xq = random_vector(rng, 3);
      const Eigen::VectorXd yq = random_vector(rng, 2);
      CHECK(cross_distance_oos(back, xq, yq) ==
            cross_distance_oos(model, xq, yq));
    }
  }
  SUBCASE("corrupted headers and payloads never yield a model") {
    WriteFile(dir.file("bad1.txt"), "not-a-model 1\nkind linear\n");
    CHECK_THROWS_AS(load_model(dir.file("bad1.txt")), FormatError);
    WriteFile(dir.file("bad2.txt"), "mlhd-model 99\nkind linear\n");
    CHECK_THROWS_WITH_AS(load_model(dir.file("bad2.txt")),
                         doctest::Contains("version"), FormatError);
    WriteFile(dir.file("bad3.txt"),
              "mlhd-model 1\nkind linear\ndims 1 1\nmatrix M 2 2\n1 0\n");
    CHECK_THROWS_AS(load_model(dir.file("bad3.txt")), FormatError);
  }
}

TEST_CASE("auto loader sniffs the grammar") {
  TempDir dir;
  WriteFile(dir.file("a.csv"), "f1,label\n1.5,0\n");
  WriteFile(dir.file("a.svm"), "0 1:1.5\n");
  CHECK(load_domain_auto(dir.file("a.csv")).data.dim() == 1);
  CHECK(load_domain_auto(dir.file("a.svm")).data.dim() == 1);
}

TEST_SUITE_END();
