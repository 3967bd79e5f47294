// mlhd/model_io.cc

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

#include "mlhd/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mlhd {

namespace {

constexpr const char* kMagic = "mlhd-model";

void WriteMatrix(std::ostream& out, const std::string& name,
                 const Eigen::MatrixXd& m) {
  out << "matrix " << name << " " << m.rows() << " " << m.cols() << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << buf << (j + 1 < m.cols() ? " " : "");
    }
    out << "\n";
  }
}

void WriteKernelSpec(std::ostream& out, const std::string& name,
                     const KernelSpec& spec) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", spec.gamma);
  out << name << " " << (spec.kind == KernelKind::kLinear ? "linear" : "rbf")
      << " " << buf << "\n";
}

class Reader {
 public:
  explicit Reader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw FormatError("cannot open model file '" + path + "'");
  }

  std::string Token() {
    std::string t;
    if (!(in_ >> t))
      throw FormatError(path_ + ": truncated model file");
    return t;
  }

  void Expect(const std::string& expected) {
    const std::string t = Token();
    if (t != expected)
      throw FormatError(path_ + ": expected '" + expected + "', found '" + t +
                        "'");
  }

  int Int() {
    try {
      return std::stoi(Token());
    } catch (const std::exception&) {
      throw FormatError(path_ + ": expected an integer");
    }
  }

  double Double() {
    try {
      return std::stod(Token());
    } catch (const std::exception&) {
      throw FormatError(path_ + ": expected a number");
    }
  }

  Eigen::MatrixXd Matrix(const std::string& name) {
    Expect("matrix");
    Expect(name);
    const int rows = Int();
    const int cols = Int();
    if (rows < 1 || cols < 1)
      throw FormatError(path_ + ": bad shape for matrix " + name);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = Double();
    return m;
  }

  KernelSpec Spec(const std::string& name) {
    Expect(name);
    const std::string kind = Token();
    KernelSpec spec;
    if (kind == "linear")
      spec.kind = KernelKind::kLinear;
    else if (kind == "rbf")
      spec.kind = KernelKind::kRbf;
    else
      throw FormatError(path_ + ": unknown kernel kind '" + kind + "'");
    spec.gamma = Double();
    return spec;
  }

 private:
  std::string path_;
  std::ifstream in_;
};

}  // namespace

std::string model_kind(const AnyModel& model) {
  return std::holds_alternative<MetricModel>(model) ? "linear" : "kernelized";
}

void save_model(const std::string& path, const AnyModel& model) {
  std::ostringstream out;
  out << kMagic << " " << kModelFormatVersion << "\n";
  if (const auto* linear = std::get_if<MetricModel>(&model)) {
    out << "kind linear\n";
    out << "dims " << linear->dim_x << " " << linear->dim_y << "\n";
    WriteMatrix(out, "M", linear->m.dense());
  } else {
    const auto& k = std::get<KernelModel>(model);
    out << "kind kernelized\n";
    out << "dims " << k.dim_x() << " " << k.dim_y() << "\n";
    out << "counts " << k.n_x() << " " << k.n_y() << "\n";
    WriteKernelSpec(out, "kernel_x", k.spec_x);
    WriteKernelSpec(out, "kernel_y", k.spec_y);
    char buf[96];
    std::snprintf(buf, sizeof buf, "ridge %.17g %.17g\n", k.ridge_x, k.ridge_y);
    out << buf;
    WriteMatrix(out, "train_x", k.train_x);
    WriteMatrix(out, "train_y", k.train_y);
    WriteMatrix(out, "k_inv_sqrt_x", k.k_inv_sqrt_x);
    WriteMatrix(out, "k_inv_sqrt_y", k.k_inv_sqrt_y);
    WriteMatrix(out, "L", k.l.dense());
  }
  out << "end\n";

  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write model file '" + path + "'");
  file << out.str();
  if (!file) throw DataError("write failed for model file '" + path + "'");
}

AnyModel load_model(const std::string& path) {
  Reader reader(path);
  reader.Expect(kMagic);
  const int version = reader.Int();
  if (version != kModelFormatVersion)
    throw FormatError(path + ": unsupported model format version " +
                      std::to_string(version));
  reader.Expect("kind");
  const std::string kind = reader.Token();
  if (kind == "linear") {
    reader.Expect("dims");
    const int dx = reader.Int();
    const int dy = reader.Int();
    const Eigen::MatrixXd m = reader.Matrix("M");
    if (m.rows() != dx + dy)
      throw FormatError(path + ": matrix order disagrees with dims");
    reader.Expect("end");
    return MetricModel(dx, dy, SymMatrix::FromDense(m, 0.0));
  }
  if (kind != "kernelized")
    throw FormatError(path + ": unknown model kind '" + kind + "'");

  reader.Expect("dims");
  const int dx = reader.Int();
  const int dy = reader.Int();
  reader.Expect("counts");
  const int nx = reader.Int();
  const int ny = reader.Int();
  KernelModel k;
  k.spec_x = reader.Spec("kernel_x");
  k.spec_y = reader.Spec("kernel_y");
  reader.Expect("ridge");
  k.ridge_x = reader.Double();
  k.ridge_y = reader.Double();
  k.train_x = reader.Matrix("train_x");
  k.train_y = reader.Matrix("train_y");
  k.k_inv_sqrt_x = reader.Matrix("k_inv_sqrt_x");
  k.k_inv_sqrt_y = reader.Matrix("k_inv_sqrt_y");
  const Eigen::MatrixXd l = reader.Matrix("L");
  reader.Expect("end");
  if (k.train_x.rows() != dx || k.train_x.cols() != nx ||
      k.train_y.rows() != dy || k.train_y.cols() != ny ||
      k.k_inv_sqrt_x.rows() != nx || k.k_inv_sqrt_y.rows() != ny ||
      l.rows() != nx + ny)
    throw FormatError(path + ": payload shapes are inconsistent");
  k.l = SymMatrix::FromDense(l, 0.0);
  return k;
}

}  // namespace mlhd
