// mlhd/dataio.cc

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

#include "mlhd/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace mlhd {

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string Trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ParseDouble(const std::string& cell, int line_no) {
  const std::string t = Trimmed(cell);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) +
                    ": non-numeric value '" + cell + "'");
  }
  if (used != t.size())
    throw DataError("line " + std::to_string(line_no) +
                    ": trailing characters in '" + cell + "'");
  return v;
}

int ParseLabel(const std::string& cell, int line_no) {
  const std::string t = Trimmed(cell);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": bad label '" +
                    cell + "'");
  }
  if (used != t.size())
    throw DataError("line " + std::to_string(line_no) + ": bad label '" +
                    cell + "'");
  return static_cast<int>(v);
}

// Rows arrive as (features, optional label, original row index); emit a
// DomainData with labeled rows first and the permutation applied.
LoadedDomain AssembleDomain(std::vector<Eigen::VectorXd> rows,
                            std::vector<std::optional<int>> labels, int dim) {
  if (rows.empty()) throw DataError("no data rows");
  std::vector<int> order(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_partition(order.begin(), order.end(),
                        [&labels](int i) { return labels[i].has_value(); });

  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(rows.size()));
  std::vector<int> packed_labels;
  std::vector<int> row_order;
  row_order.reserve(rows.size());
  Eigen::Index col = 0;
  for (int i : order) {
    m.col(col++) = rows[i];
    if (labels[i].has_value()) packed_labels.push_back(*labels[i]);
    row_order.push_back(i);
  }
  return {DomainData(std::move(m), std::move(packed_labels)),
          std::move(row_order)};
}

}  // namespace

LoadedDomain load_dense_csv(const std::string& path,
                            const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": missing header");
  const std::vector<std::string> header = SplitCsvLine(line);
  int label_idx = -1;
  std::vector<int> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!label_column.empty() && Trimmed(header[c]) == label_column)
      label_idx = static_cast<int>(c);
    else
      feature_cols.push_back(static_cast<int>(c));
  }
  if (!label_column.empty() && label_idx < 0)
    throw DataError(path + ": label column '" + label_column +
                    "' not in header");
  const int dim = static_cast<int>(feature_cols.size());
  if (dim == 0) throw DataError(path + ": no feature columns");

  std::vector<Eigen::VectorXd> rows;
  std::vector<std::optional<int>> labels;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trimmed(line).empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " cells, found " +
                      std::to_string(cells.size()));
    Eigen::VectorXd v(dim);
    for (int k = 0; k < dim; ++k)
      v[k] = ParseDouble(cells[feature_cols[k]], line_no);
    rows.push_back(std::move(v));
    if (label_idx >= 0 && !Trimmed(cells[label_idx]).empty())
      labels.emplace_back(ParseLabel(cells[label_idx], line_no));
    else
      labels.emplace_back(std::nullopt);
  }
  return AssembleDomain(std::move(rows), std::move(labels), dim);
}

LoadedDomain load_sparse(const std::string& path,
                         SparseLabelPosition label_position,
                         int dim_override) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::vector<std::vector<std::pair<int, double>>> entries;
  std::vector<std::optional<int>> labels;
  int max_index = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trimmed(line).empty()) continue;
    std::istringstream is(line);
    std::string token;
    std::vector<std::pair<int, double>> row;
    bool first = true;
    int prev_index = 0;
    std::optional<int> label;
    while (is >> token) {
      const auto colon = token.find(':');
      if (first && label_position == SparseLabelPosition::kFirst) {
        if (colon != std::string::npos)
          throw DataError("line " + std::to_string(line_no) +
                          ": expected a leading label");
        label = ParseLabel(token, line_no);
        first = false;
        continue;
      }
      first = false;
      if (colon == std::string::npos || colon == 0 ||
          colon + 1 == token.size())
        throw DataError("line " + std::to_string(line_no) +
                        ": malformed pair '" + token + "'");
      const int index = ParseLabel(token.substr(0, colon), line_no);
      const double value = ParseDouble(token.substr(colon + 1), line_no);
      if (index < 1)
        throw DataError("line " + std::to_string(line_no) +
                        ": indices are 1-based, got " + std::to_string(index));
      if (index <= prev_index)
        throw DataError("line " + std::to_string(line_no) +
                        ": indices must be ascending");
      prev_index = index;
      max_index = std::max(max_index, index);
      row.emplace_back(index, value);
    }
    if (label_position == SparseLabelPosition::kFirst && !label.has_value())
      throw DataError("line " + std::to_string(line_no) + ": missing label");
    entries.push_back(std::move(row));
    labels.push_back(label);
  }
  if (entries.empty()) throw DataError(path + ": no data lines");

  int dim = dim_override > 0 ? dim_override : max_index;
  if (dim < max_index)
    throw DataError(path + ": dimension override " + std::to_string(dim) +
                    " below max index " + std::to_string(max_index));
  if (dim == 0) throw DataError(path + ": no features present");

  std::vector<Eigen::VectorXd> rows;
  rows.reserve(entries.size());
  for (const auto& row : entries) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (const auto& [index, value] : row) v[index - 1] = value;
    rows.push_back(std::move(v));
  }
  return AssembleDomain(std::move(rows), std::move(labels), dim);
}

LoadedDomain load_domain_auto(const std::string& path,
                              const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string first, second;
  std::getline(in, first);
  std::getline(in, second);
  in.close();
  const bool sparse = second.find(':') != std::string::npos ||
                      (second.empty() && first.find(':') != std::string::npos);
  if (sparse) return load_sparse(path, SparseLabelPosition::kFirst);
  return load_dense_csv(path, label_column);
}

void write_dense_csv(const std::string& path, const DomainData& data,
                     const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (int k = 0; k < data.dim(); ++k) out << "f" << (k + 1) << ",";
  out << label_column << "\n";
  char buf[40];
  for (int i = 0; i < data.count(); ++i) {
    for (int k = 0; k < data.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", data.samples()(k, i));
      out << buf << ",";
    }
    if (i < data.labeled_count()) out << data.label(i);
    out << "\n";
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

PcaResult pca_reduce(const DomainData& x, int d) {
  if (d < 1) throw InputError("pca_reduce: d must be >= 1");
  if (d > std::min(x.dim(), x.count()))
    throw InputError("pca_reduce: d exceeds min(dim, sample count)");

  const Eigen::VectorXd mean = x.samples().rowwise().mean();
  const Eigen::MatrixXd centered = x.samples().colwise() - mean;
  const double denom = std::max(x.count() - 1, 1);
  const Eigen::MatrixXd cov = centered * centered.transpose() / denom;
  const EigenPair ep = eig_sym(SymMatrix::FromDense(cov, 1e-9));

  Eigen::MatrixXd proj = ep.eigenvectors.leftCols(d);
  for (int k = 0; k < d; ++k) {
    int arg = 0;
    proj.col(k).cwiseAbs().maxCoeff(&arg);
    if (proj(arg, k) < 0.0) proj.col(k) = -proj.col(k);
  }
  Eigen::MatrixXd reduced = proj.transpose() * centered;
  return {DomainData(std::move(reduced), x.labels()), std::move(proj), mean,
          ep.eigenvalues.head(d)};
}

}  // namespace mlhd
