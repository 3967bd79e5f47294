// mlhd/dataio.hpp
//
// Dataset ingestion and preprocessing: dense CSV with an optional label
// column, sparse index:value lines, PCA reduction, and the CSV writer
// used by the toy generator and the embedding dump.
//
// CSV grammar: comma-delimited, '.' decimal separator, UTF-8, mandatory
// header. The label column (if any) holds integer class ids; empty cells
// mark unlabeled rows. Sparse grammar: optional leading integer label,
// then 1-based ascending "index:value" pairs.

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

#ifndef MLHD_DATAIO_HPP_
#define MLHD_DATAIO_HPP_

#include <string>
#include <vector>

#include "mlhd/domain.hpp"

namespace mlhd {

/// A loaded domain plus the original data-row index of each column;
/// loaders move labeled rows ahead of unlabeled ones and record the
/// permutation here.
struct LoadedDomain {
  DomainData data;
  std::vector<int> row_order;
};

/// Dense CSV; label_column names the label header ("" loads every column
/// as a feature and leaves all samples unlabeled). Parse errors carry the
/// 1-based line number.
LoadedDomain load_dense_csv(const std::string& path,
                            const std::string& label_column);

enum class SparseLabelPosition { kFirst, kNone };

/// Sparse lines, densified. The largest index defines the dimension
/// unless dim_override > 0.
LoadedDomain load_sparse(const std::string& path,
                         SparseLabelPosition label_position,
                         int dim_override = 0);

/// Loads either grammar, sniffing the first data line for ':' pairs.
LoadedDomain load_domain_auto(const std::string& path,
                              const std::string& label_column = "label");

/// Writer matching load_dense_csv; feature headers f1..fD. Samples with
/// labels write them, the rest leave the cell empty. Values are printed
/// round-trip exactly.
void write_dense_csv(const std::string& path, const DomainData& data,
                     const std::string& label_column = "label");

struct PcaResult {
  DomainData data;             // d x N, labels carried over
  Eigen::MatrixXd projection;  // dim x d, orthonormal columns
  Eigen::VectorXd mean;        // dim
  Eigen::VectorXd variances;   // d, descending
};

/// Centers, projects onto the top-d principal directions (descending
/// variance). Direction signs are fixed: largest-magnitude entry
/// positive.
PcaResult pca_reduce(const DomainData& x, int d);

}  // namespace mlhd

#endif  // MLHD_DATAIO_HPP_
