// Copyright 2026 The posepaste Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include "posepaste/types.hpp"

namespace posepaste {

/// Query x gallery distances with identity and camera labels.
/// Negative gallery identities are junk and never ranked.
struct EvalSet {
  Eigen::MatrixXd distances;
  std::vector<int> query_ids;
  std::vector<int> gallery_ids;
  std::vector<int> query_cams;
  std::vector<int> gallery_cams;

  Eigen::Index queries() const { return distances.rows(); }
  Eigen::Index gallery() const { return distances.cols(); }
};

enum class Protocol {
  market,  // also drop gallery entries sharing both identity and camera with the query
  all,     // only junk identities are dropped
};

/// Throws ContractViolation on label/matrix size mismatch or non-finite distances.
void validate(const EvalSet& e);

struct EvalReport {
  std::vector<double> cmc;  // cmc[k-1] = Rank-k
  double mean_ap = 0.0;
  std::size_t valid_queries = 0;
  std::vector<std::size_t> invalid_queries;  // queries with no valid match; excluded

  double rank(std::size_t k) const;
};

/// Ranks the gallery for every query by ascending distance (ties by gallery
/// index), applies the protocol exclusions, and accumulates CMC up to max_rank
/// plus mAP. Throws Error if no query has a valid match.
EvalReport evaluate(const EvalSet& e, std::size_t max_rank, Protocol protocol = Protocol::market);

double rank_k(const EvalSet& e, std::size_t k, Protocol protocol = Protocol::market);
double mean_average_precision(const EvalSet& e, Protocol protocol = Protocol::market);

/// Pairwise Euclidean distances between the rows of a and the rows of b.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> euclidean_distances(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix d(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    d.row(i) = (b.rowwise() - a.row(i)).rowwise().norm().transpose();
  return d;
}

/// Distance file:
///   gallery_ids   <id> <id> ...
///   gallery_cams  <cam> <cam> ...
///   query <id> <cam> <d_1> ... <d_G>      (one line per query)
/// Fields are whitespace-separated; '#' starts a comment line.
EvalSet parse_distance_text(std::string_view text);
EvalSet read_distance_file(const std::filesystem::path& path);

/// Embedding file: "query|gallery <id> <cam> <v_1> ... <v_D>" per line.
/// Distances are Euclidean.
EvalSet parse_embedding_text(std::string_view text);
EvalSet read_embedding_file(const std::filesystem::path& path);

}  // namespace posepaste
