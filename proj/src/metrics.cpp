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

#include "posepaste/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

namespace posepaste {

void validate(const EvalSet& e) {
  const auto q = static_cast<std::size_t>(e.queries());
  const auto g = static_cast<std::size_t>(e.gallery());
  if (e.query_ids.size() != q || e.query_cams.size() != q)
    throw ContractViolation("query labels do not match the distance matrix rows");
  if (e.gallery_ids.size() != g || e.gallery_cams.size() != g)
    throw ContractViolation("gallery labels do not match the distance matrix columns");
  if (!e.distances.allFinite()) throw ContractViolation("distance matrix has non-finite entries");
}

double EvalReport::rank(std::size_t k) const {
  if (k == 0 || k > cmc.size()) throw ParameterError("rank " + std::to_string(k) + " outside computed CMC");
  return cmc[k - 1];
}

EvalReport evaluate(const EvalSet& e, std::size_t max_rank, Protocol protocol) {
  validate(e);
  if (max_rank == 0) throw ParameterError("rank must be >= 1");
  EvalReport report;
  report.cmc.assign(max_rank, 0.0);
  double ap_sum = 0.0;

  const Eigen::Index g = e.gallery();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(g));
  for (Eigen::Index qi = 0; qi < e.queries(); ++qi) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return e.distances(qi, a) < e.distances(qi, b); });

    const int qid = e.query_ids[qi];
    const int qcam = e.query_cams[qi];
    std::size_t rank = 0;  // 1-based position among kept entries
    std::size_t hits = 0;
    std::size_t first_hit = 0;
    double precision_sum = 0.0;
    for (Eigen::Index gi : order) {
      const int gid = e.gallery_ids[gi];
      if (gid < 0) continue;
      if (protocol == Protocol::market && gid == qid && e.gallery_cams[gi] == qcam) continue;
      ++rank;
      if (gid != qid) continue;
      ++hits;
      if (hits == 1) first_hit = rank;
      precision_sum += static_cast<double>(hits) / static_cast<double>(rank);
    }
    if (hits == 0) {
      report.invalid_queries.push_back(static_cast<std::size_t>(qi));
      continue;
    }
    ++report.valid_queries;
    for (std::size_t k = first_hit; k <= max_rank; ++k) report.cmc[k - 1] += 1.0;
    ap_sum += precision_sum / static_cast<double>(hits);
  }

  if (report.valid_queries == 0) throw Error("no query has a valid gallery match");
  const double n = static_cast<double>(report.valid_queries);
  for (double& c : report.cmc) c /= n;
  report.mean_ap = ap_sum / n;
  return report;
}

double rank_k(const EvalSet& e, std::size_t k, Protocol protocol) { return evaluate(e, k, protocol).rank(k); }

double mean_average_precision(const EvalSet& e, Protocol protocol) { return evaluate(e, 1, protocol).mean_ap; }

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

template <typename T>
T to_number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    T v;
    if constexpr (std::is_same_v<T, int>) v = std::stoi(s, &used);
    else v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto t = tokens(line);
    if (t.empty() || t[0].starts_with('#')) continue;
    fn(t, line_no);
  }
}

}  // namespace

EvalSet parse_distance_text(std::string_view text) {
  EvalSet e;
  bool have_ids = false, have_cams = false;
  std::vector<std::vector<double>> rows;
  for_each_line(text, [&](const std::vector<std::string>& t, std::size_t line_no) {
    if (t[0] == "gallery_ids" || t[0] == "gallery_cams") {
      auto& dst = t[0] == "gallery_ids" ? e.gallery_ids : e.gallery_cams;
      (t[0] == "gallery_ids" ? have_ids : have_cams) = true;
      for (std::size_t i = 1; i < t.size(); ++i) dst.push_back(to_number<int>(t[i], line_no));
    } else if (t[0] == "query") {
      if (t.size() < 3) throw ParseError("line " + std::to_string(line_no) + ": query needs id and camera");
      e.query_ids.push_back(to_number<int>(t[1], line_no));
      e.query_cams.push_back(to_number<int>(t[2], line_no));
      std::vector<double> row;
      for (std::size_t i = 3; i < t.size(); ++i) row.push_back(to_number<double>(t[i], line_no));
      rows.push_back(std::move(row));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + t[0] + "'");
    }
  });
  if (!have_ids || !have_cams) throw ParseError("distance file needs gallery_ids and gallery_cams lines");
  const std::size_t g = e.gallery_ids.size();
  e.distances.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(g));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != g)
      throw ParseError("query " + std::to_string(i) + ": expected " + std::to_string(g) + " distances, got " +
                       std::to_string(rows[i].size()));
    for (std::size_t j = 0; j < g; ++j) {
      if (!(rows[i][j] >= 0.0) || !std::isfinite(rows[i][j]))
        throw ParseError("query " + std::to_string(i) + ": distances must be finite and nonnegative");
      e.distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  validate(e);
  return e;
}

EvalSet read_distance_file(const std::filesystem::path& path) { return parse_distance_text(slurp(path)); }

EvalSet parse_embedding_text(std::string_view text) {
  EvalSet e;
  std::vector<std::vector<double>> queries, gallery;
  std::size_t dim = 0;
  for_each_line(text, [&](const std::vector<std::string>& t, std::size_t line_no) {
    if (t[0] != "query" && t[0] != "gallery")
      throw ParseError("line " + std::to_string(line_no) + ": role must be 'query' or 'gallery'");
    if (t.size() < 4) throw ParseError("line " + std::to_string(line_no) + ": needs id, camera and a vector");
    std::vector<double> v;
    for (std::size_t i = 3; i < t.size(); ++i) v.push_back(to_number<double>(t[i], line_no));
    if (dim == 0) dim = v.size();
    if (v.size() != dim) throw ParseError("line " + std::to_string(line_no) + ": embedding dimension mismatch");
    const bool is_query = t[0] == "query";
    (is_query ? e.query_ids : e.gallery_ids).push_back(to_number<int>(t[1], line_no));
    (is_query ? e.query_cams : e.gallery_cams).push_back(to_number<int>(t[2], line_no));
    (is_query ? queries : gallery).push_back(std::move(v));
  });
  auto to_matrix = [dim](const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < rows.size(); ++i)
      m.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(rows[i].data(), rows[i].size());
    return m;
  };
  e.distances = euclidean_distances(to_matrix(queries), to_matrix(gallery));
  validate(e);
  return e;
}

EvalSet read_embedding_file(const std::filesystem::path& path) { return parse_embedding_text(slurp(path)); }

}  // namespace posepaste
