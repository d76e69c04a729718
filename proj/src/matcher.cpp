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

#include "posepaste/matcher.hpp"

#include <cmath>
#include <limits>

#include "parallel.hpp"

namespace posepaste {
namespace {

template <typename Distance>
IndexSet argmin_set(const IndexSet& pool, Distance&& distance, const char* what) {
  if (pool.empty()) throw ContractViolation(std::string(what) + " called with an empty pool");
  IndexSet best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i : pool) {
    const double d = distance(i);
    if (d < best_d) {
      best_d = d;
      best.clear();
    }
    if (d == best_d) best.push_back(i);
  }
  return best;
}

}  // namespace

double circular_distance(double a_deg, double b_deg) {
  const double d = std::fmod(std::abs(a_deg - b_deg), 360.0);
  return std::min(d, 360.0 - d);
}

IndexSet find_equal_orientation(std::span<const PoseDescriptor> donors, Orientation t) {
  IndexSet out;
  for (std::size_t i = 0; i < donors.size(); ++i)
    if (donors[i].orientation == t) out.push_back(i);
  return out;
}

IndexSet find_nearest_slope(std::span<const PoseDescriptor> donors, const IndexSet& pool, double slope_q) {
  return argmin_set(
      pool, [&](std::size_t i) { return circular_distance(donors[i].slope_q, slope_q); }, "find_nearest_slope");
}

IndexSet find_nearest_height(std::span<const PoseDescriptor> donors, const IndexSet& pool, double height_q) {
  return argmin_set(
      pool, [&](std::size_t i) { return std::abs(donors[i].height_q - height_q); }, "find_nearest_height");
}

MatchResult match_one(const PoseDescriptor& p, std::span<const PoseDescriptor> donors, RandomStream& rng) {
  if (donors.empty()) throw ContractViolation("match_one requires at least one donor");
  MatchResult r;
  IndexSet pool = find_equal_orientation(donors, p.orientation);
  if (pool.empty()) {
    r.relaxation_level = 1;
    pool.resize(donors.size());
    for (std::size_t i = 0; i < donors.size(); ++i) pool[i] = i;
  }
  pool = find_nearest_slope(donors, pool, p.slope_q);
  pool = find_nearest_height(donors, pool, p.height_q);
  r.donor_index = pool[rng.uniform_index(pool.size())];

  const PoseDescriptor& d = donors[r.donor_index];
  r.orientation_matched = d.orientation == p.orientation;
  r.slope_residual_q = circular_distance(d.slope_q, p.slope_q);
  r.height_residual_q = std::abs(d.height_q - p.height_q);
  return r;
}

std::vector<MatchResult> match_all(std::span<const PoseDescriptor> pedestrians,
                                   std::span<const PoseDescriptor> donors, std::uint64_t seed, unsigned jobs) {
  if (donors.empty()) throw ContractViolation("match_all requires at least one donor");
  std::vector<MatchResult> out(pedestrians.size());
  detail::parallel_for(pedestrians.size(), jobs, [&](std::size_t i) {
    RandomStream rng = RandomStream::substream(seed, i);
    out[i] = match_one(pedestrians[i], donors, rng);
    out[i].pedestrian_index = i;
  });
  return out;
}

}  // namespace posepaste
