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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "posepaste/pose.hpp"
#include "posepaste/random.hpp"

namespace posepaste {

/// Donor indices in ascending order.
using IndexSet = std::vector<std::size_t>;

struct MatchResult {
  std::size_t pedestrian_index = 0;
  std::size_t donor_index = 0;
  bool orientation_matched = false;
  double slope_residual_q = 0.0;   // circular distance between bucketed slopes
  double height_residual_q = 0.0;  // |height_q difference|
  int relaxation_level = 0;        // 1 when no donor shared the orientation

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Shortest angular distance between two slopes, in [0, 180].
double circular_distance(double a_deg, double b_deg);

IndexSet find_equal_orientation(std::span<const PoseDescriptor> donors, Orientation t);

/// Members of pool at minimal circular distance from slope_q. Empty pool is a
/// ContractViolation.
IndexSet find_nearest_slope(std::span<const PoseDescriptor> donors, const IndexSet& pool, double slope_q);

IndexSet find_nearest_height(std::span<const PoseDescriptor> donors, const IndexSet& pool, double height_q);

/// Lexicographic selection: equal orientation, then nearest slope, then
/// nearest height, then a uniform draw from what remains.
MatchResult match_one(const PoseDescriptor& p, std::span<const PoseDescriptor> donors, RandomStream& rng);

/// Per-pedestrian draws come from RandomStream::substream(seed, i), so the
/// result does not depend on jobs.
std::vector<MatchResult> match_all(std::span<const PoseDescriptor> pedestrians,
                                   std::span<const PoseDescriptor> donors, std::uint64_t seed,
                                   unsigned jobs = 1);

}  // namespace posepaste
