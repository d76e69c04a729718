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
#include <map>
#include <string>

#include "posepaste/pipeline.hpp"

namespace posepaste {

/// Summary histograms of a synthesis run. Residual and donor histograms only
/// count composites that were written.
struct StatsReport {
  std::size_t rows = 0;
  std::size_t fakes = 0;
  std::size_t skips = 0;
  std::map<std::string, std::size_t> pedestrian_orientations;
  std::map<double, std::size_t> slope_residuals;
  std::map<double, std::size_t> height_residuals;
  std::map<int, std::size_t> relaxation_levels;
  std::map<std::string, std::size_t> donor_reuse;
  std::map<std::string, std::size_t> skip_reasons;

  std::string to_text() const;
  std::string to_json() const;
};

StatsReport stats(const SynthesisManifest& manifest);

}  // namespace posepaste
