// Copyright 2026 The rnnt Authors. All Rights Reserved.
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
#include <vector>

#include "rnnt/networks.hpp"

namespace rnnt {

// Levenshtein distance with unit insert, delete and substitute costs.
std::size_t edit_distance(const LabelSequence& a, const LabelSequence& b);

// Summed edit distance over summed target length, as a percentage.
double error_rate(const std::vector<LabelSequence>& outputs,
                  const std::vector<LabelSequence>& targets);

// Total log-loss in nats converted to bits per target label.
double bits_per_target(double total_nats, std::size_t total_labels);

}  // namespace rnnt
