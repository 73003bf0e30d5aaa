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

#include "rnnt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rnnt/errors.hpp"

namespace rnnt {

std::size_t edit_distance(const LabelSequence& a, const LabelSequence& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      diagonal = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, substitute});
    }
  }
  return row[b.size()];
}

double error_rate(const std::vector<LabelSequence>& outputs,
                  const std::vector<LabelSequence>& targets) {
  if (outputs.size() != targets.size()) {
    throw Error("error_rate: " + std::to_string(outputs.size()) + " outputs for " +
                std::to_string(targets.size()) + " targets");
  }
  std::size_t errors = 0;
  std::size_t length = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    errors += edit_distance(outputs[i], targets[i]);
    length += targets[i].size();
  }
  if (length == 0) throw Error("error_rate: total target length is zero");
  return 100.0 * static_cast<double>(errors) / static_cast<double>(length);
}

double bits_per_target(double total_nats, std::size_t total_labels) {
  if (total_labels == 0) throw Error("bits_per_target: no target labels");
  return total_nats / std::numbers::ln2 / static_cast<double>(total_labels);
}

}  // namespace rnnt
