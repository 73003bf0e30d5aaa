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

// Synthetic transduction tasks. Inputs are random symbol strings encoded as
// one-hot vectors plus Gaussian noise (std 0.1); targets are:
//   copy   the symbols themselves (U = T)
//   double every symbol twice (U = 2T)
//   dedup  adjacent repeats collapsed (U <= T)

#include <cstdint>
#include <string>

#include "rnnt/dataset.hpp"

namespace rnnt {

enum class TaskKind { kCopy, kDouble, kDedup };

TaskKind parse_task(const std::string& name);
std::string task_name(TaskKind task);

LabelSequence task_targets(TaskKind task, const LabelSequence& symbols);

struct TaskSpec {
  TaskKind task = TaskKind::kCopy;
  int count = 200;
  int min_length = 4;
  int max_length = 12;
  int alphabet_size = 5;
  std::uint64_t seed = 1;
  double feature_noise = 0.1;
  std::string id_prefix;  // defaults to the task name
};

Dataset generate_task(const TaskSpec& spec);

}  // namespace rnnt
