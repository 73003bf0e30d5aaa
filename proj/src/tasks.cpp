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

#include "rnnt/tasks.hpp"

#include <cstdio>

#include "rnnt/errors.hpp"

namespace rnnt {

TaskKind parse_task(const std::string& name) {
  if (name == "copy") return TaskKind::kCopy;
  if (name == "double") return TaskKind::kDouble;
  if (name == "dedup") return TaskKind::kDedup;
  throw InputError("unknown task '" + name + "' (expected copy, double or dedup)");
}

std::string task_name(TaskKind task) {
  switch (task) {
    case TaskKind::kCopy:
      return "copy";
    case TaskKind::kDouble:
      return "double";
    case TaskKind::kDedup:
      return "dedup";
  }
  return "copy";
}

LabelSequence task_targets(TaskKind task, const LabelSequence& symbols) {
  LabelSequence targets;
  switch (task) {
    case TaskKind::kCopy:
      targets = symbols;
      break;
    case TaskKind::kDouble:
      for (int s : symbols) targets.insert(targets.end(), {s, s});
      break;
    case TaskKind::kDedup:
      for (int s : symbols) {
        if (targets.empty() || targets.back() != s) targets.push_back(s);
      }
      break;
  }
  return targets;
}

Dataset generate_task(const TaskSpec& spec) {
  if (spec.alphabet_size < 2) throw InputError("generate_task: alphabet size must be at least 2");
  if (spec.min_length < 1 || spec.max_length < spec.min_length) {
    throw InputError("generate_task: need 1 <= min_length <= max_length");
  }
  if (spec.count < 0) throw InputError("generate_task: count must be non-negative");

  Rng rng(spec.seed);
  const std::string prefix = spec.id_prefix.empty() ? task_name(spec.task) : spec.id_prefix;
  Dataset dataset;
  dataset.feature_dim = spec.alphabet_size;
  dataset.alphabet_size = spec.alphabet_size;
  dataset.records.reserve(spec.count);
  const auto span = static_cast<std::uint64_t>(spec.max_length - spec.min_length + 1);
  for (int i = 0; i < spec.count; ++i) {
    const int length = spec.min_length + static_cast<int>(rng.uniform_index(span));
    LabelSequence symbols(length);
    for (int& s : symbols) s = static_cast<int>(rng.uniform_index(spec.alphabet_size));

    DatasetRecord record;
    char id[64];
    std::snprintf(id, sizeof(id), "%s-%06d", prefix.c_str(), i);
    record.id = id;
    record.features.resize(spec.alphabet_size, length);
    for (int t = 0; t < length; ++t) {
      for (int d = 0; d < spec.alphabet_size; ++d) {
        record.features(d, t) = (d == symbols[t] ? 1.0 : 0.0) + spec.feature_noise * rng.normal();
      }
    }
    record.labels = task_targets(spec.task, symbols);
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

}  // namespace rnnt
