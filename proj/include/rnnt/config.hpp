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

// Flat "key = value" run configuration. '#' starts a comment. Every key has
// a default and unknown keys are rejected.

#include <string>

#include "rnnt/tasks.hpp"
#include "rnnt/trainer.hpp"

namespace rnnt {

struct RunConfig {
  ModelShape shape;
  TrainConfig train;
  int beam_width = 100;
  int nbest = 1;
  TaskKind task = TaskKind::kCopy;
  int count = 200;
  int min_length = 4;
  int max_length = 12;

  void check() const;
};

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig read_config_file(const std::string& path);

// Canonical text form; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

// Only the TrainConfig keys, as echoed into checkpoints.
std::string format_train_config(const TrainConfig& config);

}  // namespace rnnt
