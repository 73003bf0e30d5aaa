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

// Binary checkpoint file:
//
//   "RNNTCKPT" | u32 version | string config | u64 epoch | u64 best_epoch |
//   u64 epochs_since_improvement | f64 best_metric | string rng_state |
//   u32 alphabet_size, feature_dim, prediction_hidden, transcription_hidden |
//   u32 array count | { string name | u64 rows | u64 cols | f64 data[] }...
//
// Integers and doubles are little-endian; strings are a u32 byte count
// followed by the bytes. Arrays are column-major: first "model/<name>" for
// every parameter in declaration order, then "velocity/<name>".

#include <iosfwd>
#include <string>

#include "rnnt/trainer.hpp"

namespace rnnt {

void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace rnnt
