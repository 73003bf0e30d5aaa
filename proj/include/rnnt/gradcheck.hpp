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

// End-to-end check of the analytic transducer gradient against central
// finite differences of the loss, one parameter entry at a time.

#include <cstdint>
#include <string>

#include "rnnt/transducer.hpp"

namespace rnnt {

struct GradcheckSpec {
  ModelShape shape{2, 2, 3, 3};
  int steps = 4;          // T, at most 4
  int target_length = 3;  // U, at most 3
  double init_range = 0.5;
  std::uint64_t seed = 42;

  // Throws InputError unless T <= 4, U <= 3 and hidden sizes <= 4.
  void check() const;
};

struct GradcheckInstance {
  Transducer model;
  Matrix features;
  LabelSequence targets;
};

GradcheckInstance make_gradcheck_instance(const GradcheckSpec& spec);

struct GradcheckOptions {
  double epsilon = 1e-5;
  double tolerance = 1e-5;
  // Relative error is |a - n| / max(|a|, |n|, floor).
  double denominator_floor = 1e-4;
  // Fault injection: scale the analytic gradient of one named array.
  std::string corrupt_array;
  double corrupt_scale = 1.0;
};

struct GradcheckReport {
  bool passed = false;
  std::size_t checked = 0;
  double worst_relative_error = 0.0;
  std::string worst_array;
  Eigen::Index worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  double loss = 0.0;
};

GradcheckReport gradient_check(const GradcheckInstance& instance,
                               const GradcheckOptions& options = {});

}  // namespace rnnt
