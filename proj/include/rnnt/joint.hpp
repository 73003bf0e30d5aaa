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

// Output distribution Pr(k|t,u) = softmax(f_t + g_u) over the extended
// alphabet, laid out over the T x (U+1) output lattice.

#include <vector>

#include "rnnt/core_math.hpp"
#include "rnnt/networks.hpp"

namespace rnnt {

// Steps t are 0-based here: column t of f is transcription step t+1.
struct JointLattice {
  int steps = 0;          // T
  int target_length = 0;  // U
  int alphabet_size = 0;  // K; index K is null

  // log Pr(.|t,u) for every node, each a (K+1) x (U+1) matrix indexed by t.
  std::vector<Matrix> log_probs;
  // log Pr(null|t,u), T x (U+1).
  Matrix log_null;
  // log Pr(y_{u+1}|t,u), T x (U+1). Column U is kLogZero.
  Matrix log_label;

  int null_index() const { return alphabet_size; }
  Eigen::Ref<const Vector> distribution(int t, int u) const { return log_probs[t].col(u); }
};

// log Pr(.|t,u) for one lattice node.
Vector joint_log_prob(const Eigen::Ref<const Vector>& f_t, const Eigen::Ref<const Vector>& g_u,
                      ExpCounter* counter = nullptr);

// Builds the lattice from precomputed max-shifted exponentials of every f_t
// and g_u, so the exp count is (T + U + 1)(K + 1) instead of one softmax per
// node. `f` is (K+1) x T, `g` is (K+1) x (U+1).
JointLattice build_lattice(const Matrix& f, const Matrix& g, const LabelSequence& targets,
                           ExpCounter* counter = nullptr);

// Reference construction: an independent softmax at every node.
JointLattice build_lattice_naive(const Matrix& f, const Matrix& g, const LabelSequence& targets,
                                 ExpCounter* counter = nullptr);

}  // namespace rnnt
