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

// Brute-force references for tests: explicit alignment enumeration,
// probability-space path sums, exhaustive decoding. None of this is used on
// production paths.

#include <vector>

#include "rnnt/joint.hpp"
#include "rnnt/networks.hpp"

namespace rnnt::oracle {

// Alignment symbols: 0..K-1 are labels, kNull is the null symbol.
inline constexpr int kNull = -1;
using Alignment = std::vector<int>;

// A monotone lattice path as its T-1+U interior moves: true is a label
// (vertical) move, false a null (horizontal) move. The terminal null at
// (T, U) is implicit.
using LatticePath = std::vector<bool>;

// All C(T-1+U, U) paths for T steps and U labels.
std::vector<LatticePath> enumerate_alignments(int steps, int target_length);

// Expands a path of moves into an alignment over the extended alphabet.
Alignment to_alignment(const LatticePath& path, const LabelSequence& targets);

// Removes null symbols.
LabelSequence collapse(const Alignment& alignment);

// Probability of one path, computed in probability space.
double path_probability(const JointLattice& lattice, const LatticePath& path);

// log of the summed path probabilities. Throws when the path count exceeds
// 10^6.
double brute_force_log_prob(const JointLattice& lattice, const LabelSequence& targets);

struct RankedSequence {
  LabelSequence labels;
  double log_prob;
  double score;  // log_prob / max(|y|, 1)
};

// Every label sequence with |y| <= max_len, scored by forward-backward on its
// own lattice and ranked with the beam search's tie-breaking rule. Throws
// when (K+1)^max_len exceeds 10^6.
std::vector<RankedSequence> exhaustive_decode(const Matrix& f, const PredictionNet& net,
                                              int max_len);

// Componentwise bounds on the prediction logits: g_0 lies in
// [first_lo, first_hi] and every later g_u in [rest_lo, rest_hi].
struct PredictionLogitBox {
  Vector first_lo, first_hi;
  Vector rest_lo, rest_hi;
};

// The box implied by |h| < 1 alone, valid for every network state.
PredictionLogitBox hidden_state_box(const PredictionNet& net);

// Upper bound on the length-normalised score of any sequence of exactly
// `length` labels whose prediction logits stay inside `box`.
double normalized_score_upper_bound(const Matrix& f, const PredictionLogitBox& box, int length);
double normalized_score_upper_bound(const Matrix& f, const PredictionNet& net, int length);

// Bound on the length-normalised score of any sequence with at least
// `min_length` labels (min_length >= 3).
double tail_score_upper_bound(const Matrix& f, const PredictionLogitBox& box, int min_length);
double tail_score_upper_bound(const Matrix& f, const PredictionNet& net, int min_length);

}  // namespace rnnt::oracle
