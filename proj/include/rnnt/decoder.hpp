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

// Fixed-width prefix beam search over output sequences with
// length-normalised final selection and incremental prediction-network
// evaluation.

#include <memory>
#include <vector>

#include "rnnt/networks.hpp"

namespace rnnt {

// Prediction-network state after feeding (null, y_1..y_n), and g_n.
struct PredictionEntry {
  LstmState state;
  Vector logits;
};

struct Hypothesis {
  LabelSequence labels;
  double log_prob = 0.0;
  std::shared_ptr<const PredictionEntry> prediction;

  double score() const;
};

// log_prob / max(|y|, 1).
double length_normalized_score(double log_prob, std::size_t length);

// Deterministic ordering of label sequences: shorter first, then
// lexicographic.
bool label_order(const LabelSequence& a, const LabelSequence& b);

// True when (score_a, a) ranks strictly before (score_b, b): higher score
// first, ties broken by label_order.
bool ranks_before(double score_a, const LabelSequence& a, double score_b, const LabelSequence& b);

struct BeamSearchOptions {
  int beam_width = 100;
  int nbest = 1;
  // When false every prediction vector is recomputed from the empty
  // sequence. Used to check the incremental path.
  bool cache_predictions = true;
};

struct BeamSearchTrace {
  std::vector<std::size_t> surviving;  // |B| after pruning, per step
  std::size_t prediction_steps = 0;    // one-step prediction network evaluations
};

// Returns up to `nbest` hypotheses ranked by length-normalised log
// probability. `f` is (K+1) x T.
std::vector<Hypothesis> beam_search(const Matrix& f, const PredictionNet& net,
                                    const BeamSearchOptions& options,
                                    BeamSearchTrace* trace = nullptr);

}  // namespace rnnt
