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

// Forward-backward over the output lattice, in log space, and the gradients
// of L = -ln Pr(y*|x) with respect to the transcription and prediction
// logits.

#include "rnnt/joint.hpp"

namespace rnnt {

// log alpha and log beta, both T x (U+1) with 0-based t.
struct AlignmentGrid {
  Matrix log_alpha;
  Matrix log_beta;
  double log_prob = kLogZero;  // log Pr(y*|x)
};

struct ForwardResult {
  Matrix log_alpha;
  double log_prob = kLogZero;
};

ForwardResult forward_pass(const JointLattice& lattice);

Matrix backward_pass(const JointLattice& lattice);

AlignmentGrid forward_backward(const JointLattice& lattice);

// logsumexp of log alpha + log beta over each anti-diagonal t + u = n, for
// n = 0 .. T+U-1 (0-based t). Every entry equals log Pr(y*|x).
Vector diagonal_log_sums(const Matrix& log_alpha, const Matrix& log_beta);

struct LossGradients {
  double loss = 0.0;
  Matrix d_transcription;  // dL/df, (K+1) x T
  Matrix d_prediction;     // dL/dg, (K+1) x (U+1)
};

// Fuses dL/dPr(k|t,u) with the softmax Jacobian. Throws
// ZeroProbabilityError when the target sequence has zero probability.
LossGradients loss_and_grads(const JointLattice& lattice, const AlignmentGrid& grid,
                             const LabelSequence& targets);

}  // namespace rnnt
