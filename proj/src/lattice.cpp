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

#include "rnnt/lattice.hpp"

#include <cmath>

namespace rnnt {

namespace {

void check_lattice(const JointLattice& lattice) {
  if (lattice.steps <= 0 || lattice.target_length < 0 ||
      lattice.log_null.rows() != lattice.steps ||
      lattice.log_null.cols() != lattice.target_length + 1 ||
      lattice.log_label.rows() != lattice.steps ||
      lattice.log_label.cols() != lattice.target_length + 1 ||
      static_cast<int>(lattice.log_probs.size()) != lattice.steps) {
    throw DimensionError("malformed lattice");
  }
}

}  // namespace

ForwardResult forward_pass(const JointLattice& lattice) {
  check_lattice(lattice);
  const int T = lattice.steps;
  const int U = lattice.target_length;
  ForwardResult result;
  result.log_alpha = Matrix::Constant(T, U + 1, kLogZero);
  Matrix& alpha = result.log_alpha;
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      if (t == 0 && u == 0) {
        alpha(0, 0) = 0.0;
        continue;
      }
      const double horizontal =
          t > 0 ? alpha(t - 1, u) + lattice.log_null(t - 1, u) : kLogZero;
      const double vertical = u > 0 ? alpha(t, u - 1) + lattice.log_label(t, u - 1) : kLogZero;
      alpha(t, u) = log_add(horizontal, vertical);
    }
  }
  result.log_prob = alpha(T - 1, U) + lattice.log_null(T - 1, U);
  return result;
}

Matrix backward_pass(const JointLattice& lattice) {
  check_lattice(lattice);
  const int T = lattice.steps;
  const int U = lattice.target_length;
  Matrix beta = Matrix::Constant(T, U + 1, kLogZero);
  for (int t = T - 1; t >= 0; --t) {
    for (int u = U; u >= 0; --u) {
      if (t == T - 1 && u == U) {
        beta(t, u) = lattice.log_null(t, u);
        continue;
      }
      const double horizontal = t + 1 < T ? beta(t + 1, u) + lattice.log_null(t, u) : kLogZero;
      const double vertical = u < U ? beta(t, u + 1) + lattice.log_label(t, u) : kLogZero;
      beta(t, u) = log_add(horizontal, vertical);
    }
  }
  return beta;
}

AlignmentGrid forward_backward(const JointLattice& lattice) {
  ForwardResult forward = forward_pass(lattice);
  return {std::move(forward.log_alpha), backward_pass(lattice), forward.log_prob};
}

Vector diagonal_log_sums(const Matrix& log_alpha, const Matrix& log_beta) {
  if (log_alpha.rows() != log_beta.rows() || log_alpha.cols() != log_beta.cols()) {
    throw DimensionError("diagonal_log_sums: alpha and beta grids differ in shape");
  }
  const Eigen::Index T = log_alpha.rows();
  const Eigen::Index U = log_alpha.cols() - 1;
  Vector sums(T + U);
  for (Eigen::Index n = 0; n < T + U; ++n) {
    double total = kLogZero;
    for (Eigen::Index t = std::max<Eigen::Index>(0, n - U); t <= std::min(n, T - 1); ++t) {
      total = log_add(total, log_alpha(t, n - t) + log_beta(t, n - t));
    }
    sums(n) = total;
  }
  return sums;
}

LossGradients loss_and_grads(const JointLattice& lattice, const AlignmentGrid& grid,
                             const LabelSequence& targets) {
  check_lattice(lattice);
  const int T = lattice.steps;
  const int U = lattice.target_length;
  if (static_cast<int>(targets.size()) != U || grid.log_alpha.rows() != T ||
      grid.log_alpha.cols() != U + 1 || grid.log_beta.rows() != T ||
      grid.log_beta.cols() != U + 1) {
    throw DimensionError("loss_and_grads: grids do not match the lattice");
  }

  const double log_prob = grid.log_prob;
  if (!std::isfinite(log_prob)) {
    // Report the earliest node, in diagonal order, that no alignment reaches.
    int blocked_t = T - 1;
    int blocked_u = U;
    bool found = false;
    for (int n = 0; n < T + U && !found; ++n) {
      for (int t = std::max(0, n - U); t <= std::min(n, T - 1); ++t) {
        if (!std::isfinite(grid.log_alpha(t, n - t))) {
          blocked_t = t;
          blocked_u = n - t;
          found = true;
          break;
        }
      }
    }
    throw ZeroProbabilityError(
        blocked_t + 1, blocked_u,
        "target sequence has zero probability; no mass flows through lattice node (t=" +
            std::to_string(blocked_t + 1) + ", u=" + std::to_string(blocked_u) + ")");
  }

  LossGradients out;
  out.loss = -log_prob;
  out.d_transcription = Matrix::Zero(lattice.alphabet_size + 1, T);
  out.d_prediction = Matrix::Zero(lattice.alphabet_size + 1, U + 1);

  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      const double log_alpha = grid.log_alpha(t, u);
      // beta just past the grid: 1 after the terminal null, 0 elsewhere.
      const double beta_after_null =
          t + 1 < T ? grid.log_beta(t + 1, u) : (u == U ? 0.0 : kLogZero);
      const double null_occupancy =
          std::exp(log_alpha + beta_after_null + lattice.log_null(t, u) - log_prob);
      const double label_occupancy =
          u < U ? std::exp(log_alpha + grid.log_beta(t, u + 1) + lattice.log_label(t, u) -
                           log_prob)
                : 0.0;

      // dL/dz_k = Pr(k|t,u) * occupancy(t,u) - occupancy of the transition using k.
      Vector d_logits =
          lattice.distribution(t, u).array().exp() * (null_occupancy + label_occupancy);
      d_logits(lattice.null_index()) -= null_occupancy;
      if (u < U) d_logits(targets[u]) -= label_occupancy;

      out.d_transcription.col(t) += d_logits;
      out.d_prediction.col(u) += d_logits;
    }
  }
  return out;
}

}  // namespace rnnt
