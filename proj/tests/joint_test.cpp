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

#include "rnnt/joint.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace rnnt {
namespace {

using testing::random_labels;
using testing::random_matrix;

TEST(JointLogProb, ZeroInputsAreUniform) {
  const Vector out = joint_log_prob(Vector::Zero(4), Vector::Zero(4));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(out(k), std::log(0.25), 1e-15);
}

TEST(JointLogProb, ShiftInvariantInF) {
  Rng rng(1);
  const Vector f = random_matrix(rng, 5, 1).col(0);
  const Vector g = random_matrix(rng, 5, 1).col(0);
  const Vector shifted = (f.array() + 3.7).matrix();
  EXPECT_LT((joint_log_prob(f, g) - joint_log_prob(shifted, g)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(JointLogProb, MatchesDirectFormula) {
  const Vector f = (Vector(3) << 1.0, 0.0, -1.0).finished();
  const Vector g = Vector::Constant(3, 0.5);
  const double denom = std::exp(1.5) + std::exp(0.5) + std::exp(-0.5);
  const Vector out = joint_log_prob(f, g);
  EXPECT_NEAR(out(0), std::log(std::exp(1.5) / denom), 1e-12);
  EXPECT_NEAR(out(1), std::log(std::exp(0.5) / denom), 1e-12);
  EXPECT_NEAR(out(2), std::log(std::exp(-0.5) / denom), 1e-12);
}

TEST(JointLogProb, LengthMismatchThrows) {
  EXPECT_THROW(joint_log_prob(Vector::Zero(3), Vector::Zero(4)), DimensionError);
}

TEST(BuildLattice, SingleNode) {
  Rng rng(2);
  const Matrix f = random_matrix(rng, 3, 1);
  const Matrix g = random_matrix(rng, 3, 1);
  const JointLattice lattice = build_lattice(f, g, {});
  ASSERT_EQ(lattice.steps, 1);
  ASSERT_EQ(lattice.target_length, 0);
  EXPECT_NEAR(log_sum_exp(lattice.distribution(0, 0)), 0.0, 1e-12);
  EXPECT_EQ(lattice.log_label(0, 0), kLogZero);
  EXPECT_EQ(lattice.log_null(0, 0), lattice.distribution(0, 0)(2));
}

TEST(BuildLattice, PrecomputedMatchesNaive) {
  Rng rng(13);
  const int T = 4, U = 3, K = 5;
  const Matrix f = random_matrix(rng, K + 1, T, 3.0);
  const Matrix g = random_matrix(rng, K + 1, U + 1, 3.0);
  const LabelSequence targets = random_labels(rng, U, K);
  const JointLattice fast = build_lattice(f, g, targets);
  const JointLattice naive = build_lattice_naive(f, g, targets);
  for (int t = 0; t < T; ++t) {
    EXPECT_LT((fast.log_probs[t] - naive.log_probs[t]).cwiseAbs().maxCoeff(), 1e-12);
    for (int u = 0; u <= U; ++u) {
      EXPECT_NEAR(log_sum_exp(fast.distribution(t, u)), 0.0, 1e-10);
      EXPECT_EQ(fast.log_null(t, u), fast.distribution(t, u)(K));
      if (u < U) {
        EXPECT_EQ(fast.log_label(t, u), fast.distribution(t, u)(targets[u]));
      }
    }
  }
}

TEST(BuildLattice, ExpCountIsLinearInTPlusU) {
  Rng rng(4);
  const int T = 100, U = 50, K = 10;
  const Matrix f = random_matrix(rng, K + 1, T, 30.0);
  const Matrix g = random_matrix(rng, K + 1, U + 1, 30.0);
  const LabelSequence targets = random_labels(rng, U, K);
  ExpCounter fast_count, naive_count;
  const JointLattice fast = build_lattice(f, g, targets, &fast_count);
  const JointLattice naive = build_lattice_naive(f, g, targets, &naive_count);
  EXPECT_EQ(fast_count.count, static_cast<std::size_t>((T + U + 1) * (K + 1)));
  EXPECT_EQ(fast_count.count, 1661u);
  EXPECT_GE(naive_count.count, 56100u);
  double worst = 0.0;
  for (int t = 0; t < T; ++t) {
    worst = std::max(worst, (fast.log_probs[t] - naive.log_probs[t]).cwiseAbs().maxCoeff());
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(BuildLattice, NormalizedOverRandomInputs) {
  Rng rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    const int T = 1 + static_cast<int>(rng.uniform_index(6));
    const int U = static_cast<int>(rng.uniform_index(5));
    const int K = 1 + static_cast<int>(rng.uniform_index(4));
    const JointLattice lattice = build_lattice(random_matrix(rng, K + 1, T, 10.0),
                                               random_matrix(rng, K + 1, U + 1, 10.0),
                                               random_labels(rng, U, K));
    for (int t = 0; t < T; ++t) {
      for (int u = 0; u <= U; ++u) {
        EXPECT_NEAR(log_sum_exp(lattice.distribution(t, u)), 0.0, 1e-10);
      }
    }
  }
}

TEST(BuildLattice, InvalidInputsThrow) {
  const Matrix f = Matrix::Zero(3, 2);
  const Matrix g = Matrix::Zero(3, 2);
  EXPECT_THROW(build_lattice(f, g, {2}), DimensionError);
  EXPECT_THROW(build_lattice(f, g, {0, 1}), DimensionError);
  EXPECT_THROW(build_lattice(Matrix::Zero(4, 2), g, {0}), DimensionError);
  EXPECT_THROW(build_lattice(Matrix::Zero(3, 0), Matrix::Zero(3, 1), {}), DimensionError);
}

}  // namespace
}  // namespace rnnt
