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

#include "rnnt/oracle.hpp"

#include <set>

#include <gtest/gtest.h>

#include "rnnt/decoder.hpp"
#include "rnnt/lattice.hpp"
#include "test_util.hpp"

namespace rnnt {
namespace {

using testing::random_labels;
using testing::random_matrix;

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

TEST(EnumerateAlignments, SmallCases) {
  EXPECT_EQ(oracle::enumerate_alignments(3, 0).size(), 1u);
  EXPECT_EQ(oracle::enumerate_alignments(1, 3).size(), 1u);
  const auto paths = oracle::enumerate_alignments(3, 2);
  ASSERT_EQ(paths.size(), 6u);
  const std::set<oracle::LatticePath> expected{
      {true, true, false, false}, {true, false, true, false}, {true, false, false, true},
      {false, true, true, false}, {false, true, false, true}, {false, false, true, true}};
  EXPECT_EQ(std::set<oracle::LatticePath>(paths.begin(), paths.end()), expected);
}

TEST(EnumerateAlignments, CountFormula) {
  for (int T = 1; T <= 6; ++T) {
    for (int U = 0; U <= 5; ++U) {
      const auto paths = oracle::enumerate_alignments(T, U);
      EXPECT_EQ(static_cast<double>(paths.size()), binomial(T - 1 + U, U));
      EXPECT_EQ(std::set<oracle::LatticePath>(paths.begin(), paths.end()).size(), paths.size());
    }
  }
}

TEST(Alignment, CollapseRecoversTargets) {
  const LabelSequence targets{2, 0, 1};
  for (const auto& path : oracle::enumerate_alignments(4, 3)) {
    const oracle::Alignment a = oracle::to_alignment(path, targets);
    EXPECT_EQ(a.size(), 4u + 3u);
    EXPECT_EQ(a.back(), oracle::kNull);
    EXPECT_EQ(oracle::collapse(a), targets);
  }
}

TEST(BruteForce, UniformInstance) {
  const JointLattice lattice = build_lattice(Matrix::Zero(2, 2), Matrix::Zero(2, 2), {0});
  EXPECT_NEAR(oracle::brute_force_log_prob(lattice, {0}), std::log(0.25), 1e-15);
}

TEST(BruteForce, EmptyTargetIsProductOfNulls) {
  Rng rng(3);
  const JointLattice lattice = build_lattice(random_matrix(rng, 3, 5), random_matrix(rng, 3, 1), {});
  double expected = 0.0;
  for (int t = 0; t < 5; ++t) expected += lattice.log_null(t, 0);
  EXPECT_NEAR(oracle::brute_force_log_prob(lattice, {}), expected, 1e-12);
  EXPECT_NEAR(forward_pass(lattice).log_prob, expected, 1e-12);
}

TEST(BruteForce, AgreesWithForwardPass) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const LabelSequence targets = random_labels(rng, 4, 3);
    const JointLattice lattice =
        build_lattice(random_matrix(rng, 4, 5, 2.0), random_matrix(rng, 4, 5, 2.0), targets);
    const double expected = oracle::brute_force_log_prob(lattice, targets);
    EXPECT_NEAR(forward_pass(lattice).log_prob, expected, 1e-10 * std::abs(expected));
  }
}

TEST(BruteForce, PathsFormSubDistribution) {
  Rng rng(6);
  const LabelSequence targets = random_labels(rng, 3, 2);
  const JointLattice lattice =
      build_lattice(random_matrix(rng, 3, 4, 2.0), random_matrix(rng, 3, 4, 2.0), targets);
  double total = 0.0;
  for (const auto& path : oracle::enumerate_alignments(4, 3)) {
    const double p = oracle::path_probability(lattice, path);
    EXPECT_GT(p, 0.0);
    EXPECT_LE(p, 1.0);
    total += p;
  }
  EXPECT_LE(total, 1.0 + 1e-12);
}

TEST(BruteForce, GuardRejectsHugeLattices) {
  const JointLattice lattice = build_lattice(Matrix::Zero(2, 30), Matrix::Zero(2, 21),
                                             LabelSequence(20, 0));
  EXPECT_THROW(oracle::brute_force_log_prob(lattice, LabelSequence(20, 0)), Error);
}

TEST(ExhaustiveDecode, ForcedNullRanksEmptyFirst) {
  PredictionNet net = PredictionNet::zeros(2, 2);
  net.b_out(2) = 40.0;
  const auto ranking = oracle::exhaustive_decode(Matrix::Zero(3, 3), net, 4);
  ASSERT_FALSE(ranking.empty());
  EXPECT_TRUE(ranking.front().labels.empty());
  EXPECT_EQ(ranking.size(), 1u + 2 + 4 + 8 + 16);
}

TEST(ExhaustiveDecode, RankingIsSortedAndScoresAreIndependent) {
  Rng rng(31);
  const PredictionNet net = testing::random_transducer(rng, {2, 2, 3, 3}).prediction;
  const Matrix f = random_matrix(rng, 3, 3, 2.0);
  const auto ranking = oracle::exhaustive_decode(f, net, 6);
  EXPECT_EQ(ranking.size(), 127u);
  for (std::size_t i = 1; i < ranking.size(); ++i) {
    EXPECT_TRUE(ranks_before(ranking[i - 1].score, ranking[i - 1].labels, ranking[i].score,
                             ranking[i].labels));
  }
  for (std::size_t i = 0; i < ranking.size(); i += 17) {
    const auto& r = ranking[i];
    const JointLattice lattice = build_lattice(f, predict_sequence(net, r.labels), r.labels);
    EXPECT_NEAR(r.log_prob, forward_pass(lattice).log_prob, 1e-12);
    EXPECT_EQ(r.score, length_normalized_score(r.log_prob, r.labels.size()));
  }
}

TEST(ExhaustiveDecode, ComparatorIsAntisymmetricAndTotal) {
  const std::vector<LabelSequence> seqs{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}};
  const std::vector<double> scores{-1.0, -1.0, -0.5, -1.0, -2.0, -0.5};
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    EXPECT_FALSE(ranks_before(scores[i], seqs[i], scores[i], seqs[i]));
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      if (i == j) continue;
      EXPECT_NE(ranks_before(scores[i], seqs[i], scores[j], seqs[j]),
                ranks_before(scores[j], seqs[j], scores[i], seqs[i]));
    }
  }
}

TEST(ExhaustiveDecode, GuardRejectsLargeEnumerations) {
  const PredictionNet net = PredictionNet::zeros(9, 2);
  EXPECT_THROW(oracle::exhaustive_decode(Matrix::Zero(10, 2), net, 7), Error);
}

TEST(ScoreBounds, BoundDominatesEnumeratedScores) {
  Rng rng(9);
  const PredictionNet net = testing::random_transducer(rng, {2, 2, 3, 3}).prediction;
  const Matrix f = random_matrix(rng, 3, 3, 2.0);
  const auto ranking = oracle::exhaustive_decode(f, net, 6);
  for (int n = 1; n <= 6; ++n) {
    const double bound = oracle::normalized_score_upper_bound(f, net, n);
    for (const auto& r : ranking) {
      if (static_cast<int>(r.labels.size()) == n) {
        EXPECT_LE(r.score, bound);
      }
    }
  }
}

}  // namespace
}  // namespace rnnt
