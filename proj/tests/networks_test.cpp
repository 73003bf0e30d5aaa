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

#include "rnnt/networks.hpp"

#include <gtest/gtest.h>

#include "rnnt/transducer.hpp"
#include "test_util.hpp"

namespace rnnt {
namespace {

using testing::random_labels;
using testing::random_lstm;
using testing::random_matrix;
using testing::scalar_affine;
using testing::scalar_lstm_step;
using testing::ScalarLstmState;
using testing::to_std;

PredictionNet random_prediction(Rng& rng, int K, int hidden) {
  PredictionNet net = PredictionNet::zeros(K, hidden);
  net.lstm = random_lstm(rng, K, hidden);
  net.w_out = random_matrix(rng, K + 1, hidden, 0.5);
  net.b_out = random_matrix(rng, K + 1, 1, 0.5).col(0);
  return net;
}

TranscriptionNet random_transcription(Rng& rng, int dim, int K, int hidden) {
  TranscriptionNet net = TranscriptionNet::zeros(dim, K, hidden);
  net.forward = random_lstm(rng, dim, hidden);
  net.backward = random_lstm(rng, dim, hidden);
  net.w_out_forward = random_matrix(rng, K + 1, hidden, 0.5);
  net.w_out_backward = random_matrix(rng, K + 1, hidden, 0.5);
  net.b_out = random_matrix(rng, K + 1, 1, 0.5).col(0);
  return net;
}

ScalarLstmState scalar_zero(int hidden) {
  return {std::vector<double>(hidden, 0.0), std::vector<double>(hidden, 0.0)};
}

TEST(PredictSequence, EmptyTargetIsOneNullStep) {
  Rng rng(1);
  const PredictionNet net = random_prediction(rng, 3, 2);
  const Matrix g = predict_sequence(net, {});
  ASSERT_EQ(g.cols(), 1);
  const ScalarLstmState h = scalar_lstm_step(std::vector<double>(3, 0.0), scalar_zero(2), net.lstm);
  const std::vector<double> expected = scalar_affine(net.w_out, h.h, net.b_out);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(g(k, 0), expected[k], 1e-14);
}

TEST(PredictSequence, PrefixProperty) {
  Rng rng(2);
  const PredictionNet net = random_prediction(rng, 4, 3);
  const Matrix abc = predict_sequence(net, {0, 1, 2});
  const Matrix abd = predict_sequence(net, {0, 1, 3});
  EXPECT_EQ(abc.leftCols(3), abd.leftCols(3));
  EXPECT_NE(abc.col(3), abd.col(3));
}

TEST(PredictSequence, PrefixPropertyOverRandomSequences) {
  Rng rng(22);
  const PredictionNet net = random_prediction(rng, 3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const LabelSequence full = random_labels(rng, 1 + static_cast<int>(rng.uniform_index(7)), 3);
    const Matrix g = predict_sequence(net, full);
    ASSERT_EQ(g.cols(), static_cast<Eigen::Index>(full.size()) + 1);
    for (std::size_t n = 0; n <= full.size(); ++n) {
      const LabelSequence prefix(full.begin(), full.begin() + static_cast<long>(n));
      EXPECT_EQ(predict_sequence(net, prefix), g.leftCols(static_cast<Eigen::Index>(n) + 1));
    }
  }
}

TEST(PredictSequence, MatchesManualUnroll) {
  Rng rng(5);
  const int K = 3, H = 2;
  const PredictionNet net = random_prediction(rng, K, H);
  const LabelSequence targets{1, 0, 2};
  const Matrix g = predict_sequence(net, targets);
  ScalarLstmState state = scalar_zero(H);
  for (int u = 0; u <= 3; ++u) {
    std::vector<double> input(K, 0.0);
    if (u > 0) input[targets[u - 1]] = 1.0;
    state = scalar_lstm_step(input, state, net.lstm);
    const std::vector<double> expected = scalar_affine(net.w_out, state.h, net.b_out);
    for (int k = 0; k <= K; ++k) EXPECT_NEAR(g(k, u), expected[k], 1e-14) << "u=" << u;
  }
}

TEST(PredictSequence, OutOfRangeLabelThrows) {
  const PredictionNet net = PredictionNet::zeros(3, 2);
  EXPECT_THROW(predict_sequence(net, {0, 3}), DimensionError);
  EXPECT_THROW(predict_sequence(net, {-1}), DimensionError);
}

TEST(PredictStep, AgreesWithSequence) {
  Rng rng(19);
  const PredictionNet net = random_prediction(rng, 3, 4);
  const LabelSequence targets{2, 2, 0, 1};
  const Matrix g = predict_sequence(net, targets);
  PredictionStep step = predict_step(net, LstmState::zeros(4), std::nullopt);
  EXPECT_EQ(step.logits, g.col(0));
  for (std::size_t u = 0; u < targets.size(); ++u) {
    step = predict_step(net, step.state, targets[u]);
    EXPECT_EQ(step.logits, g.col(static_cast<Eigen::Index>(u) + 1));
  }
}

TEST(Transcribe, SingleStepUsesBothDirections) {
  Rng rng(10);
  TranscriptionNet net = random_transcription(rng, 2, 2, 3);
  const Matrix x = random_matrix(rng, 2, 1);
  const Matrix f = transcribe(net, x);
  ASSERT_EQ(f.cols(), 1);
  TranscriptionNet no_backward = net;
  no_backward.w_out_backward.setZero();
  TranscriptionNet no_forward = net;
  no_forward.w_out_forward.setZero();
  EXPECT_GT((transcribe(no_backward, x) - f).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT((transcribe(no_forward, x) - f).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Transcribe, LastInputReachesFirstOutput) {
  Rng rng(3);
  const TranscriptionNet net = random_transcription(rng, 3, 2, 4);
  Matrix x = random_matrix(rng, 3, 6);
  const Matrix before = transcribe(net, x);
  x.col(5) += Vector::Constant(3, 0.5);
  const Matrix after = transcribe(net, x);
  EXPECT_GT((after.col(0) - before.col(0)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Transcribe, MatchesManualTwoDirectionUnroll) {
  Rng rng(9);
  const int dim = 2, T = 3, H = 2, K = 2;
  const TranscriptionNet net = random_transcription(rng, dim, K, H);
  const Matrix x = random_matrix(rng, dim, T);
  const Matrix f = transcribe(net, x);
  ASSERT_EQ(f.cols(), T);

  std::vector<ScalarLstmState> fwd(T), bwd(T);
  ScalarLstmState state = scalar_zero(H);
  for (int t = 0; t < T; ++t) fwd[t] = state = scalar_lstm_step(to_std(x.col(t)), state, net.forward);
  state = scalar_zero(H);
  for (int t = T - 1; t >= 0; --t) {
    bwd[t] = state = scalar_lstm_step(to_std(x.col(t)), state, net.backward);
  }
  for (int t = 0; t < T; ++t) {
    const std::vector<double> a = scalar_affine(net.w_out_forward, fwd[t].h, net.b_out);
    const std::vector<double> b = scalar_affine(net.w_out_backward, bwd[t].h, Vector::Zero(K + 1));
    for (int k = 0; k <= K; ++k) EXPECT_NEAR(f(k, t), a[k] + b[k], 1e-14);
  }
}

TEST(Transcribe, EmptyInputThrows) {
  const TranscriptionNet net = TranscriptionNet::zeros(2, 2, 2);
  EXPECT_THROW(transcribe(net, Matrix(2, 0)), Error);
  EXPECT_THROW(transcribe(net, Matrix::Zero(3, 2)), DimensionError);
}

TEST(Networks, CachingDoesNotChangeOutputs) {
  Rng rng(14);
  const PredictionNet pred = random_prediction(rng, 3, 3);
  const TranscriptionNet trans = random_transcription(rng, 2, 3, 3);
  const Matrix x = random_matrix(rng, 2, 5);
  PredictionCache pc;
  TranscriptionCache tc;
  EXPECT_EQ(predict_sequence(pred, {1, 2}), predict_sequence(pred, {1, 2}, &pc));
  EXPECT_EQ(transcribe(trans, x), transcribe(trans, x, &tc));
}

TEST(NetworksBackward, ZeroStreamsGiveZeroGradients) {
  Rng rng(15);
  const PredictionNet pred = random_prediction(rng, 2, 2);
  const TranscriptionNet trans = random_transcription(rng, 2, 2, 2);
  PredictionCache pc;
  TranscriptionCache tc;
  predict_sequence(pred, {0, 1}, &pc);
  transcribe(trans, random_matrix(rng, 2, 3), &tc);
  PredictionNet gp = prediction_backward(pred, pc, Matrix::Zero(3, 3));
  TranscriptionNet gt = transcription_backward(trans, tc, Matrix::Zero(3, 3));
  for_each_array_in_prediction(
      [](const std::string&, const auto& a) { EXPECT_EQ(a.cwiseAbs().maxCoeff(), 0.0); }, gp);
  for_each_array_in_transcription(
      [](const std::string&, const auto& a) { EXPECT_EQ(a.cwiseAbs().maxCoeff(), 0.0); }, gt);
}

TEST(NetworksBackward, CacheMismatchThrows) {
  Rng rng(16);
  const PredictionNet pred = random_prediction(rng, 2, 2);
  PredictionCache pc;
  predict_sequence(pred, {0, 1}, &pc);
  EXPECT_THROW(prediction_backward(pred, pc, Matrix::Zero(3, 2)), DimensionError);
  EXPECT_THROW(prediction_backward(pred, PredictionCache{}, Matrix::Zero(3, 1)), Error);
}

TEST(NetworksBackward, TranscriptionGradientIndependentOfPrediction) {
  Rng rng(18);
  const TranscriptionNet trans = random_transcription(rng, 2, 2, 3);
  const Matrix x = random_matrix(rng, 2, 4);
  const Matrix d_f = random_matrix(rng, 3, 4);
  TranscriptionCache tc;
  transcribe(trans, x, &tc);
  const TranscriptionNet first = transcription_backward(trans, tc, d_f);
  // A different prediction network leaves nothing in the transcription
  // backward pass to depend on; the result is a function of (net, x, dL/df).
  const PredictionNet other = random_prediction(rng, 2, 5);
  predict_sequence(other, {1, 0, 1});
  TranscriptionCache tc2;
  transcribe(trans, x, &tc2);
  const TranscriptionNet second = transcription_backward(trans, tc2, d_f);
  for_each_array_in_transcription(
      [](const std::string&, const auto& a, const auto& b) { EXPECT_EQ(a, b); }, first, second);
}

TEST(NetworksBackward, FullPipelineMatchesFiniteDifferences) {
  Rng rng(23);
  const ModelShape shape{2, 2, 2, 2};
  Transducer model = testing::random_transducer(rng, shape, 0.5);
  const Matrix x = random_matrix(rng, 2, 3);
  const LabelSequence targets{1, 0};
  const LossAndGradient analytic = transducer_loss_and_gradient(model, x, targets);
  auto loss = [&] { return transducer_loss(model, x, targets); };
  for_each_parameter(
      [&](const std::string& name, auto& value, const auto& grad) {
        for (Eigen::Index i = 0; i < value.size(); ++i) {
          const double numeric = testing::central_difference(loss, value.data()[i], 1e-6);
          EXPECT_TRUE(testing::close_rel_or_abs(grad.data()[i], numeric, 1e-6, 1e-9))
              << name << "[" << i << "] analytic " << grad.data()[i] << " numeric " << numeric;
        }
      },
      model, analytic.gradient);
}

}  // namespace
}  // namespace rnnt
