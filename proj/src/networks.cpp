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

namespace rnnt {

PredictionNet PredictionNet::zeros(int alphabet_size, int hidden_size) {
  return {LstmParams::zeros(alphabet_size, hidden_size),
          Matrix::Zero(alphabet_size + 1, hidden_size), Vector::Zero(alphabet_size + 1)};
}

void PredictionNet::check() const {
  lstm.check();
  if (w_out.rows() != alphabet_size() + 1 || w_out.cols() != hidden_size() ||
      b_out.size() != alphabet_size() + 1) {
    throw DimensionError("PredictionNet: output layer must be (K+1) x hidden with K = " +
                         std::to_string(alphabet_size()));
  }
}

TranscriptionNet TranscriptionNet::zeros(int feature_dim, int alphabet_size, int hidden_size) {
  return {LstmParams::zeros(feature_dim, hidden_size), LstmParams::zeros(feature_dim, hidden_size),
          Matrix::Zero(alphabet_size + 1, hidden_size),
          Matrix::Zero(alphabet_size + 1, hidden_size), Vector::Zero(alphabet_size + 1)};
}

void TranscriptionNet::check() const {
  forward.check();
  backward.check();
  if (backward.input_size() != forward.input_size() ||
      backward.hidden_size() != forward.hidden_size()) {
    throw DimensionError("TranscriptionNet: forward and backward layers differ in shape");
  }
  const Eigen::Index outputs = b_out.size();
  if (outputs < 2 || w_out_forward.rows() != outputs || w_out_backward.rows() != outputs ||
      w_out_forward.cols() != hidden_size() || w_out_backward.cols() != hidden_size()) {
    throw DimensionError("TranscriptionNet: output projections must be (K+1) x hidden");
  }
}

namespace {

Matrix prediction_inputs(int alphabet_size, const LabelSequence& targets) {
  Matrix inputs = Matrix::Zero(alphabet_size, static_cast<Eigen::Index>(targets.size()) + 1);
  for (std::size_t u = 0; u < targets.size(); ++u) {
    inputs.col(u + 1) = one_hot(targets[u], alphabet_size);
  }
  return inputs;
}

}  // namespace

Matrix predict_sequence(const PredictionNet& net, const LabelSequence& targets,
                        PredictionCache* cache) {
  const Matrix inputs = prediction_inputs(net.alphabet_size(), targets);
  Matrix hidden = lstm_forward(inputs, net.lstm, LstmState::zeros(net.hidden_size()),
                               cache != nullptr ? &cache->lstm : nullptr);
  Matrix logits = (net.w_out * hidden).colwise() + net.b_out;
  if (cache != nullptr) cache->hidden = std::move(hidden);
  return logits;
}

PredictionStep predict_step(const PredictionNet& net, const LstmState& prev,
                            std::optional<int> label) {
  PredictionStep step;
  step.state = lstm_step(one_hot(label, net.alphabet_size()), prev, net.lstm);
  step.logits = net.w_out * step.state.h + net.b_out;
  return step;
}

Matrix transcribe(const TranscriptionNet& net, const Matrix& features,
                  TranscriptionCache* cache) {
  if (features.cols() == 0) throw DimensionError("transcribe: empty input sequence");
  if (features.rows() != net.feature_dim()) {
    throw DimensionError("transcribe: feature width " + std::to_string(features.rows()) +
                         " does not match network input size " +
                         std::to_string(net.feature_dim()));
  }
  const LstmState zero = LstmState::zeros(net.hidden_size());

  // The backward layer runs from t = T down to 1 over the reversed input.
  const Matrix reversed = features.rowwise().reverse();
  const Matrix backward_reversed =
      lstm_forward(reversed, net.backward, zero, cache != nullptr ? &cache->backward : nullptr);
  Matrix backward_hidden = backward_reversed.rowwise().reverse();
  Matrix forward_hidden =
      lstm_forward(features, net.forward, zero, cache != nullptr ? &cache->forward : nullptr);

  Matrix logits = net.w_out_forward * forward_hidden + net.w_out_backward * backward_hidden;
  logits.colwise() += net.b_out;
  if (cache != nullptr) {
    cache->forward_hidden = std::move(forward_hidden);
    cache->backward_hidden = std::move(backward_hidden);
  }
  return logits;
}

PredictionNet prediction_backward(const PredictionNet& net, const PredictionCache& cache,
                                  const Matrix& d_logits) {
  if (d_logits.cols() != cache.hidden.cols() || d_logits.rows() != net.alphabet_size() + 1) {
    throw DimensionError("prediction_backward: dL/dg does not match the cached sequence");
  }
  PredictionNet grads;
  grads.w_out = d_logits * cache.hidden.transpose();
  grads.b_out = d_logits.rowwise().sum();
  const Matrix d_hidden = net.w_out.transpose() * d_logits;
  grads.lstm = lstm_backward(net.lstm, cache.lstm, d_hidden).params;
  return grads;
}

TranscriptionNet transcription_backward(const TranscriptionNet& net,
                                        const TranscriptionCache& cache,
                                        const Matrix& d_logits) {
  if (d_logits.cols() != cache.forward_hidden.cols() ||
      d_logits.rows() != net.alphabet_size() + 1) {
    throw DimensionError("transcription_backward: dL/df does not match the cached sequence");
  }
  TranscriptionNet grads;
  grads.w_out_forward = d_logits * cache.forward_hidden.transpose();
  grads.w_out_backward = d_logits * cache.backward_hidden.transpose();
  grads.b_out = d_logits.rowwise().sum();

  const Matrix d_forward_hidden = net.w_out_forward.transpose() * d_logits;
  const Matrix d_backward_hidden = net.w_out_backward.transpose() * d_logits;
  grads.forward = lstm_backward(net.forward, cache.forward, d_forward_hidden).params;
  // The backward layer's cache is in reversed time order.
  const Matrix d_backward_reversed = d_backward_hidden.rowwise().reverse();
  grads.backward = lstm_backward(net.backward, cache.backward, d_backward_reversed).params;
  return grads;
}

}  // namespace rnnt
