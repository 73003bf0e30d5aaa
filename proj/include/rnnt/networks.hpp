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

// The prediction network (over labels, null-prepended) and the bidirectional
// transcription network (over input features). Both emit K+1 logits per
// position; index K is the null symbol.

#include <optional>
#include <string>
#include <vector>

#include "rnnt/lstm.hpp"

namespace rnnt {

using LabelSequence = std::vector<int>;

struct PredictionNet {
  LstmParams lstm;  // input size K
  Matrix w_out;     // (K+1) x hidden
  Vector b_out;     // K+1

  static PredictionNet zeros(int alphabet_size, int hidden_size);

  int alphabet_size() const { return lstm.input_size(); }
  int hidden_size() const { return lstm.hidden_size(); }
  void check() const;
};

struct TranscriptionNet {
  LstmParams forward;
  LstmParams backward;
  Matrix w_out_forward;   // (K+1) x hidden
  Matrix w_out_backward;  // (K+1) x hidden
  Vector b_out;           // K+1, shared by both directions

  static TranscriptionNet zeros(int feature_dim, int alphabet_size, int hidden_size);

  int feature_dim() const { return forward.input_size(); }
  int alphabet_size() const { return static_cast<int>(b_out.size()) - 1; }
  int hidden_size() const { return forward.hidden_size(); }
  void check() const;
};

// Visitors over every named array, in declaration order. Names are
// dot-qualified, for example "lstm.wi_cell" or "backward.b_forget_gate".
template <typename F, typename... Nets>
void for_each_array_in_prediction(F&& f, Nets&... nets) {
  for_each_array([&](const char* name, auto&... a) { f(std::string("lstm.") + name, a...); },
                 nets.lstm...);
  f(std::string("w_out"), nets.w_out...);
  f(std::string("b_out"), nets.b_out...);
}

template <typename F, typename... Nets>
void for_each_array_in_transcription(F&& f, Nets&... nets) {
  for_each_array([&](const char* name, auto&... a) { f(std::string("forward.") + name, a...); },
                 nets.forward...);
  for_each_array([&](const char* name, auto&... a) { f(std::string("backward.") + name, a...); },
                 nets.backward...);
  f(std::string("w_out_forward"), nets.w_out_forward...);
  f(std::string("w_out_backward"), nets.w_out_backward...);
  f(std::string("b_out"), nets.b_out...);
}

struct PredictionCache {
  LstmCache lstm;
  Matrix hidden;  // hidden x (U+1)
};

struct TranscriptionCache {
  LstmCache forward, backward;
  Matrix forward_hidden, backward_hidden;  // hidden x T, in time order
};

// g_0..g_U as columns of a (K+1) x (U+1) matrix. Column u depends only on
// the first u labels.
Matrix predict_sequence(const PredictionNet& net, const LabelSequence& targets,
                        PredictionCache* cache = nullptr);

// One step of the prediction network: feed `label` (or null) from `prev`.
struct PredictionStep {
  LstmState state;
  Vector logits;  // g, length K+1
};
PredictionStep predict_step(const PredictionNet& net, const LstmState& prev,
                            std::optional<int> label);

// f_1..f_T as columns of a (K+1) x T matrix; `features` is dim x T.
Matrix transcribe(const TranscriptionNet& net, const Matrix& features,
                  TranscriptionCache* cache = nullptr);

// Backpropagation through each network given dL/dg ((K+1) x (U+1)) or
// dL/df ((K+1) x T). The two networks are independent given these streams.
PredictionNet prediction_backward(const PredictionNet& net, const PredictionCache& cache,
                                  const Matrix& d_logits);
TranscriptionNet transcription_backward(const TranscriptionNet& net,
                                        const TranscriptionCache& cache,
                                        const Matrix& d_logits);

}  // namespace rnnt
