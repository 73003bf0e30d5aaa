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

#include <string>

#include "rnnt/lattice.hpp"
#include "rnnt/networks.hpp"

namespace rnnt {

struct ModelShape {
  int alphabet_size = 5;  // K
  int feature_dim = 5;
  int prediction_hidden = 16;
  int transcription_hidden = 16;
};

struct Transducer {
  PredictionNet prediction;
  TranscriptionNet transcription;

  static Transducer zeros(const ModelShape& shape);

  ModelShape shape() const;
  int alphabet_size() const { return prediction.alphabet_size(); }
  void check() const;
};

// f(name, arrays...) over every parameter array of one or more models with
// identical structure. Names are "prediction.<...>" and "transcription.<...>".
template <typename F, typename... Models>
void for_each_parameter(F&& f, Models&... models) {
  for_each_array_in_prediction(
      [&](const std::string& name, auto&... a) { f("prediction." + name, a...); },
      models.prediction...);
  for_each_array_in_transcription(
      [&](const std::string& name, auto&... a) { f("transcription." + name, a...); },
      models.transcription...);
}

std::size_t parameter_count(const Transducer& model);

// Uniform initialisation of every weight and bias in [-range, range].
void initialize_uniform(Transducer& model, double range, Rng& rng);

// -ln Pr(targets|features). `features` is feature_dim x T.
double transducer_loss(const Transducer& model, const Matrix& features,
                       const LabelSequence& targets);

struct LossAndGradient {
  double loss = 0.0;
  Transducer gradient;
};

LossAndGradient transducer_loss_and_gradient(const Transducer& model, const Matrix& features,
                                             const LabelSequence& targets);

}  // namespace rnnt
