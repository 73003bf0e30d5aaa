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

#include "rnnt/transducer.hpp"

namespace rnnt {

Transducer Transducer::zeros(const ModelShape& shape) {
  return {PredictionNet::zeros(shape.alphabet_size, shape.prediction_hidden),
          TranscriptionNet::zeros(shape.feature_dim, shape.alphabet_size,
                                  shape.transcription_hidden)};
}

ModelShape Transducer::shape() const {
  return {prediction.alphabet_size(), transcription.feature_dim(), prediction.hidden_size(),
          transcription.hidden_size()};
}

void Transducer::check() const {
  prediction.check();
  transcription.check();
  if (transcription.alphabet_size() != prediction.alphabet_size()) {
    throw DimensionError("Transducer: transcription alphabet size " +
                         std::to_string(transcription.alphabet_size()) +
                         " differs from prediction alphabet size " +
                         std::to_string(prediction.alphabet_size()));
  }
}

std::size_t parameter_count(const Transducer& model) {
  std::size_t count = 0;
  for_each_parameter([&](const std::string&, const auto& a) { count += a.size(); }, model);
  return count;
}

void initialize_uniform(Transducer& model, double range, Rng& rng) {
  for_each_parameter(
      [&](const std::string&, auto& a) {
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.uniform(-range, range);
      },
      model);
}

double transducer_loss(const Transducer& model, const Matrix& features,
                       const LabelSequence& targets) {
  const Matrix f = transcribe(model.transcription, features);
  const Matrix g = predict_sequence(model.prediction, targets);
  const JointLattice lattice = build_lattice(f, g, targets);
  return -forward_pass(lattice).log_prob;
}

LossAndGradient transducer_loss_and_gradient(const Transducer& model, const Matrix& features,
                                             const LabelSequence& targets) {
  TranscriptionCache transcription_cache;
  PredictionCache prediction_cache;
  const Matrix f = transcribe(model.transcription, features, &transcription_cache);
  const Matrix g = predict_sequence(model.prediction, targets, &prediction_cache);
  const JointLattice lattice = build_lattice(f, g, targets);
  const AlignmentGrid grid = forward_backward(lattice);
  const LossGradients logits = loss_and_grads(lattice, grid, targets);

  LossAndGradient out;
  out.loss = logits.loss;
  out.gradient.prediction =
      prediction_backward(model.prediction, prediction_cache, logits.d_prediction);
  out.gradient.transcription =
      transcription_backward(model.transcription, transcription_cache, logits.d_transcription);
  return out;
}

}  // namespace rnnt
