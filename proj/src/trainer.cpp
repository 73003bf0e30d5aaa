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

#include "rnnt/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "rnnt/metrics.hpp"

namespace rnnt {

namespace {

// Separates the initialisation stream from the training-noise stream.
constexpr std::uint64_t kTrainingStreamOffset = 0x9E3779B97F4A7C15ULL;

bool gradient_finite(const Transducer& gradient) {
  bool finite = true;
  for_each_parameter([&](const std::string&, const auto& a) { finite = finite && all_finite(a); },
                     gradient);
  return finite;
}

Transducer zeros_like(const Transducer& model) { return Transducer::zeros(model.shape()); }

}  // namespace

void TrainConfig::check() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw InputError("learning_rate must be finite and non-negative");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) throw InputError("momentum must lie in [0, 1)");
  if (!(weight_noise >= 0.0) || !std::isfinite(weight_noise)) {
    throw InputError("weight_noise must be finite and non-negative");
  }
  if (!(init_range >= 0.0) || !std::isfinite(init_range)) {
    throw InputError("init_range must be finite and non-negative");
  }
  if (max_epochs < 0) throw InputError("max_epochs must be non-negative");
  if (patience < 1) throw InputError("patience must be at least 1");
  if (beam_width < 1) throw InputError("beam_width must be at least 1");
}

void apply_momentum_update(Transducer& params, Transducer& velocity, const Transducer& gradient,
                           double learning_rate, double momentum) {
  for_each_parameter(
      [&](const std::string&, auto& p, auto& v, const auto& g) {
        v = momentum * v - learning_rate * g;
        p += v;
      },
      params, velocity, gradient);
}

Transducer initial_model(const ModelShape& shape, const TrainConfig& config) {
  Transducer model = Transducer::zeros(shape);
  Rng rng(config.seed);
  initialize_uniform(model, config.init_range, rng);
  return model;
}

ValidationResult evaluate_log_loss(const Transducer& model, const Dataset& data) {
  if (data.records.empty()) throw InputError("evaluate_log_loss: empty dataset");
  ValidationResult result;
  for (const DatasetRecord& r : data.records) {
    result.total_loss += transducer_loss(model, r.features, r.labels);
  }
  result.mean_loss = result.total_loss / static_cast<double>(data.records.size());
  result.bits = bits_per_target(result.total_loss, data.total_labels());
  return result;
}

std::vector<std::vector<Hypothesis>> decode_dataset(const Transducer& model, const Dataset& data,
                                                    const BeamSearchOptions& options) {
  std::vector<std::vector<Hypothesis>> decoded;
  decoded.reserve(data.records.size());
  for (const DatasetRecord& r : data.records) {
    const Matrix f = transcribe(model.transcription, r.features);
    decoded.push_back(beam_search(f, model.prediction, options));
  }
  return decoded;
}

double evaluate_error_rate(const Transducer& model, const Dataset& data, int beam_width) {
  BeamSearchOptions options;
  options.beam_width = beam_width;
  const auto decoded = decode_dataset(model, data, options);
  std::vector<LabelSequence> outputs;
  std::vector<LabelSequence> targets;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    outputs.push_back(decoded[i].front().labels);
    targets.push_back(data.records[i].labels);
  }
  return error_rate(outputs, targets);
}

Trainer::Trainer(Transducer initial, TrainConfig config)
    : config_(config), rng_(config.seed + kTrainingStreamOffset) {
  config_.check();
  initial.check();
  state_.velocity = zeros_like(initial);
  state_.model = std::move(initial);
}

Trainer::Trainer(Checkpoint checkpoint)
    : config_(checkpoint.config), state_(std::move(checkpoint.state)) {
  config_.check();
  state_.model.check();
  rng_.set_state(state_.rng_state);
}

bool Trainer::should_stop() const {
  return state_.epoch >= config_.max_epochs ||
         state_.epochs_since_improvement >= config_.patience;
}

Checkpoint Trainer::checkpoint() const {
  Checkpoint out{config_, state_};
  out.state.rng_state = rng_.state();
  return out;
}

EpochMetrics Trainer::run_epoch(const Dataset& train, const Dataset& validation) {
  if (train.records.empty() || validation.records.empty()) {
    throw InputError("training and validation sets must be non-empty");
  }
  const ModelShape shape = state_.model.shape();
  if (train.alphabet_size != shape.alphabet_size ||
      validation.alphabet_size != shape.alphabet_size) {
    throw InputError("dataset alphabet size does not match the model's " +
                     std::to_string(shape.alphabet_size));
  }
  if (train.feature_dim != shape.feature_dim || validation.feature_dim != shape.feature_dim) {
    throw InputError("dataset feature width does not match the model's " +
                     std::to_string(shape.feature_dim));
  }

  std::vector<std::size_t> order(train.records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng_.uniform_index(i)]);
  }

  double total_loss = 0.0;
  Transducer noisy;
  for (std::size_t index : order) {
    const DatasetRecord& record = train.records[index];
    noisy = state_.model;
    if (config_.weight_noise > 0.0) {
      for_each_parameter(
          [&](const std::string&, auto& a) {
            for (Eigen::Index i = 0; i < a.size(); ++i) {
              a.data()[i] += config_.weight_noise * rng_.normal();
            }
          },
          noisy);
    }

    LossAndGradient step;
    try {
      step = transducer_loss_and_gradient(noisy, record.features, record.labels);
    } catch (const DimensionError&) {
      throw;
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw DivergenceError(record.id, "training diverged on record '" + record.id +
                                           "': " + e.what());
    }
    if (!std::isfinite(step.loss) || !gradient_finite(step.gradient)) {
      throw DivergenceError(record.id,
                            "training diverged on record '" + record.id + "': non-finite loss");
    }
    total_loss += step.loss;
    apply_momentum_update(state_.model, state_.velocity, step.gradient, config_.learning_rate,
                          config_.momentum);
  }

  ++state_.epoch;
  EpochMetrics metrics;
  metrics.epoch = state_.epoch;
  metrics.train_loss = total_loss / static_cast<double>(train.records.size());
  const ValidationResult validated = evaluate_log_loss(state_.model, validation);
  metrics.validation_loss = validated.mean_loss;
  metrics.validation_bits = validated.bits;

  double metric = validated.mean_loss;
  if (config_.early_stop == EarlyStopMetric::kErrorRate) {
    metrics.validation_error_rate =
        evaluate_error_rate(state_.model, validation, config_.beam_width);
    metric = metrics.validation_error_rate;
  }
  improved_ = metric < state_.best_metric;
  if (improved_) {
    state_.best_metric = metric;
    state_.best_epoch = state_.epoch;
    state_.epochs_since_improvement = 0;
  } else {
    ++state_.epochs_since_improvement;
  }
  return metrics;
}

TrainResult train(Trainer& trainer, const Dataset& train_set, const Dataset& validation_set,
                  const std::function<void(const EpochMetrics&)>& on_epoch) {
  TrainResult result;
  result.best = trainer.checkpoint();
  while (!trainer.should_stop()) {
    result.log.push_back(trainer.run_epoch(train_set, validation_set));
    if (on_epoch) on_epoch(result.log.back());
    if (trainer.improved_last_epoch()) result.best = trainer.checkpoint();
  }
  result.final = trainer.checkpoint();
  return result;
}

TrainResult train(const Transducer& initial, const Dataset& train_set,
                  const Dataset& validation_set, const TrainConfig& config,
                  const std::function<void(const EpochMetrics&)>& on_epoch) {
  Trainer trainer(initial, config);
  return train(trainer, train_set, validation_set, on_epoch);
}

std::string format_metrics_header() {
  return "epoch\ttrain_loss_nats\tvalidation_loss_nats\tvalidation_bits_per_target";
}

std::string format_metrics_line(const EpochMetrics& m) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "%d\t%.17g\t%.17g\t%.17g", m.epoch, m.train_loss,
                m.validation_loss, m.validation_bits);
  return buffer;
}

}  // namespace rnnt
