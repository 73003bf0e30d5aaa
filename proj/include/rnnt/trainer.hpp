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

// Online momentum SGD with Gaussian weight noise and early stopping on a
// validation set.

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rnnt/dataset.hpp"
#include "rnnt/decoder.hpp"
#include "rnnt/transducer.hpp"

namespace rnnt {

enum class EarlyStopMetric { kLogLoss, kErrorRate };

struct TrainConfig {
  double learning_rate = 1e-4;
  double momentum = 0.9;
  double weight_noise = 0.075;  // std of per-sequence Gaussian weight noise
  double init_range = 0.1;      // uniform initialisation in [-range, range]
  int max_epochs = 100;
  EarlyStopMetric early_stop = EarlyStopMetric::kLogLoss;
  int patience = 20;  // epochs without validation improvement before stopping
  std::uint64_t seed = 1;
  int beam_width = 100;  // used only when early_stop is kErrorRate

  void check() const;
};

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;       // mean nats per sequence, noisy weights
  double validation_loss = 0.0;  // mean nats per sequence, clean weights
  double validation_bits = 0.0;  // bits per target label
  double validation_error_rate = std::numeric_limits<double>::quiet_NaN();
};

// Everything needed to continue training exactly where it stopped.
struct TrainerState {
  Transducer model;
  Transducer velocity;
  int epoch = 0;
  std::string rng_state;
  double best_metric = std::numeric_limits<double>::infinity();
  int best_epoch = 0;
  int epochs_since_improvement = 0;
};

struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  TrainConfig config;
  TrainerState state;
};

// velocity = momentum * velocity - learning_rate * gradient; params += velocity.
void apply_momentum_update(Transducer& params, Transducer& velocity, const Transducer& gradient,
                           double learning_rate, double momentum);

// Initial weights for a fresh run, drawn from a stream derived from
// config.seed.
Transducer initial_model(const ModelShape& shape, const TrainConfig& config);

struct ValidationResult {
  double total_loss = 0.0;  // nats
  double mean_loss = 0.0;
  double bits = 0.0;
};

ValidationResult evaluate_log_loss(const Transducer& model, const Dataset& data);

// Beam search over every record, in record order.
std::vector<std::vector<Hypothesis>> decode_dataset(const Transducer& model, const Dataset& data,
                                                    const BeamSearchOptions& options);

// Error rate (percent) of the top hypothesis of each record.
double evaluate_error_rate(const Transducer& model, const Dataset& data, int beam_width);

class Trainer {
 public:
  Trainer(Transducer initial, TrainConfig config);
  explicit Trainer(Checkpoint checkpoint);

  // One pass over `train` in a freshly shuffled order, then validation on
  // clean weights. Throws DivergenceError on a non-finite loss.
  EpochMetrics run_epoch(const Dataset& train, const Dataset& validation);

  bool improved_last_epoch() const { return improved_; }
  bool should_stop() const;

  Checkpoint checkpoint() const;
  const Transducer& model() const { return state_.model; }
  const TrainConfig& config() const { return config_; }
  int epoch() const { return state_.epoch; }

 private:
  TrainConfig config_;
  TrainerState state_;
  Rng rng_;
  bool improved_ = false;
};

struct TrainResult {
  Checkpoint best;
  Checkpoint final;
  std::vector<EpochMetrics> log;
};

// Runs epochs until max_epochs or early stopping. `on_epoch` sees every
// epoch's metrics as they are produced.
TrainResult train(const Transducer& initial, const Dataset& train_set,
                  const Dataset& validation_set, const TrainConfig& config,
                  const std::function<void(const EpochMetrics&)>& on_epoch = {});

TrainResult train(Trainer& trainer, const Dataset& train_set, const Dataset& validation_set,
                  const std::function<void(const EpochMetrics&)>& on_epoch = {});

// Tab-separated metrics log: a header line and one line per epoch.
std::string format_metrics_header();
std::string format_metrics_line(const EpochMetrics& metrics);

}  // namespace rnnt
