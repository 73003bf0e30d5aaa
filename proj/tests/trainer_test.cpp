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

#include <sstream>

#include <gtest/gtest.h>

#include "rnnt/checkpoint.hpp"
#include "rnnt/tasks.hpp"
#include "test_util.hpp"

namespace rnnt {
namespace {

const ModelShape kSmallShape{3, 3, 4, 4};

Dataset small_task(std::uint64_t seed, int count) {
  TaskSpec spec;
  spec.count = count;
  spec.min_length = 2;
  spec.max_length = 4;
  spec.alphabet_size = 3;
  spec.seed = seed;
  return generate_task(spec);
}

template <typename Check>
void for_each_pair(const Transducer& a, const Transducer& b, Check check) {
  Transducer x = a, y = b;
  for_each_parameter([&](const std::string& name, const auto& p, const auto& q) { check(name, p, q); },
                     x, y);
}

void expect_bit_identical(const Transducer& a, const Transducer& b) {
  for_each_pair(a, b, [](const std::string& name, const auto& p, const auto& q) {
    EXPECT_TRUE(p.cwiseEqual(q).all()) << name;
  });
}

TEST(ApplyMomentumUpdate, VelocityConvergesToGeometricLimit) {
  Rng rng(1);
  Transducer params = testing::random_transducer(rng, kSmallShape);
  Transducer velocity = Transducer::zeros(kSmallShape);
  const Transducer gradient = testing::random_transducer(rng, kSmallShape);
  const double lr = 0.01, mu = 0.9;
  for (int step = 0; step < 400; ++step) apply_momentum_update(params, velocity, gradient, lr, mu);
  for_each_pair(velocity, gradient, [&](const std::string& name, const auto& v, const auto& g) {
    EXPECT_LT((v + lr * g / (1 - mu)).cwiseAbs().maxCoeff(), 1e-12) << name;
  });
}

TEST(Trainer, NullUpdateLeavesWeightsBitIdentical) {
  const Dataset train_set = small_task(1, 5);
  const Dataset validation = small_task(2, 3);
  TrainConfig config;
  config.learning_rate = 0.0;
  config.weight_noise = 0.0;
  const Transducer initial = initial_model(kSmallShape, config);
  Trainer trainer(initial, config);
  for (int epoch = 0; epoch < 3; ++epoch) trainer.run_epoch(train_set, validation);
  expect_bit_identical(trainer.model(), initial);
}

TEST(Trainer, SmallStepsStrictlyDecreaseLoss) {
  const Dataset batch = small_task(3, 1);
  TrainConfig config;
  config.learning_rate = 1e-3;
  config.momentum = 0.0;
  config.weight_noise = 0.0;
  config.init_range = 0.3;
  Trainer trainer(initial_model(kSmallShape, config), config);
  const DatasetRecord& record = batch.records.front();
  double previous = transducer_loss(trainer.model(), record.features, record.labels);
  for (int step = 0; step < 20; ++step) {
    trainer.run_epoch(batch, batch);
    const double loss = transducer_loss(trainer.model(), record.features, record.labels);
    EXPECT_LT(loss, previous) << "update " << step + 1;
    previous = loss;
  }
}

TEST(Trainer, DeterministicWithNoise) {
  const Dataset train_set = small_task(4, 6);
  const Dataset validation = small_task(5, 3);
  TrainConfig config;
  config.learning_rate = 1e-2;
  config.max_epochs = 3;
  const TrainResult a = train(initial_model(kSmallShape, config), train_set, validation, config);
  const TrainResult b = train(initial_model(kSmallShape, config), train_set, validation, config);
  ASSERT_EQ(a.log.size(), 3u);
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    EXPECT_EQ(format_metrics_line(a.log[i]), format_metrics_line(b.log[i]));
  }
  expect_bit_identical(a.final.state.model, b.final.state.model);
}

TEST(Trainer, ResumeFromCheckpointMatchesUninterruptedRun) {
  const Dataset train_set = small_task(6, 6);
  const Dataset validation = small_task(7, 3);
  TrainConfig config;
  config.learning_rate = 1e-2;
  const Transducer initial = initial_model(kSmallShape, config);

  Trainer straight(initial, config);
  straight.run_epoch(train_set, validation);
  const EpochMetrics second = straight.run_epoch(train_set, validation);

  Trainer first_half(initial, config);
  first_half.run_epoch(train_set, validation);
  std::stringstream file;
  write_checkpoint(file, first_half.checkpoint());
  Trainer resumed(read_checkpoint(file));
  const EpochMetrics resumed_second = resumed.run_epoch(train_set, validation);

  EXPECT_EQ(format_metrics_line(second), format_metrics_line(resumed_second));
  expect_bit_identical(straight.model(), resumed.model());
  expect_bit_identical(straight.checkpoint().state.velocity, resumed.checkpoint().state.velocity);
}

TEST(Trainer, EarlyStoppingKeepsBestCheckpoint) {
  const Dataset train_set = small_task(8, 4);
  const Dataset validation = small_task(9, 3);
  TrainConfig config;
  config.learning_rate = 0.0;
  config.weight_noise = 0.0;
  config.patience = 2;
  config.max_epochs = 50;
  const TrainResult result =
      train(initial_model(kSmallShape, config), train_set, validation, config);
  // A frozen model never improves after its first epoch.
  EXPECT_EQ(result.log.size(), 3u);
  EXPECT_EQ(result.best.state.best_epoch, 1);
  EXPECT_EQ(result.best.state.epoch, 1);
}

// 200 copy sequences, T in [4, 12], K = 5, hidden 16, default TrainConfig.
TEST(Trainer, CopyTaskLossFallsBelowQuarterOfFirstEpoch) {
  TaskSpec spec;
  spec.seed = 1;
  const Dataset train_set = generate_task(spec);
  spec.count = 50;
  spec.seed = 2;
  const Dataset validation = generate_task(spec);
  TrainConfig config;
  config.max_epochs = 50;
  const TrainResult result =
      train(initial_model(ModelShape{5, 5, 16, 16}, config), train_set, validation, config);
  ASSERT_EQ(result.log.size(), 50u);
  EXPECT_LT(result.log.back().train_loss, 0.25 * result.log.front().train_loss)
      << "epoch 1 " << result.log.front().train_loss << ", epoch 50 "
      << result.log.back().train_loss;
}

TEST(Trainer, DivergenceNamesRecord) {
  Dataset train_set = small_task(10, 3);
  const Dataset validation = small_task(11, 2);
  TrainConfig config;
  Transducer model = initial_model(kSmallShape, config);
  model.transcription.b_out(0) = std::numeric_limits<double>::infinity();
  Trainer trainer(model, config);
  try {
    trainer.run_epoch(train_set, validation);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_FALSE(e.record_id().empty());
    EXPECT_NE(std::string(e.what()).find(e.record_id()), std::string::npos);
  }
}

TEST(Trainer, RejectsMismatchedData) {
  TrainConfig config;
  Trainer trainer(initial_model({4, 4, 2, 2}, config), config);
  EXPECT_THROW(trainer.run_epoch(small_task(1, 2), small_task(2, 2)), InputError);
}

TEST(TrainConfig, Validation) {
  TrainConfig config;
  EXPECT_NO_THROW(config.check());
  config.momentum = 1.0;
  EXPECT_THROW(config.check(), InputError);
  config = TrainConfig{};
  config.learning_rate = -1.0;
  EXPECT_THROW(config.check(), InputError);
}

TEST(Metrics, LogLineFormat) {
  EpochMetrics m;
  m.epoch = 3;
  m.train_loss = 1.5;
  m.validation_loss = 0.25;
  m.validation_bits = 0.125;
  EXPECT_EQ(format_metrics_line(m), "3\t1.5\t0.25\t0.125");
}

}  // namespace
}  // namespace rnnt
