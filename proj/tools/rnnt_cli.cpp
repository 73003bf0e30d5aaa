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

// rnnt: train, decode, evaluate and inspect RNN transducers on line-delimited
// JSON datasets.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rnnt/checkpoint.hpp"
#include "rnnt/config.hpp"
#include "rnnt/dataset.hpp"
#include "rnnt/gradcheck.hpp"
#include "rnnt/lattice_export.hpp"
#include "rnnt/metrics.hpp"
#include "rnnt/tasks.hpp"
#include "rnnt/trainer.hpp"

namespace {

using namespace rnnt;

constexpr int kRuntimeFailure = 1;
constexpr int kInputError = 2;

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

RunConfig load_config(const std::string& path) {
  return path.empty() ? RunConfig{} : read_config_file(path);
}

void check_compatible(const Transducer& model, const Dataset& data, const std::string& path) {
  const ModelShape shape = model.shape();
  if (data.alphabet_size != shape.alphabet_size) {
    throw InputError("alphabet size mismatch: checkpoint has " +
                     std::to_string(shape.alphabet_size) + ", dataset '" + path + "' has " +
                     std::to_string(data.alphabet_size));
  }
  if (data.feature_dim != shape.feature_dim) {
    throw InputError("feature width mismatch: checkpoint has " +
                     std::to_string(shape.feature_dim) + ", dataset '" + path + "' has " +
                     std::to_string(data.feature_dim));
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

struct TrainArgs {
  std::string config;
  std::vector<std::string> data;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int run_train(const TrainArgs& args) {
  if (args.data.size() != 2) {
    throw InputError("train needs --data <train> --data <validation>");
  }
  RunConfig config = load_config(args.config);
  if (args.seed) config.train.seed = *args.seed;
  const Dataset train_set = read_dataset_file(args.data[0]);
  const Dataset validation_set = read_dataset_file(args.data[1]);
  for (const auto* d : {&train_set, &validation_set}) {
    if (d->alphabet_size != config.shape.alphabet_size ||
        d->feature_dim != config.shape.feature_dim) {
      throw InputError("dataset declares K=" + std::to_string(d->alphabet_size) +
                       ", feature_dim=" + std::to_string(d->feature_dim) + " but config has K=" +
                       std::to_string(config.shape.alphabet_size) +
                       ", feature_dim=" + std::to_string(config.shape.feature_dim));
    }
  }
  std::filesystem::create_directories(args.out);
  std::ofstream log = open_output(args.out + "/metrics.tsv");
  log << format_metrics_header() << '\n';

  const Transducer initial = initial_model(config.shape, config.train);
  const TrainResult result =
      train(initial, train_set, validation_set, config.train, [&](const EpochMetrics& m) {
        log << format_metrics_line(m) << '\n';
        log.flush();
        std::cerr << format_metrics_line(m) << '\n';
      });
  save_checkpoint(args.out + "/best.ckpt", result.best);
  save_checkpoint(args.out + "/final.ckpt", result.final);
  std::cerr << "best epoch " << result.best.state.best_epoch << ", validation loss "
            << format_double(result.best.state.best_metric) << '\n';
  return 0;
}

struct DecodeArgs {
  std::string checkpoint;
  std::string data;
  std::string out;
  int beam_width = 100;
  int nbest = 1;
};

int run_decode(const DecodeArgs& args) {
  const Checkpoint checkpoint = load_checkpoint(args.checkpoint);
  const Dataset data = read_dataset_file(args.data);
  check_compatible(checkpoint.state.model, data, args.data);
  BeamSearchOptions options;
  options.beam_width = args.beam_width;
  options.nbest = args.nbest;
  if (options.beam_width < 1 || options.nbest < 1 || options.nbest > options.beam_width) {
    throw InputError("need 1 <= --nbest <= --beam-width");
  }
  const auto decoded = decode_dataset(checkpoint.state.model, data, options);

  std::ofstream file;
  if (!args.out.empty()) file = open_output(args.out);
  std::ostream& out = args.out.empty() ? std::cout : file;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    nlohmann::ordered_json line;
    line["id"] = data.records[i].id;
    line["hypotheses"] = nlohmann::json::array();
    for (const Hypothesis& h : decoded[i]) {
      nlohmann::ordered_json entry;
      entry["labels"] = h.labels;
      entry["log_prob"] = h.log_prob;
      entry["score"] = h.score();
      line["hypotheses"].push_back(std::move(entry));
    }
    out << line.dump() << '\n';
  }
  return 0;
}

std::vector<LabelSequence> read_hypotheses(const std::string& path, const Dataset& data) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open transcript file '" + path + "'");
  std::vector<LabelSequence> outputs;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const std::size_t index = outputs.size();
      if (index >= data.records.size() || j.at("id").get<std::string>() != data.records[index].id) {
        throw InputError("record id does not match the dataset");
      }
      const auto& hyps = j.at("hypotheses");
      outputs.push_back(hyps.empty() ? LabelSequence{}
                                     : hyps.at(0).at("labels").get<LabelSequence>());
    } catch (const std::exception& e) {
      throw InputError(path + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
  if (outputs.size() != data.records.size()) {
    throw InputError(path + ": " + std::to_string(outputs.size()) + " transcripts for " +
                     std::to_string(data.records.size()) + " records");
  }
  return outputs;
}

struct EvalArgs {
  std::string checkpoint;
  std::string data;
  std::string hypotheses;
  int beam_width = 100;
};

int run_eval(const EvalArgs& args) {
  const Dataset data = read_dataset_file(args.data);
  std::vector<LabelSequence> targets;
  for (const DatasetRecord& r : data.records) targets.push_back(r.labels);

  if (!args.hypotheses.empty()) {
    std::cout << "error_rate " << format_double(error_rate(read_hypotheses(args.hypotheses, data),
                                                           targets))
              << '\n';
    return 0;
  }
  if (args.checkpoint.empty()) throw InputError("eval needs --checkpoint or --hyp");
  const Checkpoint checkpoint = load_checkpoint(args.checkpoint);
  check_compatible(checkpoint.state.model, data, args.data);
  const Transducer& model = checkpoint.state.model;
  const ValidationResult loss = evaluate_log_loss(model, data);
  const double rate = evaluate_error_rate(model, data, args.beam_width);
  std::cout << "records " << data.records.size() << '\n'
            << "loss_nats " << format_double(loss.total_loss) << '\n'
            << "mean_loss_nats " << format_double(loss.mean_loss) << '\n'
            << "bits_per_target " << format_double(loss.bits) << '\n'
            << "error_rate " << format_double(rate) << '\n';
  return 0;
}

struct GradcheckArgs {
  std::string config;
  std::uint64_t seed = 42;
  int steps = 4;
  int target_length = 3;
};

int run_gradcheck(const GradcheckArgs& args) {
  GradcheckSpec spec;
  if (!args.config.empty()) {
    const RunConfig config = read_config_file(args.config);
    spec.shape = config.shape;
    spec.init_range = config.train.init_range;
  }
  spec.seed = args.seed;
  spec.steps = args.steps;
  spec.target_length = args.target_length;
  const GradcheckReport report = gradient_check(make_gradcheck_instance(spec));
  std::cout << (report.passed ? "PASS" : "FAIL") << " checked=" << report.checked
            << " worst_relative_error=" << format_double(report.worst_relative_error)
            << " parameter=" << report.worst_array << "[" << report.worst_index << "]"
            << " analytic=" << format_double(report.worst_analytic)
            << " numeric=" << format_double(report.worst_numeric) << '\n';
  return report.passed ? 0 : kRuntimeFailure;
}

struct LatticeArgs {
  std::string checkpoint;
  std::string data;
  std::string record;
  std::string out;
};

int run_lattice(const LatticeArgs& args) {
  const Checkpoint checkpoint = load_checkpoint(args.checkpoint);
  const Dataset data = read_dataset_file(args.data);
  check_compatible(checkpoint.state.model, data, args.data);
  if (data.records.empty()) throw InputError("dataset '" + args.data + "' has no records");
  const DatasetRecord* record = &data.records.front();
  if (!args.record.empty()) {
    record = nullptr;
    for (const DatasetRecord& r : data.records) {
      if (r.id == args.record) record = &r;
    }
    if (record == nullptr) throw InputError("no record '" + args.record + "' in " + args.data);
  }
  std::filesystem::create_directories(args.out);
  write_lattice_grids(args.out, compute_lattice_grids(checkpoint.state.model, *record));
  return 0;
}

struct GenArgs {
  std::string config;
  std::string task;
  std::optional<int> count;
  std::optional<std::uint64_t> seed;
  std::optional<int> alphabet;
  std::optional<int> min_length;
  std::optional<int> max_length;
  std::string out;
};

int run_gen(const GenArgs& args) {
  const RunConfig config = load_config(args.config);
  TaskSpec spec;
  spec.task = args.task.empty() ? config.task : parse_task(args.task);
  spec.count = args.count.value_or(config.count);
  spec.seed = args.seed.value_or(config.train.seed);
  spec.alphabet_size = args.alphabet.value_or(config.shape.alphabet_size);
  spec.min_length = args.min_length.value_or(config.min_length);
  spec.max_length = args.max_length.value_or(config.max_length);
  write_dataset_file(args.out, generate_task(spec));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RNN transducer training, decoding and analysis"};
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a transducer with early stopping");
  train_cmd->add_option("--config", train_args.config, "key = value config file");
  train_cmd->add_option("--data", train_args.data, "training then validation dataset")
      ->required();
  train_cmd->add_option("--out", train_args.out, "output directory")->required();
  train_cmd->add_option("--seed", train_args.seed, "override the config seed");

  DecodeArgs decode_args;
  auto* decode_cmd = app.add_subcommand("decode", "Beam-search decode a dataset");
  decode_cmd->add_option("--checkpoint", decode_args.checkpoint)->required();
  decode_cmd->add_option("--data", decode_args.data)->required();
  decode_cmd->add_option("--out", decode_args.out, "output file (default stdout)");
  decode_cmd->add_option("--beam-width", decode_args.beam_width);
  decode_cmd->add_option("--nbest", decode_args.nbest);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Log-loss, bits per target and error rate");
  eval_cmd->add_option("--checkpoint", eval_args.checkpoint);
  eval_cmd->add_option("--data", eval_args.data)->required();
  eval_cmd->add_option("--hyp", eval_args.hypotheses, "score a decode output file instead");
  eval_cmd->add_option("--beam-width", eval_args.beam_width);

  GradcheckArgs gradcheck_args;
  auto* gradcheck_cmd =
      app.add_subcommand("gradcheck", "Compare gradients against finite differences");
  gradcheck_cmd->add_option("--config", gradcheck_args.config);
  gradcheck_cmd->add_option("--seed", gradcheck_args.seed);
  gradcheck_cmd->add_option("--steps", gradcheck_args.steps, "input length T (<= 4)");
  gradcheck_cmd->add_option("--target-length", gradcheck_args.target_length,
                            "target length U (<= 3)");

  LatticeArgs lattice_args;
  auto* lattice_cmd = app.add_subcommand("lattice", "Export alpha/beta grids as CSV");
  lattice_cmd->add_option("--checkpoint", lattice_args.checkpoint)->required();
  lattice_cmd->add_option("--data", lattice_args.data)->required();
  lattice_cmd->add_option("--record", lattice_args.record, "record id (default: first)");
  lattice_cmd->add_option("--out", lattice_args.out, "output directory")->required();

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic task dataset");
  gen_cmd->add_option("--config", gen_args.config);
  gen_cmd->add_option("--task", gen_args.task, "copy, double or dedup");
  gen_cmd->add_option("--count", gen_args.count);
  gen_cmd->add_option("--seed", gen_args.seed);
  gen_cmd->add_option("--alphabet", gen_args.alphabet);
  gen_cmd->add_option("--min-length", gen_args.min_length);
  gen_cmd->add_option("--max-length", gen_args.max_length);
  gen_cmd->add_option("--out", gen_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*train_cmd) return run_train(train_args);
    if (*decode_cmd) return run_decode(decode_args);
    if (*eval_cmd) return run_eval(eval_args);
    if (*gradcheck_cmd) return run_gradcheck(gradcheck_args);
    if (*lattice_cmd) return run_lattice(lattice_args);
    if (*gen_cmd) return run_gen(gen_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kInputError;
}
