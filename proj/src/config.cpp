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

#include "rnnt/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rnnt/errors.hpp"

namespace rnnt {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw InputError("'" + value + "' is not a valid number");
  return out;
}

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

EarlyStopMetric parse_metric(const std::string& value) {
  if (value == "log_loss") return EarlyStopMetric::kLogLoss;
  if (value == "error_rate") return EarlyStopMetric::kErrorRate;
  throw InputError("early_stop_metric must be log_loss or error_rate, got '" + value + "'");
}

std::string metric_name(EarlyStopMetric metric) {
  return metric == EarlyStopMetric::kLogLoss ? "log_loss" : "error_rate";
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"alphabet_size", [](RunConfig& c, const std::string& v) { c.shape.alphabet_size = parse_number<int>(v); }},
      {"feature_dim", [](RunConfig& c, const std::string& v) { c.shape.feature_dim = parse_number<int>(v); }},
      {"prediction_hidden", [](RunConfig& c, const std::string& v) { c.shape.prediction_hidden = parse_number<int>(v); }},
      {"transcription_hidden", [](RunConfig& c, const std::string& v) { c.shape.transcription_hidden = parse_number<int>(v); }},
      {"learning_rate", [](RunConfig& c, const std::string& v) { c.train.learning_rate = parse_number<double>(v); }},
      {"momentum", [](RunConfig& c, const std::string& v) { c.train.momentum = parse_number<double>(v); }},
      {"weight_noise", [](RunConfig& c, const std::string& v) { c.train.weight_noise = parse_number<double>(v); }},
      {"init_range", [](RunConfig& c, const std::string& v) { c.train.init_range = parse_number<double>(v); }},
      {"max_epochs", [](RunConfig& c, const std::string& v) { c.train.max_epochs = parse_number<int>(v); }},
      {"patience", [](RunConfig& c, const std::string& v) { c.train.patience = parse_number<int>(v); }},
      {"early_stop_metric", [](RunConfig& c, const std::string& v) { c.train.early_stop = parse_metric(v); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.train.seed = parse_number<std::uint64_t>(v); }},
      {"beam_width", [](RunConfig& c, const std::string& v) {
         c.beam_width = parse_number<int>(v);
         c.train.beam_width = c.beam_width;
       }},
      {"nbest", [](RunConfig& c, const std::string& v) { c.nbest = parse_number<int>(v); }},
      {"task", [](RunConfig& c, const std::string& v) { c.task = parse_task(v); }},
      {"count", [](RunConfig& c, const std::string& v) { c.count = parse_number<int>(v); }},
      {"min_length", [](RunConfig& c, const std::string& v) { c.min_length = parse_number<int>(v); }},
      {"max_length", [](RunConfig& c, const std::string& v) { c.max_length = parse_number<int>(v); }},
  };
  return table;
}

}  // namespace

void RunConfig::check() const {
  if (shape.alphabet_size < 1 || shape.feature_dim < 1 || shape.prediction_hidden < 1 ||
      shape.transcription_hidden < 1) {
    throw InputError("model sizes must be positive");
  }
  train.check();
  if (beam_width < 1) throw InputError("beam_width must be at least 1");
  if (nbest < 1 || nbest > beam_width) throw InputError("nbest must lie in [1, beam_width]");
  if (count < 0) throw InputError("count must be non-negative");
  if (min_length < 1 || max_length < min_length) {
    throw InputError("need 1 <= min_length <= max_length");
  }
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_number) + ": ";
    if (eq == std::string::npos) throw InputError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw InputError(where + "unknown key '" + key + "'");
    try {
      it->second(config, value);
    } catch (const InputError& e) {
      throw InputError(where + key + ": " + e.what());
    }
  }
  try {
    config.check();
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  return config;
}

RunConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

std::string format_train_config(const TrainConfig& c) {
  std::ostringstream out;
  out << "learning_rate = " << format_double(c.learning_rate) << '\n'
      << "momentum = " << format_double(c.momentum) << '\n'
      << "weight_noise = " << format_double(c.weight_noise) << '\n'
      << "init_range = " << format_double(c.init_range) << '\n'
      << "max_epochs = " << c.max_epochs << '\n'
      << "patience = " << c.patience << '\n'
      << "early_stop_metric = " << metric_name(c.early_stop) << '\n'
      << "seed = " << c.seed << '\n'
      << "beam_width = " << c.beam_width << '\n';
  return out.str();
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << "alphabet_size = " << c.shape.alphabet_size << '\n'
      << "feature_dim = " << c.shape.feature_dim << '\n'
      << "prediction_hidden = " << c.shape.prediction_hidden << '\n'
      << "transcription_hidden = " << c.shape.transcription_hidden << '\n';
  TrainConfig train = c.train;
  train.beam_width = c.beam_width;
  out << format_train_config(train) << "nbest = " << c.nbest << '\n'
      << "task = " << task_name(c.task) << '\n'
      << "count = " << c.count << '\n'
      << "min_length = " << c.min_length << '\n'
      << "max_length = " << c.max_length << '\n';
  return out.str();
}

}  // namespace rnnt
