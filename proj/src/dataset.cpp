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

#include "rnnt/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "rnnt/errors.hpp"

namespace rnnt {

namespace {

constexpr const char* kFormat = "rnnt-dataset";
constexpr int kVersion = 1;

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

DatasetRecord parse_record(const nlohmann::json& j, int feature_dim) {
  DatasetRecord record;
  record.id = j.at("id").get<std::string>();
  const auto& frames = j.at("features");
  if (!frames.is_array()) throw InputError("features must be an array");
  record.features.resize(feature_dim, static_cast<Eigen::Index>(frames.size()));
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto& frame = frames[t];
    if (!frame.is_array() || static_cast<int>(frame.size()) != feature_dim) {
      throw InputError("frame " + std::to_string(t) + " does not have " +
                       std::to_string(feature_dim) + " values");
    }
    for (int d = 0; d < feature_dim; ++d) record.features(d, t) = frame[d].get<double>();
  }
  record.labels = j.at("labels").get<LabelSequence>();
  return record;
}

}  // namespace

void Dataset::check() const {
  if (feature_dim <= 0 || alphabet_size <= 0) {
    throw InputError("dataset: feature_dim and alphabet_size must be positive");
  }
  for (const DatasetRecord& r : records) {
    if (r.features.rows() != feature_dim) {
      throw InputError("dataset: record '" + r.id + "' has feature width " +
                       std::to_string(r.features.rows()) + ", expected " +
                       std::to_string(feature_dim));
    }
    if (r.features.cols() == 0) throw InputError("dataset: record '" + r.id + "' has no frames");
    if (!all_finite(r.features)) {
      throw InputError("dataset: record '" + r.id + "' has non-finite features");
    }
    for (int label : r.labels) {
      if (label < 0 || label >= alphabet_size) {
        throw InputError("dataset: record '" + r.id + "' has label " + std::to_string(label) +
                         " outside alphabet of size " + std::to_string(alphabet_size));
      }
    }
  }
}

std::size_t Dataset::total_labels() const {
  std::size_t total = 0;
  for (const DatasetRecord& r : records) total += r.labels.size();
  return total;
}

Dataset read_dataset(std::istream& in, const std::string& source) {
  Dataset dataset;
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(source, line_number, std::string("malformed JSON: ") + e.what());
    }
    try {
      if (!have_header) {
        if (j.value("format", "") != kFormat) fail(source, line_number, "missing dataset header");
        if (j.at("version").get<int>() != kVersion) {
          fail(source, line_number,
               "unsupported dataset version " + std::to_string(j.at("version").get<int>()));
        }
        dataset.feature_dim = j.at("feature_dim").get<int>();
        dataset.alphabet_size = j.at("alphabet_size").get<int>();
        if (dataset.feature_dim <= 0 || dataset.alphabet_size <= 0) {
          fail(source, line_number, "feature_dim and alphabet_size must be positive");
        }
        have_header = true;
        continue;
      }
      dataset.records.push_back(parse_record(j, dataset.feature_dim));
      Dataset single{dataset.feature_dim, dataset.alphabet_size, {dataset.records.back()}};
      single.check();
    } catch (const InputError& e) {
      if (std::string(e.what()).starts_with(source + ":")) throw;
      fail(source, line_number, e.what());
    } catch (const nlohmann::json::exception& e) {
      fail(source, line_number, std::string("bad field: ") + e.what());
    }
  }
  if (!have_header) fail(source, line_number, "empty dataset, header missing");
  return dataset;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset file '" + path + "'");
  return read_dataset(in, path);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  dataset.check();
  nlohmann::ordered_json header;
  header["format"] = kFormat;
  header["version"] = kVersion;
  header["feature_dim"] = dataset.feature_dim;
  header["alphabet_size"] = dataset.alphabet_size;
  out << header.dump() << '\n';
  for (const DatasetRecord& r : dataset.records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    nlohmann::json frames = nlohmann::json::array();
    for (Eigen::Index t = 0; t < r.features.cols(); ++t) {
      frames.push_back(std::vector<double>(r.features.col(t).data(),
                                           r.features.col(t).data() + r.features.rows()));
    }
    j["features"] = std::move(frames);
    j["labels"] = r.labels;
    out << j.dump() << '\n';
  }
}

void write_dataset_file(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write dataset file '" + path + "'");
  write_dataset(out, dataset);
  if (!out) throw Error("failed writing dataset file '" + path + "'");
}

}  // namespace rnnt
