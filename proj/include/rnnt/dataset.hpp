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

// Line-delimited JSON datasets. The first line is a header declaring the
// feature width and alphabet size; each further line is one record:
//
//   {"format":"rnnt-dataset","version":1,"feature_dim":5,"alphabet_size":5}
//   {"id":"copy-000000","features":[[...],[...]],"labels":[3,1]}

#include <iosfwd>
#include <string>
#include <vector>

#include "rnnt/networks.hpp"

namespace rnnt {

struct DatasetRecord {
  std::string id;
  Matrix features;  // feature_dim x T
  LabelSequence labels;

  int length() const { return static_cast<int>(features.cols()); }
};

struct Dataset {
  int feature_dim = 0;
  int alphabet_size = 0;
  std::vector<DatasetRecord> records;

  // Throws InputError naming the first record that breaks the declared
  // feature width or alphabet.
  void check() const;
  std::size_t total_labels() const;
};

// `source` names the stream in diagnostics ("path:line: ...").
Dataset read_dataset(std::istream& in, const std::string& source = "<stream>");
Dataset read_dataset_file(const std::string& path);

void write_dataset(std::ostream& out, const Dataset& dataset);
void write_dataset_file(const std::string& path, const Dataset& dataset);

}  // namespace rnnt
