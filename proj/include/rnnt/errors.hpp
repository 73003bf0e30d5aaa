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

#include <stdexcept>
#include <string>

namespace rnnt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not agree. Never silently truncated.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed user input: files, configs, command lines.
class InputError : public Error {
 public:
  using Error::Error;
};

// The target sequence has zero probability under the model.
class ZeroProbabilityError : public Error {
 public:
  ZeroProbabilityError(int t, int u, const std::string& what)
      : Error(what), t_(t), u_(u) {}

  // 1-based transcription step and 0-based output position of the first
  // lattice node through which no probability mass flows.
  int t() const { return t_; }
  int u() const { return u_; }

 private:
  int t_;
  int u_;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(std::string record_id, const std::string& what)
      : Error(what), record_id_(std::move(record_id)) {}

  const std::string& record_id() const { return record_id_; }

 private:
  std::string record_id_;
};

// Beam search hit the per-step emission cap.
class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace rnnt
