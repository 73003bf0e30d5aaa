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

// LSTM hidden layer with diagonal state-to-gate (peephole) connections and
// its exact backward pass. Sequences are matrices with one column per step.

#include <string>
#include <vector>

#include "rnnt/core_math.hpp"

namespace rnnt {

// Weight matrices are stored (hidden x input) and (hidden x hidden) so that
// gate pre-activations are plain matrix-vector products. Peephole weights
// are vectors applied elementwise.
struct LstmParams {
  Matrix wi_input_gate, wh_input_gate;
  Vector ws_input_gate, b_input_gate;
  Matrix wi_forget_gate, wh_forget_gate;
  Vector ws_forget_gate, b_forget_gate;
  Matrix wi_cell, wh_cell;
  Vector b_cell;
  Matrix wi_output_gate, wh_output_gate;
  Vector ws_output_gate, b_output_gate;

  static LstmParams zeros(int input_size, int hidden_size);

  int input_size() const { return static_cast<int>(wi_input_gate.cols()); }
  int hidden_size() const { return static_cast<int>(wi_input_gate.rows()); }

  // Throws DimensionError unless every array agrees with
  // (input_size(), hidden_size()).
  void check() const;
};

// Visits every array of one or more LstmParams in declaration order:
// f(name, p.array...).
template <typename F, typename... Params>
void for_each_array(F&& f, Params&... p) {
  f("wi_input_gate", p.wi_input_gate...);
  f("wh_input_gate", p.wh_input_gate...);
  f("ws_input_gate", p.ws_input_gate...);
  f("b_input_gate", p.b_input_gate...);
  f("wi_forget_gate", p.wi_forget_gate...);
  f("wh_forget_gate", p.wh_forget_gate...);
  f("ws_forget_gate", p.ws_forget_gate...);
  f("b_forget_gate", p.b_forget_gate...);
  f("wi_cell", p.wi_cell...);
  f("wh_cell", p.wh_cell...);
  f("b_cell", p.b_cell...);
  f("wi_output_gate", p.wi_output_gate...);
  f("wh_output_gate", p.wh_output_gate...);
  f("ws_output_gate", p.ws_output_gate...);
  f("b_output_gate", p.b_output_gate...);
}

struct LstmState {
  Vector h;  // hidden
  Vector s;  // cell state

  static LstmState zeros(int hidden_size) {
    return {Vector::Zero(hidden_size), Vector::Zero(hidden_size)};
  }
};

// Activations of one step, kept for the backward pass.
struct LstmStepCache {
  Vector input;
  Vector h_prev, s_prev;
  Vector input_gate, forget_gate, output_gate;
  Vector cell_input;  // tanh of the cell pre-activation
  Vector s, tanh_s;
};

struct LstmCache {
  std::vector<LstmStepCache> steps;
};

LstmState lstm_step(const Vector& input, const LstmState& prev, const LstmParams& params,
                    LstmStepCache* cache = nullptr);

// Runs the layer over the columns of `inputs` starting from `initial`.
// Returns the hidden vectors, one column per step.
Matrix lstm_forward(const Matrix& inputs, const LstmParams& params, const LstmState& initial,
                    LstmCache* cache = nullptr);

struct LstmGradients {
  LstmParams params;
  Matrix inputs;        // dL/d input, one column per step
  LstmState initial;    // dL/d h_0 and dL/d s_0
};

// Backpropagation through time. `d_hidden` holds dL/dh_n per step. The
// optional `d_state` adds a direct dL/ds_n stream. Gradients accumulate
// across all steps.
LstmGradients lstm_backward(const LstmParams& params, const LstmCache& cache,
                            const Matrix& d_hidden, const Matrix* d_state = nullptr);

}  // namespace rnnt
