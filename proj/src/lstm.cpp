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

#include "rnnt/lstm.hpp"

namespace rnnt {

namespace {

void expect_shape(const std::string& name, Eigen::Index rows, Eigen::Index cols,
                  Eigen::Index want_rows, Eigen::Index want_cols) {
  if (rows != want_rows || cols != want_cols) {
    throw DimensionError("LstmParams." + name + " is " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", expected " + std::to_string(want_rows) +
                         "x" + std::to_string(want_cols));
  }
}

}  // namespace

LstmParams LstmParams::zeros(int input_size, int hidden_size) {
  if (input_size <= 0 || hidden_size <= 0) {
    throw DimensionError("LstmParams: sizes must be positive");
  }
  const Matrix wi = Matrix::Zero(hidden_size, input_size);
  const Matrix wh = Matrix::Zero(hidden_size, hidden_size);
  const Vector v = Vector::Zero(hidden_size);
  return {wi, wh, v, v, wi, wh, v, v, wi, wh, v, wi, wh, v, v};
}

void LstmParams::check() const {
  const Eigen::Index in = wi_input_gate.cols();
  const Eigen::Index hid = wi_input_gate.rows();
  if (in == 0 || hid == 0) throw DimensionError("LstmParams: empty weights");
  for_each_array(
      [&](const char* name, const auto& array) {
        const std::string n = name;
        if (n.starts_with("wi_")) {
          expect_shape(n, array.rows(), array.cols(), hid, in);
        } else if (n.starts_with("wh_")) {
          expect_shape(n, array.rows(), array.cols(), hid, hid);
        } else {
          expect_shape(n, array.rows(), array.cols(), hid, 1);
        }
      },
      *this);
}

LstmState lstm_step(const Vector& input, const LstmState& prev, const LstmParams& p,
                    LstmStepCache* cache) {
  if (input.size() != p.input_size()) {
    throw DimensionError("lstm_step: input has " + std::to_string(input.size()) +
                         " entries, layer expects " + std::to_string(p.input_size()));
  }
  if (prev.h.size() != p.hidden_size() || prev.s.size() != p.hidden_size()) {
    throw DimensionError("lstm_step: previous state does not match hidden size " +
                         std::to_string(p.hidden_size()));
  }

  const Vector input_gate =
      sigmoid(p.wi_input_gate * input + p.wh_input_gate * prev.h +
              p.ws_input_gate.cwiseProduct(prev.s) + p.b_input_gate);
  const Vector forget_gate =
      sigmoid(p.wi_forget_gate * input + p.wh_forget_gate * prev.h +
              p.ws_forget_gate.cwiseProduct(prev.s) + p.b_forget_gate);
  const Vector cell_input = tanh(p.wi_cell * input + p.wh_cell * prev.h + p.b_cell);

  LstmState next;
  next.s = forget_gate.cwiseProduct(prev.s) + input_gate.cwiseProduct(cell_input);
  // The output gate looks at the new cell state.
  const Vector output_gate =
      sigmoid(p.wi_output_gate * input + p.wh_output_gate * prev.h +
              p.ws_output_gate.cwiseProduct(next.s) + p.b_output_gate);
  const Vector tanh_s = tanh(next.s);
  next.h = output_gate.cwiseProduct(tanh_s);

  if (cache != nullptr) {
    *cache = {input, prev.h, prev.s, input_gate, forget_gate, output_gate,
              cell_input, next.s, tanh_s};
  }
  return next;
}

Matrix lstm_forward(const Matrix& inputs, const LstmParams& params, const LstmState& initial,
                    LstmCache* cache) {
  Matrix hidden(params.hidden_size(), inputs.cols());
  if (cache != nullptr) cache->steps.assign(inputs.cols(), {});
  LstmState state = initial;
  for (Eigen::Index n = 0; n < inputs.cols(); ++n) {
    state = lstm_step(inputs.col(n), state, params,
                      cache != nullptr ? &cache->steps[n] : nullptr);
    hidden.col(n) = state.h;
  }
  return hidden;
}

LstmGradients lstm_backward(const LstmParams& p, const LstmCache& cache, const Matrix& d_hidden,
                            const Matrix* d_state) {
  const Eigen::Index steps = static_cast<Eigen::Index>(cache.steps.size());
  if (steps == 0) throw Error("lstm_backward: no cached activations");
  if (d_hidden.cols() != steps || d_hidden.rows() != p.hidden_size()) {
    throw DimensionError("lstm_backward: dL/dh stream does not match the cached sequence");
  }
  if (d_state != nullptr && (d_state->cols() != steps || d_state->rows() != p.hidden_size())) {
    throw DimensionError("lstm_backward: dL/ds stream does not match the cached sequence");
  }

  LstmGradients grads{LstmParams::zeros(p.input_size(), p.hidden_size()),
                      Matrix::Zero(p.input_size(), steps), LstmState::zeros(p.hidden_size())};
  LstmParams& g = grads.params;

  // Gradients flowing into step n from step n+1.
  Vector dh_next = Vector::Zero(p.hidden_size());
  Vector ds_next = Vector::Zero(p.hidden_size());

  for (Eigen::Index n = steps - 1; n >= 0; --n) {
    const LstmStepCache& c = cache.steps[n];
    const Vector dh = d_hidden.col(n) + dh_next;

    const Vector d_output_pre = dh.cwiseProduct(c.tanh_s)
                                    .cwiseProduct(c.output_gate)
                                    .cwiseProduct((1.0 - c.output_gate.array()).matrix());
    Vector ds = ds_next + dh.cwiseProduct(c.output_gate)
                              .cwiseProduct((1.0 - c.tanh_s.array().square()).matrix()) +
                p.ws_output_gate.cwiseProduct(d_output_pre);
    if (d_state != nullptr) ds += d_state->col(n);

    const Vector d_input_pre = ds.cwiseProduct(c.cell_input)
                                   .cwiseProduct(c.input_gate)
                                   .cwiseProduct((1.0 - c.input_gate.array()).matrix());
    const Vector d_forget_pre = ds.cwiseProduct(c.s_prev)
                                    .cwiseProduct(c.forget_gate)
                                    .cwiseProduct((1.0 - c.forget_gate.array()).matrix());
    const Vector d_cell_pre = ds.cwiseProduct(c.input_gate)
                                  .cwiseProduct((1.0 - c.cell_input.array().square()).matrix());

    g.wi_input_gate.noalias() += d_input_pre * c.input.transpose();
    g.wh_input_gate.noalias() += d_input_pre * c.h_prev.transpose();
    g.ws_input_gate += d_input_pre.cwiseProduct(c.s_prev);
    g.b_input_gate += d_input_pre;

    g.wi_forget_gate.noalias() += d_forget_pre * c.input.transpose();
    g.wh_forget_gate.noalias() += d_forget_pre * c.h_prev.transpose();
    g.ws_forget_gate += d_forget_pre.cwiseProduct(c.s_prev);
    g.b_forget_gate += d_forget_pre;

    g.wi_cell.noalias() += d_cell_pre * c.input.transpose();
    g.wh_cell.noalias() += d_cell_pre * c.h_prev.transpose();
    g.b_cell += d_cell_pre;

    g.wi_output_gate.noalias() += d_output_pre * c.input.transpose();
    g.wh_output_gate.noalias() += d_output_pre * c.h_prev.transpose();
    g.ws_output_gate += d_output_pre.cwiseProduct(c.s);
    g.b_output_gate += d_output_pre;

    grads.inputs.col(n) = p.wi_input_gate.transpose() * d_input_pre +
                          p.wi_forget_gate.transpose() * d_forget_pre +
                          p.wi_cell.transpose() * d_cell_pre +
                          p.wi_output_gate.transpose() * d_output_pre;
    dh_next = p.wh_input_gate.transpose() * d_input_pre +
              p.wh_forget_gate.transpose() * d_forget_pre +
              p.wh_cell.transpose() * d_cell_pre + p.wh_output_gate.transpose() * d_output_pre;
    ds_next = ds.cwiseProduct(c.forget_gate) + p.ws_input_gate.cwiseProduct(d_input_pre) +
              p.ws_forget_gate.cwiseProduct(d_forget_pre);
  }

  grads.initial = {dh_next, ds_next};
  return grads;
}

}  // namespace rnnt
