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

#include <cmath>
#include <functional>
#include <vector>

#include "rnnt/core_math.hpp"
#include "rnnt/lstm.hpp"
#include "rnnt/networks.hpp"
#include "rnnt/transducer.hpp"

namespace rnnt::testing {

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double range = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-range, range);
  return m;
}

inline LstmParams random_lstm(Rng& rng, int input_size, int hidden_size, double range = 0.5) {
  LstmParams p = LstmParams::zeros(input_size, hidden_size);
  for_each_array(
      [&](const char*, auto& a) {
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.uniform(-range, range);
      },
      p);
  return p;
}

inline Transducer random_transducer(Rng& rng, const ModelShape& shape, double range = 0.5) {
  Transducer model = Transducer::zeros(shape);
  initialize_uniform(model, range, rng);
  return model;
}

inline LabelSequence random_labels(Rng& rng, int length, int alphabet) {
  LabelSequence labels(length);
  for (int& l : labels) l = static_cast<int>(rng.uniform_index(alphabet));
  return labels;
}

// Scalar-by-scalar LSTM step written from the gate equations, independent
// of the vectorised implementation.
struct ScalarLstmState {
  std::vector<double> h, s;
};

inline double scalar_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline ScalarLstmState scalar_lstm_step(const std::vector<double>& in, const ScalarLstmState& prev,
                                        const LstmParams& p) {
  const int H = p.hidden_size();
  const int I = p.input_size();
  ScalarLstmState next{std::vector<double>(H), std::vector<double>(H)};
  for (int m = 0; m < H; ++m) {
    double a = p.b_input_gate(m) + p.ws_input_gate(m) * prev.s[m];
    double b = p.b_forget_gate(m) + p.ws_forget_gate(m) * prev.s[m];
    double c = p.b_cell(m);
    for (int j = 0; j < I; ++j) {
      a += p.wi_input_gate(m, j) * in[j];
      b += p.wi_forget_gate(m, j) * in[j];
      c += p.wi_cell(m, j) * in[j];
    }
    for (int j = 0; j < H; ++j) {
      a += p.wh_input_gate(m, j) * prev.h[j];
      b += p.wh_forget_gate(m, j) * prev.h[j];
      c += p.wh_cell(m, j) * prev.h[j];
    }
    next.s[m] = scalar_sigmoid(b) * prev.s[m] + scalar_sigmoid(a) * std::tanh(c);
  }
  for (int m = 0; m < H; ++m) {
    double o = p.b_output_gate(m) + p.ws_output_gate(m) * next.s[m];
    for (int j = 0; j < I; ++j) o += p.wi_output_gate(m, j) * in[j];
    for (int j = 0; j < H; ++j) o += p.wh_output_gate(m, j) * prev.h[j];
    next.h[m] = scalar_sigmoid(o) * std::tanh(next.s[m]);
  }
  return next;
}

inline std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// out[k] = sum_j w(k, j) * h[j] + b[k]
inline std::vector<double> scalar_affine(const Matrix& w, const std::vector<double>& h,
                                         const Vector& b) {
  std::vector<double> out(w.rows());
  for (Eigen::Index k = 0; k < w.rows(); ++k) {
    double acc = b(k);
    for (Eigen::Index j = 0; j < w.cols(); ++j) acc += w(k, j) * h[j];
    out[k] = acc;
  }
  return out;
}

inline double central_difference(const std::function<double()>& f, double& x, double eps) {
  const double saved = x;
  x = saved + eps;
  const double plus = f();
  x = saved - eps;
  const double minus = f();
  x = saved;
  return (plus - minus) / (2.0 * eps);
}

inline bool close_rel_or_abs(double a, double b, double rel, double abs_tol) {
  const double diff = std::abs(a - b);
  return diff <= abs_tol || diff <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace rnnt::testing
