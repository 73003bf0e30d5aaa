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

#include "rnnt/joint.hpp"

namespace rnnt {

namespace {

// Below this the product of shifted exponentials loses too much precision and
// the node falls back to a direct softmax.
constexpr double kMinNormalizer = 1e-200;

void check_inputs(const Matrix& f, const Matrix& g, const LabelSequence& targets) {
  if (f.cols() == 0) throw DimensionError("build_lattice: empty transcription sequence");
  if (f.rows() < 2 || f.rows() != g.rows()) {
    throw DimensionError("build_lattice: transcription and prediction vectors differ in length (" +
                         std::to_string(f.rows()) + " vs " + std::to_string(g.rows()) + ")");
  }
  if (g.cols() != static_cast<Eigen::Index>(targets.size()) + 1) {
    throw DimensionError("build_lattice: need U+1 = " + std::to_string(targets.size() + 1) +
                         " prediction vectors, got " + std::to_string(g.cols()));
  }
  const int alphabet = static_cast<int>(f.rows()) - 1;
  for (std::size_t u = 0; u < targets.size(); ++u) {
    if (targets[u] < 0 || targets[u] >= alphabet) {
      throw DimensionError("build_lattice: target label " + std::to_string(targets[u]) +
                           " at position " + std::to_string(u) + " outside alphabet of size " +
                           std::to_string(alphabet));
    }
  }
}

JointLattice empty_lattice(const Matrix& f, const LabelSequence& targets) {
  JointLattice lattice;
  lattice.steps = static_cast<int>(f.cols());
  lattice.target_length = static_cast<int>(targets.size());
  lattice.alphabet_size = static_cast<int>(f.rows()) - 1;
  lattice.log_probs.assign(lattice.steps, Matrix(f.rows(), lattice.target_length + 1));
  lattice.log_null.resize(lattice.steps, lattice.target_length + 1);
  lattice.log_label.resize(lattice.steps, lattice.target_length + 1);
  return lattice;
}

void extract_transitions(JointLattice& lattice, const LabelSequence& targets) {
  for (int t = 0; t < lattice.steps; ++t) {
    for (int u = 0; u <= lattice.target_length; ++u) {
      lattice.log_null(t, u) = lattice.log_probs[t](lattice.null_index(), u);
      lattice.log_label(t, u) =
          u < lattice.target_length ? lattice.log_probs[t](targets[u], u) : kLogZero;
    }
  }
}

}  // namespace

Vector joint_log_prob(const Eigen::Ref<const Vector>& f_t, const Eigen::Ref<const Vector>& g_u,
                      ExpCounter* counter) {
  if (f_t.size() != g_u.size()) {
    throw DimensionError("joint_log_prob: f_t has " + std::to_string(f_t.size()) +
                         " entries but g_u has " + std::to_string(g_u.size()));
  }
  return log_softmax(f_t + g_u, counter);
}

JointLattice build_lattice(const Matrix& f, const Matrix& g, const LabelSequence& targets,
                           ExpCounter* counter) {
  check_inputs(f, g, targets);
  if (!all_finite(f) || !all_finite(g)) throw Error("build_lattice: non-finite logits");
  JointLattice lattice = empty_lattice(f, targets);
  const Eigen::Index outputs = f.rows();

  auto shifted_exp = [&](const Matrix& logits, Vector& peaks) {
    peaks = logits.colwise().maxCoeff().transpose();
    Matrix shifted(outputs, logits.cols());
    for (Eigen::Index j = 0; j < logits.cols(); ++j) {
      for (Eigen::Index k = 0; k < outputs; ++k) {
        shifted(k, j) = counted_exp(logits(k, j) - peaks(j), counter);
      }
    }
    return shifted;
  };
  Vector f_peaks, g_peaks;
  const Matrix f_exp = shifted_exp(f, f_peaks);
  const Matrix g_exp = shifted_exp(g, g_peaks);
  // normalizers(t, u) = sum_k exp(f_t^k - max f_t) exp(g_u^k - max g_u)
  const Matrix normalizers = f_exp.transpose() * g_exp;

  for (int t = 0; t < lattice.steps; ++t) {
    for (int u = 0; u <= lattice.target_length; ++u) {
      auto cell = lattice.log_probs[t].col(u);
      const double z = normalizers(t, u);
      if (z < kMinNormalizer) {
        cell = joint_log_prob(f.col(t), g.col(u), counter);
        continue;
      }
      const double offset = f_peaks(t) + g_peaks(u) + std::log(z);
      cell = (f.col(t) + g.col(u)).array() - offset;
    }
  }
  extract_transitions(lattice, targets);
  return lattice;
}

JointLattice build_lattice_naive(const Matrix& f, const Matrix& g, const LabelSequence& targets,
                                 ExpCounter* counter) {
  check_inputs(f, g, targets);
  JointLattice lattice = empty_lattice(f, targets);
  for (int t = 0; t < lattice.steps; ++t) {
    for (int u = 0; u <= lattice.target_length; ++u) {
      lattice.log_probs[t].col(u) = joint_log_prob(f.col(t), g.col(u), counter);
    }
  }
  extract_transitions(lattice, targets);
  return lattice;
}

}  // namespace rnnt
