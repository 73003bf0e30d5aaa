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

#include "rnnt/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rnnt/decoder.hpp"
#include "rnnt/lattice.hpp"

namespace rnnt::oracle {

namespace {

constexpr double kEnumerationLimit = 1e6;

double binomial(int n, int k) {
  double value = 1.0;
  for (int i = 1; i <= k; ++i) value = value * (n - k + i) / i;
  return value;
}

void extend_paths(int nulls_left, int labels_left, LatticePath& prefix,
                  std::vector<LatticePath>& out) {
  if (nulls_left == 0 && labels_left == 0) {
    out.push_back(prefix);
    return;
  }
  if (nulls_left > 0) {
    prefix.push_back(false);
    extend_paths(nulls_left - 1, labels_left, prefix, out);
    prefix.pop_back();
  }
  if (labels_left > 0) {
    prefix.push_back(true);
    extend_paths(nulls_left, labels_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<LatticePath> enumerate_alignments(int steps, int target_length) {
  if (steps < 1 || target_length < 0) throw Error("enumerate_alignments: need T >= 1, U >= 0");
  std::vector<LatticePath> paths;
  LatticePath prefix;
  extend_paths(steps - 1, target_length, prefix, paths);
  return paths;
}

Alignment to_alignment(const LatticePath& path, const LabelSequence& targets) {
  Alignment alignment;
  std::size_t u = 0;
  for (bool label_move : path) alignment.push_back(label_move ? targets.at(u++) : kNull);
  alignment.push_back(kNull);
  return alignment;
}

LabelSequence collapse(const Alignment& alignment) {
  LabelSequence labels;
  for (int symbol : alignment) {
    if (symbol != kNull) labels.push_back(symbol);
  }
  return labels;
}

double path_probability(const JointLattice& lattice, const LatticePath& path) {
  int t = 0;
  int u = 0;
  double probability = 1.0;
  for (bool label_move : path) {
    if (label_move) {
      probability *= std::exp(lattice.log_label(t, u));
      ++u;
    } else {
      probability *= std::exp(lattice.log_null(t, u));
      ++t;
    }
  }
  if (t != lattice.steps - 1 || u != lattice.target_length) {
    throw Error("path_probability: path does not end at the terminal node");
  }
  return probability * std::exp(lattice.log_null(t, u));
}

double brute_force_log_prob(const JointLattice& lattice, const LabelSequence& targets) {
  if (static_cast<int>(targets.size()) != lattice.target_length) {
    throw DimensionError("brute_force_log_prob: target length does not match the lattice");
  }
  if (binomial(lattice.steps - 1 + lattice.target_length, lattice.target_length) >
      kEnumerationLimit) {
    throw Error("brute_force_log_prob: more than 10^6 alignments");
  }
  double total = 0.0;
  for (const LatticePath& path : enumerate_alignments(lattice.steps, lattice.target_length)) {
    total += path_probability(lattice, path);
  }
  return std::log(total);
}

std::vector<RankedSequence> exhaustive_decode(const Matrix& f, const PredictionNet& net,
                                              int max_len) {
  const int alphabet = net.alphabet_size();
  if (max_len < 0 || std::pow(alphabet + 1.0, max_len) > kEnumerationLimit) {
    throw Error("exhaustive_decode: (K+1)^max_len exceeds 10^6");
  }
  std::vector<RankedSequence> ranked;
  std::vector<LabelSequence> frontier{{}};
  for (int length = 0; length <= max_len; ++length) {
    std::vector<LabelSequence> longer;
    for (const LabelSequence& labels : frontier) {
      const Matrix g = predict_sequence(net, labels);
      const double log_prob = forward_pass(build_lattice_naive(f, g, labels)).log_prob;
      ranked.push_back({labels, log_prob, length_normalized_score(log_prob, labels.size())});
      for (int k = 0; k < alphabet; ++k) {
        longer.push_back(labels);
        longer.back().push_back(k);
      }
    }
    frontier = std::move(longer);
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedSequence& a, const RankedSequence& b) {
    return ranks_before(a.score, a.labels, b.score, b.labels);
  });
  return ranked;
}

namespace {

struct TransitionBounds {
  Vector log_null;   // per step t
  Vector log_label;  // per step t, max over labels
};

// Pr(k|t,u) is largest when g^k sits at its upper bound and every other
// component at its lower bound.
TransitionBounds transition_bounds(const Matrix& f, const Vector& g_lo, const Vector& g_hi) {
  const Eigen::Index outputs = f.rows();
  if (g_lo.size() != outputs || g_hi.size() != outputs) {
    throw DimensionError("score bound: logit box does not match the alphabet");
  }
  TransitionBounds bounds{Vector(f.cols()), Vector(f.cols())};
  for (Eigen::Index t = 0; t < f.cols(); ++t) {
    auto bound_for = [&](Eigen::Index k) {
      Vector logits = f.col(t) + g_lo;
      logits(k) = f(k, t) + g_hi(k);
      return logits(k) - log_sum_exp(logits);
    };
    bounds.log_null(t) = bound_for(outputs - 1);
    double best = kLogZero;
    for (Eigen::Index k = 0; k + 1 < outputs; ++k) best = std::max(best, bound_for(k));
    bounds.log_label(t) = best;
  }
  return bounds;
}

}  // namespace

PredictionLogitBox hidden_state_box(const PredictionNet& net) {
  const Vector spread = net.w_out.cwiseAbs().rowwise().sum();
  PredictionLogitBox box;
  box.first_lo = box.rest_lo = net.b_out - spread;
  box.first_hi = box.rest_hi = net.b_out + spread;
  return box;
}

double normalized_score_upper_bound(const Matrix& f, const PredictionLogitBox& box, int length) {
  if (length < 1) throw Error("normalized_score_upper_bound: length must be positive");
  const TransitionBounds first = transition_bounds(f, box.first_lo, box.first_hi);
  const TransitionBounds rest = transition_bounds(f, box.rest_lo, box.rest_hi);
  auto bounds = [&](int u) -> const TransitionBounds& { return u == 0 ? first : rest; };
  const Eigen::Index T = f.cols();
  // Forward recursion over the lattice with every transition replaced by its
  // bound: the sum over paths of products of bounds.
  Matrix alpha = Matrix::Constant(T, length + 1, kLogZero);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (int u = 0; u <= length; ++u) {
      if (t == 0 && u == 0) {
        alpha(0, 0) = 0.0;
        continue;
      }
      const double horizontal = t > 0 ? alpha(t - 1, u) + bounds(u).log_null(t - 1) : kLogZero;
      const double vertical = u > 0 ? alpha(t, u - 1) + bounds(u - 1).log_label(t) : kLogZero;
      alpha(t, u) = log_add(horizontal, vertical);
    }
  }
  return (alpha(T - 1, length) + bounds(length).log_null(T - 1)) / length;
}

double normalized_score_upper_bound(const Matrix& f, const PredictionNet& net, int length) {
  return normalized_score_upper_bound(f, hidden_state_box(net), length);
}

double tail_score_upper_bound(const Matrix& f, const PredictionLogitBox& box, int min_length) {
  if (min_length < 3) throw Error("tail_score_upper_bound: min_length must be at least 3");
  // Only the first label is emitted from g_0; every later one sees a g_u
  // with u >= 1. With L the largest later label bound,
  //   Pr(y) <= C(n+T-1, T-1) * L^(n-1)
  // and log C(n+T-1, T-1) <= (T-1) log(n+T-1). Both terms divided by n
  // decrease for n >= 3, so n = min_length gives the bound for all longer n.
  const double label = transition_bounds(f, box.rest_lo, box.rest_hi).log_label.maxCoeff();
  const double n = min_length;
  const double T = static_cast<double>(f.cols());
  return (n - 1.0) / n * label + (T - 1.0) * std::log(n + T - 1.0) / n;
}

double tail_score_upper_bound(const Matrix& f, const PredictionNet& net, int min_length) {
  return tail_score_upper_bound(f, hidden_state_box(net), min_length);
}

}  // namespace rnnt::oracle
