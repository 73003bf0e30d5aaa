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

// Numerical kernels shared by the networks, lattice and decoder. Everything
// that touches probabilities works in natural-log space.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>

#include <Eigen/Core>

#include "rnnt/errors.hpp"

namespace rnnt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// Counts calls to exp() made on the lattice construction paths.
struct ExpCounter {
  std::size_t count = 0;
};

inline double counted_exp(double x, ExpCounter* counter) {
  if (counter != nullptr) ++counter->count;
  return std::exp(x);
}

// log(exp(a) + exp(b)). Either argument may be kLogZero.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a == kLogZero) return kLogZero;
  return a + std::log1p(std::exp(b - a));
}

template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::DenseBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  if (values.size() == 0) {
    throw Error("log_sum_exp: empty input");
  }
  const Scalar peak = values.maxCoeff();
  if (peak == -std::numeric_limits<Scalar>::infinity()) return peak;
  return peak + std::log((values.derived().array() - peak).exp().sum());
}

inline double log_sum_exp(std::span<const double> values) {
  return log_sum_exp(Eigen::Map<const Vector>(values.data(),
                                              static_cast<Eigen::Index>(values.size())));
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& values) {
  return values.derived().array().isFinite().all();
}

// log(softmax(logits)), max-shifted. Every exponential is charged to
// `counter` when given.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> log_softmax(
    const Eigen::MatrixBase<Derived>& logits, ExpCounter* counter = nullptr) {
  using Scalar = typename Derived::Scalar;
  if (logits.size() == 0) throw DimensionError("log_softmax: empty input");
  if (!all_finite(logits)) throw Error("log_softmax: non-finite logit");
  const Scalar peak = logits.maxCoeff();
  Scalar total = 0;
  for (Eigen::Index k = 0; k < logits.size(); ++k) {
    total += counted_exp(logits(k) - peak, counter);
  }
  return (logits.array() - peak - std::log(total)).matrix();
}

// One-hot encoding of a label over a K-letter alphabet. std::nullopt stands
// for the null symbol and encodes as all zeros.
inline Vector one_hot(std::optional<int> label, int alphabet_size) {
  if (alphabet_size <= 0) throw DimensionError("one_hot: alphabet size must be positive");
  Vector encoded = Vector::Zero(alphabet_size);
  if (label) {
    if (*label < 0 || *label >= alphabet_size) {
      throw DimensionError("one_hot: label " + std::to_string(*label) +
                           " outside alphabet of size " + std::to_string(alphabet_size));
    }
    encoded(*label) = 1.0;
  }
  return encoded;
}

template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& x) {
  return (1.0 / (1.0 + (-x.array()).exp())).matrix();
}

template <typename Derived>
auto tanh(const Eigen::MatrixBase<Derived>& x) {
  return x.array().tanh().matrix();
}

// Seeded pseudo-random stream. The transforms from raw 64-bit draws are
// written out here so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, n), unbiased by rejection.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw Error("Rng::uniform_index: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % n;
  }

  // Standard normal via Box-Muller; one uniform pair per sample.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::string state() const {
    std::ostringstream out;
    out << engine_;
    return out.str();
  }

  void set_state(const std::string& state) {
    std::istringstream in(state);
    in >> engine_;
    if (in.fail()) throw InputError("Rng: malformed state");
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rnnt
