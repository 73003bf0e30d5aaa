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

#include "rnnt/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace rnnt {

void GradcheckSpec::check() const {
  if (steps < 1 || steps > 4) throw InputError("gradcheck: T must lie in [1, 4]");
  if (target_length < 0 || target_length > 3) throw InputError("gradcheck: U must lie in [0, 3]");
  if (shape.prediction_hidden < 1 || shape.prediction_hidden > 4 ||
      shape.transcription_hidden < 1 || shape.transcription_hidden > 4) {
    throw InputError("gradcheck: hidden sizes must lie in [1, 4]");
  }
  if (shape.alphabet_size < 1 || shape.feature_dim < 1) {
    throw InputError("gradcheck: alphabet size and feature width must be positive");
  }
}

GradcheckInstance make_gradcheck_instance(const GradcheckSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  GradcheckInstance instance{Transducer::zeros(spec.shape),
                             Matrix(spec.shape.feature_dim, spec.steps),
                             LabelSequence(spec.target_length)};
  initialize_uniform(instance.model, spec.init_range, rng);
  for (Eigen::Index i = 0; i < instance.features.size(); ++i) {
    instance.features.data()[i] = rng.normal();
  }
  for (int& label : instance.targets) {
    label = static_cast<int>(rng.uniform_index(spec.shape.alphabet_size));
  }
  return instance;
}

GradcheckReport gradient_check(const GradcheckInstance& instance,
                               const GradcheckOptions& options) {
  LossAndGradient analytic =
      transducer_loss_and_gradient(instance.model, instance.features, instance.targets);
  if (!options.corrupt_array.empty()) {
    bool found = false;
    for_each_parameter(
        [&](const std::string& name, auto& g) {
          if (name == options.corrupt_array) {
            g *= options.corrupt_scale;
            found = true;
          }
        },
        analytic.gradient);
    if (!found) throw InputError("gradcheck: no parameter named '" + options.corrupt_array + "'");
  }

  GradcheckReport report;
  report.loss = analytic.loss;
  Transducer probe = instance.model;
  auto loss = [&] { return transducer_loss(probe, instance.features, instance.targets); };

  for_each_parameter(
      [&](const std::string& name, auto& p, const auto& g) {
        for (Eigen::Index i = 0; i < p.size(); ++i) {
          const double saved = p.data()[i];
          p.data()[i] = saved + options.epsilon;
          const double plus = loss();
          p.data()[i] = saved - options.epsilon;
          const double minus = loss();
          p.data()[i] = saved;

          const double numeric = (plus - minus) / (2.0 * options.epsilon);
          const double exact = g.data()[i];
          const double scale =
              std::max({std::abs(exact), std::abs(numeric), options.denominator_floor});
          const double relative = std::abs(exact - numeric) / scale;
          ++report.checked;
          if (relative > report.worst_relative_error || report.checked == 1) {
            report.worst_relative_error = relative;
            report.worst_array = name;
            report.worst_index = i;
            report.worst_analytic = exact;
            report.worst_numeric = numeric;
          }
        }
      },
      probe, analytic.gradient);

  report.passed = report.worst_relative_error < options.tolerance;
  return report;
}

}  // namespace rnnt
