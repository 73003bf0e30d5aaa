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

#include "rnnt/decoder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rnnt/joint.hpp"

namespace rnnt {

double length_normalized_score(double log_prob, std::size_t length) {
  return log_prob / static_cast<double>(std::max<std::size_t>(length, 1));
}

double Hypothesis::score() const { return length_normalized_score(log_prob, labels.size()); }

bool label_order(const LabelSequence& a, const LabelSequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool ranks_before(double score_a, const LabelSequence& a, double score_b,
                  const LabelSequence& b) {
  if (score_a != score_b) return score_a > score_b;
  return label_order(a, b);
}

namespace {

// Emissions allowed within one transcription step, per unit of T.
constexpr int kEmissionCapPerStep = 10;

class PredictionTable {
 public:
  PredictionTable(const PredictionNet& net, bool cache, BeamSearchTrace* trace)
      : net_(net), cache_(cache), trace_(trace) {}

  std::shared_ptr<const PredictionEntry> get(const LabelSequence& labels) {
    if (!cache_) return from_scratch(labels);
    if (auto it = table_.find(labels); it != table_.end()) return it->second;
    std::shared_ptr<const PredictionEntry> entry;
    if (labels.empty()) {
      entry = step(LstmState::zeros(net_.hidden_size()), std::nullopt);
    } else {
      const LabelSequence parent(labels.begin(), labels.end() - 1);
      entry = step(get(parent)->state, labels.back());
    }
    table_.emplace(labels, entry);
    return entry;
  }

 private:
  std::shared_ptr<const PredictionEntry> step(const LstmState& prev, std::optional<int> label) {
    if (trace_ != nullptr) ++trace_->prediction_steps;
    PredictionStep next = predict_step(net_, prev, label);
    return std::make_shared<const PredictionEntry>(
        PredictionEntry{std::move(next.state), std::move(next.logits)});
  }

  std::shared_ptr<const PredictionEntry> from_scratch(const LabelSequence& labels) {
    auto entry = step(LstmState::zeros(net_.hidden_size()), std::nullopt);
    for (int label : labels) entry = step(entry->state, label);
    return entry;
  }

  const PredictionNet& net_;
  bool cache_;
  BeamSearchTrace* trace_;
  std::map<LabelSequence, std::shared_ptr<const PredictionEntry>> table_;
};

struct Candidate {
  LabelSequence labels;
  double log_prob;
  int emitted;  // labels added by extension during the current step
};

struct MoreProbable {
  bool operator()(const Candidate& a, const Candidate& b) const {
    return ranks_before(a.log_prob, a.labels, b.log_prob, b.labels);
  }
};

}  // namespace

std::vector<Hypothesis> beam_search(const Matrix& f, const PredictionNet& net,
                                    const BeamSearchOptions& options, BeamSearchTrace* trace) {
  if (options.beam_width < 1) throw Error("beam_search: beam width must be at least 1");
  if (options.nbest < 1 || options.nbest > options.beam_width) {
    throw Error("beam_search: n-best must lie in [1, beam width]");
  }
  if (f.cols() == 0) throw DimensionError("beam_search: empty transcription sequence");
  if (f.rows() != net.alphabet_size() + 1) {
    throw DimensionError("beam_search: transcription vectors have " + std::to_string(f.rows()) +
                         " entries, prediction network emits " +
                         std::to_string(net.alphabet_size() + 1));
  }

  const int alphabet = net.alphabet_size();
  const int steps = static_cast<int>(f.cols());
  const int emission_cap = kEmissionCapPerStep * steps;
  const std::size_t width = static_cast<std::size_t>(options.beam_width);
  PredictionTable predictions(net, options.cache_predictions, trace);

  std::vector<Candidate> beam{{LabelSequence{}, 0.0, 0}};

  for (int t = 0; t < steps; ++t) {
    std::map<LabelSequence, Vector> distributions;
    auto distribution = [&](const LabelSequence& labels) -> const Vector& {
      auto it = distributions.find(labels);
      if (it == distributions.end()) {
        it = distributions
                 .emplace(labels, joint_log_prob(f.col(t), predictions.get(labels)->logits))
                 .first;
      }
      return it->second;
    };

    std::map<LabelSequence, double> previous;
    for (const Candidate& c : beam) previous.emplace(c.labels, c.log_prob);

    // Mass reaching y during step t from every shorter sequence of the
    // previous beam, using the values from before this step.
    std::set<Candidate, MoreProbable> pending;
    for (const Candidate& c : beam) {
      double log_prob = c.log_prob;
      double extension = 0.0;
      for (std::size_t j = c.labels.size(); j-- > 0;) {
        const LabelSequence prefix(c.labels.begin(), c.labels.begin() + j);
        extension += distribution(prefix)(c.labels[j]);
        if (auto it = previous.find(prefix); it != previous.end()) {
          log_prob = log_add(log_prob, it->second + extension);
        }
      }
      pending.insert({c.labels, log_prob, 0});
    }

    std::vector<Candidate> next;
    // Log probs in `next` not yet known to beat the best pending candidate.
    std::multiset<double> unranked;
    std::size_t better = 0;
    auto refresh = [&] {
      if (pending.empty()) return;
      const double best = pending.begin()->log_prob;
      while (!unranked.empty() && *unranked.rbegin() > best) {
        unranked.erase(std::prev(unranked.end()));
        ++better;
      }
    };

    while (!pending.empty() && better < width) {
      Candidate best = *pending.begin();
      pending.erase(pending.begin());
      if (best.emitted > emission_cap) {
        throw SearchError("beam_search: hypothesis emitted more than " +
                          std::to_string(emission_cap) + " labels in transcription step " +
                          std::to_string(t + 1));
      }
      const Vector& dist = distribution(best.labels);

      next.push_back({best.labels, best.log_prob + dist(alphabet), 0});
      unranked.insert(next.back().log_prob);

      for (int k = 0; k < alphabet; ++k) {
        LabelSequence extended = best.labels;
        extended.push_back(k);
        // Already holds the mass arriving through `best`.
        if (previous.contains(extended)) continue;
        pending.insert({std::move(extended), best.log_prob + dist(k), best.emitted + 1});
      }
      refresh();
    }

    std::sort(next.begin(), next.end(), MoreProbable{});
    if (next.size() > width) next.resize(width);
    beam = std::move(next);
    if (trace != nullptr) trace->surviving.push_back(beam.size());
  }

  std::sort(beam.begin(), beam.end(), [](const Candidate& a, const Candidate& b) {
    return ranks_before(length_normalized_score(a.log_prob, a.labels.size()), a.labels,
                        length_normalized_score(b.log_prob, b.labels.size()), b.labels);
  });
  const std::size_t keep = std::min<std::size_t>(beam.size(), options.nbest);
  std::vector<Hypothesis> results;
  results.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    results.push_back({beam[i].labels, beam[i].log_prob, predictions.get(beam[i].labels)});
  }
  return results;
}

}  // namespace rnnt
