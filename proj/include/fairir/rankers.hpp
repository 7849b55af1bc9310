// Copyright 2026 The Authors.
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

#include <cstdint>
#include <string>

#include "fairir/core.hpp"
#include "fairir/metrics.hpp"

namespace fairir {

struct RankerConfig {
  double epsilon = 0.0;
  int k = 10;
  std::uint64_t seed = 0;
  int runs = 1;
};

void validate_ranker_config(const RankerConfig& cfg);

// Per-run bookkeeping for the randomized ranker.
struct EpsilonGreedyTrace {
  int explore_steps = 0;
  int total_steps = 0;
};

// Epsilon-greedy fairness re-ranker. Per rank, with probability 1-epsilon it
// shortlists the docs maximizing gain/(kl+1) and takes the fairest of them;
// with probability epsilon it shortlists the docs minimizing kl and takes the
// most useful of them. kl is evaluated on the prefix with the candidate
// already placed. Scores within 1e-9 tie; remaining ties break by lower
// default rank, then doc id. Deterministic given (topic, desired, cfg, mcfg).
Ranking epsilon_greedy(const Topic& topic, const GroupDistribution& desired,
                       const RankerConfig& cfg, const MetricConfig& mcfg,
                       EpsilonGreedyTrace* trace = nullptr);

// Same, against a prebuilt index and aligned desired distribution. The fast
// path for repeated runs over one topic.
Ranking epsilon_greedy(const TopicIndex& index, const AlignedDesired& desired,
                       const RankerConfig& cfg, const MetricConfig& mcfg,
                       EpsilonGreedyTrace* trace = nullptr);

// Greedy maximizer of the novelty-decayed gain; the ranking side of the
// greedy ideal DCG.
Ranking greedy_ideal_ranker(const Topic& topic, int k, double alpha);
Ranking greedy_ideal_ranker(const TopicIndex& index, int k, double alpha);

// First k items of the stored default ranking.
Ranking passthrough(const Topic& topic, int k);

// Relevance proxies for collections without judgments, derived from the
// default ranking. Grades attach to each document's own groups, so the
// proxy's aspect universe is the group universe.
struct ProxySpec {
  enum class Kind { kGradedLog, kBinaryTopN, kUniform };
  Kind kind = Kind::kGradedLog;
  int top_n = 10;

  // Accepts "graded-log", "binary-top:N", "uniform".
  static ProxySpec parse(const std::string& text);
};

Judgments build_proxy_judgments(const Topic& topic, const ProxySpec& proxy);

// Replaces the topic's judgments and aspect set with the proxy view.
Topic with_proxy_judgments(const Topic& topic, const ProxySpec& proxy);

}  // namespace fairir
