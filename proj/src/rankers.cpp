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

#include "fairir/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fairir {

namespace {

constexpr double kTieWindow = 1e-9;

// Uniform draw in [0,1) from the top 53 bits; keeps output identical across
// standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double indexed_gain(const TopicIndex::DocView& doc,
                    const std::vector<double>& aspect_counts, double alpha) {
  double g = 0.0;
  for (const auto& [aspect, grade] : doc.aspect_grades) {
    g += grade * std::pow(1.0 - alpha, aspect_counts[aspect]);
  }
  return g;
}

// Winner under the terminal tie-break chain.
bool wins_rank_tie(const TopicIndex::DocView& a, const TopicIndex::DocView& b) {
  if (a.default_rank != b.default_rank) return a.default_rank < b.default_rank;
  return a.doc_id < b.doc_id;
}

}  // namespace

void validate_ranker_config(const RankerConfig& cfg) {
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0,1]");
  }
  if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
}

Ranking epsilon_greedy(const TopicIndex& index, const AlignedDesired& desired,
                       const RankerConfig& cfg, const MetricConfig& mcfg,
                       EpsilonGreedyTrace* trace) {
  validate_ranker_config(cfg);
  validate_metric_config(mcfg);
  const int n = static_cast<int>(index.docs.size());
  if (n == 0) throw std::invalid_argument("candidate pool is empty");

  const int depth = std::min(cfg.k, n);
  Ranking out;
  out.items.reserve(depth);
  out.truncated = n < cfg.k;

  std::mt19937_64 rng(splitmix64(cfg.seed));
  std::vector<double> aspect_counts(index.aspects.size(), 0.0);
  std::vector<double> group_counts(index.groups.size(), 0.0);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);

  // Candidates sharing a group set share the appended-prefix divergence, so
  // each step evaluates at most one KL per distinct set.
  std::vector<double> kl_cache(index.group_set_count, 0.0);
  std::vector<char> kl_ready(index.group_set_count, 0);
  std::vector<double> primary(n, 0.0), secondary(n, 0.0);

  for (int rank = 1; rank <= depth; ++rank) {
    const double u = uniform01(rng);
    const bool explore = u < cfg.epsilon;
    if (trace) {
      ++trace->total_steps;
      if (explore) ++trace->explore_steps;
    }

    std::fill(kl_ready.begin(), kl_ready.end(), 0);
    auto kl_with = [&](const TopicIndex::DocView& doc) {
      if (!kl_ready[doc.group_set_id]) {
        for (int g : doc.group_ids) group_counts[g] += doc.group_credit;
        kl_cache[doc.group_set_id] = kl_from_counts(group_counts, rank, desired);
        for (int g : doc.group_ids) group_counts[g] -= doc.group_credit;
        kl_ready[doc.group_set_id] = 1;
      }
      return kl_cache[doc.group_set_id];
    };

    // Exploit: shortlist by the per-rank fair score, settle by fairness.
    // Explore: shortlist by fairness, settle by gain. Negating turns both
    // into maximize-primary / minimize-secondary.
    for (int slot = 0; slot < static_cast<int>(remaining.size()); ++slot) {
      const auto& doc = index.docs[remaining[slot]];
      const double g = indexed_gain(doc, aspect_counts, mcfg.alpha);
      const double kl = kl_with(doc);
      if (!explore) {
        primary[slot] = g / (kl + 1.0);
        secondary[slot] = kl;
      } else {
        primary[slot] = -kl;
        secondary[slot] = -g;
      }
    }

    const int live = static_cast<int>(remaining.size());
    double top = primary[0];
    for (int slot = 1; slot < live; ++slot) top = std::max(top, primary[slot]);
    double low = std::numeric_limits<double>::infinity();
    for (int slot = 0; slot < live; ++slot) {
      if (primary[slot] >= top - kTieWindow) {
        low = std::min(low, secondary[slot]);
      }
    }
    int best_slot = -1;
    for (int slot = 0; slot < live; ++slot) {
      if (primary[slot] < top - kTieWindow) continue;
      if (secondary[slot] > low + kTieWindow) continue;
      if (best_slot < 0 || wins_rank_tie(index.docs[remaining[slot]],
                                         index.docs[remaining[best_slot]])) {
        best_slot = slot;
      }
    }

    const auto& picked = index.docs[remaining[best_slot]];
    for (const auto& [aspect, grade] : picked.aspect_grades) {
      aspect_counts[aspect] += grade;
    }
    for (int g : picked.group_ids) group_counts[g] += picked.group_credit;
    out.items.push_back(picked.doc_id);
    remaining.erase(remaining.begin() + best_slot);
  }
  return out;
}

Ranking epsilon_greedy(const Topic& topic, const GroupDistribution& desired,
                       const RankerConfig& cfg, const MetricConfig& mcfg,
                       EpsilonGreedyTrace* trace) {
  const TopicIndex index = TopicIndex::build(topic);
  const AlignedDesired aligned =
      align_desired(index, desired, mcfg.kl_smoothing_eta);
  return epsilon_greedy(index, aligned, cfg, mcfg, trace);
}

Ranking greedy_ideal_ranker(const TopicIndex& index, int k, double alpha) {
  MetricConfig cfg;
  cfg.alpha = alpha;
  return build_normalizers(index, k, cfg).ideal;
}

Ranking greedy_ideal_ranker(const Topic& topic, int k, double alpha) {
  return greedy_ideal_ranker(TopicIndex::build(topic), k, alpha);
}

Ranking passthrough(const Topic& topic, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (topic.default_ranking.empty()) {
    throw std::invalid_argument("topic '" + topic.topic_id +
                                "' has no default ranking");
  }
  Ranking out;
  const int depth = std::min<std::size_t>(k, topic.default_ranking.size());
  out.items.assign(topic.default_ranking.begin(),
                   topic.default_ranking.begin() + depth);
  out.truncated = topic.default_ranking.size() < static_cast<std::size_t>(k);
  return out;
}

ProxySpec ProxySpec::parse(const std::string& text) {
  ProxySpec spec;
  if (text == "graded-log") {
    spec.kind = Kind::kGradedLog;
    return spec;
  }
  if (text == "uniform") {
    spec.kind = Kind::kUniform;
    return spec;
  }
  const std::string prefix = "binary-top:";
  if (text.rfind(prefix, 0) == 0) {
    spec.kind = Kind::kBinaryTopN;
    try {
      std::size_t used = 0;
      spec.top_n = std::stoi(text.substr(prefix.size()), &used);
      if (used != text.size() - prefix.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad proxy '" + text + "'");
    }
    if (spec.top_n < 1) {
      throw std::invalid_argument("binary-top proxy needs n >= 1");
    }
    return spec;
  }
  throw std::invalid_argument("unknown proxy '" + text +
                              "' (expected graded-log, binary-top:N, uniform)");
}

Judgments build_proxy_judgments(const Topic& topic, const ProxySpec& proxy) {
  if (topic.default_ranking.empty()) {
    throw std::invalid_argument("proxy judgments need a default ranking (topic '" +
                                topic.topic_id + "')");
  }
  Judgments judgments;
  for (std::size_t i = 0; i < topic.default_ranking.size(); ++i) {
    const std::string& doc_id = topic.default_ranking[i];
    const Document* doc = topic.find(doc_id);
    if (!doc) {
      throw std::invalid_argument("default ranking names unknown doc '" +
                                  doc_id + "'");
    }
    const int rank = static_cast<int>(i) + 1;
    double grade = 0.0;
    switch (proxy.kind) {
      case ProxySpec::Kind::kGradedLog:
        grade = 1.0 / std::log2(static_cast<double>(rank) + 1.0);
        break;
      case ProxySpec::Kind::kBinaryTopN:
        grade = rank <= proxy.top_n ? 1.0 : 0.0;
        break;
      case ProxySpec::Kind::kUniform:
        grade = 1.0;
        break;
    }
    if (grade <= 0.0) continue;
    for (const auto& group : doc->effective_groups()) {
      judgments.set(doc_id, group, grade);
    }
  }
  return judgments;
}

Topic with_proxy_judgments(const Topic& topic, const ProxySpec& proxy) {
  Topic proxied = topic;
  proxied.judgments = build_proxy_judgments(topic, proxy);
  const auto universe = topic.group_universe();
  proxied.aspects = {universe.begin(), universe.end()};
  return proxied;
}

}  // namespace fairir
