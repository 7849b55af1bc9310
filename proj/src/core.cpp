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

#include "fairir/core.hpp"

#include <algorithm>
#include <cmath>

namespace fairir {

namespace {
const std::map<std::string, double> kNoJudgments;
}

std::vector<std::string> Document::effective_groups() const {
  if (groups.empty()) return {kUngroupedId};
  return {groups.begin(), groups.end()};
}

void Judgments::set(const std::string& doc_id, const std::string& aspect_id,
                    double grade) {
  if (grade < 0.0) {
    throw std::invalid_argument("relevance grade must be >= 0 for doc '" +
                                doc_id + "', aspect '" + aspect_id + "'");
  }
  if (grade == 0.0) {
    auto it = by_doc_.find(doc_id);
    if (it != by_doc_.end()) {
      it->second.erase(aspect_id);
      if (it->second.empty()) by_doc_.erase(it);
    }
    return;
  }
  by_doc_[doc_id][aspect_id] = grade;
}

double Judgments::grade(const std::string& doc_id,
                        const std::string& aspect_id) const {
  auto it = by_doc_.find(doc_id);
  if (it == by_doc_.end()) return 0.0;
  auto jt = it->second.find(aspect_id);
  return jt == it->second.end() ? 0.0 : jt->second;
}

const std::map<std::string, double>& Judgments::for_doc(
    const std::string& doc_id) const {
  auto it = by_doc_.find(doc_id);
  return it == by_doc_.end() ? kNoJudgments : it->second;
}

const Document* Topic::find(const std::string& doc_id) const {
  for (const auto& doc : candidates) {
    if (doc.doc_id == doc_id) return &doc;
  }
  return nullptr;
}

double Topic::relevance(const std::string& doc_id) const {
  double best = 0.0;
  for (const auto& [aspect, grade] : judgments.for_doc(doc_id)) {
    best = std::max(best, grade);
  }
  return best;
}

std::vector<std::string> Topic::group_universe() const {
  std::set<std::string> universe;
  for (const auto& doc : candidates) {
    for (const auto& group : doc.effective_groups()) universe.insert(group);
  }
  return {universe.begin(), universe.end()};
}

void validate_topic(const Topic& topic) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("topic '" + topic.topic_id + "': " + what);
  };
  if (topic.topic_id.empty()) throw std::invalid_argument("topic id is empty");
  if (topic.aspects.empty()) fail("aspect set is empty");

  std::set<std::string> ids;
  std::set<int> ranks;
  for (const auto& doc : topic.candidates) {
    if (doc.doc_id.empty()) fail("candidate with empty doc id");
    if (!ids.insert(doc.doc_id).second) fail("duplicate doc id '" + doc.doc_id + "'");
    if (doc.default_rank) {
      if (*doc.default_rank < 1) fail("default rank < 1 on '" + doc.doc_id + "'");
      if (!ranks.insert(*doc.default_rank).second) {
        fail("duplicate default rank " + std::to_string(*doc.default_rank));
      }
    }
  }
  for (const auto& [doc_id, row] : topic.judgments.table()) {
    if (!ids.count(doc_id)) fail("judgment for unknown doc '" + doc_id + "'");
    for (const auto& [aspect, grade] : row) {
      if (!topic.aspects.count(aspect)) {
        fail("judgment references unknown aspect '" + aspect + "'");
      }
      if (grade < 0.0) fail("negative grade on '" + doc_id + "'");
    }
  }
  std::set<std::string> seen;
  for (const auto& doc_id : topic.default_ranking) {
    if (!ids.count(doc_id)) fail("default ranking names unknown doc '" + doc_id + "'");
    if (!seen.insert(doc_id).second) {
      fail("default ranking repeats doc '" + doc_id + "'");
    }
  }
}

double GroupDistribution::at(const std::string& group) const {
  auto it = mass.find(group);
  return it == mass.end() ? 0.0 : it->second;
}

double GroupDistribution::sum() const {
  double total = 0.0;
  for (const auto& [group, p] : mass) total += p;
  return total;
}

GroupDistribution uniform_distribution(const std::vector<std::string>& groups) {
  if (groups.empty()) {
    throw std::invalid_argument("uniform distribution over an empty group set");
  }
  GroupDistribution dist;
  const double share = 1.0 / static_cast<double>(groups.size());
  for (const auto& group : groups) dist.mass[group] = share;
  return dist;
}

void validate_distribution(const GroupDistribution& dist, double tol) {
  if (dist.mass.empty()) {
    throw std::invalid_argument("group distribution is empty");
  }
  for (const auto& [group, p] : dist.mass) {
    if (p < 0.0) {
      throw std::invalid_argument("negative mass on group '" + group + "'");
    }
  }
  if (std::abs(dist.sum() - 1.0) > tol) {
    throw std::invalid_argument("group distribution does not sum to 1");
  }
}

PrefixState make_prefix_state(const Topic& topic) {
  PrefixState state;
  for (const auto& group : topic.group_universe()) state.group_counts[group] = 0.0;
  return state;
}

PrefixState append_to_prefix(const PrefixState& state, const Document& doc,
                             const Judgments& judgments) {
  PrefixState next = state;
  for (const auto& [aspect, grade] : judgments.for_doc(doc.doc_id)) {
    next.aspect_counts[aspect] += grade;
  }
  const auto groups = doc.effective_groups();
  const double credit = 1.0 / static_cast<double>(groups.size());
  for (const auto& group : groups) next.group_counts[group] += credit;
  ++next.depth;
  return next;
}

GroupDistribution prefix_distribution(const PrefixState& state) {
  if (state.depth < 1) {
    throw std::invalid_argument("empty prefix has no distribution");
  }
  GroupDistribution dist;
  const double denom = static_cast<double>(state.depth);
  for (const auto& [group, count] : state.group_counts) {
    dist.mass[group] = count / denom;
  }
  return dist;
}

GroupDistribution build_desired_distribution(const Topic& topic,
                                             const FairnessNotion& notion) {
  const auto universe = topic.group_universe();
  if (universe.empty()) {
    throw std::invalid_argument("topic '" + topic.topic_id +
                                "' has no candidates, so no group universe");
  }

  switch (notion.kind) {
    case FairnessNotion::Kind::kUniform:
      return uniform_distribution(universe);

    case FairnessNotion::Kind::kCollection: {
      GroupDistribution dist;
      for (const auto& group : universe) dist.mass[group] = 0.0;
      for (const auto& doc : topic.candidates) {
        const auto groups = doc.effective_groups();
        const double credit = 1.0 / static_cast<double>(groups.size());
        for (const auto& group : groups) dist.mass[group] += credit;
      }
      const double total = static_cast<double>(topic.candidates.size());
      for (auto& [group, p] : dist.mass) p /= total;
      return dist;
    }

    case FairnessNotion::Kind::kRelevanceProportional: {
      std::map<std::string, double> sum, members;
      for (const auto& group : universe) {
        sum[group] = 0.0;
        members[group] = 0.0;
      }
      for (const auto& doc : topic.candidates) {
        const double rel = topic.relevance(doc.doc_id);
        for (const auto& group : doc.effective_groups()) {
          sum[group] += rel;
          members[group] += 1.0;
        }
      }
      GroupDistribution dist;
      double total = 0.0;
      for (const auto& group : universe) {
        const double mean = members[group] > 0.0 ? sum[group] / members[group] : 0.0;
        dist.mass[group] = mean;
        total += mean;
      }
      if (total <= 0.0) {
        throw std::runtime_error(
            "relevance-proportional distribution undefined: all grades are zero"
            " in topic '" + topic.topic_id + "'");
      }
      for (auto& [group, p] : dist.mass) p /= total;
      return dist;
    }

    case FairnessNotion::Kind::kExplicit: {
      const auto& dist = notion.explicit_mass;
      for (const auto& [group, p] : dist.mass) {
        if (p < 0.0) {
          throw std::runtime_error("explicit distribution has negative mass on '" +
                                   group + "'");
        }
      }
      if (std::abs(dist.sum() - 1.0) > 1e-6) {
        throw std::runtime_error("explicit distribution does not sum to 1");
      }
      bool has_ungrouped = false;
      for (const auto& doc : topic.candidates) {
        if (doc.groups.empty()) {
          has_ungrouped = true;
          break;
        }
      }
      if (has_ungrouped && !dist.mass.count(kUngroupedId)) {
        throw std::runtime_error(
            "explicit distribution must include '" + std::string(kUngroupedId) +
            "': topic '" + topic.topic_id + "' has ungrouped documents");
      }
      return dist;
    }
  }
  throw std::logic_error("unknown fairness notion");
}

void validate_metric_config(const MetricConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  if (!(cfg.persistence_p > 0.0 && cfg.persistence_p < 1.0)) {
    throw std::invalid_argument("persistence p must lie in (0,1)");
  }
  if (!(cfg.kl_smoothing_eta >= 0.0 && cfg.kl_smoothing_eta < 1.0)) {
    throw std::invalid_argument("eta must lie in [0,1)");
  }
  if (cfg.cutoffs.empty()) throw std::invalid_argument("no cutoffs given");
  for (int k : cfg.cutoffs) {
    if (k < 1) throw std::invalid_argument("cutoffs must be positive");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run_index,
                          const std::string& topic_id) {
  return splitmix64(splitmix64(base ^ fnv1a64(topic_id)) + run_index + 1);
}

}  // namespace fairir
