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
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairir {

// Reserved group id for documents that carry no group label. Keeping such
// documents in a visible bucket conserves probability mass instead of
// silently dropping them from exposure accounting.
inline constexpr const char* kUngroupedId = "__other__";

// Parse failure carrying the 1-based line it happened on.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Document {
  std::string doc_id;
  std::set<std::string> groups;           // may be empty
  std::optional<int> default_rank;        // 1-based position in the provider ranking
  std::optional<double> run_score;        // retrieval score from a run file, if any

  // Groups used for exposure accounting; ungrouped docs map to kUngroupedId.
  std::vector<std::string> effective_groups() const;
};

// Sparse (doc, aspect) -> relevance grade table. Absent entries read as 0;
// storing a grade of 0 erases the entry, so a later zero overrides an
// earlier positive grade (last-wins).
class Judgments {
 public:
  void set(const std::string& doc_id, const std::string& aspect_id, double grade);
  double grade(const std::string& doc_id, const std::string& aspect_id) const;

  // Judged aspects of one document (positive grades only).
  const std::map<std::string, double>& for_doc(const std::string& doc_id) const;

  bool empty() const { return by_doc_.empty(); }
  const std::map<std::string, std::map<std::string, double>>& table() const {
    return by_doc_;
  }

 private:
  std::map<std::string, std::map<std::string, double>> by_doc_;
};

struct Topic {
  std::string topic_id;
  std::set<std::string> aspects;
  std::vector<Document> candidates;
  Judgments judgments;
  std::vector<std::string> default_ranking;  // doc ids; may be empty

  const Document* find(const std::string& doc_id) const;

  // Topic-level relevance: the maximum grade over a document's aspects.
  double relevance(const std::string& doc_id) const;

  // Sorted union of effective groups over all candidates.
  std::vector<std::string> group_universe() const;
};

// Throws std::invalid_argument on any violated topic invariant.
void validate_topic(const Topic& topic);

struct Ranking {
  std::vector<std::string> items;  // doc ids, no duplicates
  bool truncated = false;          // requested depth exceeded the pool

  std::size_t size() const { return items.size(); }
};

struct GroupDistribution {
  std::map<std::string, double> mass;

  double at(const std::string& group) const;
  double sum() const;
};

GroupDistribution uniform_distribution(const std::vector<std::string>& groups);

// Throws std::invalid_argument if mass is negative or does not sum to 1.
void validate_distribution(const GroupDistribution& dist, double tol = 1e-9);

// Incremental state of a ranking prefix. Treated as an immutable value:
// append_to_prefix returns a new state. group_counts is seeded with the
// topic's full group universe so zero-mass groups stay representable.
struct PrefixState {
  std::map<std::string, double> aspect_counts;  // cumulative judged coverage
  std::map<std::string, double> group_counts;   // accumulated fractional mass
  int depth = 0;
};

PrefixState make_prefix_state(const Topic& topic);

// A document in m groups contributes mass 1/m to each group, so every
// document adds total mass 1 and prefix distributions stay normalized.
PrefixState append_to_prefix(const PrefixState& state, const Document& doc,
                             const Judgments& judgments);

// Normalized group distribution of the prefix. Throws on depth 0.
GroupDistribution prefix_distribution(const PrefixState& state);

struct FairnessNotion {
  enum class Kind {
    kUniform,                // equal mass over the topic's group universe
    kCollection,             // group mass over all candidates (demographic parity)
    kRelevanceProportional,  // mass proportional to mean group relevance
    kExplicit,               // user-supplied distribution
  };

  Kind kind = Kind::kCollection;
  GroupDistribution explicit_mass;

  static FairnessNotion Uniform() { return {Kind::kUniform, {}}; }
  static FairnessNotion Collection() { return {Kind::kCollection, {}}; }
  static FairnessNotion RelevanceProportional() {
    return {Kind::kRelevanceProportional, {}};
  }
  static FairnessNotion Explicit(GroupDistribution mass) {
    return {Kind::kExplicit, std::move(mass)};
  }
};

GroupDistribution build_desired_distribution(const Topic& topic,
                                             const FairnessNotion& notion);

struct MetricConfig {
  double alpha = 0.5;                     // novelty decay of the gain model
  double persistence_p = 0.8;             // RBP user persistence
  std::vector<int> cutoffs = {10, 20, 50};
  double kl_smoothing_eta = 0.0;          // 0 = hard error on infinite divergence
  bool binary_relevance = false;
};

void validate_metric_config(const MetricConfig& cfg);

// --- seeded randomness helpers -------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(const std::string& text);

// Stream seed for (base seed, run index, topic), so runs and topics draw
// from independent deterministic streams regardless of execution order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run_index,
                          const std::string& topic_id);

}  // namespace fairir
