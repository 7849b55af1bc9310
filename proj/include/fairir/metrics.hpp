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
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairir/core.hpp"

namespace fairir {

// Result flags. Values are reported unclamped; flags tell the caller why a
// number might need a second look.
enum MetricFlag : unsigned {
  kFlagDegenerate = 1u << 0,   // no relevant documents, score defined as 0
  kFlagTruncated = 1u << 1,    // fewer than k items were available
  kFlagExceedsUnit = 1u << 2,  // > 1 because the greedy normalizer is approximate
  kFlagApproximate = 1u << 3,  // value rests on a small-sample approximation
};

std::string flags_to_string(unsigned flags);

struct Scored {
  double value = 0.0;
  unsigned flags = 0;
};

// Indexed, integer-keyed view of a Topic. Building one is O(topic); every
// scoring pass afterwards avoids string lookups. Groups and aspects are
// sorted so ids are stable for a given topic.
struct TopicIndex {
  static constexpr int kNoRank = std::numeric_limits<int>::max();

  struct DocView {
    std::string doc_id;
    double relevance = 0.0;  // max aspect grade
    int default_rank = kNoRank;
    std::vector<std::pair<int, double>> aspect_grades;  // (aspect id, grade)
    std::vector<int> group_ids;
    double group_credit = 1.0;  // 1 / |groups|
    int group_set_id = 0;       // interned effective-group set
  };

  const Topic* topic = nullptr;
  std::vector<std::string> aspects;  // sorted aspect universe
  std::vector<std::string> groups;   // sorted group universe
  std::vector<DocView> docs;
  std::unordered_map<std::string, int> doc_pos;
  int group_set_count = 0;

  static TopicIndex build(const Topic& topic);
  const DocView* find(const std::string& doc_id) const;
};

// Desired distribution aligned to a TopicIndex's group universe, with the
// configured smoothing already applied.
struct AlignedDesired {
  std::vector<double> raw;       // per index.groups, unsmoothed
  std::vector<double> smoothed;  // (1-eta) raw + eta / uniform_n
  double eta = 0.0;
  int uniform_n = 0;  // size of the union of universe and desired support
};

AlignedDesired align_desired(const TopicIndex& index,
                             const GroupDistribution& desired, double eta);

// KL-divergence of the counts/depth empirical distribution from the desired
// one. Natural log, 0 ln(0/x) = 0. Throws std::domain_error when a group
// with observed mass has zero desired mass after smoothing.
double kl_from_counts(const std::vector<double>& counts, double depth,
                      const AlignedDesired& desired);

double kl_divergence(const GroupDistribution& d1, const GroupDistribution& d2,
                     double eta = 0.0);

// Per-rank novelty-decayed gain of `doc` against the aspects already seen.
double gain(const Document& doc, const PrefixState& state,
            const Judgments& judgments, double alpha);

double dcg(const std::vector<double>& gains, int k);

enum class IdcgMode { kGreedy, kExact };

struct IdealDcg {
  double value = 0.0;
  Ranking ranking;
};

// Ideal DCG at cutoff k. Greedy mode picks argmax gain per rank with the
// deterministic tie-break chain; exact mode maximizes DCG by dynamic
// programming over subsets and refuses pools larger than exact_bound.
IdealDcg ideal_dcg(const Topic& topic, int k, double alpha,
                   IdcgMode mode = IdcgMode::kGreedy, int exact_bound = 10);

// Pool-side normalizers shared by every ranking of a topic: the greedy ideal
// ranking with cumulative IDCG, the classical nDCG ideal, and the ideal RBP
// mass. Arrays are cumulative by rank, truncated at min(kmax, pool).
struct TopicNormalizers {
  Ranking ideal;
  std::vector<double> idcg;
  std::vector<double> rel_idcg;
  std::vector<double> rbp_ideal;  // sum of J p^{i-1} over the J-sorted pool
};

TopicNormalizers build_normalizers(const TopicIndex& index, int kmax,
                                   const MetricConfig& cfg);

// Everything any supported metric needs about one ranking, cumulative by
// rank, so each cutoff is a couple of array reads. Built once per ranking.
struct RankProfile {
  struct Entry {
    double gain = 0.0;
    double relevance = 0.0;
    double kl = 0.0;
    double discount = 1.0;  // log2(i+1)
  };

  std::vector<Entry> per_rank;
  std::vector<double> cum_dcg;       // sum gain / discount
  std::vector<double> cum_fair;      // sum gain / ((kl+1) discount)
  std::vector<double> cum_kl_num;    // sum kl / discount
  std::vector<double> cum_rkl_num;   // sum 1 / ((kl+1) discount)
  std::vector<double> cum_z;         // sum 1 / discount
  std::vector<double> cum_zr;        // sum 1 / (i discount)
  std::vector<double> cum_rel_dcg;   // sum relevance / discount
  std::vector<double> cum_rbp;       // sum min(relevance,1) p^{i-1}
  std::vector<double> cum_rbp_fair;  // sum min(relevance,1) p^{i-1} / (kl+1)
  // Cumulative fractional group counts after each rank; filled only when the
  // profile is built with keep_group_history (skew and feasibility need it).
  std::vector<std::vector<double>> group_counts;

  std::vector<std::string> groups;  // copy of the index's group universe
  std::vector<double> desired_raw;
  std::vector<double> desired_smoothed;
  double desired_eta = 0.0;
  int desired_uniform_n = 0;
  double p = 0.8;
  bool truncated = false;  // carried over from the ranking

  std::vector<double> idcg;
  std::vector<double> rel_idcg;
  std::vector<double> rbp_ideal;

  std::size_t depth() const { return per_rank.size(); }
};

// Builds the profile of `ranking` against `topic` up to kmax ranks. `desired`
// may be null for purely utility-side scoring (all kl terms are then 0 and
// the fairness accessors are meaningless). Throws std::invalid_argument on
// unknown or duplicate documents in the ranking.
RankProfile build_rank_profile(const Ranking& ranking, const TopicIndex& index,
                               const AlignedDesired* desired,
                               const MetricConfig& cfg, int kmax,
                               const TopicNormalizers* normalizers = nullptr,
                               bool keep_group_history = true);

enum class NdrklZ {
  kDiscount,      // Z = sum 1/log2(i+1); keeps the (0,1] range exact
  kRankDiscount,  // Z = sum 1/(i log2(i+1)); compatibility form
};

// Cutoff accessors. k may exceed the profile depth; the value is then the
// deepest available prefix and the result carries kFlagTruncated.
Scored alpha_ndcg_at(const RankProfile& profile, int k);
Scored ndcg_at(const RankProfile& profile, int k);
Scored rbp_at(const RankProfile& profile, int k);
Scored fair_alpha_ndcg_at(const RankProfile& profile, int k);
Scored fair_rbp_at(const RankProfile& profile, int k);
Scored fair_ratio_at(const RankProfile& profile, int k);
Scored kl_at(const RankProfile& profile, int k);
Scored ndkl_at(const RankProfile& profile, int k);
Scored ndrkl_at(const RankProfile& profile, int k,
                NdrklZ z = NdrklZ::kDiscount);

struct SkewResult {
  std::map<std::string, double> per_group;
  double min_skew = 0.0;
  double max_skew = 0.0;
  unsigned flags = 0;
};

struct FeasibilityResult {
  std::set<int> violated_positions;
  int feasible_up_to = 0;
  unsigned flags = 0;
};

// Requires a profile built with keep_group_history.
SkewResult skew_at(const RankProfile& profile, int k);
FeasibilityResult feasibility_at(const RankProfile& profile, int k);

// One-shot conveniences over the profile machinery.
Scored alpha_ndcg(const Ranking& ranking, const Topic& topic,
                  const MetricConfig& cfg, int k);
Scored ndcg(const Ranking& ranking, const Topic& topic, int k);
Scored rbp(const Ranking& ranking, const Topic& topic, double p, int k);
Scored fair_alpha_ndcg(const Ranking& ranking, const Topic& topic,
                       const GroupDistribution& desired,
                       const MetricConfig& cfg, int k);
Scored fair_rbp(const Ranking& ranking, const Topic& topic,
                const GroupDistribution& desired, double p, int k,
                double eta = 0.0);
Scored fair_ratio(double utility, const Ranking& ranking, const Topic& topic,
                  const GroupDistribution& desired, int k, double eta = 0.0);
Scored ndkl(const Ranking& ranking, const Topic& topic,
            const GroupDistribution& desired, int k, double eta = 0.0);
Scored ndrkl(const Ranking& ranking, const Topic& topic,
             const GroupDistribution& desired, int k,
             NdrklZ z = NdrklZ::kDiscount, double eta = 0.0);
SkewResult skew(const Ranking& ranking, const Topic& topic,
                const GroupDistribution& desired, int k, double eta = 0.0);
FeasibilityResult feasibility(const Ranking& ranking, const Topic& topic,
                              const GroupDistribution& desired, int k);

}  // namespace fairir
