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

#include "fairir/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace fairir {

namespace {

constexpr double kTieWindow = 1e-9;

double discount_at(int rank) { return std::log2(static_cast<double>(rank) + 1.0); }

// True when `a` should replace `b` as the greedy pick under equal gain.
bool wins_idcg_tie(const TopicIndex::DocView& a, const TopicIndex::DocView& b) {
  if (a.relevance != b.relevance) return a.relevance > b.relevance;
  if (a.default_rank != b.default_rank) return a.default_rank < b.default_rank;
  return a.doc_id < b.doc_id;
}

double indexed_gain(const TopicIndex::DocView& doc,
                    const std::vector<double>& aspect_counts, double alpha) {
  double g = 0.0;
  for (const auto& [aspect, grade] : doc.aspect_grades) {
    g += grade * std::pow(1.0 - alpha, aspect_counts[aspect]);
  }
  return g;
}

void add_doc_aspects(const TopicIndex::DocView& doc,
                     std::vector<double>& aspect_counts) {
  for (const auto& [aspect, grade] : doc.aspect_grades) {
    aspect_counts[aspect] += grade;
  }
}

void remove_doc_aspects(const TopicIndex::DocView& doc,
                        std::vector<double>& aspect_counts) {
  for (const auto& [aspect, grade] : doc.aspect_grades) {
    aspect_counts[aspect] -= grade;
  }
}

[[noreturn]] void throw_infinite_divergence() {
  throw std::domain_error(
      "infinite divergence: desired distribution excludes an observed group");
}

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw std::invalid_argument("eta must lie in [0,1)");
  }
}

}  // namespace

std::string flags_to_string(unsigned flags) {
  static const std::pair<unsigned, const char*> kNames[] = {
      {kFlagDegenerate, "degenerate"},
      {kFlagTruncated, "truncated"},
      {kFlagExceedsUnit, "exceeds-unit"},
      {kFlagApproximate, "approximate"},
  };
  std::string text;
  for (const auto& [bit, name] : kNames) {
    if (!(flags & bit)) continue;
    if (!text.empty()) text += ',';
    text += name;
  }
  return text.empty() ? "-" : text;
}

TopicIndex TopicIndex::build(const Topic& topic) {
  TopicIndex index;
  index.topic = &topic;
  index.aspects.assign(topic.aspects.begin(), topic.aspects.end());
  index.groups = topic.group_universe();

  std::unordered_map<std::string, int> aspect_id;
  for (int i = 0; i < static_cast<int>(index.aspects.size()); ++i) {
    aspect_id[index.aspects[i]] = i;
  }
  std::unordered_map<std::string, int> group_id;
  for (int i = 0; i < static_cast<int>(index.groups.size()); ++i) {
    group_id[index.groups[i]] = i;
  }

  std::map<std::vector<int>, int> set_ids;
  index.docs.reserve(topic.candidates.size());
  for (const auto& doc : topic.candidates) {
    DocView view;
    view.doc_id = doc.doc_id;
    view.relevance = topic.relevance(doc.doc_id);
    view.default_rank = doc.default_rank.value_or(kNoRank);
    for (const auto& [aspect, grade] : topic.judgments.for_doc(doc.doc_id)) {
      auto it = aspect_id.find(aspect);
      if (it == aspect_id.end()) {
        throw std::invalid_argument("topic '" + topic.topic_id +
                                    "': judgment on unknown aspect '" + aspect +
                                    "'");
      }
      view.aspect_grades.emplace_back(it->second, grade);
    }
    std::sort(view.aspect_grades.begin(), view.aspect_grades.end());
    for (const auto& group : doc.effective_groups()) {
      view.group_ids.push_back(group_id.at(group));
    }
    std::sort(view.group_ids.begin(), view.group_ids.end());
    view.group_credit = 1.0 / static_cast<double>(view.group_ids.size());
    auto [it, inserted] =
        set_ids.emplace(view.group_ids, static_cast<int>(set_ids.size()));
    view.group_set_id = it->second;
    index.doc_pos[view.doc_id] = static_cast<int>(index.docs.size());
    index.docs.push_back(std::move(view));
  }
  index.group_set_count = static_cast<int>(set_ids.size());
  return index;
}

const TopicIndex::DocView* TopicIndex::find(const std::string& doc_id) const {
  auto it = doc_pos.find(doc_id);
  return it == doc_pos.end() ? nullptr : &docs[it->second];
}

AlignedDesired align_desired(const TopicIndex& index,
                             const GroupDistribution& desired, double eta) {
  check_eta(eta);
  AlignedDesired aligned;
  aligned.eta = eta;

  std::set<std::string> support(index.groups.begin(), index.groups.end());
  for (const auto& [group, p] : desired.mass) support.insert(group);
  aligned.uniform_n = static_cast<int>(support.size());

  aligned.raw.reserve(index.groups.size());
  aligned.smoothed.reserve(index.groups.size());
  const double share = eta / static_cast<double>(aligned.uniform_n);
  for (const auto& group : index.groups) {
    const double q = desired.at(group);
    aligned.raw.push_back(q);
    aligned.smoothed.push_back((1.0 - eta) * q + share);
  }
  return aligned;
}

double kl_from_counts(const std::vector<double>& counts, double depth,
                      const AlignedDesired& desired) {
  double sum = 0.0;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (counts[g] <= 0.0) continue;
    const double p = counts[g] / depth;
    const double q = desired.smoothed[g];
    if (q <= 0.0) throw_infinite_divergence();
    sum += p * std::log(p / q);
  }
  return std::max(sum, 0.0);
}

double kl_divergence(const GroupDistribution& d1, const GroupDistribution& d2,
                     double eta) {
  check_eta(eta);
  std::set<std::string> support;
  for (const auto& [group, p] : d1.mass) support.insert(group);
  for (const auto& [group, p] : d2.mass) support.insert(group);
  if (support.empty()) {
    throw std::invalid_argument("KL-divergence of empty distributions");
  }
  const double share = eta / static_cast<double>(support.size());
  double sum = 0.0;
  for (const auto& group : support) {
    const double p = d1.at(group);
    if (p <= 0.0) continue;
    const double q = (1.0 - eta) * d2.at(group) + share;
    if (q <= 0.0) throw_infinite_divergence();
    sum += p * std::log(p / q);
  }
  return std::max(sum, 0.0);
}

double gain(const Document& doc, const PrefixState& state,
            const Judgments& judgments, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  double g = 0.0;
  for (const auto& [aspect, grade] : judgments.for_doc(doc.doc_id)) {
    auto it = state.aspect_counts.find(aspect);
    const double seen = it == state.aspect_counts.end() ? 0.0 : it->second;
    g += grade * std::pow(1.0 - alpha, seen);
  }
  return g;
}

double dcg(const std::vector<double>& gains, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > gains.size()) {
    throw std::invalid_argument("dcg cutoff exceeds the gain list");
  }
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) sum += gains[i - 1] / discount_at(i);
  return sum;
}

namespace {

// Greedy ideal: at each rank take the doc with maximal residual gain.
struct GreedyIdeal {
  Ranking ranking;
  std::vector<double> cumulative;
};

GreedyIdeal greedy_ideal(const TopicIndex& index, int k, double alpha) {
  GreedyIdeal out;
  const int n = static_cast<int>(index.docs.size());
  const int depth = std::min(k, n);
  out.ranking.truncated = n < k;

  std::vector<double> aspect_counts(index.aspects.size(), 0.0);
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;

  double total = 0.0;
  for (int rank = 1; rank <= depth; ++rank) {
    int best_slot = 0;
    double best_gain = -1.0;
    for (int slot = 0; slot < static_cast<int>(remaining.size()); ++slot) {
      const auto& doc = index.docs[remaining[slot]];
      const double g = indexed_gain(doc, aspect_counts, alpha);
      if (g > best_gain + kTieWindow) {
        best_gain = g;
        best_slot = slot;
      } else if (g >= best_gain - kTieWindow &&
                 wins_idcg_tie(doc, index.docs[remaining[best_slot]])) {
        best_slot = slot;
      }
    }
    const auto& picked = index.docs[remaining[best_slot]];
    const double g = indexed_gain(picked, aspect_counts, alpha);
    add_doc_aspects(picked, aspect_counts);
    total += g / discount_at(rank);
    out.cumulative.push_back(total);
    out.ranking.items.push_back(picked.doc_id);
    remaining.erase(remaining.begin() + best_slot);
  }
  return out;
}

// Exact ideal DCG by memoized search over placed-document subsets. The gain
// of a candidate depends on the subset only, the discount on its size.
IdealDcg exact_ideal(const TopicIndex& index, int k, double alpha) {
  const int n = static_cast<int>(index.docs.size());
  const int depth = std::min(k, n);
  std::vector<double> best(std::size_t{1} << n, -1.0);
  std::vector<int> choice(std::size_t{1} << n, -1);
  std::vector<double> aspect_counts(index.aspects.size(), 0.0);

  std::function<double(unsigned)> solve = [&](unsigned placed) -> double {
    const int at = std::popcount(placed);
    if (at == depth) return 0.0;
    if (best[placed] >= 0.0) return best[placed];
    double top = -1.0;
    int pick = -1;
    for (int d = 0; d < n; ++d) {
      if (placed & (1u << d)) continue;
      const auto& doc = index.docs[d];
      const double g = indexed_gain(doc, aspect_counts, alpha);
      add_doc_aspects(doc, aspect_counts);
      const double value = g / discount_at(at + 1) + solve(placed | (1u << d));
      remove_doc_aspects(doc, aspect_counts);
      if (value > top) {
        top = value;
        pick = d;
      }
    }
    best[placed] = top;
    choice[placed] = pick;
    return top;
  };

  IdealDcg out;
  out.value = depth == 0 ? 0.0 : solve(0);
  out.ranking.truncated = n < k;
  unsigned placed = 0;
  for (int rank = 0; rank < depth; ++rank) {
    const int d = choice[placed];
    out.ranking.items.push_back(index.docs[d].doc_id);
    placed |= 1u << d;
  }
  return out;
}

}  // namespace

IdealDcg ideal_dcg(const Topic& topic, int k, double alpha, IdcgMode mode,
                   int exact_bound) {
  if (k < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  const TopicIndex index = TopicIndex::build(topic);
  if (mode == IdcgMode::kExact) {
    constexpr int kHardCap = 20;
    const int limit = std::min(exact_bound, kHardCap);
    if (static_cast<int>(index.docs.size()) > limit) {
      throw std::invalid_argument(
          "exact ideal DCG is limited to pools of at most " +
          std::to_string(limit) + " documents");
    }
    return exact_ideal(index, k, alpha);
  }
  GreedyIdeal greedy = greedy_ideal(index, k, alpha);
  IdealDcg out;
  out.value = greedy.cumulative.empty() ? 0.0 : greedy.cumulative.back();
  out.ranking = std::move(greedy.ranking);
  return out;
}

TopicNormalizers build_normalizers(const TopicIndex& index, int kmax,
                                   const MetricConfig& cfg) {
  if (kmax < 1) throw std::invalid_argument("cutoff must be >= 1");
  TopicNormalizers norm;
  GreedyIdeal greedy = greedy_ideal(index, kmax, cfg.alpha);
  norm.ideal = std::move(greedy.ranking);
  norm.idcg = std::move(greedy.cumulative);

  std::vector<double> grades;
  grades.reserve(index.docs.size());
  for (const auto& doc : index.docs) grades.push_back(doc.relevance);
  std::sort(grades.begin(), grades.end(), std::greater<>());

  const int depth = std::min<std::size_t>(kmax, grades.size());
  double rel = 0.0;
  double mass = 0.0;
  double power = 1.0;
  for (int i = 1; i <= depth; ++i) {
    rel += grades[i - 1] / discount_at(i);
    norm.rel_idcg.push_back(rel);
    mass += std::min(grades[i - 1], 1.0) * power;
    norm.rbp_ideal.push_back(mass);
    power *= cfg.persistence_p;
  }
  return norm;
}

RankProfile build_rank_profile(const Ranking& ranking, const TopicIndex& index,
                               const AlignedDesired* desired,
                               const MetricConfig& cfg, int kmax,
                               const TopicNormalizers* normalizers,
                               bool keep_group_history) {
  validate_metric_config(cfg);
  if (kmax < 1) throw std::invalid_argument("cutoff must be >= 1");

  RankProfile profile;
  profile.p = cfg.persistence_p;
  profile.truncated = ranking.truncated;
  profile.groups = index.groups;
  if (desired) {
    profile.desired_raw = desired->raw;
    profile.desired_smoothed = desired->smoothed;
    profile.desired_eta = desired->eta;
    profile.desired_uniform_n = desired->uniform_n;
  }

  if (normalizers) {
    profile.idcg = normalizers->idcg;
    profile.rel_idcg = normalizers->rel_idcg;
    profile.rbp_ideal = normalizers->rbp_ideal;
  } else {
    TopicNormalizers built = build_normalizers(index, kmax, cfg);
    profile.idcg = std::move(built.idcg);
    profile.rel_idcg = std::move(built.rel_idcg);
    profile.rbp_ideal = std::move(built.rbp_ideal);
  }

  const int depth = std::min<std::size_t>(kmax, ranking.items.size());
  std::vector<double> aspect_counts(index.aspects.size(), 0.0);
  std::vector<double> group_counts(index.groups.size(), 0.0);
  std::vector<char> seen(index.docs.size(), 0);

  double cum_dcg = 0.0, cum_fair = 0.0, cum_kl_num = 0.0, cum_rkl_num = 0.0;
  double cum_z = 0.0, cum_zr = 0.0, cum_rel_dcg = 0.0, cum_rbp = 0.0;
  double cum_rbp_fair = 0.0;
  double power = 1.0;

  profile.per_rank.reserve(depth);
  for (int i = 1; i <= depth; ++i) {
    const std::string& doc_id = ranking.items[i - 1];
    const TopicIndex::DocView* doc = index.find(doc_id);
    if (!doc) {
      throw std::invalid_argument("ranking names unknown doc '" + doc_id + "'");
    }
    const int pos = index.doc_pos.at(doc_id);
    if (seen[pos]) {
      throw std::invalid_argument("ranking repeats doc '" + doc_id + "'");
    }
    seen[pos] = 1;

    RankProfile::Entry entry;
    entry.gain = indexed_gain(*doc, aspect_counts, cfg.alpha);
    entry.relevance = doc->relevance;
    entry.discount = discount_at(i);
    add_doc_aspects(*doc, aspect_counts);
    for (int g : doc->group_ids) group_counts[g] += doc->group_credit;
    entry.kl = desired ? kl_from_counts(group_counts, i, *desired) : 0.0;

    const double inv_disc = 1.0 / entry.discount;
    const double fair_scale = 1.0 / (entry.kl + 1.0);
    cum_dcg += entry.gain * inv_disc;
    cum_fair += entry.gain * fair_scale * inv_disc;
    cum_kl_num += entry.kl * inv_disc;
    cum_rkl_num += fair_scale * inv_disc;
    cum_z += inv_disc;
    cum_zr += inv_disc / static_cast<double>(i);
    cum_rel_dcg += entry.relevance * inv_disc;
    const double graded = std::min(entry.relevance, 1.0);
    cum_rbp += graded * power;
    cum_rbp_fair += graded * power * fair_scale;
    power *= cfg.persistence_p;

    profile.per_rank.push_back(entry);
    profile.cum_dcg.push_back(cum_dcg);
    profile.cum_fair.push_back(cum_fair);
    profile.cum_kl_num.push_back(cum_kl_num);
    profile.cum_rkl_num.push_back(cum_rkl_num);
    profile.cum_z.push_back(cum_z);
    profile.cum_zr.push_back(cum_zr);
    profile.cum_rel_dcg.push_back(cum_rel_dcg);
    profile.cum_rbp.push_back(cum_rbp);
    profile.cum_rbp_fair.push_back(cum_rbp_fair);
    if (keep_group_history) profile.group_counts.push_back(group_counts);
  }
  return profile;
}

namespace {

struct Cut {
  int eff = 0;        // usable depth for this cutoff
  unsigned flags = 0;
};

Cut cut_at(const RankProfile& profile, int k) {
  if (k < 1) throw std::invalid_argument("cutoff must be >= 1");
  Cut cut;
  cut.eff = std::min<std::size_t>(k, profile.depth());
  if (static_cast<std::size_t>(k) > profile.depth()) cut.flags |= kFlagTruncated;
  return cut;
}

// Index into a normalizer array for cutoff k; the pool may be shorter.
int norm_index(const std::vector<double>& cumulative, int k) {
  return std::min<std::size_t>(k, cumulative.size()) - 1;
}

Scored normalized_at(const RankProfile& profile, int k,
                     const std::vector<double>& numerator,
                     const std::vector<double>& denominator,
                     bool flag_excess) {
  Cut cut = cut_at(profile, k);
  if (cut.eff == 0 || denominator.empty()) {
    return {0.0, cut.flags | kFlagDegenerate};
  }
  const double denom = denominator[norm_index(denominator, k)];
  if (denom <= 0.0) return {0.0, cut.flags | kFlagDegenerate};
  Scored result{numerator[cut.eff - 1] / denom, cut.flags};
  if (flag_excess && result.value > 1.0 + 1e-12) result.flags |= kFlagExceedsUnit;
  return result;
}

void require_desired(const RankProfile& profile) {
  if (profile.desired_raw.empty() && !profile.groups.empty()) {
    throw std::logic_error("profile was built without a desired distribution");
  }
}

}  // namespace

Scored alpha_ndcg_at(const RankProfile& profile, int k) {
  return normalized_at(profile, k, profile.cum_dcg, profile.idcg, true);
}

Scored ndcg_at(const RankProfile& profile, int k) {
  return normalized_at(profile, k, profile.cum_rel_dcg, profile.rel_idcg, true);
}

Scored rbp_at(const RankProfile& profile, int k) {
  Cut cut = cut_at(profile, k);
  if (cut.eff == 0) return {0.0, cut.flags | kFlagDegenerate};
  return {(1.0 - profile.p) * profile.cum_rbp[cut.eff - 1], cut.flags};
}

Scored fair_alpha_ndcg_at(const RankProfile& profile, int k) {
  require_desired(profile);
  return normalized_at(profile, k, profile.cum_fair, profile.idcg, true);
}

Scored fair_rbp_at(const RankProfile& profile, int k) {
  require_desired(profile);
  Cut cut = cut_at(profile, k);
  if (cut.eff == 0 || profile.rbp_ideal.empty()) {
    return {0.0, cut.flags | kFlagDegenerate};
  }
  const double ideal = profile.rbp_ideal[norm_index(profile.rbp_ideal, k)];
  if (ideal <= 0.0) return {0.0, cut.flags | kFlagDegenerate};
  return {profile.cum_rbp_fair[cut.eff - 1] / ideal, cut.flags};
}

Scored fair_ratio_at(const RankProfile& profile, int k) {
  require_desired(profile);
  Scored utility = ndcg_at(profile, k);
  Cut cut = cut_at(profile, k);
  if (cut.eff == 0) return {0.0, utility.flags};
  const double kl = profile.per_rank[cut.eff - 1].kl;
  return {utility.value / (kl + 1.0), utility.flags};
}

Scored kl_at(const RankProfile& profile, int k) {
  require_desired(profile);
  Cut cut = cut_at(profile, k);
  if (cut.eff == 0) return {0.0, cut.flags | kFlagDegenerate};
  return {profile.per_rank[cut.eff - 1].kl, cut.flags};
}

Scored ndkl_at(const RankProfile& profile, int k) {
  require_desired(profile);
  Cut cut = cut_at(profile, k);
  if (cut.eff == 0) return {0.0, cut.flags | kFlagDegenerate};
  return {profile.cum_kl_num[cut.eff - 1] / profile.cum_z[cut.eff - 1],
          cut.flags};
}

Scored ndrkl_at(const RankProfile& profile, int k, NdrklZ z) {
  require_desired(profile);
  Cut cut = cut_at(profile, k);
  if (cut.eff == 0) return {0.0, cut.flags | kFlagDegenerate};
  const double norm = z == NdrklZ::kDiscount ? profile.cum_z[cut.eff - 1]
                                             : profile.cum_zr[cut.eff - 1];
  return {profile.cum_rkl_num[cut.eff - 1] / norm, cut.flags};
}

SkewResult skew_at(const RankProfile& profile, int k) {
  require_desired(profile);
  Cut cut = cut_at(profile, k);
  SkewResult result;
  result.flags = cut.flags;
  if (cut.eff == 0) {
    result.flags |= kFlagDegenerate;
    return result;
  }
  if (profile.group_counts.empty()) {
    throw std::logic_error("profile was built without group history");
  }
  const std::vector<double>& counts = profile.group_counts[cut.eff - 1];
  const double eta = profile.desired_eta;
  const double share = eta / static_cast<double>(profile.desired_uniform_n);
  bool first = true;
  for (std::size_t g = 0; g < profile.groups.size(); ++g) {
    const double observed =
        (1.0 - eta) * (counts[g] / cut.eff) + share;
    const double wanted = (1.0 - eta) * profile.desired_raw[g] + share;
    if (wanted <= 0.0) {
      throw std::domain_error("skew undefined: group '" + profile.groups[g] +
                              "' has zero desired mass and no smoothing");
    }
    const double value = std::log(observed / wanted);
    result.per_group[profile.groups[g]] = value;
    if (first || value < result.min_skew) result.min_skew = value;
    if (first || value > result.max_skew) result.max_skew = value;
    first = false;
  }
  return result;
}

FeasibilityResult feasibility_at(const RankProfile& profile, int k) {
  require_desired(profile);
  Cut cut = cut_at(profile, k);
  FeasibilityResult result;
  result.flags = cut.flags;
  if (cut.eff == 0) return result;
  if (profile.group_counts.empty()) {
    throw std::logic_error("profile was built without group history");
  }
  for (int i = 1; i <= cut.eff; ++i) {
    const std::vector<double>& counts = profile.group_counts[i - 1];
    for (std::size_t g = 0; g < profile.groups.size(); ++g) {
      const double need =
          std::floor(static_cast<double>(i) * profile.desired_raw[g] + 1e-9);
      if (counts[g] < need - 1e-9) {
        result.violated_positions.insert(i);
        break;
      }
    }
  }
  result.feasible_up_to = cut.eff;
  if (!result.violated_positions.empty()) {
    result.feasible_up_to = *result.violated_positions.begin() - 1;
  }
  return result;
}

namespace {

RankProfile one_shot_profile(const Ranking& ranking, const Topic& topic,
                             const GroupDistribution* desired,
                             const MetricConfig& cfg, int k,
                             bool keep_group_history = true) {
  const TopicIndex index = TopicIndex::build(topic);
  if (!desired) {
    return build_rank_profile(ranking, index, nullptr, cfg, k, nullptr,
                              keep_group_history);
  }
  const AlignedDesired aligned =
      align_desired(index, *desired, cfg.kl_smoothing_eta);
  return build_rank_profile(ranking, index, &aligned, cfg, k, nullptr,
                            keep_group_history);
}

}  // namespace

Scored alpha_ndcg(const Ranking& ranking, const Topic& topic,
                  const MetricConfig& cfg, int k) {
  return alpha_ndcg_at(one_shot_profile(ranking, topic, nullptr, cfg, k), k);
}

Scored ndcg(const Ranking& ranking, const Topic& topic, int k) {
  MetricConfig cfg;
  return ndcg_at(one_shot_profile(ranking, topic, nullptr, cfg, k), k);
}

Scored rbp(const Ranking& ranking, const Topic& topic, double p, int k) {
  MetricConfig cfg;
  cfg.persistence_p = p;
  return rbp_at(one_shot_profile(ranking, topic, nullptr, cfg, k), k);
}

Scored fair_alpha_ndcg(const Ranking& ranking, const Topic& topic,
                       const GroupDistribution& desired,
                       const MetricConfig& cfg, int k) {
  return fair_alpha_ndcg_at(one_shot_profile(ranking, topic, &desired, cfg, k),
                            k);
}

Scored fair_rbp(const Ranking& ranking, const Topic& topic,
                const GroupDistribution& desired, double p, int k, double eta) {
  MetricConfig cfg;
  cfg.persistence_p = p;
  cfg.kl_smoothing_eta = eta;
  return fair_rbp_at(one_shot_profile(ranking, topic, &desired, cfg, k), k);
}

Scored fair_ratio(double utility, const Ranking& ranking, const Topic& topic,
                  const GroupDistribution& desired, int k, double eta) {
  if (utility < 0.0) {
    throw std::invalid_argument("utility score must be >= 0");
  }
  MetricConfig cfg;
  cfg.kl_smoothing_eta = eta;
  RankProfile profile = one_shot_profile(ranking, topic, &desired, cfg, k);
  Scored kl = kl_at(profile, k);
  return {utility / (kl.value + 1.0), kl.flags & ~kFlagDegenerate};
}

Scored ndkl(const Ranking& ranking, const Topic& topic,
            const GroupDistribution& desired, int k, double eta) {
  MetricConfig cfg;
  cfg.kl_smoothing_eta = eta;
  return ndkl_at(one_shot_profile(ranking, topic, &desired, cfg, k), k);
}

Scored ndrkl(const Ranking& ranking, const Topic& topic,
             const GroupDistribution& desired, int k, NdrklZ z, double eta) {
  MetricConfig cfg;
  cfg.kl_smoothing_eta = eta;
  return ndrkl_at(one_shot_profile(ranking, topic, &desired, cfg, k), k, z);
}

SkewResult skew(const Ranking& ranking, const Topic& topic,
                const GroupDistribution& desired, int k, double eta) {
  MetricConfig cfg;
  cfg.kl_smoothing_eta = eta;
  return skew_at(one_shot_profile(ranking, topic, &desired, cfg, k), k);
}

FeasibilityResult feasibility(const Ranking& ranking, const Topic& topic,
                              const GroupDistribution& desired, int k) {
  MetricConfig cfg;
  return feasibility_at(one_shot_profile(ranking, topic, &desired, cfg, k), k);
}

}  // namespace fairir
