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

#include "fairir/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fairir/metrics.hpp"
#include "fairir/rankers.hpp"
#include "fairir/stats.hpp"
#include "parallel.hpp"

namespace fairir {

namespace {

enum class MetricKind {
  kAlphaNdcg,
  kNdcg,
  kRbp,
  kFair,
  kFairRbp,
  kFairRatio,
  kKl,
  kNdkl,
  kNdrkl,
  kSkewMin,
  kSkewMax,
  kFeasibility,
};

const std::vector<std::pair<std::string, MetricKind>>& metric_table() {
  static const std::vector<std::pair<std::string, MetricKind>> kTable = {
      {"alpha-ndcg", MetricKind::kAlphaNdcg},
      {"ndcg", MetricKind::kNdcg},
      {"rbp", MetricKind::kRbp},
      {"fair", MetricKind::kFair},
      {"fair-rbp", MetricKind::kFairRbp},
      {"fair-ratio", MetricKind::kFairRatio},
      {"kl", MetricKind::kKl},
      {"ndkl", MetricKind::kNdkl},
      {"ndrkl", MetricKind::kNdrkl},
      {"skew-min", MetricKind::kSkewMin},
      {"skew-max", MetricKind::kSkewMax},
      {"feasibility", MetricKind::kFeasibility},
  };
  return kTable;
}

bool metric_needs_history(MetricKind kind) {
  return kind == MetricKind::kSkewMin || kind == MetricKind::kSkewMax ||
         kind == MetricKind::kFeasibility;
}

Scored eval_metric(MetricKind kind, const RankProfile& profile, int k) {
  switch (kind) {
    case MetricKind::kAlphaNdcg:
      return alpha_ndcg_at(profile, k);
    case MetricKind::kNdcg:
      return ndcg_at(profile, k);
    case MetricKind::kRbp:
      return rbp_at(profile, k);
    case MetricKind::kFair:
      return fair_alpha_ndcg_at(profile, k);
    case MetricKind::kFairRbp:
      return fair_rbp_at(profile, k);
    case MetricKind::kFairRatio:
      return fair_ratio_at(profile, k);
    case MetricKind::kKl:
      return kl_at(profile, k);
    case MetricKind::kNdkl:
      return ndkl_at(profile, k);
    case MetricKind::kNdrkl:
      return ndrkl_at(profile, k);
    case MetricKind::kSkewMin: {
      const SkewResult result = skew_at(profile, k);
      return {result.min_skew, result.flags};
    }
    case MetricKind::kSkewMax: {
      const SkewResult result = skew_at(profile, k);
      return {result.max_skew, result.flags};
    }
    case MetricKind::kFeasibility: {
      const FeasibilityResult result = feasibility_at(profile, k);
      return {static_cast<double>(result.feasible_up_to), result.flags};
    }
  }
  throw std::logic_error("unknown metric");
}

// Everything derived from the flag surface alone; building it throws
// std::invalid_argument on usage errors.
struct Resolved {
  MetricConfig mcfg;
  std::vector<int> cutoffs;
  int kmax = 0;
  std::vector<std::string> metric_names;
  std::vector<MetricKind> metric_kinds;
  bool need_history = false;

  FairnessNotion::Kind desired_kind = FairnessNotion::Kind::kUniform;
  std::string desired_path;  // explicit file, loaded in the data phase

  std::optional<ProxySpec> proxy;
  ReportFormat format = ReportFormat::kTsv;
  double epsilon = 0.0;
  int runs = 1;
  std::uint64_t seed = 0;
  int exact_idcg_max = 10;
  bool exact_idcg = false;
};

std::vector<std::string> split_csv(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      std::size_t comma = item.find(',', start);
      if (comma == std::string::npos) comma = item.size();
      if (comma > start) out.push_back(item.substr(start, comma - start));
      start = comma + 1;
    }
  }
  return out;
}

Resolved resolve(const CommandSpec& spec) {
  Resolved r;
  r.mcfg.alpha = spec.alpha;
  r.mcfg.persistence_p = spec.p;
  r.mcfg.kl_smoothing_eta = spec.eta;
  r.mcfg.cutoffs = spec.cutoffs;
  validate_metric_config(r.mcfg);

  r.cutoffs = spec.cutoffs;
  std::sort(r.cutoffs.begin(), r.cutoffs.end());
  r.cutoffs.erase(std::unique(r.cutoffs.begin(), r.cutoffs.end()),
                  r.cutoffs.end());
  r.kmax = r.cutoffs.back();

  std::vector<std::string> names = split_csv(spec.metrics);
  if (names.empty()) names = supported_metrics();
  for (const auto& name : names) {
    const auto& table = metric_table();
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const auto& row) { return row.first == name; });
    if (it == table.end()) {
      throw std::invalid_argument("unknown metric '" + name + "'");
    }
    if (std::find(r.metric_names.begin(), r.metric_names.end(), name) !=
        r.metric_names.end()) {
      continue;
    }
    r.metric_names.push_back(name);
    r.metric_kinds.push_back(it->second);
    r.need_history = r.need_history || metric_needs_history(it->second);
  }

  if (spec.desired == "uniform") {
    r.desired_kind = FairnessNotion::Kind::kUniform;
  } else if (spec.desired == "collection") {
    r.desired_kind = FairnessNotion::Kind::kCollection;
  } else if (spec.desired == "relprop") {
    r.desired_kind = FairnessNotion::Kind::kRelevanceProportional;
  } else if (spec.desired.rfind("file:", 0) == 0) {
    r.desired_kind = FairnessNotion::Kind::kExplicit;
    r.desired_path = spec.desired.substr(5);
    if (r.desired_path.empty()) {
      throw std::invalid_argument("empty path in --desired file:PATH");
    }
  } else {
    throw std::invalid_argument(
        "bad --desired '" + spec.desired +
        "' (expected uniform, collection, relprop, or file:PATH)");
  }

  if (!spec.proxy.empty()) r.proxy = ProxySpec::parse(spec.proxy);

  if (spec.format == "tsv") {
    r.format = ReportFormat::kTsv;
  } else if (spec.format == "text") {
    r.format = ReportFormat::kText;
  } else {
    throw std::invalid_argument("bad --format '" + spec.format +
                                "' (expected tsv or text)");
  }

  if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0,1]");
  }
  r.epsilon = spec.epsilon;
  if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");
  r.runs = spec.runs;
  r.seed = spec.seed;
  if (spec.exact_idcg_max < 1) {
    throw std::invalid_argument("--exact-idcg-max must be >= 1");
  }
  r.exact_idcg_max = spec.exact_idcg_max;
  if (spec.idcg_mode == "greedy") {
    r.exact_idcg = false;
  } else if (spec.idcg_mode == "exact") {
    r.exact_idcg = true;
  } else {
    throw std::invalid_argument("bad idcg mode '" + spec.idcg_mode +
                                "' (expected greedy or exact)");
  }
  return r;
}

struct Inputs {
  std::optional<QrelsFile> qrels;
  std::optional<RunFile> run;
  std::optional<GroupsFile> groups;
  std::optional<GroupDistribution> explicit_desired;
  DatasetBundle bundle;
};

Inputs load_inputs(const CommandSpec& spec, const Resolved& r, bool need_run) {
  Inputs inputs;
  if (need_run && spec.run_path.empty()) {
    throw std::runtime_error("missing --run input");
  }
  if (spec.qrels_path.empty() && !r.proxy) {
    throw std::runtime_error("missing --qrels input (or use --proxy)");
  }
  if (spec.qrels_path.empty() && spec.run_path.empty()) {
    throw std::runtime_error("missing --run input (--proxy needs a ranking)");
  }

  if (!spec.qrels_path.empty()) {
    inputs.qrels = parse_qrels_diversity(spec.qrels_path);
  }
  if (!spec.run_path.empty()) inputs.run = parse_run(spec.run_path);
  if (!spec.groups_path.empty()) inputs.groups = parse_groups(spec.groups_path);
  if (r.desired_kind == FairnessNotion::Kind::kExplicit) {
    inputs.explicit_desired = parse_desired_file(r.desired_path);
  }

  inputs.bundle = assemble_bundle(
      inputs.qrels ? &*inputs.qrels : nullptr,
      inputs.run ? &*inputs.run : nullptr,
      inputs.groups ? &*inputs.groups : nullptr);
  if (!spec.qrels_path.empty()) {
    inputs.bundle.provenance.sources.push_back(spec.qrels_path);
  }
  if (!spec.run_path.empty()) {
    inputs.bundle.provenance.sources.push_back(spec.run_path);
  }
  if (!spec.groups_path.empty()) {
    inputs.bundle.provenance.sources.push_back(spec.groups_path);
  }
  if (inputs.bundle.topics.empty()) {
    throw std::runtime_error("no topics in input");
  }
  return inputs;
}

FairnessNotion notion_for(const Resolved& r, const Inputs& inputs) {
  switch (r.desired_kind) {
    case FairnessNotion::Kind::kUniform:
      return FairnessNotion::Uniform();
    case FairnessNotion::Kind::kCollection:
      return FairnessNotion::Collection();
    case FairnessNotion::Kind::kRelevanceProportional:
      return FairnessNotion::RelevanceProportional();
    case FairnessNotion::Kind::kExplicit:
      return FairnessNotion::Explicit(*inputs.explicit_desired);
  }
  throw std::logic_error("unknown desired kind");
}

void emit_warnings(const DatasetBundle& bundle, std::ostream& err) {
  for (const auto& warning : bundle.provenance.warnings) {
    err << "warning: " << warning << '\n';
  }
}

// Per-topic scores: metric-major, cutoff-minor, averaged over the produced
// rankings of that topic.
struct TopicScores {
  std::vector<std::vector<double>> sums;     // [metric][cutoff]
  std::vector<std::vector<unsigned>> flags;  // [metric][cutoff]
  int rankings_scored = 0;
  bool skipped = false;
};

// Produces the rankings to score for one topic (one per run).
using RankProducer = std::function<std::vector<Ranking>(
    const Topic& ranking_topic, const TopicIndex& ranking_index,
    const AlignedDesired& ranking_desired, const std::string& topic_id)>;

std::vector<TopicScores> score_topics(const DatasetBundle& bundle,
                                      const Resolved& r,
                                      const FairnessNotion& notion,
                                      const RankProducer& produce,
                                      const std::vector<char>& skip) {
  const std::size_t n = bundle.topics.size();
  std::vector<TopicScores> scores(n);

  parallel_for(n, [&](std::size_t ti) {
    const Topic& gold = bundle.topics[ti];
    TopicScores& slot = scores[ti];
    if (skip[ti]) {
      slot.skipped = true;
      return;
    }

    // Gold judgments score the rankings whenever they exist; the proxy only
    // stands in when there are none, and always drives proxy-mode ranking.
    const bool has_gold = !gold.judgments.empty();
    Topic proxied;
    const Topic* scoring_topic = &gold;
    const Topic* ranking_topic = &gold;
    if (r.proxy) {
      proxied = with_proxy_judgments(gold, *r.proxy);
      ranking_topic = &proxied;
      if (!has_gold) scoring_topic = &proxied;
    }

    const TopicIndex scoring_index = TopicIndex::build(*scoring_topic);
    const GroupDistribution desired =
        build_desired_distribution(*scoring_topic, notion);
    const AlignedDesired aligned =
        align_desired(scoring_index, desired, r.mcfg.kl_smoothing_eta);
    const TopicNormalizers normalizers =
        build_normalizers(scoring_index, r.kmax, r.mcfg);

    std::optional<TopicIndex> ranking_index;
    if (ranking_topic != scoring_topic) {
      ranking_index.emplace(TopicIndex::build(*ranking_topic));
    }
    const TopicIndex& rindex = ranking_index ? *ranking_index : scoring_index;
    const AlignedDesired raligned =
        ranking_index ? align_desired(rindex, desired, r.mcfg.kl_smoothing_eta)
                      : aligned;

    const std::vector<Ranking> rankings =
        produce(*ranking_topic, rindex, raligned, gold.topic_id);

    slot.sums.assign(r.metric_kinds.size(),
                     std::vector<double>(r.cutoffs.size(), 0.0));
    slot.flags.assign(r.metric_kinds.size(),
                      std::vector<unsigned>(r.cutoffs.size(), 0));
    for (const Ranking& ranking : rankings) {
      const RankProfile profile =
          build_rank_profile(ranking, scoring_index, &aligned, r.mcfg, r.kmax,
                             &normalizers, r.need_history);
      for (std::size_t m = 0; m < r.metric_kinds.size(); ++m) {
        for (std::size_t c = 0; c < r.cutoffs.size(); ++c) {
          const Scored scored =
              eval_metric(r.metric_kinds[m], profile, r.cutoffs[c]);
          slot.sums[m][c] += scored.value;
          slot.flags[m][c] |= scored.flags;
        }
      }
    }
    slot.rankings_scored = static_cast<int>(rankings.size());
  });
  return scores;
}

std::vector<ReportRow> aggregate_rows(const std::vector<TopicScores>& scores,
                                      const Resolved& r,
                                      const std::string& algorithm) {
  std::vector<ReportRow> rows;
  for (std::size_t m = 0; m < r.metric_kinds.size(); ++m) {
    for (std::size_t c = 0; c < r.cutoffs.size(); ++c) {
      ReportRow row;
      row.algorithm = algorithm;
      row.metric = r.metric_names[m];
      row.k = r.cutoffs[c];
      std::vector<double> values;
      for (const TopicScores& slot : scores) {
        if (slot.skipped) continue;
        const unsigned flags = slot.flags[m][c];
        if (flags & kFlagDegenerate) {
          ++row.excluded;
          row.flags |= flags;
          continue;
        }
        row.flags |= flags;
        values.push_back(slot.sums[m][c] /
                         static_cast<double>(slot.rankings_scored));
      }
      if (values.empty()) {
        row.flags |= kFlagDegenerate;
      } else {
        row.mean = aggregate(values, Aggregate::kMean);
        row.min = aggregate(values, Aggregate::kMin);
        row.max = aggregate(values, Aggregate::kMax);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

int emit_report(const std::vector<ReportRow>& rows, const Resolved& r,
                const CommandSpec& spec, std::ostream& out) {
  if (spec.out_path.empty()) {
    write_report(rows, r.format, out);
    return kExitOk;
  }
  std::ofstream file(spec.out_path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot write '" + spec.out_path + "'");
  }
  write_report(rows, r.format, file);
  return kExitOk;
}

std::string epsilon_label(double epsilon) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", epsilon);
  return std::string("epsilon-greedy@") + buf;
}

std::vector<char> skip_unranked(const DatasetBundle& bundle,
                                std::ostream& err) {
  std::vector<char> skip(bundle.topics.size(), 0);
  for (std::size_t i = 0; i < bundle.topics.size(); ++i) {
    if (bundle.topics[i].default_ranking.empty()) {
      skip[i] = 1;
      err << "warning: topic '" << bundle.topics[i].topic_id
          << "' has no run entries, skipped\n";
    }
  }
  return skip;
}

int count_skipped(const std::vector<char>& skip) {
  int n = 0;
  for (char s : skip) n += s != 0;
  return n;
}

}  // namespace

const std::vector<std::string>& supported_metrics() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [name, kind] : metric_table()) names.push_back(name);
    return names;
  }();
  return kNames;
}

int run_evaluate(const CommandSpec& spec, std::ostream& out,
                 std::ostream& err) {
  Resolved r;
  try {
    r = resolve(spec);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  }
  try {
    Inputs inputs = load_inputs(spec, r, /*need_run=*/true);
    emit_warnings(inputs.bundle, err);
    const FairnessNotion notion = notion_for(r, inputs);
    const std::vector<char> skip = skip_unranked(inputs.bundle, err);
    if (count_skipped(skip) == static_cast<int>(inputs.bundle.topics.size())) {
      throw std::runtime_error("no topic has run entries to evaluate");
    }

    const int kmax = r.kmax;
    RankProducer produce = [kmax](const Topic& topic, const TopicIndex&,
                                  const AlignedDesired&,
                                  const std::string&) -> std::vector<Ranking> {
      return {passthrough(topic, kmax)};
    };
    const auto scores =
        score_topics(inputs.bundle, r, notion, produce, skip);
    return emit_report(aggregate_rows(scores, r, "default"), r, spec, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

int run_rerank(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  Resolved r;
  try {
    r = resolve(spec);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  }
  try {
    Inputs inputs = load_inputs(spec, r, /*need_run=*/false);
    emit_warnings(inputs.bundle, err);
    const FairnessNotion notion = notion_for(r, inputs);
    std::vector<char> skip(inputs.bundle.topics.size(), 0);
    if (r.proxy) {
      // Proxy ranking needs a default ranking to grade.
      for (std::size_t i = 0; i < inputs.bundle.topics.size(); ++i) {
        if (inputs.bundle.topics[i].default_ranking.empty()) {
          skip[i] = 1;
          err << "warning: topic '" << inputs.bundle.topics[i].topic_id
              << "' has no run entries for the proxy, skipped\n";
        }
      }
      if (count_skipped(skip) ==
          static_cast<int>(inputs.bundle.topics.size())) {
        throw std::runtime_error("no topic has run entries for the proxy");
      }
    }

    // One deterministic pass for the pure branches, `runs` otherwise.
    const bool randomized = r.epsilon > 0.0 && r.epsilon < 1.0;
    const int runs = randomized ? r.runs : 1;
    const std::uint64_t base_seed = r.seed;
    const double epsilon = r.epsilon;
    const int kmax = r.kmax;
    const MetricConfig mcfg = r.mcfg;

    RankProducer produce = [&](const Topic&, const TopicIndex& index,
                               const AlignedDesired& desired,
                               const std::string& topic_id) {
      std::vector<Ranking> rankings;
      rankings.reserve(runs);
      for (int run_i = 0; run_i < runs; ++run_i) {
        RankerConfig rcfg;
        rcfg.epsilon = epsilon;
        rcfg.k = kmax;
        rcfg.runs = 1;
        rcfg.seed = derive_seed(base_seed, static_cast<std::uint64_t>(run_i),
                                topic_id);
        rankings.push_back(epsilon_greedy(index, desired, rcfg, mcfg));
      }
      return rankings;
    };

    const auto scores =
        score_topics(inputs.bundle, r, notion, produce, skip);

    if (!spec.rankings_out.empty()) {
      std::ofstream dump(spec.rankings_out, std::ios::binary);
      if (!dump) {
        throw std::runtime_error("cannot write '" + spec.rankings_out + "'");
      }
      for (std::size_t ti = 0; ti < inputs.bundle.topics.size(); ++ti) {
        if (skip[ti]) continue;
        const Topic& gold = inputs.bundle.topics[ti];
        Topic proxied;
        const Topic* ranking_topic = &gold;
        if (r.proxy) {
          proxied = with_proxy_judgments(gold, *r.proxy);
          ranking_topic = &proxied;
        }
        const TopicIndex index = TopicIndex::build(*ranking_topic);
        const GroupDistribution desired =
            build_desired_distribution(*ranking_topic, notion);
        const AlignedDesired aligned =
            align_desired(index, desired, mcfg.kl_smoothing_eta);
        for (int run_i = 0; run_i < runs; ++run_i) {
          RankerConfig rcfg;
          rcfg.epsilon = epsilon;
          rcfg.k = kmax;
          rcfg.runs = 1;
          rcfg.seed = derive_seed(base_seed, static_cast<std::uint64_t>(run_i),
                                  gold.topic_id);
          const Ranking ranking = epsilon_greedy(index, aligned, rcfg, mcfg);
          for (std::size_t pos = 0; pos < ranking.items.size(); ++pos) {
            dump << gold.topic_id << ' ' << run_i << ' ' << (pos + 1) << ' '
                 << ranking.items[pos] << '\n';
          }
        }
      }
    }

    return emit_report(aggregate_rows(scores, r, epsilon_label(epsilon)), r,
                       spec, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

int run_ideal(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  Resolved r;
  try {
    r = resolve(spec);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  }
  try {
    Inputs inputs = load_inputs(spec, r, /*need_run=*/false);
    emit_warnings(inputs.bundle, err);
    const FairnessNotion notion = notion_for(r, inputs);
    std::vector<char> skip(inputs.bundle.topics.size(), 0);

    const int kmax = r.kmax;
    const double alpha = r.mcfg.alpha;
    const bool exact = r.exact_idcg;
    const int bound = r.exact_idcg_max;
    RankProducer produce = [kmax, alpha, exact, bound](
                               const Topic& topic, const TopicIndex& index,
                               const AlignedDesired&,
                               const std::string&) -> std::vector<Ranking> {
      if (exact) {
        return {ideal_dcg(topic, kmax, alpha, IdcgMode::kExact, bound).ranking};
      }
      return {greedy_ideal_ranker(index, kmax, alpha)};
    };
    const auto scores =
        score_topics(inputs.bundle, r, notion, produce, skip);
    return emit_report(
        aggregate_rows(scores, r, exact ? "exact-ideal" : "greedy-ideal"), r,
        spec, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

int run_correlate(const CommandSpec& spec, std::ostream& out,
                  std::ostream& err) {
  Resolved r;
  try {
    r = resolve(spec);
    // The correlation anchor is the fair metric itself.
    if (spec.metrics.empty()) {
      Resolved defaults = r;
      defaults.metric_names = {"alpha-ndcg", "ndcg", "kl", "ndrkl"};
      defaults.metric_kinds = {MetricKind::kAlphaNdcg, MetricKind::kNdcg,
                               MetricKind::kKl, MetricKind::kNdrkl};
      r = defaults;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  }
  try {
    Inputs inputs = load_inputs(spec, r, /*need_run=*/true);
    emit_warnings(inputs.bundle, err);
    const FairnessNotion notion = notion_for(r, inputs);
    const std::vector<char> skip = skip_unranked(inputs.bundle, err);
    if (count_skipped(skip) == static_cast<int>(inputs.bundle.topics.size())) {
      throw std::runtime_error("no topic has run entries to evaluate");
    }

    // Score fair plus the requested partners in one pass.
    Resolved scored = r;
    scored.metric_names.insert(scored.metric_names.begin(), "fair");
    scored.metric_kinds.insert(scored.metric_kinds.begin(), MetricKind::kFair);
    scored.need_history = false;
    for (MetricKind kind : scored.metric_kinds) {
      scored.need_history = scored.need_history || metric_needs_history(kind);
    }

    const int kmax = scored.kmax;
    RankProducer produce = [kmax](const Topic& topic, const TopicIndex&,
                                  const AlignedDesired&,
                                  const std::string&) -> std::vector<Ranking> {
      return {passthrough(topic, kmax)};
    };
    const auto scores =
        score_topics(inputs.bundle, scored, notion, produce, skip);

    std::ostringstream body;
    body << "pair\tk\tn\texcluded\tpearson_r\tpearson_p\tpearson_sig"
            "\tspearman_rho\tspearman_p\tspearman_sig\tapprox\n";
    char buf[64];
    auto fmt6 = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.6f", v);
      return std::string(buf);
    };
    for (std::size_t m = 1; m < scored.metric_kinds.size(); ++m) {
      for (std::size_t c = 0; c < scored.cutoffs.size(); ++c) {
        std::vector<double> x, y;
        int excluded = 0;
        for (const TopicScores& slot : scores) {
          if (slot.skipped) continue;
          if ((slot.flags[0][c] | slot.flags[m][c]) & kFlagDegenerate) {
            ++excluded;
            continue;
          }
          const double denom = static_cast<double>(slot.rankings_scored);
          x.push_back(slot.sums[0][c] / denom);
          y.push_back(slot.sums[m][c] / denom);
        }
        const Correlation pr = pearson(x, y);
        const Correlation sp = spearman(x, y);
        body << "fair~" << scored.metric_names[m] << '\t' << scored.cutoffs[c]
             << '\t' << x.size() << '\t' << excluded << '\t' << fmt6(pr.r)
             << '\t' << fmt6(pr.p_value) << '\t'
             << (significance_stars(pr.p_value).empty()
                     ? "-"
                     : significance_stars(pr.p_value))
             << '\t' << fmt6(sp.r) << '\t' << fmt6(sp.p_value) << '\t'
             << (significance_stars(sp.p_value).empty()
                     ? "-"
                     : significance_stars(sp.p_value))
             << '\t' << (sp.approximate ? "yes" : "no") << '\n';
      }
    }

    if (spec.out_path.empty()) {
      out << body.str();
    } else {
      std::ofstream file(spec.out_path, std::ios::binary);
      if (!file) {
        throw std::runtime_error("cannot write '" + spec.out_path + "'");
      }
      file << body.str();
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

int run_synth(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  DatasetBundle bundle;
  try {
    if (spec.synth_out.empty()) {
      throw std::invalid_argument("missing --out-dir for the dataset files");
    }
    bundle = generate_synthetic(spec.synth);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  }
  try {
    namespace fs = std::filesystem;
    fs::create_directories(spec.synth_out);
    const std::string qrels = (fs::path(spec.synth_out) / "qrels.txt").string();
    const std::string run = (fs::path(spec.synth_out) / "run.txt").string();
    const std::string groups =
        (fs::path(spec.synth_out) / "groups.txt").string();
    write_dataset(bundle, qrels, run, groups);
    out << "wrote " << bundle.topics.size() << " topics to " << qrels << ", "
        << run << ", " << groups << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace fairir
