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

#include "fairir/io.hpp"

#include "fairir/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace fairir {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Calls fn(line_number, line) for each line; strips a trailing CR.
template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::size_t len = end - start;
    if (len > 0 && text[start + len - 1] == '\r') --len;
    fn(line_no, std::string_view(text).substr(start, len));
    if (end == text.size()) break;
    start = end + 1;
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

double parse_double(std::string_view token, int line_no, const char* what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || std::isnan(value)) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(token) +
                         "'",
                     line_no);
  }
  return value;
}

int parse_int(std::string_view token, int line_no, const char* what) {
  int value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(token) +
                         "'",
                     line_no);
  }
  return value;
}

std::string fmt_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string fmt_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string pad_number(int value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, width - digits.size(), '0');
  }
  return digits;
}

int digits_of(int value) { return static_cast<int>(std::to_string(value).size()); }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

QrelsFile parse_qrels_diversity(const std::string& path, bool binary) {
  QrelsFile out;
  const std::string text = read_file(path);
  for_each_line(text, [&](int line_no, std::string_view line) {
    const auto fields = split_fields(line);
    if (fields.empty()) return;
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields (topic subtopic docid judgment), got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const std::string topic(fields[0]);
    const std::string subtopic(fields[1]);
    const std::string doc(fields[2]);
    double grade = parse_double(fields[3], line_no, "judgment");
    if (grade < 0.0) grade = 0.0;
    if (binary) grade = grade >= 1.0 ? 1.0 : 0.0;

    const std::string aspect = topic + "." + subtopic;
    auto& judgments = out.judgments[topic];
    if (judgments.grade(doc, aspect) > 0.0) {
      out.warnings.push_back("line " + std::to_string(line_no) +
                             ": duplicate judgment for (" + topic + ", " +
                             subtopic + ", " + doc + "), keeping the last");
    }
    judgments.set(doc, aspect, grade);
    out.aspects[topic].insert(aspect);
    out.docs[topic].insert(doc);
  });
  return out;
}

RunFile parse_run(const std::string& path) {
  struct RawEntry {
    int rank;
    double score;
    std::string doc;
  };
  std::map<std::string, std::vector<RawEntry>> raw;
  std::map<std::string, std::set<std::string>> seen;

  const std::string text = read_file(path);
  for_each_line(text, [&](int line_no, std::string_view line) {
    const auto fields = split_fields(line);
    if (fields.empty()) return;
    if (fields.size() != 6) {
      throw ParseError(
          "expected 6 fields (topic Q0 docid rank score tag), got " +
              std::to_string(fields.size()),
          line_no);
    }
    const std::string topic(fields[0]);
    const std::string doc(fields[2]);
    const int rank = parse_int(fields[3], line_no, "rank");
    const double score = parse_double(fields[4], line_no, "score");
    if (!seen[topic].insert(doc).second) {
      throw ParseError("duplicate docid '" + doc + "' in topic '" + topic + "'",
                       line_no);
    }
    raw[topic].push_back({rank, score, doc});
  });

  RunFile out;
  for (auto& [topic, entries] : raw) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const RawEntry& a, const RawEntry& b) {
                       return a.rank < b.rank;
                     });
    bool clean = true;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].rank != static_cast<int>(i) + 1) {
        clean = false;
        break;
      }
    }
    if (!clean) {
      out.warnings.push_back("topic '" + topic +
                             "': ranks are not 1..n, re-ranked by score");
      std::sort(entries.begin(), entries.end(),
                [](const RawEntry& a, const RawEntry& b) {
                  return std::tie(b.score, a.doc) < std::tie(a.score, b.doc);
                });
    }
    auto& ranking = out.rankings[topic];
    ranking.reserve(entries.size());
    for (const auto& entry : entries) {
      ranking.push_back({entry.doc, entry.score});
    }
  }
  return out;
}

GroupsFile parse_groups(const std::string& path) {
  GroupsFile out;
  const std::string text = read_file(path);
  for_each_line(text, [&](int line_no, std::string_view line) {
    const auto fields = split_fields(line);
    if (fields.empty()) return;
    if (fields.size() != 2) {
      throw ParseError("expected 2 fields (docid group), got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    out.groups[std::string(fields[0])].insert(std::string(fields[1]));
  });
  return out;
}

GroupDistribution parse_desired_file(const std::string& path) {
  GroupDistribution dist;
  const std::string text = read_file(path);
  for_each_line(text, [&](int line_no, std::string_view line) {
    const auto fields = split_fields(line);
    if (fields.empty()) return;
    if (fields.size() != 2) {
      throw ParseError("expected 2 fields (group probability), got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const std::string group(fields[0]);
    const double p = parse_double(fields[1], line_no, "probability");
    if (p < 0.0) throw ParseError("negative probability", line_no);
    if (!dist.mass.emplace(group, p).second) {
      throw ParseError("duplicate group '" + group + "'", line_no);
    }
  });
  if (dist.mass.empty()) {
    throw std::runtime_error("desired distribution file '" + path +
                             "' is empty");
  }
  if (std::abs(dist.sum() - 1.0) > 1e-6) {
    throw std::runtime_error("desired distribution sums to " +
                             fmt_g17(dist.sum()) + ", expected 1");
  }
  return dist;
}

const Topic* DatasetBundle::find_topic(const std::string& topic_id) const {
  auto it = std::lower_bound(topics.begin(), topics.end(), topic_id,
                             [](const Topic& t, const std::string& id) {
                               return t.topic_id < id;
                             });
  return it != topics.end() && it->topic_id == topic_id ? &*it : nullptr;
}

DatasetBundle assemble_bundle(const QrelsFile* qrels, const RunFile* run,
                              const GroupsFile* groups) {
  if (!qrels && !run) {
    throw std::runtime_error("nothing to assemble: no qrels and no run input");
  }

  DatasetBundle bundle;
  std::map<std::string, Topic> topics;
  auto topic_of = [&](const std::string& id) -> Topic& {
    auto [it, inserted] = topics.try_emplace(id);
    if (inserted) it->second.topic_id = id;
    return it->second;
  };

  if (qrels) {
    for (const auto& [tid, aspects] : qrels->aspects) {
      Topic& topic = topic_of(tid);
      topic.aspects = aspects;
      auto jt = qrels->judgments.find(tid);
      if (jt != qrels->judgments.end()) topic.judgments = jt->second;
      auto dt = qrels->docs.find(tid);
      if (dt != qrels->docs.end()) {
        for (const auto& doc_id : dt->second) {
          topic.candidates.push_back({doc_id, {}, std::nullopt, std::nullopt});
        }
      }
    }
    for (const auto& warning : qrels->warnings) {
      bundle.provenance.warnings.push_back(warning);
    }
  }

  int unjudged_run_docs = 0;
  if (run) {
    for (const auto& [tid, entries] : run->rankings) {
      Topic& topic = topic_of(tid);
      if (qrels && !qrels->aspects.count(tid)) {
        bundle.provenance.warnings.push_back("run topic '" + tid +
                                             "' has no judgments");
      }
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        Document* doc = nullptr;
        for (auto& candidate : topic.candidates) {
          if (candidate.doc_id == entry.doc_id) {
            doc = &candidate;
            break;
          }
        }
        if (!doc) {
          topic.candidates.push_back(
              {entry.doc_id, {}, std::nullopt, std::nullopt});
          doc = &topic.candidates.back();
          if (qrels) ++unjudged_run_docs;
        }
        doc->default_rank = static_cast<int>(i) + 1;
        doc->run_score = entry.score;
        topic.default_ranking.push_back(entry.doc_id);
      }
    }
    for (const auto& warning : run->warnings) {
      bundle.provenance.warnings.push_back(warning);
    }
  }
  if (unjudged_run_docs > 0) {
    bundle.provenance.warnings.push_back(
        std::to_string(unjudged_run_docs) +
        " run document(s) have no judgments");
  }

  std::set<std::string> docs_seen;
  for (auto& [tid, topic] : topics) {
    for (auto& doc : topic.candidates) {
      docs_seen.insert(doc.doc_id);
      if (groups) {
        auto it = groups->groups.find(doc.doc_id);
        if (it != groups->groups.end()) doc.groups = it->second;
      } else {
        for (const auto& [aspect, grade] : topic.judgments.for_doc(doc.doc_id)) {
          doc.groups.insert(aspect);
        }
      }
    }
    if (topic.aspects.empty()) {
      const auto universe = topic.group_universe();
      topic.aspects = {universe.begin(), universe.end()};
    }
  }
  if (groups) {
    int unknown = 0;
    for (const auto& [doc_id, group_set] : groups->groups) {
      if (!docs_seen.count(doc_id)) ++unknown;
    }
    if (unknown > 0) {
      bundle.provenance.warnings.push_back(
          std::to_string(unknown) +
          " group entry document(s) appear in no topic");
    }
    for (const auto& warning : groups->warnings) {
      bundle.provenance.warnings.push_back(warning);
    }
  }

  bundle.topics.reserve(topics.size());
  for (auto& [tid, topic] : topics) {
    validate_topic(topic);
    bundle.topics.push_back(std::move(topic));
  }
  bundle.provenance.format = "trec";
  return bundle;
}

void write_dataset(const DatasetBundle& bundle, const std::string& qrels_path,
                   const std::string& run_path,
                   const std::string& groups_path) {
  std::ofstream qrels(qrels_path, std::ios::binary);
  if (!qrels) throw std::runtime_error("cannot write '" + qrels_path + "'");
  for (const auto& topic : bundle.topics) {
    const std::string prefix = topic.topic_id + ".";
    for (const auto& [doc_id, row] : topic.judgments.table()) {
      for (const auto& [aspect, grade] : row) {
        std::string subtopic = aspect;
        if (subtopic.rfind(prefix, 0) == 0) subtopic.erase(0, prefix.size());
        qrels << topic.topic_id << ' ' << subtopic << ' ' << doc_id << ' '
              << fmt_g17(grade) << '\n';
      }
    }
  }

  std::ofstream run(run_path, std::ios::binary);
  if (!run) throw std::runtime_error("cannot write '" + run_path + "'");
  for (const auto& topic : bundle.topics) {
    for (std::size_t i = 0; i < topic.default_ranking.size(); ++i) {
      const std::string& doc_id = topic.default_ranking[i];
      const Document* doc = topic.find(doc_id);
      const double score = doc && doc->run_score ? *doc->run_score : 0.0;
      run << topic.topic_id << " Q0 " << doc_id << ' ' << (i + 1) << ' '
          << fmt_g17(score) << " fairir\n";
    }
  }

  std::ofstream groups(groups_path, std::ios::binary);
  if (!groups) throw std::runtime_error("cannot write '" + groups_path + "'");
  std::map<std::string, std::set<std::string>> by_doc;
  for (const auto& topic : bundle.topics) {
    for (const auto& doc : topic.candidates) {
      by_doc[doc.doc_id].insert(doc.groups.begin(), doc.groups.end());
    }
  }
  for (const auto& [doc_id, group_set] : by_doc) {
    for (const auto& group : group_set) {
      groups << doc_id << ' ' << group << '\n';
    }
  }
}

DatasetBundle generate_synthetic(const SyntheticSpec& spec) {
  if (spec.topics < 1 || spec.pool < 1 || spec.groups < 1 ||
      spec.aspects_per_group < 1) {
    throw std::invalid_argument("synthetic sizes must be >= 1");
  }
  if (!(spec.beta >= 0.0 && spec.beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in [0,1]");
  }
  if (!(spec.base >= 0.0 && spec.base <= 1.0)) {
    throw std::invalid_argument("base relevance must lie in [0,1]");
  }
  std::vector<double> prior = spec.prior;
  if (prior.empty()) {
    prior.assign(spec.groups, 1.0 / static_cast<double>(spec.groups));
  }
  if (static_cast<int>(prior.size()) != spec.groups) {
    throw std::invalid_argument("prior size must equal the group count");
  }
  double prior_sum = 0.0;
  for (double p : prior) {
    if (p < 0.0) throw std::invalid_argument("prior has negative mass");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("prior must sum to 1");
  }
  const int majority = static_cast<int>(
      std::max_element(prior.begin(), prior.end()) - prior.begin());

  const int topic_width = digits_of(spec.topics);
  const int pool_width = digits_of(spec.pool);
  const int group_width = digits_of(spec.groups);
  const int aspect_width = digits_of(spec.aspects_per_group);

  DatasetBundle bundle;
  bundle.provenance.format = "synthetic";
  bundle.topics.reserve(spec.topics);

  for (int t = 1; t <= spec.topics; ++t) {
    Topic topic;
    topic.topic_id = "q" + pad_number(t, topic_width);
    std::mt19937_64 rng(
        derive_seed(spec.seed, static_cast<std::uint64_t>(t), topic.topic_id));

    struct Draw {
      std::string doc_id;
      std::string group;
      std::string aspect;
      bool relevant;
      double score;
    };
    std::vector<Draw> draws;
    draws.reserve(spec.pool);

    for (int d = 1; d <= spec.pool; ++d) {
      Draw draw;
      draw.doc_id = topic.topic_id + ".d" + pad_number(d, pool_width);

      const double ug = uniform01(rng);
      int g = spec.groups - 1;
      double cum = 0.0;
      for (int i = 0; i < spec.groups; ++i) {
        cum += prior[i];
        if (ug < cum) {
          g = i;
          break;
        }
      }
      draw.group = "g" + pad_number(g + 1, group_width);

      const double ua = uniform01(rng);
      const int a = std::min(static_cast<int>(ua * spec.aspects_per_group),
                             spec.aspects_per_group - 1);
      draw.aspect = topic.topic_id + "." + draw.group + ".a" +
                    pad_number(a + 1, aspect_width);

      const double p_rel =
          (1.0 - spec.beta) * spec.base + spec.beta * (g == majority ? 1.0 : 0.0);
      draw.relevant = uniform01(rng) < p_rel;
      draw.score = (draw.relevant ? 1.0 : 0.0) + 0.5 * uniform01(rng);
      draws.push_back(std::move(draw));
    }

    // A topic with no relevant document cannot be evaluated; promote one.
    if (std::none_of(draws.begin(), draws.end(),
                     [](const Draw& d) { return d.relevant; })) {
      draws[0].relevant = true;
      draws[0].score += 1.0;
    }

    for (const auto& draw : draws) {
      Document doc;
      doc.doc_id = draw.doc_id;
      doc.groups = {draw.group};
      topic.candidates.push_back(std::move(doc));
      if (draw.relevant) {
        topic.judgments.set(draw.doc_id, draw.aspect, 1.0);
        topic.aspects.insert(draw.aspect);
      }
    }

    std::vector<int> order(draws.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (draws[a].score != draws[b].score) return draws[a].score > draws[b].score;
      return draws[a].doc_id < draws[b].doc_id;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      Document& doc = topic.candidates[order[pos]];
      doc.default_rank = static_cast<int>(pos) + 1;
      doc.run_score = draws[order[pos]].score;
      topic.default_ranking.push_back(doc.doc_id);
    }

    validate_topic(topic);
    bundle.topics.push_back(std::move(topic));
  }
  return bundle;
}

void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  std::ostream& out) {
  std::vector<ReportRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ReportRow& a, const ReportRow& b) {
              return std::tie(a.algorithm, a.metric, a.k) <
                     std::tie(b.algorithm, b.metric, b.k);
            });

  static const char* kHeader[] = {"algorithm", "metric",   "k",
                                  "mean",      "min",      "max",
                                  "excluded",  "flags"};
  std::vector<std::vector<std::string>> cells;
  cells.emplace_back(std::begin(kHeader), std::end(kHeader));
  for (const auto& row : sorted) {
    cells.push_back({row.algorithm, row.metric, std::to_string(row.k),
                     fmt_real(row.mean), fmt_real(row.min), fmt_real(row.max),
                     std::to_string(row.excluded), flags_to_string(row.flags)});
  }

  if (format == ReportFormat::kTsv) {
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i) out << '\t';
        out << line[i];
      }
      out << '\n';
    }
    return;
  }

  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      widths[i] = std::max(widths[i], line[i].size());
    }
  }
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << "  ";
      out << line[i];
      if (i + 1 < line.size()) {
        out << std::string(widths[i] - line[i].size(), ' ');
      }
    }
    out << '\n';
  }
}

}  // namespace fairir
