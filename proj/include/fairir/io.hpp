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
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fairir/core.hpp"

namespace fairir {

// Judgments file, whitespace-separated "topic subtopic docid judgment" lines.
// Aspect ids are topic-qualified ("101.1"). Negative judgments clamp to 0;
// in binary mode positive grades map to 1. Duplicate keys keep the last
// value and add a warning. Malformed lines throw ParseError.
struct QrelsFile {
  std::map<std::string, Judgments> judgments;             // by topic
  std::map<std::string, std::set<std::string>> aspects;   // by topic
  std::map<std::string, std::set<std::string>> docs;      // by topic, judged docs
  std::vector<std::string> warnings;
};

QrelsFile parse_qrels_diversity(const std::string& path, bool binary = false);

// Run file, "topic Q0 docid rank score tag" lines. Entries are sorted by the
// rank field; duplicate or gapped ranks fall back to score-descending order
// with a warning. A docid repeated within a topic throws ParseError.
struct RunFile {
  struct Entry {
    std::string doc_id;
    double score = 0.0;
  };
  std::map<std::string, std::vector<Entry>> rankings;  // by topic, rank order
  std::vector<std::string> warnings;
};

RunFile parse_run(const std::string& path);

// Sidecar "docid group" lines; repeated docids accumulate groups.
struct GroupsFile {
  std::map<std::string, std::set<std::string>> groups;  // by doc
  std::vector<std::string> warnings;
};

GroupsFile parse_groups(const std::string& path);

// "group probability" lines, must sum to 1 within 1e-6.
GroupDistribution parse_desired_file(const std::string& path);

struct DatasetBundle {
  std::vector<Topic> topics;  // sorted by topic id
  struct Provenance {
    std::vector<std::string> sources;
    std::string format;
    std::vector<std::string> warnings;
  } provenance;

  const Topic* find_topic(const std::string& topic_id) const;
};

// Joins the parsed files into validated topics. Any argument may be null.
// Topics come from the qrels when present, otherwise from the run file. Run
// documents missing from the qrels join as unjudged candidates. Without a
// groups file, a document's positively judged subtopics double as its groups.
DatasetBundle assemble_bundle(const QrelsFile* qrels, const RunFile* run,
                              const GroupsFile* groups);

// Writes a bundle back out in the three-file interchange format.
void write_dataset(const DatasetBundle& bundle, const std::string& qrels_path,
                   const std::string& run_path,
                   const std::string& groups_path);

struct SyntheticSpec {
  int topics = 100;
  int pool = 100;
  int groups = 2;
  std::vector<double> prior;  // empty = uniform; must sum to 1
  double beta = 0.0;          // majority-relevance bias in [0,1]
  double base = 0.5;          // baseline relevance probability
  int aspects_per_group = 1;
  std::uint64_t seed = 0;
};

// Deterministic synthetic bundle: each doc draws a group from the prior, an
// aspect within the group, and a binary relevance with probability
// (1-beta) base + beta [group == majority]. Default rankings sort by
// grade plus seeded jitter below the grade step.
DatasetBundle generate_synthetic(const SyntheticSpec& spec);

enum class ReportFormat { kTsv, kText };

struct ReportRow {
  std::string algorithm;
  std::string metric;
  int k = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int excluded = 0;
  unsigned flags = 0;
};

// One row per (algorithm, metric, k), sorted, reals at 6 decimals.
void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  std::ostream& out);

}  // namespace fairir
