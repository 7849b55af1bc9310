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

#ifndef FAIRIR_TESTS_SUPPORT_HPP_
#define FAIRIR_TESTS_SUPPORT_HPP_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fairir/core.hpp"

namespace support {

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    path_ = base / ("fairir_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

struct TopicShape {
  int max_pool = 10;
  int max_aspects = 4;
  int max_groups = 3;
  bool allow_ungrouped = true;
  bool graded = true;
  bool require_relevant = true;
};

inline int draw_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// A random but always-valid topic. Doc ids are deliberately unpadded so the
// lexicographic tie-break sees d10 < d2.
inline fairir::Topic random_topic(std::mt19937_64& rng,
                                  const TopicShape& shape = {}) {
  fairir::Topic topic;
  topic.topic_id = "t" + std::to_string(draw_int(rng, 1, 9999));
  const int pool = draw_int(rng, 1, shape.max_pool);
  const int n_aspects = draw_int(rng, 1, shape.max_aspects);
  const int n_groups = draw_int(rng, 1, shape.max_groups);

  std::vector<std::string> aspects, groups;
  for (int a = 0; a < n_aspects; ++a) {
    aspects.push_back("s" + std::to_string(a + 1));
    topic.aspects.insert(aspects.back());
  }
  for (int g = 0; g < n_groups; ++g) groups.push_back("g" + std::to_string(g + 1));

  std::vector<int> order(pool);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  for (int d = 0; d < pool; ++d) {
    fairir::Document doc;
    doc.doc_id = "d" + std::to_string(d + 1);
    const bool ungrouped = shape.allow_ungrouped && draw_unit(rng) < 0.15;
    if (!ungrouped) {
      const int take = draw_int(rng, 1, std::min(2, n_groups));
      while (static_cast<int>(doc.groups.size()) < take) {
        doc.groups.insert(groups[draw_int(rng, 0, n_groups - 1)]);
      }
    }
    doc.default_rank = order[d] + 1;
    doc.run_score = static_cast<double>(pool - order[d]);
    topic.candidates.push_back(doc);
  }

  bool any_positive = false;
  for (int d = 0; d < pool; ++d) {
    for (const auto& aspect : aspects) {
      if (draw_unit(rng) < 0.45) {
        double grade = shape.graded ? draw_int(rng, 1, 3) : 1.0;
        topic.judgments.set(topic.candidates[d].doc_id, aspect, grade);
        any_positive = true;
      }
    }
  }
  if (shape.require_relevant && !any_positive) {
    topic.judgments.set(topic.candidates[0].doc_id, aspects[0], 1.0);
  }

  std::vector<const fairir::Document*> by_rank;
  for (const auto& doc : topic.candidates) by_rank.push_back(&doc);
  std::sort(by_rank.begin(), by_rank.end(),
            [](const fairir::Document* a, const fairir::Document* b) {
              return *a->default_rank < *b->default_rank;
            });
  for (const auto* doc : by_rank) topic.default_ranking.push_back(doc->doc_id);

  fairir::validate_topic(topic);
  return topic;
}

// Random prefix ranking over a topic's candidates.
inline fairir::Ranking random_ranking(std::mt19937_64& rng,
                                      const fairir::Topic& topic, int k) {
  std::vector<std::string> ids;
  for (const auto& doc : topic.candidates) ids.push_back(doc.doc_id);
  std::shuffle(ids.begin(), ids.end(), rng);
  fairir::Ranking out;
  const int depth = std::min<int>(k, static_cast<int>(ids.size()));
  out.items.assign(ids.begin(), ids.begin() + depth);
  out.truncated = static_cast<int>(ids.size()) < k;
  return out;
}

// Strictly positive desired distribution over the topic's group universe.
inline fairir::GroupDistribution random_desired(std::mt19937_64& rng,
                                                const fairir::Topic& topic) {
  fairir::GroupDistribution desired;
  double total = 0.0;
  for (const auto& group : topic.group_universe()) {
    const double mass = 0.1 + 0.9 * draw_unit(rng);
    desired.mass[group] = mass;
    total += mass;
  }
  for (auto& [group, mass] : desired.mass) mass /= total;
  return desired;
}

// Two-doc, two-group, two-aspect worked example used by the frozen-value
// tests: d1 covers s1 for group g1, d2 covers s2 for group g2.
inline fairir::Topic worked_topic() {
  fairir::Topic topic;
  topic.topic_id = "w1";
  topic.aspects = {"s1", "s2"};
  fairir::Document d1;
  d1.doc_id = "d1";
  d1.groups = {"g1"};
  fairir::Document d2;
  d2.doc_id = "d2";
  d2.groups = {"g2"};
  topic.candidates = {d1, d2};
  topic.judgments.set("d1", "s1", 1.0);
  topic.judgments.set("d2", "s2", 1.0);
  topic.default_ranking = {"d1", "d2"};
  fairir::validate_topic(topic);
  return topic;
}

inline fairir::GroupDistribution even_split() {
  fairir::GroupDistribution desired;
  desired.mass = {{"g1", 0.5}, {"g2", 0.5}};
  return desired;
}

inline fairir::Ranking ranking_of(std::vector<std::string> ids) {
  fairir::Ranking out;
  out.items = std::move(ids);
  return out;
}

}  // namespace support

#endif  // FAIRIR_TESTS_SUPPORT_HPP_
