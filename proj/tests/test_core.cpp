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

#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fairir/core.hpp"
#include "support.hpp"

using namespace fairir;

TEST_CASE("parse error carries the line number") {
  ParseError err("bad judgment 'x'", 3);
  CHECK(std::string(err.what()) == "line 3: bad judgment 'x'");
  CHECK(err.line() == 3);
}

TEST_CASE("judgments keep the last grade and drop zeros") {
  Judgments judgments;
  judgments.set("d1", "s1", 2.0);
  CHECK(judgments.grade("d1", "s1") == 2.0);
  judgments.set("d1", "s1", 1.0);
  CHECK(judgments.grade("d1", "s1") == 1.0);
  judgments.set("d1", "s1", 0.0);
  CHECK(judgments.grade("d1", "s1") == 0.0);
  CHECK(judgments.for_doc("d1").empty());
  CHECK(judgments.empty());
  CHECK(judgments.grade("dx", "s9") == 0.0);
  CHECK_THROWS_AS(judgments.set("d1", "s1", -1.0), std::invalid_argument);
}

TEST_CASE("ungrouped documents fall into the reserved group") {
  Document doc;
  doc.doc_id = "d1";
  CHECK(doc.effective_groups() == std::vector<std::string>{kUngroupedId});
  doc.groups = {"g1", "g2"};
  CHECK(doc.effective_groups() == std::vector<std::string>{"g1", "g2"});
}

TEST_CASE("relevance is the best grade across aspects") {
  Topic topic = support::worked_topic();
  topic.judgments.set("d1", "s2", 3.0);
  CHECK(topic.relevance("d1") == 3.0);
  CHECK(topic.relevance("d2") == 1.0);
  CHECK(topic.relevance("unseen") == 0.0);
}

TEST_CASE("group universe includes the reserved group when needed") {
  Topic topic = support::worked_topic();
  CHECK(topic.group_universe() == std::vector<std::string>{"g1", "g2"});
  Document loose;
  loose.doc_id = "d3";
  topic.candidates.push_back(loose);
  const auto universe = topic.group_universe();
  CHECK(std::count(universe.begin(), universe.end(), kUngroupedId) == 1);
  CHECK(universe.size() == 3);
}

TEST_CASE("topic validation rejects structural defects") {
  Topic topic = support::worked_topic();
  CHECK_NOTHROW(validate_topic(topic));

  SUBCASE("duplicate doc id") {
    topic.candidates.push_back(topic.candidates[0]);
    CHECK_THROWS_AS(validate_topic(topic), std::invalid_argument);
  }
  SUBCASE("duplicate default rank") {
    topic.candidates[0].default_rank = 1;
    topic.candidates[1].default_rank = 1;
    CHECK_THROWS_AS(validate_topic(topic), std::invalid_argument);
  }
  SUBCASE("default rank below one") {
    topic.candidates[0].default_rank = 0;
    CHECK_THROWS_AS(validate_topic(topic), std::invalid_argument);
  }
  SUBCASE("judgment for unknown doc") {
    topic.judgments.set("ghost", "s1", 1.0);
    CHECK_THROWS_AS(validate_topic(topic), std::invalid_argument);
  }
  SUBCASE("judgment for unknown aspect") {
    topic.judgments.set("d1", "s9", 1.0);
    CHECK_THROWS_AS(validate_topic(topic), std::invalid_argument);
  }
  SUBCASE("default ranking names unknown doc") {
    topic.default_ranking = {"d1", "ghost"};
    CHECK_THROWS_AS(validate_topic(topic), std::invalid_argument);
  }
  SUBCASE("default ranking repeats a doc") {
    topic.default_ranking = {"d1", "d1"};
    CHECK_THROWS_AS(validate_topic(topic), std::invalid_argument);
  }
}

TEST_CASE("distribution validation") {
  GroupDistribution dist;
  dist.mass = {{"g1", 0.25}, {"g2", 0.75}};
  CHECK_NOTHROW(validate_distribution(dist));
  CHECK(dist.at("g1") == 0.25);
  CHECK(dist.at("gx") == 0.0);
  CHECK(dist.sum() == doctest::Approx(1.0));

  SUBCASE("negative mass") {
    dist.mass["g1"] = -0.1;
    CHECK_THROWS_AS(validate_distribution(dist), std::invalid_argument);
  }
  SUBCASE("sum off by more than the tolerance") {
    dist.mass["g1"] = 0.3;
    CHECK_THROWS_AS(validate_distribution(dist), std::invalid_argument);
  }
  SUBCASE("empty") {
    dist.mass.clear();
    CHECK_THROWS_AS(validate_distribution(dist), std::invalid_argument);
  }
}

TEST_CASE("uniform distribution spreads mass evenly") {
  const auto dist = uniform_distribution({"a", "b", "c", "d"});
  CHECK(dist.mass.size() == 4);
  CHECK(dist.at("a") == doctest::Approx(0.25));
  CHECK_THROWS_AS(uniform_distribution({}), std::invalid_argument);
}

TEST_CASE("prefix state tracks fractional group credit") {
  Topic topic = support::worked_topic();
  Document both;
  both.doc_id = "d3";
  both.groups = {"g1", "g2"};
  topic.candidates.push_back(both);

  PrefixState state = make_prefix_state(topic);
  CHECK(state.depth == 0);
  CHECK_THROWS_AS(prefix_distribution(state), std::invalid_argument);

  state = append_to_prefix(state, *topic.find("d3"), topic.judgments);
  auto dist = prefix_distribution(state);
  CHECK(dist.at("g1") == doctest::Approx(0.5));
  CHECK(dist.at("g2") == doctest::Approx(0.5));

  state = append_to_prefix(state, *topic.find("d1"), topic.judgments);
  dist = prefix_distribution(state);
  CHECK(dist.at("g1") == doctest::Approx(0.75));
  CHECK(dist.at("g2") == doctest::Approx(0.25));
  CHECK(state.depth == 2);
}

TEST_CASE("desired distribution notions") {
  Topic topic = support::worked_topic();

  SUBCASE("uniform covers the universe") {
    const auto dist =
        build_desired_distribution(topic, FairnessNotion::Uniform());
    CHECK(dist.at("g1") == doctest::Approx(0.5));
    CHECK(dist.at("g2") == doctest::Approx(0.5));
  }
  SUBCASE("collection follows fractional membership") {
    Document extra;
    extra.doc_id = "d3";
    extra.groups = {"g1"};
    topic.candidates.push_back(extra);
    const auto dist =
        build_desired_distribution(topic, FairnessNotion::Collection());
    CHECK(dist.at("g1") == doctest::Approx(2.0 / 3.0));
    CHECK(dist.at("g2") == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("relevance-proportional weighs mean grades") {
    topic.judgments.set("d1", "s1", 3.0);
    const auto dist = build_desired_distribution(
        topic, FairnessNotion::RelevanceProportional());
    CHECK(dist.at("g1") == doctest::Approx(0.75));
    CHECK(dist.at("g2") == doctest::Approx(0.25));
  }
  SUBCASE("relevance-proportional needs some relevance") {
    Topic blank = support::worked_topic();
    blank.judgments = Judgments{};
    CHECK_THROWS_AS(build_desired_distribution(
                        blank, FairnessNotion::RelevanceProportional()),
                    std::runtime_error);
  }
  SUBCASE("explicit mass passes through after validation") {
    GroupDistribution mass;
    mass.mass = {{"g1", 0.9}, {"g2", 0.1}};
    const auto dist =
        build_desired_distribution(topic, FairnessNotion::Explicit(mass));
    CHECK(dist.at("g1") == doctest::Approx(0.9));
  }
  SUBCASE("explicit mass must cover the reserved group") {
    Document loose;
    loose.doc_id = "d3";
    topic.candidates.push_back(loose);
    GroupDistribution mass;
    mass.mass = {{"g1", 0.9}, {"g2", 0.1}};
    CHECK_THROWS_AS(
        build_desired_distribution(topic, FairnessNotion::Explicit(mass)),
        std::runtime_error);
  }
}

TEST_CASE("metric config guards its domain") {
  MetricConfig cfg;
  CHECK_NOTHROW(validate_metric_config(cfg));
  SUBCASE("alpha") {
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(validate_metric_config(cfg), std::invalid_argument);
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(validate_metric_config(cfg), std::invalid_argument);
  }
  SUBCASE("persistence") {
    cfg.persistence_p = 1.0;
    CHECK_THROWS_AS(validate_metric_config(cfg), std::invalid_argument);
  }
  SUBCASE("smoothing") {
    cfg.kl_smoothing_eta = 1.0;
    CHECK_THROWS_AS(validate_metric_config(cfg), std::invalid_argument);
  }
  SUBCASE("cutoffs") {
    cfg.cutoffs = {10, 0};
    CHECK_THROWS_AS(validate_metric_config(cfg), std::invalid_argument);
    cfg.cutoffs = {};
    CHECK_THROWS_AS(validate_metric_config(cfg), std::invalid_argument);
  }
}

TEST_CASE("hash and seed primitives match their references") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(1) == 0x910A2DEC89025CC1ULL);
  CHECK(fnv1a64("") == 0xCBF29CE484222325ULL);
  CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8CULL);
  CHECK(fnv1a64("q1") == 0x08D21307B572D497ULL);
}

TEST_CASE("derived seeds separate runs and topics") {
  const auto s0 = derive_seed(7, 0, "q1");
  CHECK(s0 == derive_seed(7, 0, "q1"));
  CHECK(s0 != derive_seed(7, 1, "q1"));
  CHECK(s0 != derive_seed(7, 0, "q2"));
  CHECK(s0 != derive_seed(8, 0, "q1"));
}

TEST_CASE("random topics from the generator always validate") {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 50; ++i) {
    const Topic topic = support::random_topic(rng);
    CHECK_NOTHROW(validate_topic(topic));
    CHECK(!topic.judgments.empty());
  }
}
