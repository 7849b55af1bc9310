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
#include <filesystem>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fairir/cli.hpp"
#include "support.hpp"

using namespace fairir;

namespace {

// Two relevant docs in distinct groups plus one unjudged tail doc.
struct Fixture {
  support::TempDir dir;
  CommandSpec spec;

  Fixture() {
    support::write_file(dir.file("qrels.txt"),
                        "w1 1 d1 1\n"
                        "w1 2 d2 1\n");
    support::write_file(dir.file("run.txt"),
                        "w1 Q0 d1 1 0.9 sys\n"
                        "w1 Q0 d2 2 0.8 sys\n");
    support::write_file(dir.file("groups.txt"),
                        "d1 g1\n"
                        "d2 g2\n");
    spec.qrels_path = dir.file("qrels.txt");
    spec.run_path = dir.file("run.txt");
    spec.groups_path = dir.file("groups.txt");
    spec.cutoffs = {2};
  }
};

struct Capture {
  std::ostringstream out;
  std::ostringstream err;
};

}  // namespace

TEST_CASE("evaluate produces the frozen worked-example row") {
  Fixture fx;
  fx.spec.metrics = {"fair"};
  Capture io;
  const int code = run_evaluate(fx.spec, io.out, io.err);
  CHECK(code == kExitOk);
  CHECK(io.out.str() ==
        "algorithm\tmetric\tk\tmean\tmin\tmax\texcluded\tflags\n"
        "default\tfair\t2\t0.748987\t0.748987\t0.748987\t0\t-\n");
}

TEST_CASE("evaluate covers every metric without explicit selection") {
  Fixture fx;
  Capture io;
  const int code = run_evaluate(fx.spec, io.out, io.err);
  CHECK(code == kExitOk);
  const std::string report = io.out.str();
  for (const char* name :
       {"alpha-ndcg", "ndcg", "rbp", "fair", "fair-rbp", "fair-ratio", "kl",
        "ndkl", "ndrkl", "skew-min", "skew-max", "feasibility"}) {
    CAPTURE(name);
    CHECK(report.find("default\t" + std::string(name) + "\t") !=
          std::string::npos);
  }
}

TEST_CASE("usage errors exit with code two before any work") {
  Fixture fx;
  Capture io;
  SUBCASE("unknown metric") {
    fx.spec.metrics = {"made-up"};
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitUsageError);
    CHECK(io.err.str().find("unknown metric 'made-up'") != std::string::npos);
  }
  SUBCASE("unknown desired notion") {
    fx.spec.desired = "plurality";
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitUsageError);
  }
  SUBCASE("unknown format") {
    fx.spec.format = "yaml";
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitUsageError);
  }
  SUBCASE("eta out of range") {
    fx.spec.eta = 1.0;
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitUsageError);
  }
  SUBCASE("epsilon out of range") {
    fx.spec.epsilon = 1.5;
    CHECK(run_rerank(fx.spec, io.out, io.err) == kExitUsageError);
  }
  SUBCASE("bad cutoff") {
    fx.spec.cutoffs = {0};
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitUsageError);
  }
  SUBCASE("bad ideal mode") {
    fx.spec.idcg_mode = "magic";
    CHECK(run_ideal(fx.spec, io.out, io.err) == kExitUsageError);
  }
  SUBCASE("bad proxy") {
    fx.spec.proxy = "binary-top:zero";
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitUsageError);
  }
}

TEST_CASE("data errors exit with code one") {
  Fixture fx;
  Capture io;
  SUBCASE("missing qrels") {
    fx.spec.qrels_path.clear();
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitDataError);
    CHECK(io.err.str().find("missing --qrels input") != std::string::npos);
  }
  SUBCASE("missing run") {
    fx.spec.run_path.clear();
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitDataError);
    CHECK(io.err.str().find("missing --run input") != std::string::npos);
  }
  SUBCASE("unreadable file") {
    fx.spec.qrels_path = fx.dir.file("absent.txt");
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitDataError);
    CHECK(io.err.str().find("cannot open") != std::string::npos);
  }
  SUBCASE("malformed qrels carry a line number") {
    support::write_file(fx.dir.file("qrels.txt"), "w1 1 d1\n");
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitDataError);
    CHECK(io.err.str().find("line 1") != std::string::npos);
  }
}

TEST_CASE("desired distributions come from files too") {
  Fixture fx;
  support::write_file(fx.dir.file("desired.txt"), "g1 0.8\ng2 0.2\n");
  fx.spec.desired = "file:" + fx.dir.file("desired.txt");
  fx.spec.metrics = {"ndkl"};
  Capture io;
  CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitOk);
  CHECK(io.out.str().find("ndkl") != std::string::npos);

  fx.spec.desired = "file:" + fx.dir.file("missing.txt");
  Capture io2;
  CHECK(run_evaluate(fx.spec, io2.out, io2.err) == kExitDataError);
}

TEST_CASE("collection and relprop notions resolve") {
  Fixture fx;
  fx.spec.metrics = {"fair"};
  for (const char* notion : {"collection", "relprop"}) {
    fx.spec.desired = notion;
    Capture io;
    CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitOk);
  }
}

TEST_CASE("evaluate in proxy mode works without judgments") {
  Fixture fx;
  fx.spec.qrels_path.clear();
  fx.spec.proxy = "graded-log";
  fx.spec.metrics = {"ndcg", "fair"};
  Capture io;
  const int code = run_evaluate(fx.spec, io.out, io.err);
  CHECK(code == kExitOk);
  // The proxy grades the provider order itself, so utility is perfect.
  CHECK(io.out.str().find("default\tndcg\t2\t1.000000") != std::string::npos);
}

TEST_CASE("rerank labels its algorithm with the exploration rate") {
  Fixture fx;
  fx.spec.metrics = {"fair"};
  fx.spec.epsilon = 0.25;
  fx.spec.runs = 3;
  fx.spec.seed = 11;
  Capture io;
  CHECK(run_rerank(fx.spec, io.out, io.err) == kExitOk);
  CHECK(io.out.str().find("epsilon-greedy@0.25\tfair\t2\t") !=
        std::string::npos);

  Capture again;
  CHECK(run_rerank(fx.spec, again.out, again.err) == kExitOk);
  CHECK(io.out.str() == again.out.str());
}

TEST_CASE("rerank can dump the rankings it scored") {
  Fixture fx;
  fx.spec.metrics = {"fair"};
  fx.spec.epsilon = 0.5;
  fx.spec.runs = 2;
  fx.spec.rankings_out = fx.dir.file("rankings.txt");
  Capture io;
  CHECK(run_rerank(fx.spec, io.out, io.err) == kExitOk);
  const std::string dump = support::read_file(fx.spec.rankings_out);
  CHECK(dump.find("w1 0 1 ") == 0);
  // Two runs, two docs each.
  CHECK(std::count(dump.begin(), dump.end(), '\n') == 4);
}

TEST_CASE("ideal scores its own construction as perfect") {
  Fixture fx;
  fx.spec.metrics = {"alpha-ndcg"};
  Capture greedy;
  CHECK(run_ideal(fx.spec, greedy.out, greedy.err) == kExitOk);
  CHECK(greedy.out.str().find("greedy-ideal\talpha-ndcg\t2\t1.000000") !=
        std::string::npos);

  fx.spec.idcg_mode = "exact";
  Capture exact;
  CHECK(run_ideal(fx.spec, exact.out, exact.err) == kExitOk);
  CHECK(exact.out.str().find("exact-ideal") != std::string::npos);
}

TEST_CASE("exact ideal mode refuses oversized pools at runtime") {
  support::TempDir dir;
  std::ostringstream qrels;
  for (int i = 1; i <= 15; ++i) {
    qrels << "t1 1 d" << i << " 1\n";
  }
  support::write_file(dir.file("qrels.txt"), qrels.str());
  CommandSpec spec;
  spec.qrels_path = dir.file("qrels.txt");
  spec.cutoffs = {5};
  spec.idcg_mode = "exact";
  spec.metrics = {"alpha-ndcg"};
  Capture io;
  CHECK(run_ideal(spec, io.out, io.err) == kExitDataError);
  CHECK(io.err.str().find("exact ideal DCG") != std::string::npos);
}

TEST_CASE("correlate emits the pair table") {
  SyntheticSpec synth;
  synth.topics = 12;
  synth.pool = 20;
  synth.groups = 2;
  synth.prior = {0.75, 0.25};
  synth.beta = 0.5;
  synth.base = 0.4;
  synth.seed = 3;

  support::TempDir dir;
  CommandSpec gen;
  gen.synth = synth;
  gen.synth_out = dir.path().string();
  Capture gen_io;
  REQUIRE(run_synth(gen, gen_io.out, gen_io.err) == kExitOk);

  CommandSpec spec;
  spec.qrels_path = dir.file("qrels.txt");
  spec.run_path = dir.file("run.txt");
  spec.groups_path = dir.file("groups.txt");
  spec.cutoffs = {10};
  spec.metrics = {"alpha-ndcg", "ndkl"};
  Capture io;
  CHECK(run_correlate(spec, io.out, io.err) == kExitOk);
  const std::string table = io.out.str();
  CHECK(table.find("pair\tk\tn\texcluded\tpearson_r\tpearson_p\tpearson_sig\t"
                   "spearman_rho\tspearman_p\tspearman_sig\tapprox") == 0);
  CHECK(table.find("fair~alpha-ndcg\t10\t") != std::string::npos);
  CHECK(table.find("fair~ndkl\t10\t") != std::string::npos);

  // Pairing fair with itself is legal and pins the coefficient to one.
  spec.metrics = {"fair"};
  Capture self_io;
  CHECK(run_correlate(spec, self_io.out, self_io.err) == kExitOk);
  CHECK(self_io.out.str().find("fair~fair\t10\t12\t0\t1.000000") !=
        std::string::npos);
}

TEST_CASE("correlate surfaces constant series as data errors") {
  Fixture fx;  // single topic: every series is constant
  fx.spec.metrics = {"alpha-ndcg"};
  Capture io;
  CHECK(run_correlate(fx.spec, io.out, io.err) == kExitDataError);
}

TEST_CASE("synth writes the three-file corpus") {
  support::TempDir dir;
  CommandSpec spec;
  spec.synth.topics = 3;
  spec.synth.pool = 5;
  spec.synth.groups = 2;
  spec.synth.seed = 9;
  spec.synth_out = (dir.path() / "corpus").string();
  Capture io;
  CHECK(run_synth(spec, io.out, io.err) == kExitOk);
  CHECK(io.out.str().find("wrote 3 topics") != std::string::npos);
  CHECK(std::filesystem::exists(dir.path() / "corpus" / "qrels.txt"));
  CHECK(std::filesystem::exists(dir.path() / "corpus" / "run.txt"));
  CHECK(std::filesystem::exists(dir.path() / "corpus" / "groups.txt"));

  SUBCASE("bad generator specs are usage errors") {
    spec.synth.prior = {0.4, 0.4};
    Capture bad;
    CHECK(run_synth(spec, bad.out, bad.err) == kExitUsageError);
  }
  SUBCASE("missing output directory is a usage error") {
    spec.synth_out.clear();
    Capture bad;
    CHECK(run_synth(spec, bad.out, bad.err) == kExitUsageError);
  }
}

TEST_CASE("reports can land in a file") {
  Fixture fx;
  fx.spec.metrics = {"fair"};
  fx.spec.out_path = fx.dir.file("report.tsv");
  Capture io;
  CHECK(run_evaluate(fx.spec, io.out, io.err) == kExitOk);
  CHECK(io.out.str().empty());
  const std::string report = support::read_file(fx.spec.out_path);
  CHECK(report.find("default\tfair\t2\t0.748987") != std::string::npos);

  fx.spec.format = "text";
  fx.spec.out_path = fx.dir.file("report.txt");
  Capture io2;
  CHECK(run_evaluate(fx.spec, io2.out, io2.err) == kExitOk);
  CHECK(support::read_file(fx.spec.out_path).find("algorithm") == 0);
}
