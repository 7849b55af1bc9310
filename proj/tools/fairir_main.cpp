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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairir/cli.hpp"

namespace {

void add_input_flags(CLI::App* cmd, fairir::CommandSpec* spec) {
  cmd->add_option("--qrels", spec->qrels_path, "graded diversity qrels file");
  cmd->add_option("--run", spec->run_path, "TREC run file");
  cmd->add_option("--groups", spec->groups_path, "docid to group sidecar");
  cmd->add_option("--desired", spec->desired,
                  "target exposure: uniform, collection, relprop, "
                  "or file:PATH");
}

void add_metric_flags(CLI::App* cmd, fairir::CommandSpec* spec) {
  cmd->add_option("--metrics", spec->metrics, "metrics to report")
      ->delimiter(',');
  cmd->add_option("--k", spec->cutoffs, "rank cutoffs")->delimiter(',');
  cmd->add_option("--alpha", spec->alpha, "novelty decay in (0,1)");
  cmd->add_option("--p", spec->p, "RBP persistence in (0,1)");
  cmd->add_option("--eta", spec->eta, "KL smoothing in [0,1)");
  cmd->add_option("--exact-idcg-max", spec->exact_idcg_max,
                  "pool ceiling for exact ideal DCG");
}

void add_output_flags(CLI::App* cmd, fairir::CommandSpec* spec) {
  cmd->add_option("--out", spec->out_path, "report path (default stdout)");
  cmd->add_option("--format", spec->format, "report format: tsv or text");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairness-aware retrieval evaluation"};
  app.require_subcommand(1);

  fairir::CommandSpec spec;

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score a run against judgments");
  add_input_flags(evaluate, &spec);
  add_metric_flags(evaluate, &spec);
  add_output_flags(evaluate, &spec);
  evaluate->add_option("--proxy", spec.proxy,
                       "judgment proxy: graded-log, binary-top:N, uniform");

  CLI::App* rerank =
      app.add_subcommand("rerank", "build fairness-aware rankings");
  add_input_flags(rerank, &spec);
  add_metric_flags(rerank, &spec);
  add_output_flags(rerank, &spec);
  rerank->add_option("--epsilon", spec.epsilon, "exploration rate in [0,1]");
  rerank->add_option("--runs", spec.runs, "randomized repetitions");
  rerank->add_option("--seed", spec.seed, "base RNG seed");
  rerank->add_option("--proxy", spec.proxy,
                     "judgment proxy: graded-log, binary-top:N, uniform");
  rerank->add_option("--rankings-out", spec.rankings_out,
                     "dump produced rankings to a file");

  CLI::App* ideal = app.add_subcommand("ideal", "score the ideal ranking");
  add_input_flags(ideal, &spec);
  add_metric_flags(ideal, &spec);
  add_output_flags(ideal, &spec);
  ideal->add_option("--mode", spec.idcg_mode, "ideal search: greedy or exact");

  CLI::App* correlate =
      app.add_subcommand("correlate", "correlate metrics across topics");
  add_input_flags(correlate, &spec);
  add_metric_flags(correlate, &spec);
  add_output_flags(correlate, &spec);

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  synth->add_option("--topics", spec.synth.topics, "topic count");
  synth->add_option("--pool", spec.synth.pool, "candidates per topic");
  synth->add_option("--groups", spec.synth.groups, "group count");
  synth->add_option("--prior", spec.synth.prior, "group membership prior")
      ->delimiter(',');
  synth->add_option("--beta", spec.synth.beta, "majority relevance bias");
  synth->add_option("--base", spec.synth.base, "base relevance rate");
  synth->add_option("--aspects-per-group", spec.synth.aspects_per_group,
                    "aspects carved per group");
  synth->add_option("--seed", spec.synth.seed, "generator seed");
  synth->add_option("--out-dir", spec.synth_out, "output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? fairir::kExitOk : fairir::kExitUsageError;
  }

  if (evaluate->parsed()) {
    return fairir::run_evaluate(spec, std::cout, std::cerr);
  }
  if (rerank->parsed()) {
    return fairir::run_rerank(spec, std::cout, std::cerr);
  }
  if (ideal->parsed()) {
    return fairir::run_ideal(spec, std::cout, std::cerr);
  }
  if (correlate->parsed()) {
    return fairir::run_correlate(spec, std::cout, std::cerr);
  }
  if (synth->parsed()) {
    return fairir::run_synth(spec, std::cout, std::cerr);
  }
  return fairir::kExitUsageError;
}
