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
#include <string>
#include <vector>

#include "fairir/io.hpp"

namespace fairir {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

struct CommandSpec {
  std::string qrels_path;
  std::string run_path;
  std::string groups_path;
  std::string out_path;  // empty = stdout

  std::string desired = "uniform";  // uniform|collection|relprop|file:PATH
  std::vector<std::string> metrics;  // empty = all supported
  std::vector<int> cutoffs = {10, 20, 50};

  double alpha = 0.5;
  double p = 0.8;
  double eta = 0.0;
  double epsilon = 0.0;
  int runs = 1;
  std::uint64_t seed = 0;
  std::string proxy;  // empty = gold judgments
  int exact_idcg_max = 10;
  std::string idcg_mode = "greedy";  // ideal subcommand: greedy|exact
  std::string format = "tsv";        // tsv|text
  std::string rankings_out;          // rerank: optional per-run ranking dump

  SyntheticSpec synth;
  std::string synth_out;  // directory for the generated files
};

// Metric names accepted by --metrics.
const std::vector<std::string>& supported_metrics();

// Scores the default rankings of the input bundle.
int run_evaluate(const CommandSpec& spec, std::ostream& out, std::ostream& err);

// Reranks with epsilon-greedy and reports per-run-averaged scores.
int run_rerank(const CommandSpec& spec, std::ostream& out, std::ostream& err);

// Scores the greedy ideal ranking (or the exact one for small pools).
int run_ideal(const CommandSpec& spec, std::ostream& out, std::ostream& err);

// Per-cutoff Pearson/Spearman of the fair metric against the others.
int run_correlate(const CommandSpec& spec, std::ostream& out, std::ostream& err);

// Writes a synthetic dataset in the interchange format.
int run_synth(const CommandSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace fairir
