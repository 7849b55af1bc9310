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

#include <string>
#include <vector>

namespace fairir {

// Per-topic values of one metric at one or more cutoffs.
struct MetricSeries {
  struct Point {
    std::string topic_id;
    int cutoff = 0;
    double value = 0.0;
  };
  std::string metric;
  std::vector<Point> points;

  std::vector<double> at_cutoff(int cutoff) const;
};

enum class Aggregate { kMean, kMin, kMax };

double aggregate(const std::vector<double>& values, Aggregate how);
double aggregate(const MetricSeries& series, int cutoff, Aggregate how);

struct Correlation {
  double r = 0.0;        // coefficient (rho for the rank variant)
  double p_value = 1.0;  // two-sided, t approximation with n-2 df
  bool approximate = false;
};

// Sample Pearson correlation. Throws std::invalid_argument for n < 3 or a
// zero-variance series ("undefined correlation").
Correlation pearson(const std::vector<double>& x, const std::vector<double>& y);

// Spearman rank correlation: Pearson of mid-ranks. The p-value uses the same
// t approximation and is flagged approximate for n < 10.
Correlation spearman(const std::vector<double>& x, const std::vector<double>& y);

// "***" p < .001, "**" p < .01, "*" p < .05, "" otherwise.
std::string significance_stars(double p_value);

}  // namespace fairir
