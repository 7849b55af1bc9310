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

#include "fairir/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace fairir {

namespace {

// Two-sided p-value of r under t = r sqrt((n-2)/(1-r^2)) with n-2 df.
double p_value_for(double r, std::size_t n) {
  const double denom = 1.0 - r * r;
  if (denom <= 0.0) return 0.0;
  const double t = r * std::sqrt((static_cast<double>(n) - 2.0) / denom);
  boost::math::students_t dist(static_cast<double>(n) - 2.0);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

Correlation pearson_impl(const std::vector<double>& x,
                         const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("series lengths differ");
  if (n < 3) throw std::invalid_argument("need at least 3 pairs");

  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw std::invalid_argument("undefined correlation: zero variance");
  }
  Correlation out;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  out.p_value = p_value_for(out.r, n);
  return out;
}

// Mid-ranks: tied values share the average of the positions they span.
std::vector<double> mid_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::vector<double> MetricSeries::at_cutoff(int cutoff) const {
  std::vector<double> values;
  for (const auto& point : points) {
    if (point.cutoff == cutoff) values.push_back(point.value);
  }
  return values;
}

double aggregate(const std::vector<double>& values, Aggregate how) {
  if (values.empty()) throw std::invalid_argument("empty series");
  switch (how) {
    case Aggregate::kMean:
      return std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
    case Aggregate::kMin:
      return *std::min_element(values.begin(), values.end());
    case Aggregate::kMax:
      return *std::max_element(values.begin(), values.end());
  }
  throw std::logic_error("unknown aggregate");
}

double aggregate(const MetricSeries& series, int cutoff, Aggregate how) {
  return aggregate(series.at_cutoff(cutoff), how);
}

Correlation pearson(const std::vector<double>& x,
                    const std::vector<double>& y) {
  return pearson_impl(x, y);
}

Correlation spearman(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("series lengths differ");
  Correlation out = pearson_impl(mid_ranks(x), mid_ranks(y));
  out.approximate = x.size() < 10;
  return out;
}

std::string significance_stars(double p_value) {
  if (p_value < 0.001) return "***";
  if (p_value < 0.01) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

}  // namespace fairir
