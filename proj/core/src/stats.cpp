// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/stats.hpp"

#include <algorithm>
#include <cmath>

#include "anderson/error.hpp"

namespace anderson::stats {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double mean(std::span<const double> x) {
  require(!x.empty(), ErrorKind::InvalidArgument, "mean of empty sample");
  return pairwise_sum(x) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  require(x.size() >= 2, ErrorKind::InvalidArgument, "variance needs two values");
  const double m = mean(x);
  std::vector<double> sq(x.size());
  std::transform(x.begin(), x.end(), sq.begin(), [m](double v) { return (v - m) * (v - m); });
  return pairwise_sum(sq) / static_cast<double>(x.size() - 1);
}

double standard_error(std::span<const double> x) {
  return std::sqrt(variance(x) / static_cast<double>(x.size()));
}

double median(std::vector<double> x) {
  require(!x.empty(), ErrorKind::InvalidArgument, "median of empty sample");
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  return n % 2 == 1 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidArgument,
          "least_squares needs two or more matching points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, ErrorKind::InvalidArgument, "least_squares needs distinct x");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace anderson::stats
