// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Small order-independent reductions used by the Monte-Carlo sweeps.
#pragma once

#include <span>
#include <vector>

namespace anderson::stats {

/// Pairwise (cascade) summation; the result depends only on the element order.
double pairwise_sum(std::span<const double> x);
double mean(std::span<const double> x);
/// Unbiased sample variance.
double variance(std::span<const double> x);
/// Standard error of the mean, sqrt(variance / n).
double standard_error(std::span<const double> x);
double median(std::vector<double> x);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
/// Ordinary least squares y ~ slope x + intercept.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace anderson::stats
