#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace halfwt::stats {

struct SignReport {
  std::uint64_t n_pos = 0, n_neg = 0, n_zero = 0;
  /// n_pos / (n_pos + n_neg); empty when no value is nonzero.
  std::optional<double> pos_fraction;
};

SignReport sign_report(std::span<const double> values);

/// Wilson score interval for k successes in n trials (z = 1.96 for 95%).
struct Proportion {
  std::uint64_t successes = 0, trials = 0;
  double ratio = 0, lo = 0, hi = 0;
  bool contains(double p) const { return lo <= p && p <= hi; }
};
Proportion wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Share of positive values among those with |v| in [alpha, beta]; empty
/// when no value falls in the interval. Requires 0 < alpha <= beta.
std::optional<Proportion> independence_ratio(std::span<const double> values, double alpha, double beta);

}  // namespace halfwt::stats
