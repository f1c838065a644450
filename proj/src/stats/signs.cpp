#include "halfwt/stats/signs.hpp"

#include <cmath>
#include <stdexcept>

namespace halfwt::stats {

SignReport sign_report(std::span<const double> values) {
  SignReport r;
  for (double v : values) {
    if (v > 0) ++r.n_pos;
    else if (v < 0) ++r.n_neg;
    else ++r.n_zero;
  }
  if (r.n_pos + r.n_neg > 0)
    r.pos_fraction = static_cast<double>(r.n_pos) / static_cast<double>(r.n_pos + r.n_neg);
  return r;
}

Proportion wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
  Proportion p;
  p.successes = successes;
  p.trials = trials;
  const double n = static_cast<double>(trials), phat = static_cast<double>(successes) / n;
  p.ratio = phat;
  const double z2 = z * z, denom = 1 + z2 / n;
  const double center = (phat + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
  p.lo = std::max(0.0, center - half);
  p.hi = std::min(1.0, center + half);
  return p;
}

std::optional<Proportion> independence_ratio(std::span<const double> values, double alpha, double beta) {
  if (!(alpha > 0) || !(alpha <= beta)) throw std::invalid_argument("independence_ratio: need 0 < alpha <= beta");
  std::uint64_t pos = 0, all = 0;
  for (double v : values) {
    const double a = std::fabs(v);
    if (a < alpha || a > beta) continue;
    ++all;
    if (v > 0) ++pos;
  }
  if (all == 0) return std::nullopt;
  return wilson_interval(pos, all);
}

}  // namespace halfwt::stats
