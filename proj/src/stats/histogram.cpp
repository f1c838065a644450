#include "halfwt/stats/histogram.hpp"

#include <cmath>
#include <stdexcept>

namespace halfwt::stats {

std::uint64_t Histogram::total() const {
  std::uint64_t t = 0;
  for (const auto& [i, c] : bins) t += c;
  return t;
}

std::uint64_t Histogram::max_count() const {
  std::uint64_t m = 0;
  for (const auto& [i, c] : bins) m = std::max(m, c);
  return m;
}

void Histogram::merge(const Histogram& other) {
  if (other.width != width) throw std::invalid_argument("histogram merge: widths differ");
  for (const auto& [i, c] : other.bins) bins[i] += c;
}

Histogram histogram(std::span<const double> values, double width) {
  if (!(width > 0) || !std::isfinite(width)) throw std::invalid_argument("histogram: width must be positive");
  Histogram h;
  h.width = width;
  for (double x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("histogram: non-finite value");
    ++h.bins[static_cast<std::int64_t>(std::floor(x / width))];
  }
  return h;
}

}  // namespace halfwt::stats
