#pragma once

#include <cstdint>
#include <map>
#include <span>

namespace halfwt::stats {

/// Sparse histogram: value x lands in bin floor(x / width); no stored bin is empty.
struct Histogram {
  double width = 0;
  std::map<std::int64_t, std::uint64_t> bins;

  double center(std::int64_t i) const { return (static_cast<double>(i) + 0.5) * width; }
  std::uint64_t total() const;
  std::uint64_t max_count() const;

  /// Adds another histogram of the same width.
  void merge(const Histogram& other);
};

Histogram histogram(std::span<const double> values, double width);

}  // namespace halfwt::stats
