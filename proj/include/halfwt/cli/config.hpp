#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "halfwt/stats/models.hpp"

namespace halfwt::cli {

/// Invalid command-line configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fit non-convergence (exit code 4); raised only after all outputs are written.
class FitFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kCertificateFailure = 3, kFitFailure = 4, kOtherError = 1 };

struct SignInterval {
  double lo = 0, hi = 0;
};

struct RunConfig {
  int two_k = 13;
  std::uint64_t bound = 1000000;
  std::vector<double> widths{0.001, 0.0001, 0.00001};
  std::vector<stats::ModelTag> models{stats::ModelTag::GGG, stats::ModelTag::GG, stats::ModelTag::Laplace,
                                      stats::ModelTag::Cauchy};
  std::size_t subsets = 1;
  bool prime_only = false;
  bool nonempty_only = false;  ///< fit occupied bins only instead of filling gaps with zeros
  std::vector<SignInterval> intervals{{0.1, 0.5}, {0.5, 1.0}, {1.0, 2.0}};
  std::filesystem::path out = "run";
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::size_t lift_depth = 500;
  std::size_t lift_count = 3;

  int ell() const { return (two_k - 1) / 2; }
};

/// Weight and bound rules of the build command.
void validate_build(const RunConfig& c);
/// Width, model, subset, interval and thread rules shared by all commands.
void validate_common(const RunConfig& c);

std::vector<double> parse_widths(const std::string& csv);
std::vector<stats::ModelTag> parse_models(const std::string& csv);
/// "lo:hi" or "lo,hi" with 0 < lo <= hi.
SignInterval parse_interval(const std::string& s);

/// "25/2(1)" -> "25_2_1"; used for file names.
std::string file_stem(const std::string& label);

/// Runs task(i) for i in [0, n) on at most `threads` workers. Results must be
/// written by index, so the outcome does not depend on scheduling. The first
/// exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace halfwt::cli
