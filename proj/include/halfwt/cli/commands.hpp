#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "halfwt/cli/config.hpp"
#include "halfwt/coeffs/stream.hpp"
#include "halfwt/shimura/lift.hpp"
#include "halfwt/stats/fit.hpp"

namespace halfwt::cli {

struct BuildResult {
  std::size_t dimension = 0;
  std::size_t precision = 0;
  std::vector<std::uint64_t> lift_parameters;
  std::vector<std::filesystem::path> coefficient_files;
  std::vector<shimura::LiftReport> lifts;
  std::filesystem::path report;  ///< deterministic JSON report
  std::filesystem::path timing;  ///< wall time and peak memory, not deterministic
};

/// Eigenforms of weight two_k/2, their normalized coefficients up to the
/// bound (one file per form) and lift certificates for the first
/// `lift_count` recorded t with a(t) != 0. The expansion precision is
/// max(bound + 1, t_max * lift_depth^2 + 1). Certificate failures are thrown
/// as CertificateError after the report is written.
BuildResult cmd_build(const RunConfig& cfg, std::ostream& log);

struct AnalyzeResult {
  std::vector<std::filesystem::path> outputs;
  /// "label width=w model=M: reason" for every failed or unconverged fit.
  std::vector<std::string> fit_failures;
};

/// Histograms, fits, subset and prime comparisons, sign statistics and
/// independence ratios for each coefficient file. With no files, every
/// *.coeffs file in cfg.out is analyzed. Fit failures do not stop the run.
AnalyzeResult cmd_analyze(const RunConfig& cfg, std::vector<std::filesystem::path> files, std::ostream& log);

struct ReportResult {
  bool empty = false;  ///< nothing to report
  std::filesystem::path summary;
  std::filesystem::path plots;
};

/// Aggregates the build and analysis outputs of a run directory into
/// summary.txt and plots.gp. Missing inputs raise ConfigError naming them.
ReportResult cmd_report(const std::filesystem::path& dir, std::ostream& log);

/// Runs body and maps exceptions to exit codes, printing the message to err:
/// ConfigError 2, CertificateError 3, FitFailure 4, anything else 1.
int run_guarded(const std::function<int()>& body, std::ostream& err);

/// "0.001", "0.0001", "1e-05"; used in file names.
std::string width_tag(double w);

/// Peak resident set size in bytes (0 when unavailable).
std::size_t peak_rss_bytes();

}  // namespace halfwt::cli
