#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfwt/stats/histogram.hpp"
#include "halfwt/stats/models.hpp"

namespace halfwt::stats {

struct FitResult {
  ModelTag model = ModelTag::GG;
  std::vector<double> params;
  double ssr = 0;
  double rms = 0;
  int iterations = 0;
  bool converged = false;
  std::size_t n_points = 0;
  std::size_t n_params = 0;

  const std::vector<std::string>& names() const { return parameter_names(model); }
  double param(const std::string& name) const;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  ///< on the relative SSR decrease of an accepted step
  double lambda0 = 1e-3;
  /// Also fit the empty bins between the lowest and highest occupied bin,
  /// as zero counts.
  bool fill_empty = true;
};

/// b0 = max count, c0 = mean |x| (count-weighted), a0 = 0.5, d0 = 0.01;
/// Cauchy a0 = max h^2, b0 = h^2, c0 = 1 with h the half width at half maximum.
std::vector<double> default_initial(ModelTag m, const Histogram& h);

/// Sum over stored bins of (count - model(center))^2.
double sum_squared_residuals(ModelTag m, const std::vector<double>& params, const Histogram& h);

/// sqrt(SSR / (n_points - n_params)); throws when n_points <= n_params.
double rms(double ssr, std::size_t n_points, std::size_t n_params);
double rms(const FitResult& r);

/// Levenberg-Marquardt on the nonempty bins. b and c are optimized through
/// their logarithms for GGG, GG and Laplace. Throws FitError for too few bins,
/// a non-finite start, or 20 consecutive non-finite trial steps. Hitting the
/// iteration limit returns converged = false.
FitResult fit(ModelTag m, const Histogram& h, const std::optional<std::vector<double>>& init = std::nullopt,
              const FitOptions& opt = {});

/// Fits every requested model. GG is also started from the Laplace optimum
/// (a = 1/2) and GGG from the GG optimum (d = 0), keeping whichever start
/// reaches the lower SSR, so SSR_GGG <= SSR_GG <= SSR_Laplace. Failures are
/// returned as messages instead of results.
struct ModelFit {
  ModelTag model;
  std::optional<FitResult> result;
  std::string error;
};
std::vector<ModelFit> fit_models(const Histogram& h, const std::vector<ModelTag>& models, const FitOptions& opt = {});

}  // namespace halfwt::stats
