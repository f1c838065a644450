#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "halfwt/stats/fit.hpp"

namespace halfwt::stats {

class NormalizationDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive Simpson quadrature of f over [a, b] to absolute error eps.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps, int max_depth = 50);

/// The fitted model rescaled to a probability density.
class ModelDistribution {
 public:
  /// Throws NormalizationDomainError if the model is not a finite positive
  /// density (e.g. b <= 0, or d < 0 in GGG).
  ModelDistribution(ModelTag m, std::vector<double> params);

  double density(double x) const;
  double cdf(double x) const;
  /// Mass between a <= b, relative accuracy about 1e-8.
  double mass(double a, double b) const;
  double normalizer() const { return z_; }

 private:
  ModelTag model_;
  std::vector<double> params_;
  double z_ = 1;
  double radius_ = 1;  // the density is negligible outside [-radius, radius]
};

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `values` and the normalized fitted model.
double cdf_distance(std::span<const double> values, const FitResult& fit);
double cdf_distance(std::span<const double> values, const ModelDistribution& dist);

}  // namespace halfwt::stats
