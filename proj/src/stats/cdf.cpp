#include "halfwt/stats/cdf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace halfwt::stats {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double eps, int depth) {
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm), right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * eps) return left + right + delta / 15;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, eps / 2, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, eps / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps, int max_depth) {
  if (a == b) return 0;
  const double m = (a + b) / 2, fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, eps, max_depth);
}

ModelDistribution::ModelDistribution(ModelTag m, std::vector<double> params) : model_(m), params_(std::move(params)) {
  if (params_.size() != parameter_count(m)) throw std::invalid_argument("ModelDistribution: wrong parameter count");
  const auto fail = [&](const std::string& why) {
    throw NormalizationDomainError(to_string(m) + " is not normalizable: " + why);
  };
  switch (m) {
    case ModelTag::GGG:
      if (params_[3] < 0) fail("d < 0");
      [[fallthrough]];
    case ModelTag::GG:
      if (!(params_[0] > 0)) fail("a <= 0");
      if (!(params_[1] > 0)) fail("b <= 0");
      if (!(params_[2] > 0)) fail("c <= 0");
      break;
    case ModelTag::Laplace:
      if (!(params_[0] > 0) || !(params_[1] > 0)) fail("b or c <= 0");
      break;
    case ModelTag::Cauchy:
      if (!(params_[0] > 0) || !(params_[1] > 0) || params_[2] == 0) fail("need a > 0, b > 0, c != 0");
      z_ = params_[0] * std::numbers::pi / (std::fabs(params_[2]) * std::sqrt(params_[1]));
      return;
  }
  // Symmetric, decreasing in |x|: grow the radius until the density is negligible.
  const double peak = model_eval(m, params_, 0.0);
  radius_ = 1;
  while (model_eval(m, params_, radius_) > 1e-18 * peak && radius_ < 1e6) radius_ *= 2;
  const auto f = [&](double x) { return model_eval(model_, params_, x); };
  const double coarse = adaptive_simpson(f, 0, radius_, 1e-3 * peak * radius_);
  z_ = 2 * adaptive_simpson(f, 0, radius_, 1e-10 * coarse);
  if (!(z_ > 0) || !std::isfinite(z_)) fail("integral is not finite and positive");
}

double ModelDistribution::density(double x) const { return model_eval(model_, params_, x) / z_; }

double ModelDistribution::mass(double a, double b) const {
  if (b <= a) return 0;
  if (model_ == ModelTag::Cauchy) return cdf(b) - cdf(a);
  a = std::max(a, -radius_);
  b = std::min(b, radius_);
  if (b <= a) return 0;
  const auto f = [&](double x) { return model_eval(model_, params_, x); };
  // Split at 0, where GG with a < 1/2 has a cusp.
  if (a < 0 && b > 0) return mass(a, 0) + mass(0, b);
  return adaptive_simpson(f, a, b, 1e-10 * z_) / z_;
}

double ModelDistribution::cdf(double x) const {
  if (model_ == ModelTag::Cauchy) {
    const double s = std::fabs(params_[2]) / std::sqrt(params_[1]);
    return 0.5 + std::atan(s * x) / std::numbers::pi;
  }
  if (x <= 0) return 0.5 - mass(x, 0);
  return 0.5 + mass(0, x);
}

double cdf_distance(std::span<const double> values, const ModelDistribution& dist) {
  if (values.empty()) throw std::invalid_argument("cdf_distance: no values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double F = 0, D = 0;
  std::size_t groups = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;  // ties move the empirical CDF together
    // Integrate between neighbours, resynchronizing now and then so the
    // quadrature errors do not pile up.
    F = (groups++ % 4096 == 0) ? dist.cdf(v[i]) : F + dist.mass(v[i - 1], v[i]);
    D = std::max({D, F - static_cast<double>(i) / n, static_cast<double>(j) / n - F});
    i = j;
  }
  return D;
}

double cdf_distance(std::span<const double> values, const FitResult& fit) {
  return cdf_distance(values, ModelDistribution(fit.model, fit.params));
}

}  // namespace halfwt::stats
