#include "halfwt/stats/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace halfwt::stats {

std::string to_string(ModelTag m) {
  switch (m) {
    case ModelTag::GGG: return "GGG";
    case ModelTag::GG: return "GG";
    case ModelTag::Laplace: return "Laplace";
    case ModelTag::Cauchy: return "Cauchy";
  }
  return "?";
}

ModelTag parse_model(const std::string& s) {
  std::string low = s;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  for (ModelTag m : kAllModels) {
    std::string name = to_string(m);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == low) return m;
  }
  throw std::invalid_argument("unknown model '" + s + "' (expected GGG, GG, Laplace or Cauchy)");
}

const std::vector<std::string>& parameter_names(ModelTag m) {
  static const std::vector<std::string> ggg{"a", "b", "c", "d"}, gg{"a", "b", "c"}, laplace{"b", "c"},
      cauchy{"a", "b", "c"};
  switch (m) {
    case ModelTag::GGG: return ggg;
    case ModelTag::GG: return gg;
    case ModelTag::Laplace: return laplace;
    case ModelTag::Cauchy: return cauchy;
  }
  return ggg;
}

namespace {

// b exp(-(d + x^2)^a / c); the power is sqrt for a = 1/2 so that GG(1/2)
// and Laplace agree bit for bit.
double generalized_gaussian(double a, double b, double c, double d, double x) {
  if (!(c > 0)) throw ModelDomainError("scale c must be positive, got " + std::to_string(c));
  const double base = d + x * x;
  if (base < 0) throw ModelDomainError("d + x^2 is negative");
  double p;
  if (base == 0) {
    if (!(a > 0)) throw ModelDomainError("0^a needs a > 0");
    p = 0;
  } else {
    p = a == 0.5 ? std::sqrt(base) : std::pow(base, a);
  }
  return b * std::exp(-p / c);
}

}  // namespace

double model_eval(ModelTag m, std::span<const double> params, double x) {
  if (params.size() != parameter_count(m))
    throw std::invalid_argument(to_string(m) + " takes " + std::to_string(parameter_count(m)) + " parameters");
  switch (m) {
    case ModelTag::GGG: return generalized_gaussian(params[0], params[1], params[2], params[3], x);
    case ModelTag::GG: return generalized_gaussian(params[0], params[1], params[2], 0.0, x);
    case ModelTag::Laplace:
      if (!(params[1] > 0)) throw ModelDomainError("scale c must be positive, got " + std::to_string(params[1]));
      return params[0] * std::exp(-std::fabs(x) / params[1]);
    case ModelTag::Cauchy: {
      if (!(params[1] > 0)) throw ModelDomainError("Cauchy b must be positive, got " + std::to_string(params[1]));
      const double cx = params[2] * x;
      return params[0] / (params[1] + cx * cx);
    }
  }
  return 0;
}

}  // namespace halfwt::stats
