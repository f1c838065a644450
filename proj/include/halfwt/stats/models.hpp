#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfwt::stats {

enum class ModelTag { GGG, GG, Laplace, Cauchy };

/// GGG(a,b,c,d) = b exp(-(d + x^2)^a / c)
/// GG(a,b,c)    = b exp(-(x^2)^a / c)
/// Laplace(b,c) = b exp(-|x| / c)
/// Cauchy(a,b,c) = a / (b + (c x)^2)
inline constexpr ModelTag kAllModels[] = {ModelTag::GGG, ModelTag::GG, ModelTag::Laplace, ModelTag::Cauchy};

std::string to_string(ModelTag m);
/// Accepts the tags as printed ("GGG", "GG", "Laplace", "Cauchy"), case-insensitive.
ModelTag parse_model(const std::string& s);
const std::vector<std::string>& parameter_names(ModelTag m);
inline std::size_t parameter_count(ModelTag m) { return parameter_names(m).size(); }

class ModelDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws ModelDomainError outside the domain (c <= 0 for GGG/GG/Laplace,
/// b <= 0 for Cauchy, a negative or 0^a with a <= 0 base in GGG/GG).
double model_eval(ModelTag m, std::span<const double> params, double x);

}  // namespace halfwt::stats
