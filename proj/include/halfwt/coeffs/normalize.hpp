#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "halfwt/coeffs/stream.hpp"
#include "halfwt/modforms/eigenforms.hpp"

namespace halfwt::coeffs {

class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certified real values of a(n) / n^((2 ell - 1)/4) under the form's
/// embedding, up to one positive constant common to all n (the expansion
/// denominator). Each value is tightened until its relative width is below
/// 1e-14; exact zeros stay exact. Results do not depend on call order.
class CoefficientEvaluator {
 public:
  explicit CoefficientEvaluator(const modforms::HalfIntegralForm& f);

  /// Enclosure of the scaled b(n); exact_zero is set when a(n) = 0 exactly.
  arith::Interval value(std::uint64_t n, bool& exact_zero);

 private:
  const arith::Interval& alpha(std::size_t level);

  const modforms::HalfIntegralForm* form_;
  std::vector<arith::Interval> alphas_;  // generator enclosure at 128 << level bits
};

/// b(n) at every recorded index n <= X, scaled so the first entry is exactly 1.
/// threads > 1 splits the index range; the output does not depend on it.
CoeffStream normalize(const modforms::HalfIntegralForm& f, std::size_t X, unsigned threads = 1);

}  // namespace halfwt::coeffs
