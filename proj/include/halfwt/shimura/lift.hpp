#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "halfwt/errors.hpp"
#include "halfwt/modforms/level1.hpp"

namespace halfwt::shimura {

using arith::AlgebraicNumber;
using arith::Integer;
using arith::Rational;
using modforms::HalfIntegralForm;
using modforms::Level1Eigenform;

/// Raised when the level-1 form's T_p eigenvalues differ from the
/// half-integral form's T(p^2) eigenvalues.
class PairingError : public CertificateError {
 public:
  using CertificateError::CertificateError;
};

/// J(m, d) for d >= 1: the Kronecker symbol, i.e. the Jacobi symbol extended
/// multiplicatively with J(m, 2) from the second supplement and 0 when
/// gcd(m, d) > 1.
int lift_character(long m, std::uint64_t d);

/// A_t(n) = sum_{d | n} J((-1)^ell t, d) d^(ell-1) a(t (n/d)^2) for 0 <= n <= depth
/// (A_t(0) = 0). Needs t squarefree in the recorded class and precision > t depth^2.
std::vector<AlgebraicNumber> shimura_lift(const HalfIntegralForm& f, std::uint64_t t, std::size_t depth);

struct LiftReport {
  std::string label;
  std::uint64_t t = 0;
  std::size_t depth = 0;
  /// Largest |coordinate| of A_t(n) - a(t) g(n) over n <= depth.
  Rational max_abs_discrepancy;
  /// First n with a nonzero discrepancy, 0 if none.
  std::size_t first_mismatch = 0;
  /// (p, lambda_p) compared when pairing f with g.
  std::vector<std::pair<int, AlgebraicNumber>> matched_eigenvalues;
  /// A_t(p) / A_t(1) for p = 2, 3, 5, 7 when a(t) != 0.
  std::vector<std::pair<int, AlgebraicNumber>> lift_eigenvalues;

  bool certified() const { return sgn(max_abs_discrepancy) == 0; }
};

/// Checks the T(p^2) / T_p eigenvalues for p in {3, 5} (PairingError
/// "wrong eigenform pairing" on mismatch), then compares the lift with
/// a(t) g coefficientwise.
LiftReport verify_lift(const HalfIntegralForm& f, const Level1Eigenform& g, std::uint64_t t, std::size_t depth);

/// The comparison alone, for forms that carry no eigenvalues.
LiftReport compare_lift(const HalfIntegralForm& f, const Level1Eigenform& g, std::uint64_t t, std::size_t depth);

/// The first `count` recorded indices t with a(t) != 0, searched below the
/// precision of f.
std::vector<std::uint64_t> lift_parameters(const HalfIntegralForm& f, std::size_t count = 3);

/// Precision needed to lift with the given parameters.
std::size_t lift_precision(std::uint64_t t, std::size_t depth);

/// Level-1 partner of f over f's field; throws PairingError if none matches.
Level1Eigenform level1_partner(const HalfIntegralForm& f, std::size_t N);

}  // namespace halfwt::shimura
