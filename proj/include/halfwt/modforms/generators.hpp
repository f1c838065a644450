#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "halfwt/arith/series.hpp"

namespace halfwt::modforms {

using arith::ExactSeries;
using arith::Integer;
using arith::IntegerSeries;
using arith::Rational;

enum class GeneratorKind { theta, F, E4, E6, Delta };

std::string to_string(GeneratorKind kind);

struct GeneratorSeries {
  GeneratorKind kind;
  ExactSeries series;
};

/// sigma_k(n) for 0 <= n < N (sigma_k(0) = 0), by a divisor sieve.
std::vector<Integer> divisor_sigma(unsigned k, std::size_t N);
/// sigma_1(n) for n < N in machine integers (fits for N < 2^40).
std::vector<std::uint64_t> divisor_sigma1(std::size_t N);

/// 1 + 2 sum_{m >= 1} q^(m^2)
IntegerSeries theta_series(std::size_t N);
/// sum_{n odd} sigma_1(n) q^n, weight 2 on Gamma0(4)
IntegerSeries f_series(std::size_t N);
IntegerSeries eisenstein_e4(std::size_t N);
IntegerSeries eisenstein_e6(std::size_t N);
/// (E4^3 - E6^2) / 1728
IntegerSeries delta_series(std::size_t N);

GeneratorSeries generator(GeneratorKind kind, std::size_t N);

}  // namespace halfwt::modforms
