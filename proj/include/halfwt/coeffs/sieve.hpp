#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace halfwt::coeffs {

/// Bit n set iff n is squarefree, for 0 <= n <= X (0 is not squarefree).
std::vector<bool> squarefree_sieve(std::size_t X);

/// Bit n set iff n is prime, for 0 <= n <= X.
std::vector<bool> prime_sieve(std::size_t X);

/// n mod 4 of the recorded residue class, (-1)^ell mod 4.
inline std::size_t recorded_residue(int ell) { return ell % 2 == 0 ? 1 : 3; }

/// Squarefree n <= X with n = (-1)^ell mod 4, ascending.
std::vector<std::uint64_t> recorded_indices(int ell, std::size_t X);

bool is_squarefree(std::uint64_t n);
bool is_prime(std::uint64_t n);

}  // namespace halfwt::coeffs
