#include "halfwt/coeffs/sieve.hpp"

namespace halfwt::coeffs {

std::vector<bool> prime_sieve(std::size_t X) {
  std::vector<bool> p(X + 1, true);
  p[0] = false;
  if (X >= 1) p[1] = false;
  for (std::size_t i = 2; i * i <= X; ++i)
    if (p[i])
      for (std::size_t j = i * i; j <= X; j += i) p[j] = false;
  return p;
}

std::vector<bool> squarefree_sieve(std::size_t X) {
  std::vector<bool> sf(X + 1, true);
  sf[0] = false;
  std::size_t r = 1;
  while ((r + 1) * (r + 1) <= X) ++r;
  const auto primes = prime_sieve(r);
  for (std::size_t p = 2; p <= r; ++p) {
    if (!primes[p]) continue;
    for (std::size_t j = p * p; j <= X; j += p * p) sf[j] = false;
  }
  return sf;
}

std::vector<std::uint64_t> recorded_indices(int ell, std::size_t X) {
  const auto sf = squarefree_sieve(X);
  std::vector<std::uint64_t> out;
  for (std::size_t n = recorded_residue(ell); n <= X; n += 4)
    if (sf[n]) out.push_back(n);
  return out;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace halfwt::coeffs
