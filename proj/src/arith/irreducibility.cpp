#include "halfwt/arith/irreducibility.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <set>

#include "halfwt/arith/number_field.hpp"
#include "halfwt/arith/real_roots.hpp"

namespace halfwt::arith {

namespace {

// Polynomials over F_p, low degree first, no trailing zeros.
using Fp = std::vector<std::uint64_t>;

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Fp sub(Fp a, const Fp& b, std::uint64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Fp mul(const Fp& a, const Fp& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Fp out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  trim(out);
  return out;
}

std::pair<Fp, Fp> divmod_p(Fp a, const Fp& b, std::uint64_t p) {
  trim(a);
  if (deg(a) < deg(b)) return {{}, a};
  const std::uint64_t inv = inv_mod(b.back(), p);
  Fp q(a.size() - b.size() + 1, 0);
  for (int i = deg(a); i >= deg(b); --i) {
    const std::uint64_t c = a[static_cast<std::size_t>(i)] * inv % p;
    q[static_cast<std::size_t>(i - deg(b))] = c;
    if (c == 0) continue;
    for (int j = 0; j <= deg(b); ++j) {
      auto& slot = a[static_cast<std::size_t>(i - deg(b) + j)];
      slot = (slot + p - c * b[static_cast<std::size_t>(j)] % p) % p;
    }
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

Fp mod(const Fp& a, const Fp& f, std::uint64_t p) { return divmod_p(a, f, p).second; }

Fp gcd_p(Fp a, Fp b, std::uint64_t p) {
  while (!b.empty()) {
    Fp r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const std::uint64_t inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

Fp powmod(Fp base, std::uint64_t e, const Fp& f, std::uint64_t p) {
  Fp result{1};
  base = mod(base, f, p);
  while (e) {
    if (e & 1) result = mod(mul(result, base, p), f, p);
    base = mod(mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

Fp derivative(const Fp& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  Fp d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * (i % p) % p;
  trim(d);
  return d;
}

std::vector<unsigned long> small_primes(unsigned long limit) {
  std::vector<unsigned long> out;
  for (unsigned long n = 2; n < limit; ++n) {
    bool prime = true;
    for (unsigned long d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

}  // namespace

std::vector<int> factor_degrees_mod_p(const std::vector<Integer>& f, unsigned long p) {
  Fp g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), f[i].get_mpz_t(), p);
    g[i] = r.get_ui();
  }
  trim(g);
  if (deg(g) != static_cast<int>(f.size()) - 1 || g.empty()) return {};
  // Make monic, then require squarefree.
  const std::uint64_t inv = inv_mod(g.back(), p);
  for (auto& c : g) c = c * inv % p;
  if (deg(gcd_p(g, derivative(g, p), p)) != 0) return {};

  std::vector<int> degrees;
  Fp rest = g;
  Fp h{0, 1};  // x
  const Fp x{0, 1};
  for (int i = 1; 2 * i <= deg(rest); ++i) {
    h = powmod(h, p, rest, p);
    Fp d = gcd_p(rest, sub(h, x, p), p);
    if (deg(d) > 0) {
      for (int k = 0; k < deg(d) / i; ++k) degrees.push_back(i);
      rest = divmod_p(rest, d, p).first;
      h = mod(h, rest, p);
    }
  }
  if (deg(rest) > 0) degrees.push_back(deg(rest));
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<Rational> rational_roots(const Polynomial& f) {
  if (f.degree() < 1) return {};
  // g(y) = lc^(d-1) f(y / lc) is monic with integer coefficients; its rational
  // roots are integers y, giving roots y / lc of f.
  const std::vector<Integer> c = f.primitive_integer_coefficients();
  const int d = static_cast<int>(c.size()) - 1;
  const Integer lc = c.back();
  std::vector<Rational> g(c.size());
  for (int i = 0; i < d; ++i) {
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(d - 1 - i));
    g[static_cast<std::size_t>(i)] = Rational(c[static_cast<std::size_t>(i)] * p);
  }
  g[static_cast<std::size_t>(d)] = 1;
  const Polynomial gp(g);

  std::set<Integer> candidates;
  for (auto& root : isolate_real_roots(gp, 1)) {
    root.refine_absolute(2);
    Integer lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), root.lo.get_num_mpz_t(), root.lo.get_den_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), root.hi.get_num_mpz_t(), root.hi.get_den_mpz_t());
    for (Integer y = lo; y <= hi; ++y) candidates.insert(y);
  }
  std::vector<Rational> out;
  for (const auto& y : candidates) {
    if (gp.sign_at(Rational(y)) == 0) {
      Rational r(y, lc);
      r.canonicalize();
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IrreducibilityCertificate certify_irreducibility(const Polynomial& f) {
  if (f.degree() < 1) throw std::invalid_argument("is_irreducible: constant polynomial");
  if (f.degree() == 1) return {Irreducibility::irreducible, "degree 1"};

  const std::vector<Integer> c = f.primitive_integer_coefficients();
  const int d = f.degree();
  for (int p : kCertificatePrimes) {
    const auto degs = factor_degrees_mod_p(c, static_cast<unsigned long>(p));
    if (degs.size() == 1 && degs[0] == d)
      return {Irreducibility::irreducible, "irreducible mod " + std::to_string(p)};
  }

  const auto roots = rational_roots(f);
  if (!roots.empty())
    return {Irreducibility::reducible, "rational root " + roots.front().get_str()};
  if (d <= 3) return {Irreducibility::irreducible, "degree <= 3 without rational roots"};

  // A rational factor of degree k needs a sub-multiset of every mod-p
  // factor pattern summing to k.
  constexpr int kMaxDegree = 256;
  if (d < kMaxDegree) {
    std::bitset<kMaxDegree> possible;
    possible.set();
    std::string used;
    for (unsigned long p : small_primes(500)) {
      const auto degs = factor_degrees_mod_p(c, p);
      if (degs.empty()) continue;
      std::bitset<kMaxDegree> sums;
      sums.set(0);
      for (int k : degs) sums |= sums << static_cast<std::size_t>(k);
      possible &= sums;
      used += (used.empty() ? "" : ",") + std::to_string(p);
      bool only_trivial = true;
      for (int k = 1; k < d; ++k)
        if (possible.test(static_cast<std::size_t>(k))) only_trivial = false;
      if (only_trivial)
        return {Irreducibility::irreducible, "factor degree patterns mod " + used};
    }
  }
  return {Irreducibility::undetermined, "no certificate found"};
}

bool is_irreducible(const Polynomial& f) {
  const auto cert = certify_irreducibility(f);
  if (cert.status == Irreducibility::undetermined)
    throw IrreducibilityError("irreducibility undetermined for " + f.to_string());
  return cert.status == Irreducibility::irreducible;
}

}  // namespace halfwt::arith
