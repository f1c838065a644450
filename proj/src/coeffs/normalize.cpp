#include "halfwt/coeffs/normalize.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "halfwt/coeffs/sieve.hpp"

namespace halfwt::coeffs {

using arith::Interval;
using arith::Integer;
using arith::Rational;

namespace {

constexpr double kValueWidth = 1e-14;
constexpr double kOutputWidth = 1e-12;
constexpr std::size_t kMaxLevel = 8;

mpfr_prec_t level_precision(std::size_t level) { return static_cast<mpfr_prec_t>(128) << level; }

}  // namespace

CoefficientEvaluator::CoefficientEvaluator(const modforms::HalfIntegralForm& f) : form_(&f) {
  if (!f.expansion) throw std::invalid_argument("normalize: form has no expansion");
}

const Interval& CoefficientEvaluator::alpha(std::size_t level) {
  while (alphas_.size() <= level) {
    const std::size_t k = alphas_.size();
    // Always refine a fresh copy so the enclosure depends only on the level.
    arith::RealEmbedding e = form_->embedding;
    e.refine_absolute(static_cast<long>(level_precision(k)) + 16);
    alphas_.emplace_back(e.lo, e.hi, level_precision(k));
  }
  return alphas_[level];
}

Interval CoefficientEvaluator::value(std::uint64_t n, bool& exact_zero) {
  const auto num = form_->expansion->numerators(n);
  exact_zero = std::all_of(num.begin(), num.end(), [](const Integer& c) { return sgn(c) == 0; });
  if (exact_zero) return Interval(Rational(0), 64);
  const unsigned long e_num = static_cast<unsigned long>(2 * form_->ell - 1);
  for (std::size_t level = 0; level <= kMaxLevel; ++level) {
    const mpfr_prec_t prec = level_precision(level);
    Interval acc(Rational(num.back()), prec);
    if (num.size() > 1) {
      const Interval& x = alpha(level);
      for (std::size_t t = num.size() - 1; t-- > 0;) acc = acc * x + Interval(Rational(num[t]), prec);
    }
    acc /= Interval::root_power(n, e_num, 4, prec);
    if (acc.relative_width() < kValueWidth) return acc;
  }
  throw NormalizationError("a(" + std::to_string(n) + ") of " + form_->label +
                           " could not be separated from zero at " + std::to_string(level_precision(kMaxLevel)) +
                           " bits");
}

CoeffStream normalize(const modforms::HalfIntegralForm& f, std::size_t X, unsigned threads) {
  if (f.precision() <= X)
    throw arith::PrecisionError(X + 1, f.precision());
  CoeffStream s;
  s.label = f.label;
  s.two_k = f.two_k;
  s.ell = f.ell;
  s.bound = X;
  const auto idx = recorded_indices(f.ell, X);
  if (idx.empty()) return s;

  CoefficientEvaluator first(f);
  bool zero = false;
  const Interval b0 = first.value(idx.front(), zero);
  if (zero)
    throw NormalizationError("normalization index undefined: a(" + std::to_string(idx.front()) + ") = 0 for " +
                             f.label);

  s.entries.resize(idx.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    CoefficientEvaluator ev(f);
    for (std::size_t i = begin; i < end; ++i) {
      bool z = false;
      Interval v = ev.value(idx[i], z);
      s.entries[i].n = idx[i];
      if (z) continue;
      v /= b0;
      if (v.relative_width() >= kOutputWidth)
        throw NormalizationError("b(" + std::to_string(idx[i]) + ") not certified to 10 digits");
      s.entries[i].b = v.mid();
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(idx.size() / 1024 + 1)));
  if (threads == 1) {
    work(0, idx.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (idx.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(idx.size(), t * chunk), end = std::min(idx.size(), begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  s.entries.front().b = 1.0;
  return s;
}

}  // namespace halfwt::coeffs
