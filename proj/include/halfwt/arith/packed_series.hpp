#pragma once

// Kronecker-packed integer series.
//
// A PackedSeries with slot width s and precision N stores
//     value = sum_{n < N} c_n * 2^(s*n),     |c_n| < 2^(s-1),
// as a single GMP integer. Coefficients may be negative: the slots then hold
// balanced digits, and c_n is recovered from its own slot plus the top bit of
// the slot below. Multiplying two packed values with a wide enough slot is the
// truncated series product, so the large theta/F expansions never leave GMP's
// FFT multiplication. Coefficients are read back on demand, one slot at a time.

#include <cstddef>
#include <vector>

#include "halfwt/arith/series.hpp"

namespace halfwt::arith {

class PackedSeries {
 public:
  PackedSeries() = default;

  /// Zero series of the given precision.
  static PackedSeries zero(std::size_t precision) {
    PackedSeries s;
    s.precision_ = precision;
    return s;
  }

  /// slot_bits == 0 picks the tightest width (largest bit length + 1).
  static PackedSeries pack(std::span<const Integer> coeffs, std::size_t slot_bits = 0);
  static PackedSeries pack(const IntegerSeries& s, std::size_t slot_bits = 0) {
    return pack(s.coefficients(), slot_bits);
  }

  std::size_t precision() const noexcept { return precision_; }
  std::size_t slot_bits() const noexcept { return slot_; }
  /// Upper bound on the bit length of every |c_n|.
  std::size_t max_bits() const noexcept { return max_bits_; }
  std::size_t bytes() const { return mpz_size(value_.get_mpz_t()) * sizeof(mp_limb_t); }

  Integer coefficient(std::size_t n) const;
  IntegerSeries unpack(std::size_t count) const;

  /// Same coefficients, first N of them, in slots of the given width.
  PackedSeries repacked(std::size_t slot_bits, std::size_t N) const;
  PackedSeries repacked(std::size_t slot_bits) const { return repacked(slot_bits, precision_); }

  /// this += factor * other, widening the slot when the bound requires it.
  /// other must carry at least precision() terms.
  void add_scaled(const PackedSeries& other, const Integer& factor);

  /// Recomputes max_bits() by scanning every slot.
  void rescan_max_bits();

  friend PackedSeries packed_mul(const PackedSeries& a, const PackedSeries& b, std::size_t N);
  friend PackedSeries packed_square(const PackedSeries& a, std::size_t N);

 private:
  /// Drops slots >= N and any borrow left above them.
  void truncate(std::size_t N);

  Integer value_;
  std::size_t precision_ = 0;
  std::size_t slot_ = 1;
  std::size_t max_bits_ = 0;
  bool nonneg_ = true;  ///< every c_n >= 0 (slots are then plain fields)
};

}  // namespace halfwt::arith
