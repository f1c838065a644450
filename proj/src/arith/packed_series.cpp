#include "halfwt/arith/packed_series.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace halfwt::arith {

static_assert(GMP_NUMB_BITS == 64, "packed series assume 64-bit limbs without nails");

namespace {

using Limb = mp_limb_t;

inline Limb read_word(const Limb* p, std::size_t n, std::size_t bit) {
  const std::size_t w = bit / 64;
  const unsigned off = bit % 64;
  const Limb lo = w < n ? p[w] : 0;
  if (off == 0) return lo;
  const Limb hi = w + 1 < n ? p[w + 1] : 0;
  return (lo >> off) | (hi << (64 - off));
}

inline bool read_bit(const Limb* p, std::size_t n, std::size_t bit) {
  const std::size_t w = bit / 64;
  return w < n && ((p[w] >> (bit % 64)) & 1) != 0;
}

// OR nbits of src (from sbit) into dst (at dbit). dst must have room.
void copy_bits(const Limb* src, std::size_t sn, std::size_t sbit, Limb* dst, std::size_t dn,
               std::size_t dbit, std::size_t nbits) {
  for (std::size_t k = 0; k < nbits; k += 64) {
    const std::size_t len = std::min<std::size_t>(64, nbits - k);
    Limb w = read_word(src, sn, sbit + k);
    if (len < 64) w &= (Limb(1) << len) - 1;
    if (w == 0) continue;
    const std::size_t pos = dbit + k;
    const std::size_t word = pos / 64;
    const unsigned off = pos % 64;
    dst[word] |= w << off;
    if (off != 0 && word + 1 < dn) dst[word + 1] |= w >> (64 - off);
  }
}

// Bit length of the field [start, start + width); only bits above `floor`
// are inspected, so the return value is 0 if the field fits in `floor` bits.
std::size_t field_bits_above(const Limb* p, std::size_t n, std::size_t start, std::size_t width,
                             std::size_t floor) {
  if (floor >= width) return 0;
  std::size_t top = width;
  while (top > floor) {
    const std::size_t chunk = std::min<std::size_t>(64, top - floor);
    const std::size_t lo = top - chunk;
    Limb w = read_word(p, n, start + lo);
    if (chunk < 64) w &= (Limb(1) << chunk) - 1;
    if (w != 0) return lo + (64 - std::countl_zero(w));
    top = lo;
  }
  return 0;
}

std::size_t limbs_for(std::size_t bits) { return std::max<std::size_t>(1, (bits + 63) / 64); }

std::size_t bit_length(const Integer& z) {
  return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::size_t limb_bit_length(const Limb* p, std::size_t len) {
  while (len > 0 && p[len - 1] == 0) --len;
  return len == 0 ? 0 : 64 * (len - 1) + (64 - std::countl_zero(p[len - 1]));
}

// Balanced-digit reader over |value|. Slot n holds d_n; with b_n the top bit
// of slot n-1, c_n = d_n + b_n - 2^s b_{n+1}.
struct DigitReader {
  const Limb* p;
  std::size_t sn;
  std::size_t slot;
  bool negative;  // sign of the packed value
  std::vector<Limb> buf;

  DigitReader(const Integer& v, std::size_t s)
      : p(mpz_limbs_read(v.get_mpz_t())), sn(mpz_size(v.get_mpz_t())), slot(s), negative(sgn(v) < 0),
        buf(limbs_for(s + 1)) {}

  // Magnitude of c_n into buf (little-endian, buf.size() limbs); returns c_n < 0.
  bool decode(std::size_t n) {
    std::fill(buf.begin(), buf.end(), Limb(0));
    const std::size_t nl = buf.size();
    const std::size_t start = n * slot;
    copy_bits(p, sn, start, buf.data(), nl, 0, slot);
    const Limb borrow_in = (n > 0 && read_bit(p, sn, start - 1)) ? 1 : 0;
    const bool top = read_bit(p, sn, start + slot - 1);
    bool neg = false;
    if (!top) {
      if (borrow_in) mpn_add_1(buf.data(), buf.data(), static_cast<mp_size_t>(nl), 1);
    } else {
      // 2^s - d - b = (~d mod 2^s) + 1 - b
      for (auto& w : buf) w = ~w;
      const std::size_t full = slot / 64;
      if (slot % 64 != 0) buf[full] &= (Limb(1) << (slot % 64)) - 1;
      for (std::size_t k = slot % 64 == 0 ? full : full + 1; k < nl; ++k) buf[k] = 0;
      if (!borrow_in) mpn_add_1(buf.data(), buf.data(), static_cast<mp_size_t>(nl), 1);
      neg = true;
    }
    return neg != negative;
  }

  std::size_t bits(std::size_t n) {
    decode(n);
    return limb_bit_length(buf.data(), buf.size());
  }
};

// Packs signed digits given by get(n, Integer&) into slots of width `slot`.
template <typename Get>
Integer pack_signed(std::size_t N, std::size_t slot, bool nonneg, Get&& get) {
  const std::size_t nl = limbs_for(N * slot);
  Integer pos, neg;
  Limb* pd = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(nl));
  std::memset(pd, 0, nl * sizeof(Limb));
  Limb* nd = nullptr;
  if (!nonneg) {
    nd = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(nl));
    std::memset(nd, 0, nl * sizeof(Limb));
  }
  for (std::size_t n = 0; n < N; ++n) {
    Limb* dst = pd;
    const auto [src, len, negative] = get(n);
    if (len == 0) continue;
    if (negative) dst = nd;
    copy_bits(src, len, 0, dst, nl, n * slot, limb_bit_length(src, len));
  }
  mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(nl));
  if (nonneg) return pos;
  mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(nl));
  mpz_sub(pos.get_mpz_t(), pos.get_mpz_t(), neg.get_mpz_t());
  return pos;
}

struct DigitView {
  const Limb* src;
  std::size_t len;
  bool negative;
};

}  // namespace

PackedSeries PackedSeries::pack(std::span<const Integer> coeffs, std::size_t slot_bits) {
  std::size_t mx = 0;
  bool nonneg = true;
  for (const auto& c : coeffs) {
    if (sgn(c) < 0) nonneg = false;
    mx = std::max(mx, bit_length(c));
  }
  if (slot_bits == 0) slot_bits = mx + 1;
  if (slot_bits < mx + 1) throw std::invalid_argument("slot width smaller than largest coefficient");

  PackedSeries out;
  out.precision_ = coeffs.size();
  out.slot_ = slot_bits;
  out.max_bits_ = mx;
  out.nonneg_ = nonneg;
  out.value_ = pack_signed(coeffs.size(), slot_bits, nonneg, [&](std::size_t n) {
    mpz_srcptr c = coeffs[n].get_mpz_t();
    return DigitView{mpz_limbs_read(c), mpz_size(c), mpz_sgn(c) < 0};
  });
  return out;
}

Integer PackedSeries::coefficient(std::size_t n) const {
  if (n >= precision_) throw PrecisionError(n + 1, precision_);
  Integer out;
  if (max_bits_ == 0) return out;
  if (nonneg_) {
    mpz_srcptr v = value_.get_mpz_t();
    const std::size_t nl = limbs_for(max_bits_);
    mpz_ptr z = out.get_mpz_t();
    Limb* dst = mpz_limbs_write(z, static_cast<mp_size_t>(nl));
    std::memset(dst, 0, nl * sizeof(Limb));
    copy_bits(mpz_limbs_read(v), mpz_size(v), n * slot_, dst, nl, 0, max_bits_);
    mpz_limbs_finish(z, static_cast<mp_size_t>(nl));
    return out;
  }
  DigitReader r(value_, slot_);
  const bool neg = r.decode(n);
  mpz_ptr z = out.get_mpz_t();
  Limb* dst = mpz_limbs_write(z, static_cast<mp_size_t>(r.buf.size()));
  std::copy(r.buf.begin(), r.buf.end(), dst);
  mpz_limbs_finish(z, static_cast<mp_size_t>(r.buf.size()));
  if (neg) mpz_neg(z, z);
  return out;
}

IntegerSeries PackedSeries::unpack(std::size_t count) const {
  if (count > precision_) throw PrecisionError(count, precision_);
  IntegerSeries out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = coefficient(n);
  return out;
}

void PackedSeries::truncate(std::size_t N) {
  const std::size_t bits = N * slot_;
  mpz_ptr z = value_.get_mpz_t();
  mpz_tdiv_r_2exp(z, z, bits);
  if (bits == 0 || mpz_sgn(z) == 0) return;
  // A borrow out of the last kept slot shows up as its top bit.
  if (read_bit(mpz_limbs_read(z), mpz_size(z), bits - 1)) {
    Integer top;
    mpz_setbit(top.get_mpz_t(), bits);
    if (mpz_sgn(z) > 0) mpz_sub(z, z, top.get_mpz_t());
    else mpz_add(z, z, top.get_mpz_t());
  }
}

PackedSeries PackedSeries::repacked(std::size_t slot_bits, std::size_t N) const {
  if (N > precision_) throw PrecisionError(N, precision_);
  if (max_bits_ > 0 && slot_bits < max_bits_ + 1) throw std::invalid_argument("repack below coefficient size");
  slot_bits = std::max<std::size_t>(1, slot_bits);
  PackedSeries out;
  out.precision_ = N;
  out.slot_ = slot_bits;
  out.max_bits_ = max_bits_;
  out.nonneg_ = nonneg_;
  if (max_bits_ == 0) return out;
  if (slot_bits == slot_) {
    out.value_ = value_;
    out.truncate(N);
    return out;
  }
  if (nonneg_) {
    const std::size_t nl = limbs_for(N * slot_bits);
    mpz_srcptr v = value_.get_mpz_t();
    const Limb* src = mpz_limbs_read(v);
    const std::size_t sn = mpz_size(v);
    mpz_ptr z = out.value_.get_mpz_t();
    Limb* dst = mpz_limbs_write(z, static_cast<mp_size_t>(nl));
    std::memset(dst, 0, nl * sizeof(Limb));
    for (std::size_t n = 0; n < N; ++n) copy_bits(src, sn, n * slot_, dst, nl, n * slot_bits, max_bits_);
    mpz_limbs_finish(z, static_cast<mp_size_t>(nl));
    return out;
  }
  DigitReader r(value_, slot_);
  out.value_ = pack_signed(N, slot_bits, false, [&](std::size_t n) {
    const bool neg = r.decode(n);
    return DigitView{r.buf.data(), r.buf.size(), neg};
  });
  return out;
}

void PackedSeries::rescan_max_bits() {
  std::size_t mx = 0;
  if (nonneg_) {
    mpz_srcptr v = value_.get_mpz_t();
    const Limb* p = mpz_limbs_read(v);
    const std::size_t sn = mpz_size(v);
    for (std::size_t n = 0; n < precision_; ++n) mx = std::max(mx, field_bits_above(p, sn, n * slot_, slot_, mx));
  } else {
    DigitReader r(value_, slot_);
    for (std::size_t n = 0; n < precision_; ++n) mx = std::max(mx, r.bits(n));
  }
  max_bits_ = mx;
}

void PackedSeries::add_scaled(const PackedSeries& other, const Integer& factor) {
  if (other.precision_ < precision_) throw PrecisionError(precision_, other.precision_);
  if (sgn(factor) == 0 || other.max_bits_ == 0) return;
  const bool term_nonneg = other.nonneg_ && sgn(factor) > 0;
  const std::size_t term = other.max_bits_ + bit_length(factor);
  const std::size_t bound = max_bits_ == 0 ? term : std::max(max_bits_, term) + 1;
  if (bound + 1 > slot_) *this = repacked(bound + 9, precision_);
  if (other.slot_ == slot_ && other.precision_ == precision_) {
    mpz_addmul(value_.get_mpz_t(), other.value_.get_mpz_t(), factor.get_mpz_t());
  } else {
    const PackedSeries o = other.repacked(slot_, precision_);
    mpz_addmul(value_.get_mpz_t(), o.value_.get_mpz_t(), factor.get_mpz_t());
  }
  nonneg_ = (max_bits_ == 0 || nonneg_) && term_nonneg;
  max_bits_ = bound;
}

PackedSeries packed_mul(const PackedSeries& a, const PackedSeries& b, std::size_t N) {
  if (N > a.precision_) throw PrecisionError(N, a.precision_);
  if (N > b.precision_) throw PrecisionError(N, b.precision_);
  if (a.max_bits_ == 0 || b.max_bits_ == 0 || N == 0) return PackedSeries::zero(N);
  // |product coefficient| < N 2^(ma + mb), plus one bit for the balanced sign.
  const std::size_t slot = a.max_bits_ + b.max_bits_ + std::bit_width(N) + 1;
  PackedSeries out;
  out.precision_ = N;
  out.slot_ = slot;
  out.nonneg_ = a.nonneg_ && b.nonneg_;
  {
    const PackedSeries ra = a.repacked(slot, N);
    if (&a == &b) {
      mpz_mul(out.value_.get_mpz_t(), ra.value_.get_mpz_t(), ra.value_.get_mpz_t());
    } else {
      const PackedSeries rb = b.repacked(slot, N);
      mpz_mul(out.value_.get_mpz_t(), ra.value_.get_mpz_t(), rb.value_.get_mpz_t());
    }
  }
  out.truncate(N);
  out.max_bits_ = slot - 1;
  out.rescan_max_bits();
  if (out.max_bits_ == 0) return PackedSeries::zero(N);
  return out.repacked(out.max_bits_ + 1, N);
}

PackedSeries packed_square(const PackedSeries& a, std::size_t N) { return packed_mul(a, a, N); }

}  // namespace halfwt::arith
