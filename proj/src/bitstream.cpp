#include "bfp/bitstream.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace bfp {

namespace {

unsigned bit_width_u128(uint128 v) {
  unsigned w = 0;
  while (v) {
    ++w;
    v >>= 1;
  }
  return w;
}

}  // namespace

void BitWriter::put_bits(std::uint64_t value, unsigned count) {
  assert(count <= 64);
  for (unsigned i = count; i > 0; --i) {
    put_bit((value >> (i - 1)) & 1u);
  }
}

void BitWriter::put_bits_u128(uint128 value, unsigned count) {
  assert(count <= 128);
  for (unsigned i = count; i > 0; --i) {
    put_bit(static_cast<bool>((value >> (i - 1)) & 1u));
  }
}

void BitWriter::put_delta_u128(uint128 v) {
  assert(v >= 1);
  const unsigned n = bit_width_u128(v);           // length of v in bits
  const unsigned ln = bit_width_u128(n);          // length of n in bits
  for (unsigned i = 1; i < ln; ++i) put_bit(false);
  put_bits(n, ln);
  put_bits_u128(v, n - 1);  // v without its leading 1 bit
}

void BitWriter::append_aligned(const BitWriter& other) {
  assert(bits_ % 8 == 0 && other.bits_ % 8 == 0);
  buf_.insert(buf_.end(), other.buf_.begin(), other.buf_.end());
  bits_ += other.bits_;
}

std::uint64_t BitReader::get_bits(unsigned count) {
  assert(count <= 64);
  std::uint64_t value = 0;
  for (unsigned i = 0; i < count; ++i) {
    value = (value << 1) | static_cast<std::uint64_t>(get_bit());
  }
  return value;
}

uint128 BitReader::get_bits_u128(unsigned count) {
  assert(count <= 128);
  uint128 value = 0;
  for (unsigned i = 0; i < count; ++i) {
    value = (value << 1) | static_cast<unsigned>(get_bit());
  }
  return value;
}

uint128 BitReader::get_delta_u128() {
  unsigned zeros = 0;
  while (!get_bit()) {
    if (++zeros > 7) throw format_error("Elias Delta length overflow");
  }
  // The leading 1 just consumed starts the binary representation of n.
  std::uint64_t n = 1;
  for (unsigned i = 0; i < zeros; ++i) {
    n = (n << 1) | static_cast<std::uint64_t>(get_bit());
  }
  if (n > 128) throw format_error("Elias Delta value overflow");
  uint128 v = uint128{1} << (n - 1);
  v |= get_bits_u128(static_cast<unsigned>(n - 1));
  return v;
}

std::uint64_t BitReader::get_delta() {
  const uint128 v = get_delta_u128();
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw format_error("Elias Delta value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

unsigned delta_bit_length(uint128 v) {
  assert(v >= 1);
  const unsigned n = bit_width_u128(v);
  const unsigned ln = bit_width_u128(n);
  return (ln - 1) + ln + (n - 1);
}

void put_signed_gap(BitWriter& w, std::int64_t gap, bool allow_zero) {
  assert(allow_zero || gap != 0);
  const bool negative = gap < 0;
  w.put_bit(negative);
  const std::uint64_t mag =
      negative ? static_cast<std::uint64_t>(-gap) : static_cast<std::uint64_t>(gap);
  w.put_delta(mag + (allow_zero ? 1 : 0));
}

std::int64_t get_signed_gap(BitReader& r, bool allow_zero) {
  const bool negative = r.get_bit();
  std::uint64_t mag = r.get_delta();
  if (allow_zero) mag -= 1;
  if (mag > (std::uint64_t{1} << 62)) throw format_error("signed gap out of range");
  const auto v = static_cast<std::int64_t>(mag);
  return negative ? -v : v;
}

}  // namespace bfp
