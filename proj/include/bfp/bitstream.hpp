#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfp {

// Raised when a serialized stream is malformed or truncated.
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

using uint128 = unsigned __int128;

// Append-only bit buffer, MSB-first within each byte.
class BitWriter {
 public:
  void put_bit(bool bit) {
    const std::size_t byte = bits_ / 8;
    if (byte == buf_.size()) buf_.push_back(0);
    if (bit) buf_[byte] |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
  }

  // Writes the low `count` bits of value, most significant first.
  void put_bits(std::uint64_t value, unsigned count);
  void put_bits_u128(uint128 value, unsigned count);

  // Elias Delta code of v >= 1.
  void put_delta(std::uint64_t v) { put_delta_u128(v); }
  void put_delta_u128(uint128 v);

  void align_to_byte() { bits_ = (bits_ + 7) / 8 * 8; }

  // Appends another writer's content; both must be byte-aligned.
  void append_aligned(const BitWriter& other);

  std::uint64_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return buf_; }
  std::vector<std::uint8_t> take() && { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
  std::uint64_t bits_ = 0;
};

// Cursor over a bit window [begin_bit, end_bit) of a byte buffer.
// Reads past the window throw format_error.
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> data, std::uint64_t begin_bit,
            std::uint64_t end_bit)
      : data_(data), pos_(begin_bit), end_(end_bit) {}
  explicit BitReader(std::span<const std::uint8_t> data)
      : BitReader(data, 0, static_cast<std::uint64_t>(data.size()) * 8) {}

  bool get_bit() {
    if (pos_ >= end_) throw format_error("bit stream truncated");
    const bool bit = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
  }

  std::uint64_t get_bits(unsigned count);
  uint128 get_bits_u128(unsigned count);

  std::uint64_t get_delta();
  uint128 get_delta_u128();

  void align_to_byte() { pos_ = std::min(end_, (pos_ + 7) / 8 * 8); }

  void skip(std::uint64_t nbits) {
    if (nbits > end_ - pos_) throw format_error("bit stream truncated");
    pos_ += nbits;
  }

  std::uint64_t position() const { return pos_; }
  std::uint64_t end() const { return end_; }
  bool exhausted() const { return pos_ >= end_; }

 private:
  std::span<const std::uint8_t> data_;
  std::uint64_t pos_;
  std::uint64_t end_;
};

// Number of bits Elias Delta uses for v.
unsigned delta_bit_length(uint128 v);

// Sign-then-magnitude gap coding: one sign bit (1 = negative), then the
// Elias Delta code of |gap|, shifted by one when a zero gap must be
// representable.
void put_signed_gap(BitWriter& w, std::int64_t gap, bool allow_zero);
std::int64_t get_signed_gap(BitReader& r, bool allow_zero);

}  // namespace bfp
