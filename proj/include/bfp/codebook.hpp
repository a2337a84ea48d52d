#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bfp/bitstream.hpp"

namespace bfp {

// Canonical prefix code over a set of symbol ids. Code lengths come from a
// deterministic Huffman construction; codes are then reassigned in
// canonical order (by length, ties by ascending symbol id), which is what
// makes the C'/L serialization compact.
//
// A single-symbol book gets a 1-bit code so the payload stays
// self-delimiting.
class CodeBook {
 public:
  struct Entry {
    std::uint32_t symbol = 0;
    std::uint8_t length = 0;
    std::uint64_t code = 0;  // numeric value, MSB-first when written
  };

  // freqs: (symbol id, count) pairs, counts >= 1, ids strictly increasing.
  static CodeBook build(std::span<const std::pair<std::uint32_t, std::uint64_t>> freqs);

  std::size_t symbol_count() const { return by_canonical_.size(); }

  // Symbols in code order (the L list).
  std::vector<std::uint32_t> canonical_symbols() const;

  const Entry& entry_for(std::uint32_t symbol) const;

  void encode_symbol(BitWriter& w, std::uint32_t symbol) const;
  std::uint32_t decode_symbol(BitReader& r) const;

  std::uint64_t total_bits(
      std::span<const std::pair<std::uint32_t, std::uint64_t>> freqs) const;

  // Kraft sum as numerator over 2^64 would overflow; expose it scaled:
  // sum of 2^(max_len - len_i), to compare against 2^max_len.
  std::uint64_t kraft_scaled(std::uint8_t* max_len_out) const;

  // Dictionary serialization: delta-coded sorted 1-prefixed code numbers
  // (C'), then the symbol order L as signed deltas.
  void encode(BitWriter& w) const;
  static CodeBook decode(BitReader& r, std::size_t symbol_count,
                         std::uint64_t id_space);

  // The C' half alone; the H1 dictionary interleaves C' lists per context
  // and concatenates the symbol orders separately.
  void encode_code_numbers(BitWriter& w) const;
  static std::vector<std::uint8_t> decode_code_lengths(BitReader& r,
                                                       std::size_t symbol_count);

  // Assembles a book from already-canonical code lengths plus the symbol
  // order; used by the archive decoder.
  static CodeBook from_canonical(std::span<const std::uint8_t> lengths,
                                 std::span<const std::uint32_t> symbols_in_code_order);

 private:
  void build_decode_tables();

  std::vector<Entry> by_canonical_;           // sorted by (length, code)
  std::vector<std::uint32_t> symbol_index_;   // sorted ids -> canonical slot
  std::vector<std::uint32_t> sorted_symbols_;
  // Per-length decode tables (index = code length).
  std::vector<std::uint64_t> first_code_;
  std::vector<std::uint32_t> first_slot_;
  std::vector<std::uint32_t> length_count_;
  std::uint8_t max_length_ = 0;
};

}  // namespace bfp
