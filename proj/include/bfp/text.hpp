#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bfp {

using Symbol = std::uint8_t;

// Dense alphabet over the bytes that actually occur in a text.
// Symbol ids are assigned in first-occurrence order, so the numbering
// depends only on the input content, never on unused byte values.
class Alphabet {
 public:
  Alphabet() { byte_to_symbol_.fill(-1); }

  static Alphabet from_bytes(std::span<const std::uint8_t> data);

  std::size_t size() const { return symbol_to_byte_.size(); }

  bool contains(std::uint8_t byte) const { return byte_to_symbol_[byte] >= 0; }

  // pre: contains(byte)
  Symbol symbol_for(std::uint8_t byte) const;

  // pre: s < size()
  std::uint8_t byte_for(Symbol s) const;

  std::span<const std::uint8_t> bytes_in_symbol_order() const {
    return symbol_to_byte_;
  }

 private:
  std::array<std::int16_t, 256> byte_to_symbol_{};
  std::vector<std::uint8_t> symbol_to_byte_;
};

// An input string remapped onto its dense alphabet. Immutable after
// construction; safe for unlimited concurrent readers.
class Text {
 public:
  Text() = default;

  std::size_t size() const { return symbols_.size(); }
  std::size_t sigma() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }

  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }

  // Contiguous view of S[start..start+len). Throws std::out_of_range if the
  // range does not fit.
  std::span<const Symbol> substring(std::size_t start, std::size_t len) const;

  // Maps symbols back to the original bytes.
  std::vector<std::uint8_t> to_bytes() const;

  friend Text load_text(std::span<const std::uint8_t> bytes);

 private:
  std::vector<Symbol> symbols_;
  Alphabet alphabet_;
};

Text load_text(std::span<const std::uint8_t> bytes);
Text load_text(const std::string& str);

// Reads a whole file; throws std::runtime_error on I/O failure.
std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> data);

}  // namespace bfp
