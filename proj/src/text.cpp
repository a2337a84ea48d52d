#include "bfp/text.hpp"

#include <cassert>
#include <fstream>
#include <stdexcept>

namespace bfp {

Alphabet Alphabet::from_bytes(std::span<const std::uint8_t> data) {
  Alphabet a;
  for (std::uint8_t b : data) {
    if (a.byte_to_symbol_[b] < 0) {
      a.byte_to_symbol_[b] = static_cast<std::int16_t>(a.symbol_to_byte_.size());
      a.symbol_to_byte_.push_back(b);
    }
  }
  return a;
}

Symbol Alphabet::symbol_for(std::uint8_t byte) const {
  assert(contains(byte));
  return static_cast<Symbol>(byte_to_symbol_[byte]);
}

std::uint8_t Alphabet::byte_for(Symbol s) const {
  assert(s < symbol_to_byte_.size());
  return symbol_to_byte_[s];
}

std::span<const Symbol> Text::substring(std::size_t start, std::size_t len) const {
  if (start > symbols_.size() || len > symbols_.size() - start) {
    throw std::out_of_range("Text::substring: range exceeds text length");
  }
  return {symbols_.data() + start, len};
}

std::vector<std::uint8_t> Text::to_bytes() const {
  std::vector<std::uint8_t> out(symbols_.size());
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    out[i] = alphabet_.byte_for(symbols_[i]);
  }
  return out;
}

Text load_text(std::span<const std::uint8_t> bytes) {
  Text t;
  t.alphabet_ = Alphabet::from_bytes(bytes);
  t.symbols_.resize(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    t.symbols_[i] = t.alphabet_.symbol_for(bytes[i]);
  }
  return t;
}

Text load_text(const std::string& str) {
  return load_text(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(str.data()), str.size()));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  in.seekg(0, std::ios::end);
  auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(size));
  if (size > 0) in.read(reinterpret_cast<char*>(data.data()), size);
  if (!in) throw std::runtime_error("failed reading file: " + path);
  return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("failed writing file: " + path);
}

}  // namespace bfp
