#include <doctest.h>

#include <map>
#include <random>

#include "bfp/codebook.hpp"
#include "oracles.hpp"

using namespace bfp;

TEST_SUITE_BEGIN("codebook");

namespace {

using Freqs = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

Freqs dense(std::initializer_list<std::uint64_t> counts) {
  Freqs f;
  std::uint32_t id = 0;
  for (auto c : counts) f.push_back({id++, c});
  return f;
}

}  // namespace

TEST_CASE("degenerate single symbol gets a 1-bit code") {
  const CodeBook book = CodeBook::build(dense({7}));
  CHECK(book.symbol_count() == 1);
  CHECK(book.entry_for(0).length == 1);
  CHECK(book.entry_for(0).code == 0);
  std::uint8_t max_len = 0;
  CHECK(book.kraft_scaled(&max_len) <= (std::uint64_t{1} << max_len));
}

TEST_CASE("textbook lengths for a skewed histogram") {
  const CodeBook book = CodeBook::build(dense({5, 2, 1, 1}));
  CHECK(book.entry_for(0).length == 1);
  CHECK(book.entry_for(1).length == 2);
  CHECK(book.entry_for(2).length == 3);
  CHECK(book.entry_for(3).length == 3);
  CHECK(book.total_bits(dense({5, 2, 1, 1})) == 15);
}

TEST_CASE("uniform pair") {
  const CodeBook book = CodeBook::build(dense({1, 1}));
  CHECK(book.entry_for(0).length == 1);
  CHECK(book.entry_for(1).length == 1);
  CHECK(book.total_bits(dense({1, 1})) == 2);
}

TEST_CASE("canonical codes are numerically increasing") {
  // freqs {a:2, b:1, c:1} gives lengths {1,2,2} and codes 0, 10, 11.
  const CodeBook book = CodeBook::build(dense({2, 1, 1}));
  CHECK(book.entry_for(0).code == 0b0);
  CHECK(book.entry_for(0).length == 1);
  CHECK(book.entry_for(1).code == 0b10);
  CHECK(book.entry_for(2).code == 0b11);
  CHECK(book.canonical_symbols() == std::vector<std::uint32_t>{0, 1, 2});

  // Its C' stream is the frozen [2, 4, 1] delta list.
  BitWriter w;
  book.encode_code_numbers(w);
  BitReader r(w.bytes(), 0, w.bit_count());
  CHECK(r.get_delta() == 2);
  CHECK(r.get_delta() == 4);
  CHECK(r.get_delta() == 1);
  CHECK(r.exhausted());

  // The monotone symbol order L = [0,1,2] serializes as the absolute first
  // id plus all-one gaps: "1" then sign+delta(1) twice.
  BitWriter full;
  book.encode(full);
  BitReader lr(full.bytes(), r.position(), full.bit_count());
  CHECK(lr.get_delta() == 1);                       // L[0] + 1
  CHECK(get_signed_gap(lr, false) == 1);
  CHECK(get_signed_gap(lr, false) == 1);
  CHECK(lr.exhausted());
}

TEST_CASE("kraft equality") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    Freqs f;
    const std::size_t k = 2 + rng() % 40;
    for (std::uint32_t i = 0; i < k; ++i) f.push_back({i, 1 + rng() % 1000});
    const CodeBook book = CodeBook::build(f);
    std::uint8_t max_len = 0;
    const auto sum = book.kraft_scaled(&max_len);
    CHECK(sum == (std::uint64_t{1} << max_len));
  }
}

TEST_CASE("matches an independent optimal-length computation") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t k = 1 + rng() % 24;
    Freqs f;
    std::vector<std::uint64_t> counts;
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint64_t c = 1 + rng() % 500;
      f.push_back({i, c});
      counts.push_back(c);
    }
    const CodeBook book = CodeBook::build(f);
    CHECK(book.total_bits(f) == oracle::reference_huffman_bits(counts));
  }
}

TEST_CASE("serialization round trip preserves every entry") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t k = 1 + rng() % 60;
    Freqs f;
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < k; ++i) {
      id += 1 + rng() % 9;  // sparse ids, as in the per-context books
      f.push_back({id, 1 + rng() % 300});
    }
    const CodeBook book = CodeBook::build(f);
    BitWriter w;
    book.encode(w);
    BitReader r(w.bytes(), 0, w.bit_count());
    const CodeBook back = CodeBook::decode(r, f.size(), id + 1);
    CHECK(r.exhausted());
    for (const auto& [symbol, count] : f) {
      CHECK(back.entry_for(symbol).length == book.entry_for(symbol).length);
      CHECK(back.entry_for(symbol).code == book.entry_for(symbol).code);
    }
    BitWriter w2;
    back.encode(w2);
    CHECK(w.bytes() == w2.bytes());
    CHECK(w.bit_count() == w2.bit_count());
  }
}

TEST_CASE("encode/decode symbols through the payload path") {
  std::mt19937_64 rng(23);
  Freqs f = dense({50, 20, 10, 5, 5, 3, 1, 1});
  const CodeBook book = CodeBook::build(f);
  std::vector<std::uint32_t> seq(2000);
  for (auto& s : seq) s = rng() % f.size();
  BitWriter w;
  for (auto s : seq) book.encode_symbol(w, s);
  BitReader r(w.bytes(), 0, w.bit_count());
  for (auto s : seq) CHECK(book.decode_symbol(r) == s);
  CHECK(r.exhausted());
}

TEST_CASE("rejects invalid inputs") {
  CHECK_THROWS_AS(CodeBook::build({}), std::invalid_argument);
  Freqs zero{{0, 0}};
  CHECK_THROWS_AS(CodeBook::build(zero), std::invalid_argument);
  Freqs unsorted{{3, 1}, {1, 1}};
  CHECK_THROWS_AS(CodeBook::build(unsorted), std::invalid_argument);
}

TEST_SUITE_END();
