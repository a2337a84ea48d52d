#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfp/suffix_array.hpp"
#include "bfp/text.hpp"

namespace bfp {

// Occurrence counter for substrings of a fixed text S: count(start, len)
// returns the number of positions p with S[p..p+len) == S[start..start+len).
//
// Backed by a suffix array: the occurrences of a substring form a
// contiguous rank interval, delimited by the nearest LCP entries below
// `len` on either side of rank[start]. Those are located with an in-block
// scan plus a binary search over block minima, so a query costs
// O(B + log(n/B)) with B = 64 -- effectively constant for the short
// substrings the parsing cost functions ask about.
//
// Queries of length q with sigma^q small are additionally tabulated into
// dense per-q tables, since those are exactly the lengths whose rank
// intervals are widest (and searches slowest) under the suffix array.
//
// Immutable after construction; concurrent reads are safe.
class SubstringCounter {
 public:
  // max_query_len is a contract bound: queries longer than it are rejected
  // (the parsing DPs require it to be >= m for H0 and >= 2m for H1).
  SubstringCounter(const Text& text, std::size_t max_query_len);

  // Occurrences of S[start..start+len). pre: 1 <= len <= max_query_len and
  // start+len <= n; violations throw std::out_of_range. The result is
  // always >= 1 because the query names an occurrence.
  std::size_t count(std::size_t start, std::size_t len) const;

  // Fills out[len] = count(end - len, len) for len = 1..min(end, max_len).
  // out must have max_len + 1 entries; entry 0 is left untouched.
  void counts_ending_at(std::size_t end, std::size_t max_len,
                        std::span<std::size_t> out) const;

  std::size_t max_query_len() const { return max_query_len_; }
  std::size_t text_size() const { return n_; }
  const Text& text() const { return *text_; }

  // Shared with the entropy sweeps so the same index serves both uses.
  const SuffixArrayData& suffix_array() const { return sa_; }

 private:
  static constexpr std::size_t kBlock = 64;

  // Largest q in [0, r] with lcp[q] < len (q = 0 always qualifies through
  // the lcp[0] = -1 sentinel).
  std::size_t prev_break(std::size_t r, std::int32_t len) const;
  // Smallest q in (r, n) with lcp[q] < len, or n if none.
  std::size_t next_break(std::size_t r, std::int32_t len) const;

  std::int32_t block_range_min(std::size_t first_block, std::size_t last_block) const;

  const Text* text_ = nullptr;
  std::size_t n_ = 0;
  std::size_t max_query_len_ = 0;
  SuffixArrayData sa_;
  std::vector<std::int32_t> block_min_;
  // Sparse table over block minima; level L covers 2^L blocks.
  std::vector<std::vector<std::int32_t>> sparse_;
  // gram_counts_[q-1][packed q-gram] for q = 1..gram_len_.
  std::size_t gram_len_ = 0;
  std::vector<std::vector<std::uint32_t>> gram_counts_;
};

}  // namespace bfp
