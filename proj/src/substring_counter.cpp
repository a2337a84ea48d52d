#include "bfp/substring_counter.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace bfp {

SubstringCounter::SubstringCounter(const Text& text, std::size_t max_query_len)
    : text_(&text), n_(text.size()), max_query_len_(max_query_len) {
  if (max_query_len == 0) {
    throw std::invalid_argument("SubstringCounter: max_query_len must be >= 1");
  }
  sa_ = build_suffix_array(text.symbols());
  if (n_ == 0) return;

  const std::size_t blocks = (n_ + kBlock - 1) / kBlock;
  block_min_.assign(blocks, std::numeric_limits<std::int32_t>::max());
  for (std::size_t q = 0; q < n_; ++q) {
    block_min_[q / kBlock] = std::min(block_min_[q / kBlock], sa_.lcp[q]);
  }

  const std::size_t levels = blocks == 0 ? 0 : std::bit_width(blocks);
  sparse_.assign(levels, {});
  if (levels > 0) sparse_[0] = block_min_;
  for (std::size_t lv = 1; lv < levels; ++lv) {
    const std::size_t span = std::size_t{1} << lv;
    sparse_[lv].resize(blocks - span + 1);
    for (std::size_t b = 0; b + span <= blocks; ++b) {
      sparse_[lv][b] = std::min(sparse_[lv - 1][b], sparse_[lv - 1][b + span / 2]);
    }
  }

  // Dense tables for the shortest lengths: sigma^q entries while that stays
  // within a fixed budget. These carry the widest rank intervals, where the
  // lcp searches are slowest.
  const std::size_t sigma = text.sigma();
  constexpr std::size_t kGramBudget = std::size_t{1} << 22;
  const auto symbols = text.symbols();
  std::size_t table_size = 1;
  while (gram_len_ < std::min<std::size_t>(max_query_len_, 8) &&
         table_size <= kGramBudget / std::max<std::size_t>(sigma, 1)) {
    table_size *= std::max<std::size_t>(sigma, 1);
    const std::size_t q = ++gram_len_;
    // Each q-gram packs as a base-sigma number, most significant symbol
    // first; slide a window keeping the packed value.
    std::vector<std::uint32_t> table(table_size, 0);
    if (n_ >= q) {
      std::size_t msd = 1;
      for (std::size_t i = 1; i < q; ++i) msd *= sigma;
      std::size_t value = 0;
      for (std::size_t i = 0; i < q; ++i) value = value * sigma + symbols[i];
      ++table[value];
      for (std::size_t i = q; i < n_; ++i) {
        value = (value % msd) * sigma + symbols[i];
        ++table[value];
      }
    }
    gram_counts_.push_back(std::move(table));
  }
}

std::int32_t SubstringCounter::block_range_min(std::size_t first_block,
                                               std::size_t last_block) const {
  assert(first_block <= last_block);
  const std::size_t width = last_block - first_block + 1;
  const std::size_t lv = std::bit_width(width) - 1;
  return std::min(sparse_[lv][first_block],
                  sparse_[lv][last_block + 1 - (std::size_t{1} << lv)]);
}

std::size_t SubstringCounter::prev_break(std::size_t r, std::int32_t len) const {
  const auto& lcp = sa_.lcp;
  std::size_t q = r;
  const std::size_t block_start = (r / kBlock) * kBlock;
  while (true) {
    if (lcp[q] < len) return q;
    if (q == block_start) break;
    --q;
  }
  // Binary search for the rightmost earlier block containing a value < len.
  std::size_t rb = r / kBlock;
  assert(rb > 0);  // block 0 holds the lcp[0] sentinel, so we cannot get here
  std::size_t lo = 0, hi = rb - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (block_range_min(mid, rb - 1) < len) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::size_t end = std::min(n_ - 1, lo * kBlock + kBlock - 1);
  for (q = end;; --q) {
    if (lcp[q] < len) return q;
    assert(q > lo * kBlock);
  }
}

std::size_t SubstringCounter::next_break(std::size_t r, std::int32_t len) const {
  const auto& lcp = sa_.lcp;
  const std::size_t blocks = block_min_.size();
  std::size_t q = r + 1;
  if (q >= n_) return n_;
  const std::size_t block_end = std::min(n_ - 1, (q / kBlock) * kBlock + kBlock - 1);
  for (; q <= block_end; ++q) {
    if (lcp[q] < len) return q;
  }
  std::size_t rb = (r + 1) / kBlock;
  if (rb + 1 >= blocks) return n_;
  if (block_range_min(rb + 1, blocks - 1) >= len) return n_;
  std::size_t lo = rb + 1, hi = blocks - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (block_range_min(lo, mid) < len) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  for (q = lo * kBlock;; ++q) {
    assert(q < n_);
    if (lcp[q] < len) return q;
  }
}

std::size_t SubstringCounter::count(std::size_t start, std::size_t len) const {
  if (len == 0 || len > max_query_len_ || start > n_ || len > n_ - start) {
    throw std::out_of_range("SubstringCounter::count: invalid query range");
  }
  if (len <= gram_len_) {
    const std::size_t sigma = text_->sigma();
    const auto symbols = text_->symbols();
    std::size_t value = 0;
    for (std::size_t i = 0; i < len; ++i) value = value * sigma + symbols[start + i];
    return gram_counts_[len - 1][value];
  }
  const std::size_t r = static_cast<std::size_t>(sa_.rank[start]);
  const auto l32 = static_cast<std::int32_t>(len);
  const std::size_t lo = prev_break(r, l32);
  const std::size_t hi = next_break(r, l32);
  return hi - lo;
}

void SubstringCounter::counts_ending_at(std::size_t end, std::size_t max_len,
                                        std::span<std::size_t> out) const {
  assert(out.size() >= max_len + 1);
  const std::size_t top = std::min({end, max_len, max_query_len_});
  for (std::size_t len = 1; len <= top; ++len) {
    out[len] = count(end - len, len);
  }
}

}  // namespace bfp
