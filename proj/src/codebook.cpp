#include "bfp/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace bfp {

namespace {

// Huffman code lengths via the two-queue method on leaves sorted by
// (weight, id). Deterministic, O(k log k).
std::vector<std::uint8_t> huffman_lengths(
    std::span<const std::pair<std::uint32_t, std::uint64_t>> freqs) {
  const std::size_t k = freqs.size();
  if (k == 1) return {1};

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (freqs[a].second != freqs[b].second) return freqs[a].second < freqs[b].second;
    return freqs[a].first < freqs[b].first;
  });

  struct Node {
    std::uint64_t weight;
    std::int32_t parent = -1;
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * k - 1);
  for (std::size_t i = 0; i < k; ++i) nodes.push_back({freqs[order[i]].second});

  std::vector<std::uint32_t> merged;
  merged.reserve(k - 1);
  std::size_t leaf = 0, internal = 0;
  auto take_min = [&]() -> std::uint32_t {
    const bool leaf_ok = leaf < k;
    const bool int_ok = internal < merged.size();
    assert(leaf_ok || int_ok);
    if (leaf_ok && (!int_ok || nodes[leaf].weight <= nodes[merged[internal]].weight)) {
      return static_cast<std::uint32_t>(leaf++);
    }
    return merged[internal++];
  };
  while (merged.size() < k - 1) {
    const std::uint32_t a = take_min();
    const std::uint32_t b = take_min();
    const std::uint32_t parent = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back({nodes[a].weight + nodes[b].weight});
    nodes[a].parent = static_cast<std::int32_t>(parent);
    nodes[b].parent = static_cast<std::int32_t>(parent);
    merged.push_back(parent);
  }

  std::vector<std::uint8_t> depth(nodes.size(), 0);
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (nodes[i].parent >= 0) {
      depth[i] = static_cast<std::uint8_t>(depth[nodes[i].parent] + 1);
    }
  }
  std::vector<std::uint8_t> lengths(k);
  for (std::size_t i = 0; i < k; ++i) lengths[order[i]] = depth[i];
  return lengths;
}

}  // namespace

CodeBook CodeBook::build(
    std::span<const std::pair<std::uint32_t, std::uint64_t>> freqs) {
  if (freqs.empty()) {
    throw std::invalid_argument("CodeBook::build: need at least one symbol");
  }
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i].second == 0 || (i > 0 && freqs[i].first <= freqs[i - 1].first)) {
      throw std::invalid_argument("CodeBook::build: ids must increase, counts be positive");
    }
  }

  const std::vector<std::uint8_t> lengths = huffman_lengths(freqs);

  CodeBook book;
  book.by_canonical_.resize(freqs.size());
  std::vector<std::size_t> order(freqs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
    return freqs[a].first < freqs[b].first;
  });

  std::uint64_t code = 0;
  std::uint8_t prev_len = lengths[order[0]];
  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    const std::size_t i = order[slot];
    if (slot > 0) {
      code = (code + 1) << (lengths[i] - prev_len);
    }
    prev_len = lengths[i];
    book.by_canonical_[slot] = {freqs[i].first, lengths[i], code};
  }
  if (prev_len > 57) {
    // 1-prefixed code numbers must stay well inside 64 bits.
    throw std::length_error("CodeBook: code length exceeds supported maximum");
  }
  book.build_decode_tables();
  return book;
}

CodeBook CodeBook::from_canonical(
    std::span<const std::uint8_t> lengths,
    std::span<const std::uint32_t> symbols_in_code_order) {
  assert(lengths.size() == symbols_in_code_order.size());
  CodeBook book;
  book.by_canonical_.resize(lengths.size());
  std::uint64_t code = 0;
  for (std::size_t slot = 0; slot < lengths.size(); ++slot) {
    if (slot > 0) {
      if (lengths[slot] < lengths[slot - 1]) {
        throw format_error("codebook: lengths not canonical");
      }
      code = (code + 1) << (lengths[slot] - lengths[slot - 1]);
    }
    if (lengths[slot] == 0 || lengths[slot] > 57 ||
        (lengths[slot] < 64 && code >= (std::uint64_t{1} << lengths[slot]))) {
      throw format_error("codebook: invalid canonical code");
    }
    book.by_canonical_[slot] = {symbols_in_code_order[slot], lengths[slot], code};
  }
  book.build_decode_tables();
  return book;
}

void CodeBook::build_decode_tables() {
  max_length_ = 0;
  for (const Entry& e : by_canonical_) max_length_ = std::max(max_length_, e.length);
  first_code_.assign(max_length_ + 1, 0);
  first_slot_.assign(max_length_ + 1, 0);
  length_count_.assign(max_length_ + 1, 0);
  for (std::size_t slot = 0; slot < by_canonical_.size(); ++slot) {
    const Entry& e = by_canonical_[slot];
    if (length_count_[e.length] == 0) {
      first_code_[e.length] = e.code;
      first_slot_[e.length] = static_cast<std::uint32_t>(slot);
    }
    ++length_count_[e.length];
  }

  sorted_symbols_.resize(by_canonical_.size());
  symbol_index_.resize(by_canonical_.size());
  std::vector<std::uint32_t> slots(by_canonical_.size());
  std::iota(slots.begin(), slots.end(), 0);
  std::sort(slots.begin(), slots.end(), [&](std::uint32_t a, std::uint32_t b) {
    return by_canonical_[a].symbol < by_canonical_[b].symbol;
  });
  for (std::size_t i = 0; i < slots.size(); ++i) {
    sorted_symbols_[i] = by_canonical_[slots[i]].symbol;
    symbol_index_[i] = slots[i];
  }
}

std::vector<std::uint32_t> CodeBook::canonical_symbols() const {
  std::vector<std::uint32_t> out(by_canonical_.size());
  for (std::size_t i = 0; i < by_canonical_.size(); ++i) {
    out[i] = by_canonical_[i].symbol;
  }
  return out;
}

const CodeBook::Entry& CodeBook::entry_for(std::uint32_t symbol) const {
  auto it = std::lower_bound(sorted_symbols_.begin(), sorted_symbols_.end(), symbol);
  if (it == sorted_symbols_.end() || *it != symbol) {
    throw std::invalid_argument("CodeBook: unknown symbol");
  }
  return by_canonical_[symbol_index_[it - sorted_symbols_.begin()]];
}

void CodeBook::encode_symbol(BitWriter& w, std::uint32_t symbol) const {
  const Entry& e = entry_for(symbol);
  w.put_bits(e.code, e.length);
}

std::uint32_t CodeBook::decode_symbol(BitReader& r) const {
  std::uint64_t value = 0;
  for (std::uint8_t len = 1; len <= max_length_; ++len) {
    value = (value << 1) | static_cast<std::uint64_t>(r.get_bit());
    if (length_count_[len] > 0 && value >= first_code_[len] &&
        value - first_code_[len] < length_count_[len]) {
      return by_canonical_[first_slot_[len] + (value - first_code_[len])].symbol;
    }
  }
  throw format_error("codebook: no code matches payload bits");
}

std::uint64_t CodeBook::total_bits(
    std::span<const std::pair<std::uint32_t, std::uint64_t>> freqs) const {
  std::uint64_t bits = 0;
  for (const auto& [symbol, count] : freqs) {
    bits += count * entry_for(symbol).length;
  }
  return bits;
}

std::uint64_t CodeBook::kraft_scaled(std::uint8_t* max_len_out) const {
  std::uint64_t sum = 0;
  for (const Entry& e : by_canonical_) {
    sum += std::uint64_t{1} << (max_length_ - e.length);
  }
  if (max_len_out) *max_len_out = max_length_;
  return sum;
}

void CodeBook::encode_code_numbers(BitWriter& w) const {
  // C': 1-prefixed code numbers are strictly increasing in canonical order.
  std::uint64_t prev = 0;
  for (const Entry& e : by_canonical_) {
    const std::uint64_t num = (std::uint64_t{1} << e.length) | e.code;
    w.put_delta(num - prev);
    prev = num;
  }
}

std::vector<std::uint8_t> CodeBook::decode_code_lengths(BitReader& r,
                                                        std::size_t symbol_count) {
  std::vector<std::uint8_t> lengths(symbol_count);
  std::uint64_t num = 0;
  for (std::size_t i = 0; i < symbol_count; ++i) {
    const std::uint64_t gap = r.get_delta();
    if (gap > std::numeric_limits<std::uint64_t>::max() - num) {
      throw format_error("codebook: code number overflow");
    }
    num += gap;
    const unsigned width = std::bit_width(num);
    if (width < 2) throw format_error("codebook: invalid code number");
    lengths[i] = static_cast<std::uint8_t>(width - 1);
  }
  return lengths;
}

void CodeBook::encode(BitWriter& w) const {
  encode_code_numbers(w);
  // L: first symbol absolute (+1), then signed deltas.
  for (std::size_t i = 0; i < by_canonical_.size(); ++i) {
    if (i == 0) {
      w.put_delta(static_cast<std::uint64_t>(by_canonical_[0].symbol) + 1);
    } else {
      put_signed_gap(w,
                     static_cast<std::int64_t>(by_canonical_[i].symbol) -
                         static_cast<std::int64_t>(by_canonical_[i - 1].symbol),
                     /*allow_zero=*/false);
    }
  }
}

CodeBook CodeBook::decode(BitReader& r, std::size_t symbol_count,
                          std::uint64_t id_space) {
  const std::vector<std::uint8_t> lengths = decode_code_lengths(r, symbol_count);

  std::vector<std::uint32_t> symbols(symbol_count);
  std::int64_t value = 0;
  for (std::size_t i = 0; i < symbol_count; ++i) {
    if (i == 0) {
      const std::uint64_t first = r.get_delta();
      if (first > (std::uint64_t{1} << 33)) {
        throw format_error("codebook: symbol id out of range");
      }
      value = static_cast<std::int64_t>(first) - 1;
    } else {
      value += get_signed_gap(r, /*allow_zero=*/false);
    }
    if (value < 0 || static_cast<std::uint64_t>(value) >= id_space) {
      throw format_error("codebook: symbol id out of range");
    }
    symbols[i] = static_cast<std::uint32_t>(value);
  }
  {
    std::vector<std::uint32_t> check(symbols);
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end()) {
      throw format_error("codebook: duplicate symbol id");
    }
  }

  // Rebuild the codes canonically; the numbers define both the lengths and
  // the canonical order, so an exact encoder round-trips bit-for-bit.
  return from_canonical(lengths, symbols);
}

}  // namespace bfp
