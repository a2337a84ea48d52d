#include "bfp/entropy.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bfp {

namespace {

double entropy_term(std::uint64_t count, std::uint64_t total) {
  if (count == 0 || count == total) return 0.0;
  return static_cast<double>(count) *
         std::log2(static_cast<double>(total) / static_cast<double>(count));
}

// Maps each phrase of the parsing to a dense id over its distinct phrase
// strings (in first-occurrence order; callers only rely on identity).
std::vector<std::uint32_t> phrase_ids(const Parsing& parsing,
                                      std::size_t* distinct_out) {
  std::unordered_map<std::string, std::uint32_t> vocab;
  std::vector<std::uint32_t> ids;
  ids.reserve(parsing.size());
  std::string key;
  for (std::size_t i = 0; i < parsing.size(); ++i) {
    auto sym = parsing.phrase_symbols(i);
    key.assign(reinterpret_cast<const char*>(sym.data()), sym.size());
    auto [it, inserted] = vocab.emplace(key, static_cast<std::uint32_t>(vocab.size()));
    ids.push_back(it->second);
  }
  if (distinct_out) *distinct_out = vocab.size();
  return ids;
}

std::size_t count_distinct_pairs(std::span<const std::uint32_t> ids) {
  std::unordered_map<std::uint64_t, std::uint64_t> pairs;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    std::uint64_t key = (static_cast<std::uint64_t>(ids[i - 1]) << 32) | ids[i];
    ++pairs[key];
  }
  return pairs.size();
}

}  // namespace

double h0_total(const Histogram& hist) {
  double bits = 0.0;
  for (const auto& [key, count] : hist.counts()) {
    bits += entropy_term(count, hist.total());
  }
  return bits;
}

double h0_total(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  double bits = 0.0;
  for (auto c : counts) bits += entropy_term(c, total);
  return bits;
}

std::vector<double> hk_profile(const SuffixArrayData& sa,
                               std::span<const Symbol> text,
                               std::uint32_t k_max) {
  std::vector<double> totals(k_max + 1, 0.0);
  const std::size_t n = text.size();
  if (n == 0) return totals;

  // For each k, suffixes sharing a length-k prefix form maximal runs of
  // ranks with lcp >= k; each run is one context, and each suffix long
  // enough contributes the symbol right after the context.
  std::array<std::uint64_t, 256> freq{};
  std::vector<std::uint8_t> touched;
  for (std::uint32_t k = 0; k <= k_max; ++k) {
    double bits = 0.0;
    std::size_t r = 0;
    while (r < n) {
      std::size_t end = r + 1;
      while (end < n && sa.lcp[end] >= static_cast<std::int32_t>(k)) ++end;
      std::uint64_t total = 0;
      for (std::size_t q = r; q < end; ++q) {
        std::size_t p = static_cast<std::size_t>(sa.sa[q]);
        if (p + k < n) {
          Symbol s = text[p + k];
          if (freq[s] == 0) touched.push_back(s);
          ++freq[s];
          ++total;
        }
      }
      for (std::uint8_t s : touched) {
        bits += entropy_term(freq[s], total);
        freq[s] = 0;
      }
      touched.clear();
      r = end;
    }
    totals[k] = bits;
  }
  return totals;
}

std::vector<double> hk_profile(const Text& text, std::uint32_t k_max) {
  SuffixArrayData sa = build_suffix_array(text.symbols());
  return hk_profile(sa, text.symbols(), k_max);
}

double hk_total(const Text& text, std::uint32_t k) {
  return hk_profile(text, k).back();
}

ParsingEntropy parsing_h0(const Parsing& parsing) {
  if (parsing.size() == 0) {
    throw std::invalid_argument("parsing_h0: parsing must be non-empty");
  }
  ParsingEntropy out;
  auto ids = phrase_ids(parsing, &out.distinct_phrases);
  std::vector<std::uint64_t> counts(out.distinct_phrases, 0);
  for (auto id : ids) ++counts[id];
  out.bits = h0_total(counts);
  out.distinct_pairs = count_distinct_pairs(ids);
  return out;
}

ParsingEntropy parsing_h1(const Parsing& parsing) {
  if (parsing.size() == 0) {
    throw std::invalid_argument("parsing_h1: parsing must be non-empty");
  }
  ParsingEntropy out;
  auto ids = phrase_ids(parsing, &out.distinct_phrases);

  std::unordered_map<std::uint64_t, std::uint64_t> pair_counts;
  std::vector<std::uint64_t> context_totals(out.distinct_phrases, 0);
  for (std::size_t i = 1; i < ids.size(); ++i) {
    std::uint64_t key = (static_cast<std::uint64_t>(ids[i - 1]) << 32) | ids[i];
    ++pair_counts[key];
    ++context_totals[ids[i - 1]];
  }
  out.distinct_pairs = pair_counts.size();

  double bits = 0.0;
  for (const auto& [key, count] : pair_counts) {
    bits += entropy_term(count, context_totals[key >> 32]);
  }
  out.bits = bits;
  return out;
}

double length_entropy(const Parsing& parsing) {
  Histogram lengths;
  for (const Phrase& p : parsing.phrases()) lengths.add(p.len);
  return h0_total(lengths);
}

EntropyReport make_entropy_report(const Text& text, const Parsing& parsing,
                                  std::uint32_t k_max) {
  EntropyReport report;
  report.order_totals = hk_profile(text, k_max);
  report.phrase_count = parsing.size();
  if (parsing.size() > 0) {
    ParsingEntropy h0 = parsing_h0(parsing);
    ParsingEntropy h1 = parsing_h1(parsing);
    report.distinct_phrases = h0.distinct_phrases;
    report.distinct_pairs = h1.distinct_pairs;
    report.parsing_h0_bits = h0.bits;
    report.parsing_h1_bits = h1.bits;
    report.length_bits = length_entropy(parsing);
  }
  return report;
}

}  // namespace bfp
