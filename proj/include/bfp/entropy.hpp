#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "bfp/parsing.hpp"
#include "bfp/suffix_array.hpp"
#include "bfp/text.hpp"

namespace bfp {

// Occurrence counts keyed by an opaque 64-bit symbol id.
class Histogram {
 public:
  void add(std::uint64_t key, std::uint64_t count = 1) {
    counts_[key] += count;
    total_ += count;
  }
  std::uint64_t total() const { return total_; }
  std::size_t distinct() const { return counts_.size(); }
  const std::unordered_map<std::uint64_t, std::uint64_t>& counts() const {
    return counts_;
  }

 private:
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Total zeroth-order entropy |w|H_0(w) in bits: sum of c * log2(total/c).
double h0_total(const Histogram& hist);
double h0_total(std::span<const std::uint64_t> counts);

// |S|H_k(S): sum over k-symbol contexts w of |S_w|H_0(S_w), where S_w
// concatenates the symbols following each occurrence of w. Contexts that
// run past the end of S contribute no follower.
double hk_total(const Text& text, std::uint32_t k);

// All totals |S|H_i(S) for i = 0..k_max from one suffix-array sweep.
std::vector<double> hk_profile(const Text& text, std::uint32_t k_max);
std::vector<double> hk_profile(const SuffixArrayData& sa,
                               std::span<const Symbol> text,
                               std::uint32_t k_max);

struct ParsingEntropy {
  double bits = 0.0;                 // |Y|H_0(Y) or |Y|H_1(Y)
  std::size_t distinct_phrases = 0;  // |Sigma_Y|
  std::size_t distinct_pairs = 0;    // distinct adjacent phrase pairs
};

// Zeroth-order entropy of the phrase sequence (each distinct phrase string
// is one letter). pre: parsing non-empty.
ParsingEntropy parsing_h0(const Parsing& parsing);

// First-order entropy: phrases from the second one on are grouped by their
// predecessor phrase; the first phrase has no context and contributes
// nothing. pre: parsing non-empty.
ParsingEntropy parsing_h1(const Parsing& parsing);

// H_0 of the phrase-length sequence, |L|H_0(L).
double length_entropy(const Parsing& parsing);

// Everything the measurement tables need about one parsing of one text.
struct EntropyReport {
  std::vector<double> order_totals;  // |S|H_i(S) for i = 0..k_max
  std::size_t phrase_count = 0;      // |Y|
  std::size_t distinct_phrases = 0;
  std::size_t distinct_pairs = 0;
  double parsing_h0_bits = 0.0;
  double parsing_h1_bits = 0.0;
  double length_bits = 0.0;  // |L|H_0(L)

  double bps(double bits, std::size_t n) const {
    return n == 0 ? 0.0 : bits / static_cast<double>(n);
  }
};

EntropyReport make_entropy_report(const Text& text, const Parsing& parsing,
                                  std::uint32_t k_max);

}  // namespace bfp
