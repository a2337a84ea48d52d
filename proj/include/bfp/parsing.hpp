#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfp/substring_counter.hpp"
#include "bfp/text.hpp"

namespace bfp {

enum class Order { H0, H1 };

struct Phrase {
  std::uint32_t start = 0;
  std::uint32_t len = 0;
};

// An m-bounded parsing: consecutive phrases of length <= bound that tile
// the text exactly.
class Parsing {
 public:
  Parsing() = default;
  // Validates the tiling and the length bound; throws std::invalid_argument
  // on violation.
  Parsing(const Text& text, std::vector<Phrase> phrases, std::uint32_t bound);

  const Text& text() const { return *text_; }
  std::span<const Phrase> phrases() const { return phrases_; }
  std::size_t size() const { return phrases_.size(); }
  std::uint32_t bound() const { return bound_; }

  std::span<const Symbol> phrase_symbols(std::size_t i) const {
    const Phrase& p = phrases_[i];
    return text_->substring(p.start, p.len);
  }

 private:
  const Text* text_ = nullptr;
  std::vector<Phrase> phrases_;
  std::uint32_t bound_ = 0;
};

// Phrase cost under the zeroth-order model: -log2((1/m) * cnt(y) / n).
double cost_h0(const SubstringCounter& counter, Phrase phrase, std::uint32_t m);

// Phrase cost conditioned on the preceding phrase:
// -log2((1/m) * cnt(y'y) / cnt(y')). prev must immediately precede phrase.
double cost_h1(const SubstringCounter& counter, Phrase prev, Phrase phrase,
               std::uint32_t m);

struct ParseResult {
  Parsing parsing;
  double cost = 0.0;
};

// Minimum-cost m-bounded parsing under cost_h0; O(n*m) dynamic program.
// Cost ties prefer the longer phrase, so the output is deterministic.
ParseResult parse_h0_optimal(const Text& text, std::uint32_t m,
                             const SubstringCounter& counter);

// Minimum-cost m-bounded parsing where the first phrase is charged cost_h0
// and every later phrase cost_h1 given its predecessor; O(n*m^2) dynamic
// program over (position, last-phrase length).
ParseResult parse_h1_optimal(const Text& text, std::uint32_t m,
                             const SubstringCounter& counter);

// Fixed-block parsing: optional leading phrase of `offset` symbols, then
// blocks of length l, the last one possibly shorter.
Parsing naive_parsing(const Text& text, std::uint32_t l, std::uint32_t offset);

struct NaiveBest {
  Parsing parsing;
  double entropy_bits = 0.0;
  std::uint32_t offset = 0;
};

// Evaluates all l offsets of naive_parsing and returns the one minimizing
// the parsing entropy of the requested order (ties keep the smallest
// offset).
NaiveBest best_naive(const Text& text, std::uint32_t l, Order order);

// Sum of per-phrase costs of an arbitrary parsing under the chosen order
// (H1 charges the first phrase with cost_h0). Phrase lengths must not
// exceed m.
double total_cost(const Parsing& parsing, const SubstringCounter& counter,
                  std::uint32_t m, Order order);

}  // namespace bfp
