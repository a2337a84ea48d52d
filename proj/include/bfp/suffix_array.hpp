#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfp/text.hpp"

namespace bfp {

// Suffix array with inverse permutation and LCP array.
// lcp[r] = longest common prefix of the suffixes at ranks r-1 and r;
// lcp[0] is a -1 sentinel so that "previous rank with lcp < x" searches
// always terminate.
struct SuffixArrayData {
  std::vector<std::int32_t> sa;
  std::vector<std::int32_t> rank;
  std::vector<std::int32_t> lcp;
};

// SA-IS construction, O(n) time. Accepts any symbol sequence with values
// < 256; n must fit in int32.
SuffixArrayData build_suffix_array(std::span<const Symbol> text);

}  // namespace bfp
