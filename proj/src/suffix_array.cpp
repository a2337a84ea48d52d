#include "bfp/suffix_array.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace bfp {

namespace {

void get_buckets(const std::int32_t* s, std::int32_t* bkt, std::int32_t n,
                 std::int32_t k, bool end) {
  std::fill(bkt, bkt + k, 0);
  for (std::int32_t i = 0; i < n; ++i) ++bkt[s[i]];
  std::int32_t sum = 0;
  for (std::int32_t i = 0; i < k; ++i) {
    sum += bkt[i];
    bkt[i] = end ? sum : sum - bkt[i];
  }
}

void induce_l(const std::vector<bool>& t, const std::int32_t* s,
              std::int32_t* sa, std::int32_t* bkt, std::int32_t n,
              std::int32_t k) {
  get_buckets(s, bkt, n, k, false);
  for (std::int32_t i = 0; i < n; ++i) {
    std::int32_t j = sa[i] - 1;
    if (sa[i] > 0 && !t[j]) sa[bkt[s[j]]++] = j;
  }
}

void induce_s(const std::vector<bool>& t, const std::int32_t* s,
              std::int32_t* sa, std::int32_t* bkt, std::int32_t n,
              std::int32_t k) {
  get_buckets(s, bkt, n, k, true);
  for (std::int32_t i = n - 1; i >= 0; --i) {
    std::int32_t j = sa[i] - 1;
    if (sa[i] > 0 && t[j]) sa[--bkt[s[j]]] = j;
  }
}

// SA-IS over s[0..n), values in [0,k), s[n-1] == 0 the unique smallest
// sentinel.
void sais(const std::int32_t* s, std::int32_t* sa, std::int32_t n,
          std::int32_t k) {
  assert(n >= 1);
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  std::vector<bool> t(n);
  t[n - 1] = true;
  for (std::int32_t i = n - 2; i >= 0; --i) {
    t[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && t[i + 1]);
  }
  auto is_lms = [&](std::int32_t i) { return i > 0 && t[i] && !t[i - 1]; };

  std::vector<std::int32_t> bkt(k);

  // Stage 1: sort LMS substrings by induced sorting.
  std::fill(sa, sa + n, -1);
  get_buckets(s, bkt.data(), n, k, true);
  for (std::int32_t i = 1; i < n; ++i) {
    if (is_lms(i)) sa[--bkt[s[i]]] = i;
  }
  induce_l(t, s, sa, bkt.data(), n, k);
  induce_s(t, s, sa, bkt.data(), n, k);

  std::int32_t n1 = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    if (is_lms(sa[i])) sa[n1++] = sa[i];
  }

  // Name LMS substrings; equal substrings get equal names.
  std::fill(sa + n1, sa + n, -1);
  std::int32_t name = 0, prev = -1;
  for (std::int32_t i = 0; i < n1; ++i) {
    std::int32_t pos = sa[i];
    bool diff = false;
    for (std::int32_t d = 0; d < n; ++d) {
      if (prev == -1 || s[pos + d] != s[prev + d] || t[pos + d] != t[prev + d]) {
        diff = true;
        break;
      }
      if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) break;
    }
    if (diff) {
      ++name;
      prev = pos;
    }
    std::int32_t half = pos / 2;
    sa[n1 + half] = name - 1;
  }
  for (std::int32_t i = n - 1, j = n - 1; i >= n1; --i) {
    if (sa[i] >= 0) sa[j--] = sa[i];
  }

  // Recurse if names are not yet unique.
  std::int32_t* sa1 = sa;
  std::int32_t* s1 = sa + n - n1;
  if (name < n1) {
    sais(s1, sa1, n1, name);
  } else {
    for (std::int32_t i = 0; i < n1; ++i) sa1[s1[i]] = i;
  }

  // Stage 2: induce the full order from sorted LMS suffixes.
  for (std::int32_t i = 1, j = 0; i < n; ++i) {
    if (is_lms(i)) s1[j++] = i;
  }
  for (std::int32_t i = 0; i < n1; ++i) sa1[i] = s1[sa1[i]];
  std::fill(sa + n1, sa + n, -1);
  get_buckets(s, bkt.data(), n, k, true);
  for (std::int32_t i = n1 - 1; i >= 0; --i) {
    std::int32_t j = sa[i];
    sa[i] = -1;
    sa[--bkt[s[j]]] = j;
  }
  induce_l(t, s, sa, bkt.data(), n, k);
  induce_s(t, s, sa, bkt.data(), n, k);
}

}  // namespace

SuffixArrayData build_suffix_array(std::span<const Symbol> text) {
  SuffixArrayData out;
  const std::size_t n = text.size();
  if (n == 0) return out;
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()) - 2) {
    throw std::length_error("text too long for 32-bit suffix array");
  }

  // Shift symbols by one and append the 0 sentinel required by SA-IS.
  std::vector<std::int32_t> s(n + 1);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::int32_t>(text[i]) + 1;
  s[n] = 0;

  std::vector<std::int32_t> full(n + 1);
  sais(s.data(), full.data(), static_cast<std::int32_t>(n + 1), 258);
  assert(full[0] == static_cast<std::int32_t>(n));

  out.sa.assign(full.begin() + 1, full.end());
  out.rank.resize(n);
  for (std::size_t r = 0; r < n; ++r) out.rank[out.sa[r]] = static_cast<std::int32_t>(r);

  // Kasai LCP; lcp[0] stays -1 as a sentinel.
  out.lcp.assign(n, -1);
  std::int32_t h = 0;
  const std::int32_t ni = static_cast<std::int32_t>(n);
  for (std::int32_t i = 0; i < ni; ++i) {
    std::int32_t r = out.rank[i];
    if (r > 0) {
      std::int32_t j = out.sa[r - 1];
      while (i + h < ni && j + h < ni && text[i + h] == text[j + h]) ++h;
      out.lcp[r] = h;
      if (h > 0) --h;
    } else {
      h = 0;
    }
  }
  return out;
}

}  // namespace bfp
