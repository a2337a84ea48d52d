#include "bfp/parsing.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bfp/entropy.hpp"

namespace bfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_sz(std::size_t v) { return std::log2(static_cast<double>(v)); }

void require_bound(const SubstringCounter& counter, std::uint32_t m,
                   std::size_t needed) {
  if (m == 0) throw std::invalid_argument("phrase bound m must be >= 1");
  // No query is ever longer than the text itself.
  if (counter.max_query_len() < std::min(needed, counter.text_size())) {
    throw std::invalid_argument("SubstringCounter max_query_len too small");
  }
}

}  // namespace

Parsing::Parsing(const Text& text, std::vector<Phrase> phrases,
                 std::uint32_t bound)
    : text_(&text), phrases_(std::move(phrases)), bound_(bound) {
  std::uint64_t pos = 0;
  for (const Phrase& p : phrases_) {
    if (p.start != pos || p.len == 0 || p.len > bound_) {
      throw std::invalid_argument("Parsing: phrases must tile the text with lengths in [1, m]");
    }
    pos += p.len;
  }
  if (pos != text.size()) {
    throw std::invalid_argument("Parsing: phrases do not cover the text");
  }
}

double cost_h0(const SubstringCounter& counter, Phrase phrase, std::uint32_t m) {
  assert(phrase.len >= 1 && phrase.len <= m);
  const std::size_t cnt = counter.count(phrase.start, phrase.len);
  return log2_sz(m) + log2_sz(counter.text_size()) - log2_sz(cnt);
}

double cost_h1(const SubstringCounter& counter, Phrase prev, Phrase phrase,
               std::uint32_t m) {
  assert(prev.start + prev.len == phrase.start);
  assert(phrase.len >= 1 && phrase.len <= m);
  const std::size_t cnt_prev = counter.count(prev.start, prev.len);
  const std::size_t cnt_pair = counter.count(prev.start, prev.len + phrase.len);
  return log2_sz(m) + log2_sz(cnt_prev) - log2_sz(cnt_pair);
}

ParseResult parse_h0_optimal(const Text& text, std::uint32_t m,
                             const SubstringCounter& counter) {
  require_bound(counter, m, m);
  const std::size_t n = text.size();
  if (n == 0) return {Parsing(text, {}, m), 0.0};

  const double base = log2_sz(m) + log2_sz(n);
  std::vector<double> dp(n + 1, kInf);
  std::vector<std::uint32_t> choice(n + 1, 0);
  dp[0] = 0.0;

  std::vector<std::size_t> cnt(static_cast<std::size_t>(m) + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    counter.counts_ending_at(i, m, cnt);
    double best = kInf;
    std::uint32_t best_len = 0;
    const std::size_t top = std::min<std::size_t>(i, m);
    for (std::size_t j = 1; j <= top; ++j) {
      const double c = dp[i - j] + base - log2_sz(cnt[j]);
      if (c <= best) {  // ties prefer the longer phrase
        best = c;
        best_len = static_cast<std::uint32_t>(j);
      }
    }
    dp[i] = best;
    choice[i] = best_len;
  }

  std::vector<Phrase> phrases;
  for (std::size_t i = n; i > 0; i -= choice[i]) {
    phrases.push_back({static_cast<std::uint32_t>(i - choice[i]), choice[i]});
  }
  std::reverse(phrases.begin(), phrases.end());
  return {Parsing(text, std::move(phrases), m), dp[n]};
}

ParseResult parse_h1_optimal(const Text& text, std::uint32_t m,
                             const SubstringCounter& counter) {
  require_bound(counter, m, 2 * static_cast<std::size_t>(m));
  if (m > 255) {
    throw std::invalid_argument("parse_h1_optimal: m above 255 is not supported");
  }
  const std::size_t n = text.size();
  if (n == 0) return {Parsing(text, {}, m), 0.0};

  const double log_m = log2_sz(m);
  const double log_n = log2_sz(n);
  const std::size_t stride = static_cast<std::size_t>(m) + 1;

  // dp[i*stride + u]: best cost of parsing S[0..i) with last phrase length u.
  std::vector<double> dp((n + 1) * stride, kInf);
  std::vector<std::uint8_t> from((n + 1) * stride, 0);

  // log2 of counts of substrings ending at a position, for the last m+1
  // positions (contexts end at i-u, pairs end at i).
  std::vector<std::vector<double>> ring(stride,
                                        std::vector<double>(2 * stride, 0.0));
  std::vector<std::size_t> cnt(2 * static_cast<std::size_t>(m) + 1);

  auto fill_logs = [&](std::size_t end) {
    counter.counts_ending_at(end, 2 * static_cast<std::size_t>(m), cnt);
    auto& row = ring[end % stride];
    const std::size_t top = std::min<std::size_t>(end, 2 * m);
    for (std::size_t len = 1; len <= top; ++len) row[len] = log2_sz(cnt[len]);
  };

  fill_logs(0);  // no-op row so indexing stays uniform
  for (std::size_t i = 1; i <= n; ++i) {
    fill_logs(i);
    const auto& pair_row = ring[i % stride];
    const std::size_t top_u = std::min<std::size_t>(i, m);
    for (std::size_t u = 1; u <= top_u; ++u) {
      double best;
      std::uint8_t best_prev = 0;
      if (i == u) {
        // First phrase: charged with the zeroth-order cost.
        best = log_m + log_n - pair_row[u];
      } else {
        best = kInf;
        const auto& ctx_row = ring[(i - u) % stride];
        const std::size_t top_v = std::min<std::size_t>(i - u, m);
        for (std::size_t v = 1; v <= top_v; ++v) {
          const double prev_cost = dp[(i - u) * stride + v];
          const double c = prev_cost + log_m + ctx_row[v] - pair_row[u + v];
          if (c <= best) {
            best = c;
            best_prev = static_cast<std::uint8_t>(v);
          }
        }
      }
      dp[i * stride + u] = best;
      from[i * stride + u] = best_prev;
    }
  }

  double best = kInf;
  std::size_t best_u = 0;
  for (std::size_t u = 1; u <= std::min<std::size_t>(n, m); ++u) {
    if (dp[n * stride + u] <= best) {
      best = dp[n * stride + u];
      best_u = u;
    }
  }

  std::vector<Phrase> phrases;
  std::size_t i = n, u = best_u;
  while (i > 0) {
    phrases.push_back({static_cast<std::uint32_t>(i - u),
                       static_cast<std::uint32_t>(u)});
    const std::size_t v = from[i * stride + u];
    i -= u;
    u = v;
  }
  std::reverse(phrases.begin(), phrases.end());
  return {Parsing(text, std::move(phrases), m), best};
}

Parsing naive_parsing(const Text& text, std::uint32_t l, std::uint32_t offset) {
  if (l == 0 || offset >= l) {
    throw std::invalid_argument("naive_parsing: need 1 <= l and 0 <= offset < l");
  }
  const std::size_t n = text.size();
  std::vector<Phrase> phrases;
  std::size_t pos = 0;
  if (offset > 0 && n > 0) {
    const std::uint32_t first = static_cast<std::uint32_t>(
        std::min<std::size_t>(offset, n));
    phrases.push_back({0, first});
    pos = first;
  }
  while (pos < n) {
    const std::uint32_t len =
        static_cast<std::uint32_t>(std::min<std::size_t>(l, n - pos));
    phrases.push_back({static_cast<std::uint32_t>(pos), len});
    pos += len;
  }
  return Parsing(text, std::move(phrases), l);
}

NaiveBest best_naive(const Text& text, std::uint32_t l, Order order) {
  if (l == 0) throw std::invalid_argument("best_naive: l must be >= 1");
  NaiveBest best;
  bool have = false;
  for (std::uint32_t offset = 0; offset < l; ++offset) {
    Parsing p = naive_parsing(text, l, offset);
    double bits = 0.0;
    if (p.size() > 0) {
      bits = order == Order::H0 ? parsing_h0(p).bits : parsing_h1(p).bits;
    }
    if (!have || bits < best.entropy_bits) {
      best = {std::move(p), bits, offset};
      have = true;
    }
  }
  return best;
}

double total_cost(const Parsing& parsing, const SubstringCounter& counter,
                  std::uint32_t m, Order order) {
  require_bound(counter, m,
                order == Order::H0 ? m : 2 * static_cast<std::size_t>(m));
  double sum = 0.0;
  const auto phrases = parsing.phrases();
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    if (phrases[i].len > m) {
      throw std::invalid_argument("total_cost: phrase longer than bound m");
    }
    if (order == Order::H0 || i == 0) {
      sum += cost_h0(counter, phrases[i], m);
    } else {
      sum += cost_h1(counter, phrases[i - 1], phrases[i], m);
    }
  }
  return sum;
}

}  // namespace bfp
