#include <doctest.h>

#include <cmath>
#include <random>

#include "bfp/entropy.hpp"
#include "bfp/parsing.hpp"
#include "bfp/substring_counter.hpp"
#include "bfp/text.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace bfp;
using doctest::Approx;

TEST_SUITE_BEGIN("parsing");

namespace {

std::vector<std::uint32_t> lengths_of(const Parsing& p) {
  std::vector<std::uint32_t> out;
  for (const Phrase& ph : p.phrases()) out.push_back(ph.len);
  return out;
}

}  // namespace

TEST_CASE("zeroth-order phrase costs") {
  const Text aaaa = load_text(std::string("aaaa"));
  const SubstringCounter c(aaaa, 4);
  CHECK(cost_h0(c, {0, 2}, 2) == Approx(std::log2(8.0 / 3.0)));
  CHECK(cost_h0(c, {0, 1}, 2) == Approx(1.0));

  const Text abra = load_text(std::string("abracadabra"));
  const SubstringCounter ca(abra, 8);
  CHECK(cost_h0(ca, {0, 4}, 4) == Approx(std::log2(22.0)));
}

TEST_CASE("conditional phrase costs") {
  const Text abab = load_text(std::string("abab"));
  const SubstringCounter c(abab, 4);
  CHECK(cost_h1(c, {0, 2}, {2, 2}, 2) == Approx(2.0));

  const Text aaaa = load_text(std::string("aaaa"));
  const SubstringCounter cu(aaaa, 4);
  CHECK(cost_h1(cu, {0, 1}, {1, 1}, 2) == Approx(1.0 + 2.0 - std::log2(3.0)));

  // Deterministic continuation with m = 1 costs nothing.
  CHECK(cost_h1(c, {0, 1}, {1, 1}, 1) == Approx(0.0));
}

TEST_CASE("h0 parsing DP on fixed inputs") {
  {
    const Text t = load_text(std::string("aaaa"));
    const SubstringCounter c(t, 2);
    const auto [parsing, cost] = parse_h0_optimal(t, 2, c);
    CHECK(lengths_of(parsing) == std::vector<std::uint32_t>{2, 2});
    CHECK(cost == Approx(2.0 * std::log2(8.0 / 3.0)));
  }
  {
    const Text t = load_text(std::string("a"));
    const SubstringCounter c(t, 3);
    const auto [parsing, cost] = parse_h0_optimal(t, 3, c);
    CHECK(lengths_of(parsing) == std::vector<std::uint32_t>{1});
    CHECK(cost == Approx(std::log2(3.0)));
  }
  {
    const Text t = load_text(std::string("ab"));
    const SubstringCounter c(t, 1);
    const auto [parsing, cost] = parse_h0_optimal(t, 1, c);
    CHECK(lengths_of(parsing) == std::vector<std::uint32_t>{1, 1});
    CHECK(cost == Approx(2.0));
  }
  {
    const Text t = load_text(std::string(""));
    const SubstringCounter c(t, 1);
    const auto [parsing, cost] = parse_h0_optimal(t, 4, c);
    CHECK(parsing.size() == 0);
    CHECK(cost == 0.0);
  }
}

TEST_CASE("h1 parsing DP on fixed inputs") {
  {
    const Text t = load_text(std::string("abab"));
    const SubstringCounter c(t, 4);
    const auto [parsing, cost] = parse_h1_optimal(t, 2, c);
    CHECK(lengths_of(parsing) == std::vector<std::uint32_t>{2, 2});
    CHECK(cost == Approx(4.0));
  }
  {
    const Text t = load_text(std::string("aa"));
    const SubstringCounter c(t, 4);
    const auto [parsing, cost] = parse_h1_optimal(t, 2, c);
    CHECK(cost == Approx(oracle::brute_h1_best(t.symbols(), 2)));
    CHECK(lengths_of(parsing) == std::vector<std::uint32_t>{2});
  }
  {
    const Text t = load_text(std::string("a"));
    const SubstringCounter c(t, 4);
    const auto [parsing, cost] = parse_h1_optimal(t, 2, c);
    CHECK(lengths_of(parsing) == std::vector<std::uint32_t>{1});
    CHECK(cost == Approx(1.0 + 0.0));  // log2 m + log2 n - log2 cnt = 1 + 0 - 0
  }
}

TEST_CASE("DP cost equals exhaustive enumeration on random smalls") {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 1 + rng() % 12;
    const auto data = corpus::random_bytes(n, 1 + rng() % 3, rng());
    const Text t = load_text(data);
    for (std::uint32_t m = 1; m <= 4; ++m) {
      const SubstringCounter c(t, 2 * m);
      const auto h0 = parse_h0_optimal(t, m, c);
      CHECK(h0.cost ==
            Approx(oracle::brute_h0_best(t.symbols(), m)).epsilon(1e-9));
      CHECK(h0.cost == Approx(total_cost(h0.parsing, c, m, Order::H0)));
      if (n <= 10 && m <= 3) {
        const auto h1 = parse_h1_optimal(t, m, c);
        CHECK(h1.cost ==
              Approx(oracle::brute_h1_best(t.symbols(), m)).epsilon(1e-9));
        CHECK(h1.cost == Approx(total_cost(h1.parsing, c, m, Order::H1)));
      }
    }
  }
}

TEST_CASE("naive parsing shapes") {
  const Text t10 = load_text(std::string("0123456789"));
  CHECK(lengths_of(naive_parsing(t10, 4, 0)) == std::vector<std::uint32_t>{4, 4, 2});
  CHECK(lengths_of(naive_parsing(t10, 4, 1)) ==
        std::vector<std::uint32_t>{1, 4, 4, 1});
  const Text t4 = load_text(std::string("0123"));
  CHECK(lengths_of(naive_parsing(t4, 4, 0)) == std::vector<std::uint32_t>{4});
  CHECK_THROWS_AS(naive_parsing(t4, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(naive_parsing(t4, 0, 0), std::invalid_argument);
}

TEST_CASE("best naive picks the smallest-entropy offset") {
  std::string periodic;
  for (int i = 0; i < 50; ++i) periodic += "ab";
  const Text t = load_text(periodic);
  const auto best = best_naive(t, 2, Order::H0);
  CHECK(best.offset == 0);
  CHECK(best.entropy_bits == Approx(0.0));
  CHECK(parsing_h0(best.parsing).distinct_phrases == 1);

  const Text unary = load_text(std::string("aaaaaaaa"));
  CHECK(best_naive(unary, 3, Order::H0).offset == 0);  // ties keep offset 0

  const Text small = load_text(std::string("xy"));
  const auto deg = best_naive(small, 4, Order::H0);
  CHECK(deg.parsing.size() == 1);  // n < l collapses to a single phrase
}

TEST_CASE("total cost composes per-phrase costs") {
  const Text t = load_text(std::string("aaaa"));
  const SubstringCounter c(t, 4);
  std::vector<Phrase> singles{{0, 1}, {1, 1}, {2, 1}, {3, 1}};
  CHECK(total_cost(Parsing(t, singles, 2), c, 2, Order::H0) == Approx(4.0));
  std::vector<Phrase> pairs{{0, 2}, {2, 2}};
  CHECK(total_cost(Parsing(t, pairs, 2), c, 2, Order::H0) ==
        Approx(2.0 * std::log2(8.0 / 3.0)));
}

TEST_CASE("DP dominates every naive parsing") {
  const auto data = corpus::words(20000, 47);
  const Text t = load_text(data);
  const std::uint32_t m = 4;
  const SubstringCounter c(t, 2 * m);
  const auto h0 = parse_h0_optimal(t, m, c);
  const auto h1 = parse_h1_optimal(t, m, c);
  for (std::uint32_t l = 1; l <= m; ++l) {
    for (std::uint32_t off = 0; off < l; ++off) {
      const Parsing naive = naive_parsing(t, l, off);
      CHECK(h0.cost <= total_cost(naive, c, m, Order::H0) + 1e-6);
      CHECK(h1.cost <= total_cost(naive, c, m, Order::H1) + 1e-6);
    }
  }
}

TEST_CASE("entropy bounds hold on a natural-text sample") {
  const auto data = corpus::words(16384, 53);
  const Text t = load_text(data);
  const double n = static_cast<double>(t.size());
  const double sigma_bits = std::log2(static_cast<double>(t.sigma()));

  for (std::uint32_t m : {2u, 4u}) {
    const SubstringCounter c(t, 2 * m);
    const auto profile = hk_profile(c.suffix_array(), t.symbols(), 2 * m - 1);

    const auto h0 = parse_h0_optimal(t, m, c);
    const double a_bits = parsing_h0(h0.parsing).bits;
    const double phrases = static_cast<double>(h0.parsing.size());
    double mean = 0.0;
    for (std::uint32_t i = 0; i < m; ++i) mean += profile[i];
    CHECK(a_bits <= mean / m + phrases * std::log2(double(m)) + 1e-6);
    for (std::uint32_t k = 0; k < m; ++k) {
      CHECK(a_bits <= profile[k] + phrases * std::log2(double(m)) +
                          phrases * k * sigma_bits + 1e-6);
    }
    // The DP objective upper-bounds the realized parsing entropy.
    CHECK(a_bits <= h0.cost + 1e-6);

    const auto h1 = parse_h1_optimal(t, m, c);
    const double a1_bits = parsing_h1(h1.parsing).bits;
    const double phrases1 = static_cast<double>(h1.parsing.size());
    double mean1 = 0.0;
    for (std::uint32_t i = m; i < 2 * m; ++i) mean1 += profile[i];
    CHECK(a1_bits <= mean1 / m + phrases1 * std::log2(double(m)) + 1e-6);
    CHECK(a1_bits <= profile[m] * (n / n) + phrases1 * std::log2(double(m)) + 1e-6);
    CHECK(a1_bits <= h1.cost + 1e-6);
  }
}

TEST_CASE("parsing validation") {
  const Text t = load_text(std::string("abcd"));
  CHECK_THROWS_AS(Parsing(t, {{0, 2}, {2, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(Parsing(t, {{0, 3}, {3, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(Parsing(t, {{0, 2}, {1, 3}}, 4), std::invalid_argument);
  CHECK_NOTHROW(Parsing(t, {{0, 2}, {2, 2}}, 2));
}

TEST_SUITE_END();
