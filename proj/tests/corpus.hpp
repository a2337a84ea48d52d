#pragma once

// Deterministic corpus generators for the bound, round-trip and access
// suites: random, periodic and natural-ish text families.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace corpus {

using Bytes = std::vector<std::uint8_t>;

inline Bytes random_bytes(std::size_t n, unsigned sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> dist(0, sigma - 1);
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(dist(rng));
  return out;
}

// Repeats a random period; noise_permille positions get resampled.
inline Bytes periodic(std::size_t n, std::size_t period, unsigned sigma,
                      unsigned noise_permille, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> dist(0, sigma - 1);
  Bytes pattern(period);
  for (auto& b : pattern) b = static_cast<std::uint8_t>(dist(rng));
  Bytes out(n);
  std::uniform_int_distribution<unsigned> noise(0, 999);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = pattern[i % period];
    if (noise_permille > 0 && noise(rng) < noise_permille) {
      out[i] = static_cast<std::uint8_t>(dist(rng));
    }
  }
  return out;
}

// Zipf-sampled word soup with spaces and light punctuation; entropy
// profile falls off with the order like natural language.
inline Bytes words(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> letter('a', 'z');
  std::uniform_int_distribution<unsigned> word_len(2, 9);
  const std::size_t vocab_size = 4096;
  std::vector<std::string> vocab(vocab_size);
  for (auto& w : vocab) {
    w.resize(word_len(rng));
    for (auto& c : w) c = static_cast<char>(letter(rng));
  }
  // Zipf ranks via inverse-power sampling.
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double norm = 0.0;
  for (std::size_t r = 1; r <= vocab_size; ++r) norm += 1.0 / static_cast<double>(r);

  Bytes out;
  out.reserve(n + 16);
  std::size_t sentence = 0;
  while (out.size() < n) {
    double u = uni(rng) * norm;
    std::size_t rank = 0;
    while (rank + 1 < vocab_size) {
      u -= 1.0 / static_cast<double>(rank + 1);
      if (u <= 0) break;
      ++rank;
    }
    const std::string& w = vocab[rank];
    out.insert(out.end(), w.begin(), w.end());
    if (++sentence % 12 == 0) {
      out.push_back('.');
      out.push_back('\n');
    } else {
      out.push_back(' ');
    }
  }
  out.resize(n);
  return out;
}

// Four-letter alphabet with long approximate repeats of earlier material.
inline Bytes dna_like(std::size_t n, std::uint64_t seed) {
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> base(0, 3);
  std::uniform_int_distribution<unsigned> action(0, 99);
  Bytes out;
  out.reserve(n);
  while (out.size() < n) {
    if (out.size() > 256 && action(rng) < 30) {
      std::uniform_int_distribution<std::size_t> src(0, out.size() - 128);
      std::uniform_int_distribution<std::size_t> len_d(32, 128);
      const std::size_t from = src(rng);
      std::size_t len = std::min(len_d(rng), n - out.size());
      for (std::size_t i = 0; i < len; ++i) {
        std::uint8_t c = out[from + i];
        if (action(rng) < 3) c = static_cast<std::uint8_t>(kBases[base(rng)]);
        out.push_back(c);
      }
    } else {
      out.push_back(static_cast<std::uint8_t>(kBases[base(rng)]));
    }
  }
  out.resize(n);
  return out;
}

// Nested tags around word content, dblp-ish.
inline Bytes xml_like(std::size_t n, std::uint64_t seed) {
  static const char* kTags[] = {"article", "author", "title",
                                "year",    "pages",  "journal"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> tag(0, 5);
  Bytes body = words(n, seed ^ 0x9e3779b97f4a7c15ull);
  Bytes out;
  out.reserve(n + 64);
  std::size_t consumed = 0;
  std::uniform_int_distribution<std::size_t> chunk(8, 48);
  while (out.size() < n && consumed < body.size()) {
    const char* t = kTags[tag(rng)];
    const std::string open = std::string("<") + t + ">";
    const std::string close = std::string("</") + t + ">";
    out.insert(out.end(), open.begin(), open.end());
    const std::size_t len = std::min(chunk(rng), body.size() - consumed);
    out.insert(out.end(), body.begin() + consumed, body.begin() + consumed + len);
    consumed += len;
    out.insert(out.end(), close.begin(), close.end());
    out.push_back('\n');
  }
  out.resize(n);
  return out;
}

struct NamedCorpus {
  std::string name;
  Bytes data;
};

// The mixed family the bound/round-trip suites run over: random, periodic
// and natural-ish samples, sized >= 64 KB.
inline std::vector<NamedCorpus> bound_suite(std::size_t size = 64 * 1024) {
  std::vector<NamedCorpus> out;
  out.push_back({"random_s2", random_bytes(size, 2, 1001)});
  out.push_back({"random_s4", random_bytes(size, 4, 1002)});
  out.push_back({"random_s16", random_bytes(size, 16, 1003)});
  out.push_back({"random_s64", random_bytes(size, 64, 1004)});
  out.push_back({"random_s200", random_bytes(size, 200, 1005)});
  out.push_back({"random_s256", random_bytes(2 * size, 256, 1006)});
  out.push_back({"unary", Bytes(size, 'a')});
  out.push_back({"periodic_p3", periodic(size, 3, 4, 0, 2001)});
  out.push_back({"periodic_p7", periodic(size, 7, 26, 0, 2002)});
  out.push_back({"periodic_p16", periodic(2 * size, 16, 16, 0, 2003)});
  out.push_back({"periodic_p33_noisy", periodic(size, 33, 26, 10, 2004)});
  out.push_back({"periodic_p5_noisy", periodic(size, 5, 8, 50, 2005)});
  out.push_back({"words_64k", words(size, 3001)});
  out.push_back({"words_128k", words(2 * size, 3002)});
  out.push_back({"words_256k", words(4 * size, 3003)});
  out.push_back({"dna_64k", dna_like(size, 4001)});
  out.push_back({"dna_128k", dna_like(2 * size, 4002)});
  out.push_back({"xml_64k", xml_like(size, 5001)});
  out.push_back({"xml_128k", xml_like(2 * size, 5002)});
  out.push_back({"words_then_random", [&] {
                   Bytes a = words(size / 2, 6001);
                   Bytes b = random_bytes(size / 2, 64, 6002);
                   a.insert(a.end(), b.begin(), b.end());
                   return a;
                 }()});
  return out;
}

}  // namespace corpus
