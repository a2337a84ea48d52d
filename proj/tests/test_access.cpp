#include <doctest.h>

#include <atomic>
#include <random>
#include <thread>

#include "bfp/access.hpp"
#include "bfp/codec.hpp"
#include "bfp/text.hpp"
#include "corpus.hpp"

using namespace bfp;

TEST_SUITE_BEGIN("access");

TEST_CASE("exhaustive access on a small text") {
  const std::string s = "abracadabra";
  const Text t = load_text(s);
  for (std::uint32_t d : {1u, 2u, 5u, 100u}) {
    for (std::uint32_t t_param : {1u, 2u, 7u}) {
      const AccessStructure st = AccessStructure::build(t, 4, d, t_param);
      REQUIRE(st.size() == s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(st.access(i) == static_cast<std::uint8_t>(s[i]));
      }
      CHECK_THROWS_AS(st.access(s.size()), std::out_of_range);
    }
  }
}

TEST_CASE("exhaustive access across generators") {
  std::mt19937_64 rng(3);
  const std::vector<corpus::Bytes> inputs = {
      corpus::random_bytes(1, 1, rng()),   corpus::random_bytes(257, 256, rng()),
      corpus::periodic(2000, 7, 4, 0, rng()), corpus::words(5000, rng()),
      corpus::dna_like(3000, rng()),
  };
  for (const auto& data : inputs) {
    const Text t = load_text(data);
    const AccessStructure st =
        AccessStructure::build(t, 4, AccessStructure::default_d(4), 4);
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(st.access(i) == data[i]);
  }
}

TEST_CASE("block reads match raw slices") {
  const auto data = corpus::words(20000, 7);
  const Text t = load_text(data);
  const AccessStructure st = AccessStructure::build(t, 6, 12, 8);

  const auto whole = st.read_block(0, data.size());
  CHECK(whole == data);

  CHECK(st.read_block(137, 0).empty());

  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t len = rng() % 300;
    if (len > data.size()) continue;
    const std::size_t start = rng() % (data.size() - len + 1);
    const auto block = st.read_block(start, len);
    CHECK(std::equal(block.begin(), block.end(), data.begin() + start));
  }
  CHECK_THROWS_AS(st.read_block(data.size() - 2, 5), std::out_of_range);
}

TEST_CASE("empty text yields an empty structure") {
  const Text t = load_text(std::string(""));
  const AccessStructure st = AccessStructure::build(t, 4, 8, 8);
  CHECK(st.size() == 0);
  CHECK_THROWS_AS(st.access(0), std::out_of_range);
  const auto bytes = st.serialize();
  const AccessStructure back = AccessStructure::deserialize(bytes);
  CHECK(back.size() == 0);
}

TEST_CASE("serialization answers identically and re-serializes bit-exactly") {
  const auto data = corpus::dna_like(8000, 13);
  const Text t = load_text(data);
  const AccessStructure st = AccessStructure::build(t, 5, 10, 6);
  const auto bytes = st.serialize();
  const AccessStructure back = AccessStructure::deserialize(bytes);
  CHECK(back.size() == st.size());
  CHECK(back.d() == st.d());
  CHECK(back.t() == st.t());
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 3000; ++iter) {
    const std::size_t i = rng() % data.size();
    CHECK(back.access(i) == data[i]);
  }
  CHECK(back.serialize() == bytes);
}

TEST_CASE("structure overhead shrinks as sampling coarsens") {
  const auto data = corpus::words(120000, 19);
  const Text t = load_text(data);
  const std::uint32_t m = 6;
  const Archive archive = compress_h0(t, m);

  double prev_delta = 1e18;
  for (std::uint32_t d = m; d <= 8 * m; d *= 2) {
    const auto st = AccessStructure::from_archive(archive, d, 8);
    const auto info = st.size_info();
    CHECK(info.delta_vs_archive_bps < prev_delta);
    CHECK(info.bps ==
          doctest::Approx(info.delta_vs_archive_bps +
                          8.0 * static_cast<double>(archive.bytes().size()) /
                              static_cast<double>(data.size())));
    prev_delta = info.delta_vs_archive_bps;
  }

  // With no samples left, the overhead is only the fixed sample header.
  const auto sparse = AccessStructure::from_archive(archive, 1 << 30, 1 << 30);
  CHECK(sparse.size_info().delta_vs_archive_bps <
        256.0 / static_cast<double>(data.size()) + 1e-9);
  for (std::size_t i : {std::size_t{0}, data.size() / 2, data.size() - 1}) {
    CHECK(sparse.access(i) == data[i]);
  }
}

TEST_CASE("overhead is non-increasing in t as well") {
  const auto data = corpus::words(60000, 31);
  const Text t = load_text(data);
  const Archive archive = compress_h0(t, 6);
  double prev = 1e18;
  for (std::uint32_t tt : {1u, 2u, 4u, 8u, 16u}) {
    const double delta =
        AccessStructure::from_archive(archive, 12, tt).size_info().delta_vs_archive_bps;
    CHECK(delta <= prev);
    prev = delta;
  }
}

TEST_CASE("average decode work tracks d over the phrase length") {
  const auto data = corpus::words(100000, 37);
  const Text t = load_text(data);
  const std::uint32_t m = 6;
  const Archive archive = compress_h0(t, m);
  for (std::uint32_t d : {m, 2 * m, 4 * m}) {
    // t = 1 isolates the position-sample walk from code-sample skips.
    const AccessStructure st = AccessStructure::from_archive(archive, d, 1);
    const double avg_len =
        static_cast<double>(st.size()) / static_cast<double>(st.phrase_count());
    std::mt19937_64 rng(41);
    double total = 0.0;
    const int queries = 20000;
    for (int q = 0; q < queries; ++q) {
      total += static_cast<double>(st.decode_work(rng() % st.size()));
    }
    const double mean = total / queries;
    CHECK(mean <= 2.0 * (static_cast<double>(d) / avg_len + 1.0));
  }
}

TEST_CASE("concurrent readers see identical answers") {
  const auto data = corpus::words(50000, 43);
  const Text t = load_text(data);
  const AccessStructure st = AccessStructure::build(t, 4, 8, 4);
  std::atomic<int> failures{0};
  std::vector<std::thread> pool;
  for (int tid = 0; tid < 4; ++tid) {
    pool.emplace_back([&, tid] {
      std::mt19937_64 rng(100 + tid);
      for (int q = 0; q < 20000; ++q) {
        const std::size_t i = rng() % data.size();
        if (st.access(i) != data[i]) failures.fetch_add(1);
      }
      const auto block = st.read_block(tid * 1000, 5000);
      if (!std::equal(block.begin(), block.end(), data.begin() + tid * 1000)) {
        failures.fetch_add(1);
      }
    });
  }
  for (auto& th : pool) th.join();
  CHECK(failures.load() == 0);
}

TEST_CASE("H1 archives are not queryable") {
  const auto data = corpus::words(4000, 23);
  const Text t = load_text(data);
  const Archive h1 = compress_h1(t, 3);
  CHECK_THROWS_AS(AccessStructure::from_archive(h1, 8, 8), std::invalid_argument);
}

TEST_CASE("tampered sample sections are rejected") {
  const auto data = corpus::words(4000, 29);
  const Text t = load_text(data);
  auto bytes = AccessStructure::build(t, 4, 8, 8).serialize();
  auto bad = bytes;
  bad.resize(bad.size() - 1);
  CHECK_THROWS_AS(AccessStructure::deserialize(bad), format_error);
  auto noisy = bytes;
  noisy.push_back(0xAA);
  CHECK_THROWS_AS(AccessStructure::deserialize(noisy), format_error);
}

TEST_SUITE_END();
