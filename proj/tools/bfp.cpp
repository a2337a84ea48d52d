#include <sys/utsname.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfp/access.hpp"
#include "bfp/codec.hpp"
#include "bfp/entropy.hpp"
#include "bfp/parsing.hpp"
#include "bfp/substring_counter.hpp"
#include "bfp/text.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitFormat = 3;

enum class OutputFormat { Csv, Json };

struct AnalyzeRow {
  std::string file;
  std::string order;
  std::uint32_t m = 0;
  double mean_entropy_bps = 0.0;
  double naive_bps = 0.0;
  double naive_avg_len = 0.0;
  std::size_t naive_distinct = 0;
  std::size_t naive_pairs = 0;
  double alg_bps = 0.0;
  double alg_avg_len = 0.0;
  std::size_t alg_distinct = 0;
  std::size_t alg_pairs = 0;
};

bfp::Text load_input(const std::string& path, std::uint64_t max_bytes) {
  auto data = bfp::read_file(path);
  if (max_bytes > 0 && data.size() > max_bytes) data.resize(max_bytes);
  return bfp::load_text(data);
}

void print_rows(const std::vector<AnalyzeRow>& rows, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    std::printf(
        "file,order,m,mean_entropy_bps,naive_bps,naive_avg_len,naive_distinct,"
        "naive_pairs,alg_bps,alg_avg_len,alg_distinct,alg_pairs\n");
    for (const auto& r : rows) {
      std::printf("%s,%s,%u,%.6f,%.6f,%.4f,%zu,%zu,%.6f,%.4f,%zu,%zu\n",
                  r.file.c_str(), r.order.c_str(), r.m, r.mean_entropy_bps,
                  r.naive_bps, r.naive_avg_len, r.naive_distinct, r.naive_pairs,
                  r.alg_bps, r.alg_avg_len, r.alg_distinct, r.alg_pairs);
    }
    return;
  }
  std::printf("[\n");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::printf(
        "  {\"file\":\"%s\",\"order\":\"%s\",\"m\":%u,"
        "\"mean_entropy_bps\":%.6f,"
        "\"naive\":{\"bps\":%.6f,\"avg_len\":%.4f,\"distinct\":%zu,\"pairs\":%zu},"
        "\"algorithm\":{\"bps\":%.6f,\"avg_len\":%.4f,\"distinct\":%zu,\"pairs\":%zu}}%s\n",
        r.file.c_str(), r.order.c_str(), r.m, r.mean_entropy_bps, r.naive_bps,
        r.naive_avg_len, r.naive_distinct, r.naive_pairs, r.alg_bps,
        r.alg_avg_len, r.alg_distinct, r.alg_pairs,
        i + 1 < rows.size() ? "," : "");
  }
  std::printf("]\n");
}

int run_analyze(const std::string& path, const std::string& order,
                std::vector<std::uint32_t> ms, OutputFormat format,
                std::uint64_t max_bytes) {
  const bool h1 = order == "h1";
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  if (ms.empty() || ms.front() == 0) {
    std::fprintf(stderr, "analyze: --m values must be >= 1\n");
    return kExitUsage;
  }

  const bfp::Text text = load_input(path, max_bytes);
  const std::size_t n = text.size();
  const std::uint32_t max_m = ms.back();
  const std::size_t query_len = h1 ? 2 * static_cast<std::size_t>(max_m) : max_m;
  const bfp::SubstringCounter counter(text, std::max<std::size_t>(query_len, 1));
  const std::uint32_t k_max = h1 ? 2 * max_m - 1 : (max_m > 0 ? max_m - 1 : 0);
  const auto profile =
      n == 0 ? std::vector<double>(k_max + 1, 0.0)
             : bfp::hk_profile(counter.suffix_array(), text.symbols(), k_max);

  std::vector<AnalyzeRow> rows;
  for (std::uint32_t m : ms) {
    AnalyzeRow row;
    row.file = path;
    row.order = h1 ? "h1" : "h0";
    row.m = m;
    if (n > 0) {
      double mean = 0.0;
      for (std::uint32_t i = h1 ? m : 0; i < (h1 ? 2 * m : m); ++i) {
        mean += profile[i];
      }
      row.mean_entropy_bps = mean / m / static_cast<double>(n);

      const bfp::Order ord = h1 ? bfp::Order::H1 : bfp::Order::H0;
      const bfp::NaiveBest naive = bfp::best_naive(text, m, ord);
      const bfp::ParseResult dp = h1 ? bfp::parse_h1_optimal(text, m, counter)
                                     : bfp::parse_h0_optimal(text, m, counter);
      const auto napp = h1 ? bfp::parsing_h1(naive.parsing)
                           : bfp::parsing_h0(naive.parsing);
      const auto app =
          h1 ? bfp::parsing_h1(dp.parsing) : bfp::parsing_h0(dp.parsing);
      row.naive_bps = napp.bits / static_cast<double>(n);
      row.naive_avg_len =
          static_cast<double>(n) / static_cast<double>(naive.parsing.size());
      row.naive_distinct = napp.distinct_phrases;
      row.naive_pairs = napp.distinct_pairs;
      row.alg_bps = app.bits / static_cast<double>(n);
      row.alg_avg_len =
          static_cast<double>(n) / static_cast<double>(dp.parsing.size());
      row.alg_distinct = app.distinct_phrases;
      row.alg_pairs = app.distinct_pairs;
    }
    rows.push_back(row);
  }
  print_rows(rows, format);
  return 0;
}

int run_compress(const std::string& in, const std::string& out,
                 const std::string& order, std::uint32_t m, bool baseline,
                 std::uint64_t max_bytes) {
  const bfp::Text text = load_input(in, max_bytes);
  const bool h1 = order == "h1";
  bfp::Archive archive = [&] {
    if (baseline) {
      const auto naive =
          bfp::best_naive(text, m, h1 ? bfp::Order::H1 : bfp::Order::H0);
      return h1 ? bfp::compress_h1(text, m, naive.parsing)
                : bfp::compress_h0(text, m, naive.parsing);
    }
    return h1 ? bfp::compress_h1(text, m) : bfp::compress_h0(text, m);
  }();
  bfp::write_file(out, archive.bytes());
  const bfp::SizeReport report = bfp::size_report(archive);
  std::printf("file,order,m,parsing,total_bps,string_bps,dict_bps\n");
  std::printf("%s,%s,%u,%s,%.6f,%.6f,%.6f\n", in.c_str(), h1 ? "h1" : "h0", m,
              baseline ? "naive" : "algorithm", report.total_bps,
              report.string_bps, report.dict_bps);
  return 0;
}

int run_decompress(const std::string& in, const std::string& out) {
  bfp::Archive archive = bfp::Archive::from_bytes(bfp::read_file(in));
  const auto data = bfp::decompress(archive);
  bfp::write_file(out, data);
  std::fprintf(stderr, "decompressed %zu bytes (variant %s, m=%u)\n",
               data.size(),
               archive.variant() == bfp::Variant::H0 ? "h0" : "h1",
               archive.bound());
  return 0;
}

double median_of_3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

int run_access_bench(const std::string& in, std::uint32_t m, std::uint32_t d,
                     std::uint32_t t, std::uint64_t queries,
                     std::uint64_t blocks, std::uint64_t block_size,
                     std::uint64_t seed, bool baseline, OutputFormat format,
                     std::uint64_t max_bytes) {
  auto raw = bfp::read_file(in);
  if (max_bytes > 0 && raw.size() > max_bytes) raw.resize(max_bytes);
  const bfp::Text text = bfp::load_text(raw);
  if (d == 0) d = bfp::AccessStructure::default_d(m);

  const bfp::AccessStructure structure = [&] {
    if (baseline) {
      const auto naive = bfp::best_naive(text, m, bfp::Order::H0);
      return bfp::AccessStructure::build(text, m, d, t, naive.parsing);
    }
    return bfp::AccessStructure::build(text, m, d, t);
  }();

  const std::size_t n = structure.size();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> positions(n == 0 ? 0 : queries);
  for (auto& p : positions) p = rng() % n;
  std::vector<std::pair<std::size_t, std::size_t>> block_reads;
  if (n > 0) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const std::size_t len = std::min<std::size_t>(block_size, n);
      const std::size_t start = n == len ? 0 : rng() % (n - len);
      block_reads.emplace_back(start, len);
    }
  }

  // Correctness precedes timing: verify against the raw bytes.
  std::uint64_t failures = 0;
  const std::size_t verify_n = std::min<std::size_t>(positions.size(), 100000);
  for (std::size_t q = 0; q < verify_n; ++q) {
    if (structure.access(positions[q]) != raw[positions[q]]) ++failures;
  }
  for (const auto& [start, len] : block_reads) {
    const auto block = structure.read_block(start, len);
    if (!std::equal(block.begin(), block.end(), raw.begin() + start)) ++failures;
  }
  if (failures > 0) {
    std::fprintf(stderr, "access-bench: %llu verification failures\n",
                 static_cast<unsigned long long>(failures));
    return kExitFormat;
  }

  auto time_run = [](auto&& fn) {
    const auto begin = std::chrono::steady_clock::now();
    fn();
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(end - begin).count();
  };
  double tr[3] = {0, 0, 0};
  double tb[3] = {0, 0, 0};
  volatile std::uint64_t sink = 0;
  for (int run = 0; run < 3; ++run) {
    tr[run] = time_run([&] {
      std::uint64_t acc = 0;
      for (std::size_t p : positions) acc += structure.access(p);
      sink = sink + acc;
    });
    tb[run] = time_run([&] {
      std::uint64_t acc = 0;
      for (const auto& [start, len] : block_reads) {
        acc += structure.read_block(start, len).size();
      }
      sink = sink + acc;
    });
  }

  utsname sys{};
  uname(&sys);
  const auto info = structure.size_info();
  const double t_r = median_of_3(tr[0], tr[1], tr[2]);
  const double t_b = median_of_3(tb[0], tb[1], tb[2]);
  if (format == OutputFormat::Csv) {
    std::printf("# host: %s %s %s\n", sys.sysname, sys.release, sys.machine);
    std::printf(
        "file,parsing,m,d,t,n,phrases,bps,delta_s,t_r_sec,t_b_sec,queries,"
        "blocks,block_size,verified,failures\n");
    std::printf("%s,%s,%u,%u,%u,%zu,%llu,%.6f,%.6f,%.6f,%.6f,%llu,%llu,%llu,%zu,%llu\n",
                in.c_str(), baseline ? "naive" : "algorithm", m, d, t, n,
                static_cast<unsigned long long>(structure.phrase_count()),
                info.bps, info.delta_vs_archive_bps, t_r, t_b,
                static_cast<unsigned long long>(queries),
                static_cast<unsigned long long>(blocks),
                static_cast<unsigned long long>(block_size), verify_n,
                static_cast<unsigned long long>(failures));
  } else {
    std::printf(
        "{\"file\":\"%s\",\"parsing\":\"%s\",\"m\":%u,\"d\":%u,\"t\":%u,"
        "\"n\":%zu,\"phrases\":%llu,\"bps\":%.6f,\"delta_s\":%.6f,"
        "\"t_r_sec\":%.6f,\"t_b_sec\":%.6f,\"host\":\"%s %s %s\"}\n",
        in.c_str(), baseline ? "naive" : "algorithm", m, d, t, n,
        static_cast<unsigned long long>(structure.phrase_count()), info.bps,
        info.delta_vs_archive_bps, t_r, t_b, sys.sysname, sys.release,
        sys.machine);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded-factor parsing: entropy analysis, compression, random access"};
  app.require_subcommand(1);

  std::string input, output, order = "h0", format_name = "csv";
  std::vector<std::uint32_t> ms;
  std::uint32_t m = 4, d = 0, t = bfp::AccessStructure::kDefaultT;
  std::uint64_t max_bytes = 0, queries = 1000000, blocks = 1000,
                block_size = 51200, seed = 42;
  bool baseline = false;

  auto* analyze = app.add_subcommand("analyze", "parsing entropy statistics per m");
  analyze->add_option("input", input)->required();
  analyze->add_option("--order", order)->check(CLI::IsMember({"h0", "h1"}));
  analyze->add_option("--m", ms, "phrase length bounds")->required();
  analyze->add_option("--format", format_name)->check(CLI::IsMember({"csv", "json"}));
  analyze->add_option("--max-bytes", max_bytes, "use only the first N bytes");

  auto* compress = app.add_subcommand("compress", "compress a file");
  compress->add_option("input", input)->required();
  compress->add_option("output", output)->required();
  compress->add_option("--order", order)->check(CLI::IsMember({"h0", "h1"}));
  compress->add_option("--m", m, "phrase length bound");
  compress->add_flag("--baseline", baseline, "use the best naive parsing");
  compress->add_option("--max-bytes", max_bytes);

  auto* decompress = app.add_subcommand("decompress", "restore a compressed file");
  decompress->add_option("input", input)->required();
  decompress->add_option("output", output)->required();

  auto* bench = app.add_subcommand("access-bench",
                                   "build the queryable structure and time it");
  bench->add_option("input", input)->required();
  bench->add_option("--m", m);
  bench->add_option("--d", d, "position sample spacing (default 2m)");
  bench->add_option("--t", t, "code sample spacing");
  bench->add_option("--queries", queries);
  bench->add_option("--blocks", blocks);
  bench->add_option("--block-size", block_size);
  bench->add_option("--seed", seed);
  bench->add_flag("--baseline", baseline);
  bench->add_option("--format", format_name)->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--max-bytes", max_bytes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const OutputFormat format =
      format_name == "json" ? OutputFormat::Json : OutputFormat::Csv;
  try {
    if (analyze->parsed()) {
      return run_analyze(input, order, ms, format, max_bytes);
    }
    if (compress->parsed()) {
      return run_compress(input, output, order, m, baseline, max_bytes);
    }
    if (decompress->parsed()) {
      return run_decompress(input, output);
    }
    if (bench->parsed()) {
      return run_access_bench(input, m, d, t, queries, blocks, block_size, seed,
                              baseline, format, max_bytes);
    }
  } catch (const bfp::format_error& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return 0;
}
