#include "bfp/codec.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "bfp/codebook.hpp"

namespace bfp {

namespace {

constexpr char kMagic[4] = {'B', 'F', 'P', 'C'};
constexpr std::uint8_t kVersion = 0x01;

uint128 max_u128() { return ~uint128{0}; }

std::string symbols_to_key(std::span<const Symbol> sym) {
  return {reinterpret_cast<const char*>(sym.data()), sym.size()};
}

std::string number_to_phrase(uint128 v, std::uint32_t sigma) {
  const uint128 base = sigma + 1;
  std::string out;
  while (v > 0) {
    const auto digit = static_cast<std::uint32_t>(v % base);
    if (digit == 0) throw format_error("phrase number contains a zero digit");
    out.push_back(static_cast<char>(digit - 1));
    v /= base;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// Distinct phrases in sorted-number order plus the parsing rewritten over
// those ids; the sorted order is what the archive's new letters mean.
struct PhraseModel {
  std::vector<std::string> phrases;    // id -> phrase (symbol string)
  std::vector<std::uint32_t> sequence; // the parsing as ids
};

PhraseModel build_model(const Parsing& parsing, std::uint32_t sigma) {
  std::unordered_map<std::string, std::uint32_t> vocab;
  std::vector<std::uint32_t> tmp_ids;
  tmp_ids.reserve(parsing.size());
  std::vector<std::string> distinct;
  for (std::size_t i = 0; i < parsing.size(); ++i) {
    std::string key = symbols_to_key(parsing.phrase_symbols(i));
    auto [it, inserted] = vocab.emplace(std::move(key),
                                        static_cast<std::uint32_t>(vocab.size()));
    if (inserted) distinct.push_back(it->first);
    tmp_ids.push_back(it->second);
  }

  std::vector<std::size_t> order(distinct.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<uint128> numbers(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const auto* data = reinterpret_cast<const Symbol*>(distinct[i].data());
    numbers[i] = phrase_number({data, distinct[i].size()}, sigma);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return numbers[a] < numbers[b]; });

  PhraseModel model;
  model.phrases.resize(distinct.size());
  std::vector<std::uint32_t> rank(distinct.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rank[order[pos]] = static_cast<std::uint32_t>(pos);
    model.phrases[pos] = std::move(distinct[order[pos]]);
  }
  model.sequence.resize(tmp_ids.size());
  for (std::size_t i = 0; i < tmp_ids.size(); ++i) {
    model.sequence[i] = rank[tmp_ids[i]];
  }
  return model;
}

void check_m_bounded(const Parsing& parsing, std::uint32_t m) {
  for (const Phrase& p : parsing.phrases()) {
    if (p.len > m) {
      throw std::invalid_argument("compress: parsing is not m-bounded");
    }
  }
}

class ArchiveBuilder {
 public:
  ArchiveBuilder(Variant variant, std::uint64_t n, const Alphabet& alphabet,
                 std::uint32_t m) {
    for (char c : kMagic) w_.put_bits(static_cast<std::uint8_t>(c), 8);
    w_.put_bits(kVersion, 8);
    w_.put_bits(static_cast<std::uint8_t>(variant), 8);
    w_.put_delta(n + 1);
    w_.put_delta(static_cast<std::uint64_t>(alphabet.size()) + 1);
    w_.put_delta(m);
    w_.align_to_byte();
    for (std::uint8_t b : alphabet.bytes_in_symbol_order()) w_.put_bits(b, 8);
  }

  void add_section(BitWriter content) {
    w_.put_delta(content.bit_count() + 1);
    w_.align_to_byte();
    content.align_to_byte();
    w_.append_aligned(content);
  }

  Archive finish() && {
    w_.align_to_byte();
    return Archive::from_bytes(std::move(w_).take());
  }

 private:
  BitWriter w_;
};

// Follower statistics per context phrase, from the adjacent pairs of the
// id sequence. Slices are sorted by follower id.
struct ContextStats {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> followers;  // flat
  std::vector<std::size_t> begin;  // per context, size K+1
};

ContextStats collect_contexts(std::span<const std::uint32_t> seq, std::size_t k) {
  std::vector<std::uint64_t> pairs;
  pairs.reserve(seq.size());
  for (std::size_t i = 1; i < seq.size(); ++i) {
    pairs.push_back((static_cast<std::uint64_t>(seq[i - 1]) << 32) | seq[i]);
  }
  std::sort(pairs.begin(), pairs.end());

  ContextStats stats;
  stats.begin.assign(k + 1, 0);
  std::size_t i = 0;
  for (std::size_t ctx = 0; ctx < k; ++ctx) {
    stats.begin[ctx] = stats.followers.size();
    while (i < pairs.size() && (pairs[i] >> 32) == ctx) {
      const std::uint32_t follower = static_cast<std::uint32_t>(pairs[i]);
      std::uint64_t count = 0;
      while (i < pairs.size() && (pairs[i] >> 32) == ctx &&
             static_cast<std::uint32_t>(pairs[i]) == follower) {
        ++count;
        ++i;
      }
      stats.followers.emplace_back(follower, count);
    }
  }
  stats.begin[k] = stats.followers.size();
  return stats;
}

}  // namespace

uint128 phrase_number(std::span<const Symbol> phrase, std::uint32_t sigma) {
  const uint128 base = sigma + 1;
  uint128 num = 0;
  for (Symbol s : phrase) {
    assert(s < sigma);
    const uint128 digit = static_cast<std::uint32_t>(s) + 1;
    if (num > (max_u128() - digit) / base) {
      throw std::overflow_error(
          "phrase number exceeds 128 bits; reduce m or the alphabet size");
    }
    num = num * base + digit;
  }
  return num;
}

void phrase_set_encode(BitWriter& w, std::span<const std::string> distinct_phrases,
                       std::uint32_t sigma) {
  std::vector<uint128> numbers(distinct_phrases.size());
  for (std::size_t i = 0; i < distinct_phrases.size(); ++i) {
    const auto& p = distinct_phrases[i];
    if (p.empty()) throw std::invalid_argument("phrase_set_encode: empty phrase");
    numbers[i] = phrase_number(
        {reinterpret_cast<const Symbol*>(p.data()), p.size()}, sigma);
  }
  std::sort(numbers.begin(), numbers.end());
  uint128 prev = 0;
  for (uint128 num : numbers) {
    if (num == prev) {
      throw std::invalid_argument("phrase_set_encode: duplicate phrase");
    }
    w.put_delta_u128(num - prev);
    prev = num;
  }
}

std::vector<std::string> phrase_set_decode(BitReader& r, std::uint32_t sigma) {
  std::vector<std::string> phrases;
  uint128 num = 0;
  while (!r.exhausted()) {
    const uint128 gap = r.get_delta_u128();
    if (gap > max_u128() - num) throw format_error("phrase number overflow");
    num += gap;
    phrases.push_back(number_to_phrase(num, sigma));
  }
  return phrases;
}

Archive Archive::from_bytes(std::vector<std::uint8_t> bytes) {
  Archive a;
  a.bytes_ = std::move(bytes);
  a.parse(/*allow_trailing=*/false);
  return a;
}

Archive Archive::from_bytes_prefix(std::span<const std::uint8_t> data,
                                   std::size_t* consumed_bytes) {
  Archive a;
  a.bytes_.assign(data.begin(), data.end());
  a.parse(/*allow_trailing=*/true);
  const std::size_t consumed = a.parsed_bits_ / 8;
  a.bytes_.resize(consumed);
  if (consumed_bytes) *consumed_bytes = consumed;
  return a;
}

std::span<const std::uint8_t> Archive::alphabet_bytes() const {
  return {bytes_.data() + alphabet_offset_, sigma_};
}

void Archive::parse(bool allow_trailing) {
  BitReader r(bytes_);
  for (char c : kMagic) {
    if (r.get_bits(8) != static_cast<std::uint8_t>(c)) {
      throw format_error("archive: bad magic");
    }
  }
  if (r.get_bits(8) != kVersion) throw format_error("archive: unsupported version");
  const std::uint64_t variant = r.get_bits(8);
  if (variant > 1) throw format_error("archive: unknown variant");
  variant_ = static_cast<Variant>(variant);

  n_ = r.get_delta() - 1;
  const std::uint64_t sigma = r.get_delta() - 1;
  if (sigma > 256) throw format_error("archive: alphabet too large");
  sigma_ = static_cast<std::uint32_t>(sigma);
  const std::uint64_t m = r.get_delta();
  if (m == 0 || m > std::numeric_limits<std::uint32_t>::max()) {
    throw format_error("archive: invalid phrase bound");
  }
  m_ = static_cast<std::uint32_t>(m);
  r.align_to_byte();
  alphabet_offset_ = r.position() / 8;
  r.skip(std::uint64_t{8} * sigma_);
  sections_.header_bits = r.position();

  auto read_section = [&r](Window* out) {
    const std::uint64_t bits = r.get_delta() - 1;
    r.align_to_byte();
    out->begin = r.position();
    r.skip(bits);
    out->end = r.position();
    r.align_to_byte();
    return bits;
  };

  sections_.phrase_set_bits = read_section(&phrase_set_);
  sections_.dictionary_bits = read_section(&dictionary_);
  if (variant_ == Variant::H1) {
    sections_.first_phrase_bits = read_section(&first_phrase_);
  }
  sections_.payload_bits = read_section(&payload_);
  parsed_bits_ = r.position();
  if (!allow_trailing &&
      parsed_bits_ != static_cast<std::uint64_t>(bytes_.size()) * 8) {
    throw format_error("archive: trailing data");
  }
}

namespace {

std::vector<std::pair<std::uint32_t, std::uint64_t>> phrase_frequencies(
    std::span<const std::uint32_t> seq, std::size_t k) {
  std::vector<std::uint64_t> counts(k, 0);
  for (std::uint32_t id : seq) ++counts[id];
  std::vector<std::pair<std::uint32_t, std::uint64_t>> freqs(k);
  for (std::size_t i = 0; i < k; ++i) {
    freqs[i] = {static_cast<std::uint32_t>(i), counts[i]};
  }
  return freqs;
}

}  // namespace

Archive compress_h0(const Text& text, std::uint32_t m, const Parsing& parsing) {
  check_m_bounded(parsing, m);
  const std::uint32_t sigma = static_cast<std::uint32_t>(text.sigma());
  ArchiveBuilder builder(Variant::H0, text.size(), text.alphabet(), m);

  BitWriter phrase_section, dict_section, payload_section;
  if (text.size() > 0) {
    PhraseModel model = build_model(parsing, sigma);
    phrase_set_encode(phrase_section, model.phrases, sigma);
    const auto freqs = phrase_frequencies(model.sequence, model.phrases.size());
    const CodeBook book = CodeBook::build(freqs);
    book.encode(dict_section);
    for (std::uint32_t id : model.sequence) {
      book.encode_symbol(payload_section, id);
    }
  }
  builder.add_section(std::move(phrase_section));
  builder.add_section(std::move(dict_section));
  builder.add_section(std::move(payload_section));
  return std::move(builder).finish();
}

Archive compress_h0(const Text& text, std::uint32_t m) {
  const SubstringCounter counter(text, m);
  return compress_h0(text, m, parse_h0_optimal(text, m, counter).parsing);
}

Archive compress_h1(const Text& text, std::uint32_t m, const Parsing& parsing) {
  check_m_bounded(parsing, m);
  const std::uint32_t sigma = static_cast<std::uint32_t>(text.sigma());
  ArchiveBuilder builder(Variant::H1, text.size(), text.alphabet(), m);

  BitWriter phrase_section, dict_section, first_section, payload_section;
  if (text.size() > 0) {
    PhraseModel model = build_model(parsing, sigma);
    phrase_set_encode(phrase_section, model.phrases, sigma);

    const std::size_t k = model.phrases.size();
    const ContextStats stats = collect_contexts(model.sequence, k);

    std::vector<CodeBook> books;
    books.reserve(k);
    for (std::size_t ctx = 0; ctx < k; ++ctx) {
      const std::size_t lo = stats.begin[ctx], hi = stats.begin[ctx + 1];
      const std::size_t followers = hi - lo;
      dict_section.put_delta(followers + 1);
      if (followers > 0) {
        books.push_back(CodeBook::build(
            {stats.followers.data() + lo, followers}));
        books.back().encode_code_numbers(dict_section);
      } else {
        books.push_back(CodeBook());
      }
    }
    // Symbol orders: one chained signed-delta stream over all contexts;
    // gaps at context boundaries may be zero, so those are shifted by one.
    bool first_entry = true;
    std::int64_t prev_symbol = 0;
    for (std::size_t ctx = 0; ctx < k; ++ctx) {
      if (stats.begin[ctx] == stats.begin[ctx + 1]) continue;
      const auto symbols = books[ctx].canonical_symbols();
      for (std::size_t i = 0; i < symbols.size(); ++i) {
        const auto cur = static_cast<std::int64_t>(symbols[i]);
        if (first_entry) {
          dict_section.put_delta(static_cast<std::uint64_t>(cur) + 1);
          first_entry = false;
        } else {
          put_signed_gap(dict_section, cur - prev_symbol, /*allow_zero=*/i == 0);
        }
        prev_symbol = cur;
      }
    }

    first_section.put_delta(static_cast<std::uint64_t>(model.sequence[0]) + 1);
    for (std::size_t i = 1; i < model.sequence.size(); ++i) {
      books[model.sequence[i - 1]].encode_symbol(payload_section,
                                                 model.sequence[i]);
    }
  }
  builder.add_section(std::move(phrase_section));
  builder.add_section(std::move(dict_section));
  builder.add_section(std::move(first_section));
  builder.add_section(std::move(payload_section));
  return std::move(builder).finish();
}

Archive compress_h1(const Text& text, std::uint32_t m) {
  const SubstringCounter counter(text, 2 * static_cast<std::size_t>(m));
  return compress_h1(text, m, parse_h1_optimal(text, m, counter).parsing);
}

namespace {

std::vector<std::string> decode_phrase_table(const Archive& archive) {
  BitReader r(archive.bytes(), archive.phrase_set_window().begin,
              archive.phrase_set_window().end);
  auto phrases = phrase_set_decode(r, archive.sigma());
  // Map symbol strings to raw bytes once, so payload decoding can append
  // directly.
  const auto alpha = archive.alphabet_bytes();
  for (auto& p : phrases) {
    for (char& c : p) {
      const auto sym = static_cast<std::uint8_t>(c);
      if (sym >= alpha.size()) throw format_error("phrase symbol out of range");
      c = static_cast<char>(alpha[sym]);
    }
    if (p.size() > archive.bound()) {
      throw format_error("phrase longer than the recorded bound");
    }
  }
  return phrases;
}

std::vector<std::uint8_t> decompress_h0(const Archive& archive) {
  const auto phrases = decode_phrase_table(archive);
  const std::uint64_t n = archive.text_size();
  std::vector<std::uint8_t> out;
  out.reserve(n);
  if (n == 0) {
    if (!phrases.empty()) throw format_error("empty text with phrases");
    return out;
  }
  if (phrases.empty()) throw format_error("missing phrase table");

  BitReader dict(archive.bytes(), archive.dictionary_window().begin,
                 archive.dictionary_window().end);
  const CodeBook book = CodeBook::decode(dict, phrases.size(), phrases.size());
  if (!dict.exhausted()) throw format_error("dictionary section too long");

  BitReader payload(archive.bytes(), archive.payload_window().begin,
                    archive.payload_window().end);
  while (out.size() < n) {
    const std::uint32_t id = book.decode_symbol(payload);
    const std::string& p = phrases[id];
    if (p.size() > n - out.size()) throw format_error("payload overruns text");
    out.insert(out.end(), p.begin(), p.end());
  }
  if (!payload.exhausted()) throw format_error("payload section too long");
  return out;
}

std::vector<std::uint8_t> decompress_h1(const Archive& archive) {
  const auto phrases = decode_phrase_table(archive);
  const std::uint64_t n = archive.text_size();
  std::vector<std::uint8_t> out;
  out.reserve(n);
  if (n == 0) {
    if (!phrases.empty()) throw format_error("empty text with phrases");
    return out;
  }
  if (phrases.empty()) throw format_error("missing phrase table");
  const std::size_t k = phrases.size();

  BitReader dict(archive.bytes(), archive.dictionary_window().begin,
                 archive.dictionary_window().end);
  std::vector<std::vector<std::uint8_t>> lengths(k);
  for (std::size_t ctx = 0; ctx < k; ++ctx) {
    const std::uint64_t followers = dict.get_delta() - 1;
    if (followers > k) throw format_error("context with too many followers");
    if (followers > 0) {
      lengths[ctx] = CodeBook::decode_code_lengths(dict, followers);
    }
  }
  std::vector<CodeBook> books(k);
  bool first_entry = true;
  std::int64_t value = 0;
  for (std::size_t ctx = 0; ctx < k; ++ctx) {
    if (lengths[ctx].empty()) continue;
    std::vector<std::uint32_t> symbols(lengths[ctx].size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (first_entry) {
        const std::uint64_t first = dict.get_delta();
        if (first > k) throw format_error("symbol id out of range");
        value = static_cast<std::int64_t>(first) - 1;
        first_entry = false;
      } else {
        value += get_signed_gap(dict, /*allow_zero=*/i == 0);
      }
      if (value < 0 || static_cast<std::uint64_t>(value) >= k) {
        throw format_error("symbol id out of range");
      }
      symbols[i] = static_cast<std::uint32_t>(value);
    }
    books[ctx] = CodeBook::from_canonical(lengths[ctx], symbols);
  }
  if (!dict.exhausted()) throw format_error("dictionary section too long");

  BitReader first(archive.bytes(), archive.first_phrase_window().begin,
                  archive.first_phrase_window().end);
  const std::uint64_t first_id = first.get_delta() - 1;
  if (first_id >= k) throw format_error("first phrase id out of range");
  if (!first.exhausted()) throw format_error("first-phrase section too long");

  BitReader payload(archive.bytes(), archive.payload_window().begin,
                    archive.payload_window().end);
  std::uint32_t cur = static_cast<std::uint32_t>(first_id);
  out.insert(out.end(), phrases[cur].begin(), phrases[cur].end());
  while (out.size() < n) {
    if (books[cur].symbol_count() == 0) {
      throw format_error("context has no dictionary");
    }
    cur = books[cur].decode_symbol(payload);
    const std::string& p = phrases[cur];
    if (p.size() > n - out.size()) throw format_error("payload overruns text");
    out.insert(out.end(), p.begin(), p.end());
  }
  if (!payload.exhausted()) throw format_error("payload section too long");
  return out;
}

}  // namespace

std::vector<std::uint8_t> decompress(const Archive& archive) {
  return archive.variant() == Variant::H0 ? decompress_h0(archive)
                                          : decompress_h1(archive);
}

SizeReport size_report(const Archive& archive) {
  SizeReport report;
  const std::uint64_t n = archive.text_size();
  if (n == 0) {
    report.empty_input = true;
    return report;
  }
  const auto& s = archive.sections();
  const double dn = static_cast<double>(n);
  report.total_bps = static_cast<double>(archive.bytes().size()) * 8.0 / dn;
  report.string_bps = static_cast<double>(s.payload_bits) / dn;
  report.dict_bps = static_cast<double>(s.phrase_set_bits + s.dictionary_bits +
                                        s.first_phrase_bits) /
                    dn;
  return report;
}

}  // namespace bfp
