#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bfp/bitstream.hpp"
#include "bfp/parsing.hpp"
#include "bfp/text.hpp"

namespace bfp {

enum class Variant : std::uint8_t { H0 = 0x00, H1 = 0x01 };

// Bit sizes of the archive pieces, for the size report.
struct SectionSizes {
  std::uint64_t header_bits = 0;  // magic through alphabet table
  std::uint64_t phrase_set_bits = 0;
  std::uint64_t dictionary_bits = 0;
  std::uint64_t first_phrase_bits = 0;  // H1 only
  std::uint64_t payload_bits = 0;
};

// A serialized compressed text. Layout:
//   magic "BFPC", version 0x01, variant byte,
//   Elias-Delta n+1, sigma+1, m, byte padding, sigma raw alphabet bytes,
//   then the sections [PhraseSet, Dictionary, FirstPhrase (H1), Payload],
//   each as Elias-Delta bit-length+1, byte padding, content, byte padding.
class Archive {
 public:
  Archive() = default;

  static Archive from_bytes(std::vector<std::uint8_t> bytes);

  // Parses an archive that may be followed by more data (the queryable
  // structure appends its sample section); reports how many bytes the
  // archive itself spans.
  static Archive from_bytes_prefix(std::span<const std::uint8_t> data,
                                   std::size_t* consumed_bytes);

  Variant variant() const { return variant_; }
  std::uint64_t text_size() const { return n_; }
  std::uint32_t sigma() const { return sigma_; }
  std::uint32_t bound() const { return m_; }
  const SectionSizes& sections() const { return sections_; }

  std::span<const std::uint8_t> bytes() const { return bytes_; }

  // Bit window of one section inside bytes().
  struct Window {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
  };
  Window phrase_set_window() const { return phrase_set_; }
  Window dictionary_window() const { return dictionary_; }
  Window first_phrase_window() const { return first_phrase_; }
  Window payload_window() const { return payload_; }

  std::span<const std::uint8_t> alphabet_bytes() const;

  friend class ArchiveBuilder;

 private:
  void parse(bool allow_trailing);

  std::vector<std::uint8_t> bytes_;
  Variant variant_ = Variant::H0;
  std::uint64_t n_ = 0;
  std::uint32_t sigma_ = 0;
  std::uint32_t m_ = 1;
  std::size_t alphabet_offset_ = 0;
  std::uint64_t parsed_bits_ = 0;
  SectionSizes sections_;
  Window phrase_set_, dictionary_, first_phrase_, payload_;
};

// Phrases are mapped to numbers over base sigma+1 (digit = symbol id + 1,
// most significant digit first); the sorted numbers are stored as a first
// value plus strictly positive gaps, all Elias-Delta coded. The sorted
// order defines the parsing-symbol numbering.
void phrase_set_encode(BitWriter& w, std::span<const std::string> distinct_phrases,
                       std::uint32_t sigma);
std::vector<std::string> phrase_set_decode(BitReader& r, std::uint32_t sigma);

uint128 phrase_number(std::span<const Symbol> phrase, std::uint32_t sigma);

// Compression entry points. The parameterless-parsing forms run the
// corresponding optimal-parsing DP; the explicit-parsing forms accept any
// m-bounded parsing (e.g. a naive baseline).
Archive compress_h0(const Text& text, std::uint32_t m);
Archive compress_h0(const Text& text, std::uint32_t m, const Parsing& parsing);
Archive compress_h1(const Text& text, std::uint32_t m);
Archive compress_h1(const Text& text, std::uint32_t m, const Parsing& parsing);

std::vector<std::uint8_t> decompress(const Archive& archive);

struct SizeReport {
  double total_bps = 0.0;
  double string_bps = 0.0;
  double dict_bps = 0.0;
  bool empty_input = false;
};

SizeReport size_report(const Archive& archive);

}  // namespace bfp
