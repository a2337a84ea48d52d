#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bfp/codebook.hpp"
#include "bfp/codec.hpp"
#include "bfp/parsing.hpp"
#include "bfp/text.hpp"

namespace bfp {

// Random access over an H0 archive without full decompression.
//
// Every d-th text position is sampled with the index of the phrase covering
// it (Z) and the offset inside that phrase (O); every t-th phrase's bit
// position in the payload is sampled as well. A query jumps to the nearest
// position sample, locates the phrase's code through the nearest code
// sample, and decodes forward -- on average a constant number of phrases
// when d = Theta(m).
//
// Queries carry their own cursors, so concurrent readers are safe.
class AccessStructure {
 public:
  static constexpr std::uint32_t default_d(std::uint32_t m) { return 2 * m; }
  static constexpr std::uint32_t kDefaultT = 8;

  // Compresses with the H0-optimal parsing, then samples.
  static AccessStructure build(const Text& text, std::uint32_t m,
                               std::uint32_t d, std::uint32_t t);
  // Same, over a caller-supplied parsing (e.g. the naive baseline).
  static AccessStructure build(const Text& text, std::uint32_t m,
                               std::uint32_t d, std::uint32_t t,
                               const Parsing& parsing);
  // Samples an existing H0 archive.
  static AccessStructure from_archive(Archive archive, std::uint32_t d,
                                      std::uint32_t t);

  // S[i] as a raw byte. Throws std::out_of_range for i >= size().
  std::uint8_t access(std::size_t i) const;

  // S[i..i+len) as raw bytes; one positioning step, then sequential decode.
  std::vector<std::uint8_t> read_block(std::size_t i, std::size_t len) const;

  // Number of codes decoded to answer access(i); the d/t tradeoff in
  // measurable form.
  std::size_t decode_work(std::size_t i) const;

  std::size_t size() const { return static_cast<std::size_t>(archive_.text_size()); }
  std::uint32_t d() const { return d_; }
  std::uint32_t t() const { return t_; }
  std::uint64_t phrase_count() const { return phrase_count_; }
  const Archive& archive() const { return archive_; }

  std::vector<std::uint8_t> serialize() const;
  static AccessStructure deserialize(std::span<const std::uint8_t> data);

  struct SizeInfo {
    double bps = 0.0;
    double delta_vs_archive_bps = 0.0;  // the delta_s column
    std::uint64_t structure_bits = 0;
    std::uint64_t archive_bits = 0;
  };
  SizeInfo size_info() const;

 private:
  AccessStructure() = default;
  void build_samples();
  void decode_tables();
  void pack_rax();

  // Positions the cursor on the phrase containing text position i.
  struct Cursor {
    BitReader payload;
    std::uint32_t phrase_id = 0;
    std::size_t offset = 0;  // of position i inside that phrase
  };
  Cursor locate(std::size_t i, std::size_t* decodes = nullptr) const;

  Archive archive_;
  std::uint32_t d_ = 1;
  std::uint32_t t_ = 1;
  std::uint64_t phrase_count_ = 0;

  std::vector<std::string> phrases_;  // byte-mapped phrase table
  CodeBook book_;
  std::vector<std::uint64_t> z_;         // phrase index at position j*d
  std::vector<std::uint32_t> o_;         // offset of position j*d in phrase
  std::vector<std::uint64_t> code_pos_;  // payload bit offset of phrase j*t
  std::vector<std::uint8_t> rax_bytes_;  // serialized sample section
};

}  // namespace bfp
