#include "bfp/access.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace bfp {

namespace {

constexpr char kRaxMagic[4] = {'R', 'A', 'X', '1'};

unsigned offset_bits(std::uint32_t m) {
  return m <= 1 ? 0 : std::bit_width(m - 1);
}

}  // namespace

AccessStructure AccessStructure::build(const Text& text, std::uint32_t m,
                                       std::uint32_t d, std::uint32_t t) {
  return from_archive(compress_h0(text, m), d, t);
}

AccessStructure AccessStructure::build(const Text& text, std::uint32_t m,
                                       std::uint32_t d, std::uint32_t t,
                                       const Parsing& parsing) {
  return from_archive(compress_h0(text, m, parsing), d, t);
}

AccessStructure AccessStructure::from_archive(Archive archive, std::uint32_t d,
                                              std::uint32_t t) {
  if (d == 0 || t == 0) {
    throw std::invalid_argument("AccessStructure: d and t must be >= 1");
  }
  if (archive.variant() != Variant::H0) {
    throw std::invalid_argument("AccessStructure: only H0 archives are queryable");
  }
  AccessStructure s;
  s.archive_ = std::move(archive);
  s.d_ = d;
  s.t_ = t;
  s.decode_tables();
  s.build_samples();
  s.pack_rax();
  return s;
}

void AccessStructure::decode_tables() {
  const auto alpha = archive_.alphabet_bytes();
  BitReader pr(archive_.bytes(), archive_.phrase_set_window().begin,
               archive_.phrase_set_window().end);
  phrases_ = phrase_set_decode(pr, archive_.sigma());
  for (auto& p : phrases_) {
    for (char& c : p) {
      const auto sym = static_cast<std::uint8_t>(c);
      if (sym >= alpha.size()) throw format_error("phrase symbol out of range");
      c = static_cast<char>(alpha[sym]);
    }
  }
  if (archive_.text_size() > 0) {
    if (phrases_.empty()) throw format_error("missing phrase table");
    BitReader dict(archive_.bytes(), archive_.dictionary_window().begin,
                   archive_.dictionary_window().end);
    book_ = CodeBook::decode(dict, phrases_.size(), phrases_.size());
  }
}

void AccessStructure::build_samples() {
  z_.clear();
  o_.clear();
  code_pos_.clear();
  phrase_count_ = 0;
  const std::uint64_t n = archive_.text_size();
  if (n == 0) return;

  const auto window = archive_.payload_window();
  BitReader payload(archive_.bytes(), window.begin, window.end);
  std::uint64_t pos = 0;       // text position at the current phrase start
  std::uint64_t next_sample = 0;
  while (pos < n) {
    if (phrase_count_ % t_ == 0) {
      code_pos_.push_back(payload.position() - window.begin);
    }
    const std::uint32_t id = book_.decode_symbol(payload);
    const std::uint64_t len = phrases_[id].size();
    if (len == 0 || len > n - pos) throw format_error("payload overruns text");
    while (next_sample < pos + len && next_sample < n) {
      z_.push_back(phrase_count_);
      o_.push_back(static_cast<std::uint32_t>(next_sample - pos));
      next_sample += d_;
    }
    pos += len;
    ++phrase_count_;
  }
  if (!payload.exhausted()) throw format_error("payload section too long");
}

void AccessStructure::pack_rax() {
  BitWriter content;
  content.put_delta(d_);
  content.put_delta(t_);
  content.put_delta(phrase_count_ + 1);

  std::uint64_t prev = 0;
  for (std::size_t j = 0; j < z_.size(); ++j) {
    content.put_delta(z_[j] - prev + 1);  // gaps are non-negative
    prev = z_[j];
  }
  const unsigned obits = offset_bits(archive_.bound());
  for (std::uint32_t off : o_) content.put_bits(off, obits);
  prev = 0;
  for (std::size_t j = 0; j < code_pos_.size(); ++j) {
    content.put_delta(code_pos_[j] + 1 - prev);  // strictly increasing
    prev = code_pos_[j] + 1;
  }

  BitWriter w;
  for (char c : kRaxMagic) w.put_bits(static_cast<std::uint8_t>(c), 8);
  w.put_delta(content.bit_count() + 1);
  w.align_to_byte();
  content.align_to_byte();
  w.append_aligned(content);
  rax_bytes_ = std::move(w).take();
}

std::vector<std::uint8_t> AccessStructure::serialize() const {
  std::vector<std::uint8_t> out(archive_.bytes().begin(), archive_.bytes().end());
  out.insert(out.end(), rax_bytes_.begin(), rax_bytes_.end());
  return out;
}

AccessStructure AccessStructure::deserialize(std::span<const std::uint8_t> data) {
  AccessStructure s;
  std::size_t consumed = 0;
  s.archive_ = Archive::from_bytes_prefix(data, &consumed);
  if (s.archive_.variant() != Variant::H0) {
    throw format_error("queryable structure requires an H0 archive");
  }

  BitReader r(data, static_cast<std::uint64_t>(consumed) * 8,
              static_cast<std::uint64_t>(data.size()) * 8);
  for (char c : kRaxMagic) {
    if (r.get_bits(8) != static_cast<std::uint8_t>(c)) {
      throw format_error("sample section: bad magic");
    }
  }
  const std::uint64_t bits = r.get_delta() - 1;
  r.align_to_byte();
  BitReader content(data, r.position(), r.position() + bits);
  if (content.end() > static_cast<std::uint64_t>(data.size()) * 8) {
    throw format_error("sample section truncated");
  }

  const std::uint64_t d = content.get_delta();
  const std::uint64_t t = content.get_delta();
  if (d == 0 || t == 0 || d > std::numeric_limits<std::uint32_t>::max() ||
      t > std::numeric_limits<std::uint32_t>::max()) {
    throw format_error("sample section: bad parameters");
  }
  s.d_ = static_cast<std::uint32_t>(d);
  s.t_ = static_cast<std::uint32_t>(t);
  s.phrase_count_ = content.get_delta() - 1;

  const std::uint64_t n = s.archive_.text_size();
  const std::uint64_t samples = n == 0 ? 0 : (n + d - 1) / d;
  const std::uint64_t code_samples =
      s.phrase_count_ == 0 ? 0 : (s.phrase_count_ + t - 1) / t;

  s.z_.resize(samples);
  std::uint64_t prev = 0;
  for (std::uint64_t j = 0; j < samples; ++j) {
    prev += content.get_delta() - 1;
    if (prev >= s.phrase_count_) throw format_error("sample section: bad Z entry");
    s.z_[j] = prev;
  }
  const unsigned obits = offset_bits(s.archive_.bound());
  s.o_.resize(samples);
  for (std::uint64_t j = 0; j < samples; ++j) {
    const std::uint64_t off = content.get_bits(obits);
    if (off >= s.archive_.bound()) throw format_error("sample section: bad offset");
    s.o_[j] = static_cast<std::uint32_t>(off);
  }
  s.code_pos_.resize(code_samples);
  prev = 0;
  for (std::uint64_t j = 0; j < code_samples; ++j) {
    prev += content.get_delta();
    const std::uint64_t pos = prev - 1;
    if (pos > s.archive_.sections().payload_bits) {
      throw format_error("sample section: bad code position");
    }
    s.code_pos_[j] = pos;
  }
  if (!content.exhausted()) throw format_error("sample section too long");

  s.decode_tables();
  // Keep the original serialized block so re-serialization is bit-exact.
  s.rax_bytes_.assign(data.begin() + static_cast<std::ptrdiff_t>(consumed),
                      data.end());
  const std::uint64_t rax_end = (content.end() + 7) / 8;
  if (rax_end != data.size()) throw format_error("trailing data after samples");
  return s;
}

AccessStructure::Cursor AccessStructure::locate(std::size_t i,
                                                std::size_t* decodes) const {
  const auto window = archive_.payload_window();
  const std::size_t j = i / d_;
  const std::uint64_t phrase = z_[j];
  const std::size_t sample_pos = j * static_cast<std::size_t>(d_);

  const std::uint64_t cs = phrase / t_;
  BitReader payload(archive_.bytes(), window.begin + code_pos_[cs], window.end);
  std::size_t work = phrase - cs * t_;
  for (std::uint64_t q = cs * t_; q < phrase; ++q) {
    book_.decode_symbol(payload);
  }
  Cursor cur{std::move(payload), 0, 0};
  cur.phrase_id = book_.decode_symbol(cur.payload);
  ++work;
  cur.offset = o_[j] + (i - sample_pos);
  while (cur.offset >= phrases_[cur.phrase_id].size()) {
    cur.offset -= phrases_[cur.phrase_id].size();
    cur.phrase_id = book_.decode_symbol(cur.payload);
    ++work;
  }
  if (decodes) *decodes = work;
  return cur;
}

std::size_t AccessStructure::decode_work(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("AccessStructure::decode_work");
  std::size_t work = 0;
  locate(i, &work);
  return work;
}

std::uint8_t AccessStructure::access(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("AccessStructure::access: index out of range");
  const Cursor cur = locate(i);
  return static_cast<std::uint8_t>(phrases_[cur.phrase_id][cur.offset]);
}

std::vector<std::uint8_t> AccessStructure::read_block(std::size_t i,
                                                      std::size_t len) const {
  if (i > size() || len > size() - i) {
    throw std::out_of_range("AccessStructure::read_block: range out of bounds");
  }
  std::vector<std::uint8_t> out;
  out.reserve(len);
  if (len == 0) return out;

  Cursor cur = locate(i);
  while (true) {
    const std::string& p = phrases_[cur.phrase_id];
    for (std::size_t q = cur.offset; q < p.size() && out.size() < len; ++q) {
      out.push_back(static_cast<std::uint8_t>(p[q]));
    }
    if (out.size() == len) break;
    cur.phrase_id = book_.decode_symbol(cur.payload);
    cur.offset = 0;
  }
  return out;
}

AccessStructure::SizeInfo AccessStructure::size_info() const {
  SizeInfo info;
  info.archive_bits = static_cast<std::uint64_t>(archive_.bytes().size()) * 8;
  info.structure_bits =
      info.archive_bits + static_cast<std::uint64_t>(rax_bytes_.size()) * 8;
  const std::uint64_t n = archive_.text_size();
  if (n > 0) {
    info.bps = static_cast<double>(info.structure_bits) / static_cast<double>(n);
    info.delta_vs_archive_bps =
        static_cast<double>(info.structure_bits - info.archive_bits) /
        static_cast<double>(n);
  }
  return info;
}

}  // namespace bfp
