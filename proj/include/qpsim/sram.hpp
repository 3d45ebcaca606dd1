#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "qpsim/types.hpp"

namespace qpsim {

// Behavioral single-port SRAM macro: a plain word array that services exactly
// one read or write per call. The electrical side of the 6T cell (margins,
// half-select, read disturb) is out of scope; the wrapper guarantees at most
// one access per sub-cycle, which is what makes that abstraction safe.
class SramMacro {
 public:
  SramMacro(std::uint64_t array_words, unsigned word_width, Word init_fill = 0)
      : width_(word_width),
        mask_(word_width >= 64 ? ~Word{0} : ((Word{1} << word_width) - 1)),
        words_(array_words, init_fill & mask_) {}

  explicit SramMacro(const SimConfig& cfg)
      : SramMacro(cfg.array_words, cfg.word_width, cfg.init_fill) {}

  std::uint64_t size() const { return words_.size(); }
  unsigned width() const { return width_; }
  Word word_mask() const { return mask_; }

  Word read(std::uint64_t addr) {
    check_addr(addr);
    bump();
    ++reads_;
    return words_[addr];
  }

  void write(std::uint64_t addr, Word data) {
    check_addr(addr);
    if (data & ~mask_)
      throw SimError(Err::DataTooWide, "data 0x" + to_hex(data) + " exceeds " +
                                           std::to_string(width_) + "-bit word");
    bump();
    ++writes_;
    words_[addr] = data;
  }

  // Inspection that does not count as a memory access.
  Word peek(std::uint64_t addr) const {
    check_addr(addr);
    return words_[addr];
  }

  const std::vector<Word>& words() const { return words_; }

  // Access accounting. The engine opens one bucket per external cycle; calls
  // made with no open bucket (bare use in tests) land in an implicit first one.
  void begin_cycle() { access_log_.push_back(0); }
  const std::vector<std::uint64_t>& access_log() const { return access_log_; }
  std::uint64_t total_accesses() const { return reads_ + writes_; }
  std::uint64_t total_reads() const { return reads_; }
  std::uint64_t total_writes() const { return writes_; }

  // Flat binary image: array_words little-endian words, each padded to
  // ceil(word_width/8) bytes.
  std::uint64_t image_bytes_per_word() const { return (width_ + 7) / 8; }

  void dump_image(std::ostream& out) const {
    const std::uint64_t bpw = image_bytes_per_word();
    for (Word w : words_)
      for (std::uint64_t b = 0; b < bpw; ++b)
        out.put(static_cast<char>((w >> (8 * b)) & 0xFF));
  }

  void load_image(std::istream& in) {
    const std::uint64_t bpw = image_bytes_per_word();
    std::vector<Word> loaded(words_.size(), 0);
    for (std::uint64_t i = 0; i < loaded.size(); ++i) {
      Word w = 0;
      for (std::uint64_t b = 0; b < bpw; ++b) {
        int c = in.get();
        if (c == std::char_traits<char>::eof())
          throw SimError(Err::Io, "memory image truncated at word " + std::to_string(i));
        w |= static_cast<Word>(static_cast<unsigned char>(c)) << (8 * b);
      }
      if (w & ~mask_)
        throw SimError(Err::DataTooWide,
                       "image word " + std::to_string(i) + " exceeds " +
                           std::to_string(width_) + "-bit width");
      loaded[i] = w;
    }
    words_ = std::move(loaded);
  }

  bool operator==(const SramMacro&) const = default;

 private:
  void check_addr(std::uint64_t addr) const {
    if (addr >= words_.size())
      throw SimError(Err::AddrOutOfRange, "addr 0x" + to_hex(addr) + " >= array_words " +
                                              std::to_string(words_.size()));
  }

  void bump() {
    if (access_log_.empty()) access_log_.push_back(0);
    ++access_log_.back();
  }

  static std::string to_hex(Word v) {
    static const char* digits = "0123456789ABCDEF";
    if (v == 0) return "0";
    std::string s;
    while (v) {
      s.insert(s.begin(), digits[v & 0xF]);
      v >>= 4;
    }
    return s;
  }

  unsigned width_;
  Word mask_;
  std::vector<Word> words_;
  std::vector<std::uint64_t> access_log_;
  std::uint64_t reads_ = 0;
  std::uint64_t writes_ = 0;
};

}  // namespace qpsim
