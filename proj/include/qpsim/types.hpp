#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qpsim {

inline constexpr int kPortCount = 4;
inline constexpr unsigned kMaxWordWidth = 64;

// Storage type for one memory word. Configured widths narrower than 64 bits
// occupy the low bits; everything above cfg.word_mask() must stay zero.
using Word = std::uint64_t;

enum class Port : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

constexpr int port_index(Port p) { return static_cast<int>(p); }
constexpr Port port_from_index(int i) { return static_cast<Port>(i); }
constexpr char port_letter(Port p) { return static_cast<char>('A' + port_index(p)); }

inline std::optional<Port> port_from_letter(char c) {
  if (c >= 'A' && c <= 'D') return static_cast<Port>(c - 'A');
  if (c >= 'a' && c <= 'd') return static_cast<Port>(c - 'a');
  return std::nullopt;
}

// One port's inputs for one external clock cycle, sampled at CLKP.
// addr and wdata are only meaningful while enabled is true.
struct PortRequest {
  bool enabled = false;         // port_en
  bool write_not_read = false;  // w/rb: 1 = write, 0 = read
  Word addr = 0;
  Word wdata = 0;

  static PortRequest read(Word addr) { return {true, false, addr, 0}; }
  static PortRequest write(Word addr, Word data) { return {true, true, addr, data}; }

  bool operator==(const PortRequest&) const = default;
};

// What a port drives on its read-data pins. fresh is set only when the value
// was captured from a read serviced in the previous external cycle; otherwise
// rdata just holds its last value.
struct PortOutput {
  Word rdata = 0;
  bool fresh = false;

  bool operator==(const PortOutput&) const = default;
};

using RequestFrame = std::array<PortRequest, kPortCount>;
using OutputFrame = std::array<PortOutput, kPortCount>;

using PriorityOrder = std::array<Port, kPortCount>;
inline constexpr PriorityOrder kDefaultPriority{Port::A, Port::B, Port::C, Port::D};

enum class Err {
  NonPermutationPriority,
  ZeroWidth,
  ZeroDepth,
  WidthTooLarge,
  OutOfRange,
  AddrOutOfRange,
  DataTooWide,
  CurrentDisabled,
  InternalSequencing,
  UnknownKey,
  BadValue,
  BadField,
  NonMonotonicTime,
  Io,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NonPermutationPriority: return "NonPermutationPriority";
    case Err::ZeroWidth: return "ZeroWidth";
    case Err::ZeroDepth: return "ZeroDepth";
    case Err::WidthTooLarge: return "WidthTooLarge";
    case Err::OutOfRange: return "OutOfRange";
    case Err::AddrOutOfRange: return "AddrOutOfRange";
    case Err::DataTooWide: return "DataTooWide";
    case Err::CurrentDisabled: return "CurrentDisabled";
    case Err::InternalSequencing: return "InternalSequencing";
    case Err::UnknownKey: return "UnknownKey";
    case Err::BadValue: return "BadValue";
    case Err::BadField: return "BadField";
    case Err::NonMonotonicTime: return "NonMonotonicTime";
    case Err::Io: return "Io";
  }
  return "?";
}

class SimError : public std::runtime_error {
 public:
  // loc is a line number for file-parse errors and a cycle index for
  // stimulus/run errors; -1 when it does not apply. port is -1 or 0..3.
  SimError(Err code, const std::string& msg, long long loc = -1, int port = -1)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg),
        code_(code),
        msg_(msg),
        loc_(loc),
        port_(port) {}

  Err code() const { return code_; }
  const std::string& msg() const { return msg_; }  // without the code prefix
  long long loc() const { return loc_; }
  int port() const { return port_; }

 private:
  Err code_;
  std::string msg_;
  long long loc_;
  int port_;
};

struct SimConfig {
  unsigned word_width = 8;
  std::uint64_t array_words = 2048;  // default 8 x 2048 = a 16 Kb macro
  PriorityOrder priority = kDefaultPriority;
  std::uint64_t clk_freq_hz = 250'000'000;  // reporting only, not a timing model
  Word init_fill = 0;

  Word word_mask() const {
    return word_width >= 64 ? ~Word{0} : ((Word{1} << word_width) - 1);
  }
  std::uint64_t capacity_bits() const { return word_width * array_words; }

  bool operator==(const SimConfig&) const = default;
};

inline SimConfig validate_config(SimConfig cfg) {
  if (cfg.word_width == 0)
    throw SimError(Err::ZeroWidth, "word_width must be at least 1");
  if (cfg.word_width > kMaxWordWidth)
    throw SimError(Err::WidthTooLarge, "word_width above " + std::to_string(kMaxWordWidth) +
                                           " is not supported");
  if (cfg.array_words == 0)
    throw SimError(Err::ZeroDepth, "array_words must be at least 1");
  if (cfg.clk_freq_hz == 0 || cfg.clk_freq_hz > 1'000'000'000'000ULL)
    throw SimError(Err::BadValue, "clk_freq_hz must be in 1..1e12");
  std::array<bool, kPortCount> seen{};
  for (Port p : cfg.priority) {
    int i = port_index(p);
    if (i < 0 || i >= kPortCount || seen[i])
      throw SimError(Err::NonPermutationPriority,
                     "priority_order must list each of A,B,C,D exactly once");
    seen[i] = true;
  }
  return cfg;
}

// Per-run totals. effective_rate_hz is computed in integer arithmetic so the
// all-4-port case at 250 MHz lands on exactly 1 GHz.
struct Stats {
  std::uint64_t cycles_run = 0;
  std::uint64_t sram_accesses = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t effective_rate_hz = 0;
  std::uint64_t bandwidth_bits_per_s = 0;

  bool operator==(const Stats&) const = default;
};

}  // namespace qpsim
