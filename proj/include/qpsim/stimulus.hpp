#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qpsim/types.hpp"

namespace qpsim {

// Text formats. Both are line-oriented; blank lines and '#' comments are
// ignored.
//
// Config:       key = value
//   word_width   = <decimal>           bits per word
//   array_words  = <decimal>           words in the macro
//   priority     = <perm of A,B,C,D>   e.g. "D,C,B,A"
//   clk_freq_hz  = <decimal>           external clock, reporting only
//   init_fill    = <hex>               initial word value
// Unknown keys are errors. Omitted keys keep their defaults.
//
// Stimulus: one line per external cycle, four ';'-separated port fields
// (A;B;C;D), each one of
//   -                   port disabled
//   R:<addr>            read, addr in hex
//   W:<addr>:<data>     write, addr and data in hex

namespace stim_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool parse_u64(std::string_view s, int base, std::uint64_t& out) {
  if (s.empty()) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else return false;
    if (d >= base) return false;
    std::uint64_t nv = v * base + static_cast<std::uint64_t>(d);
    if (nv / base != v) return false;  // overflow
    v = nv;
  }
  out = v;
  return true;
}

// decimal, or hex with 0x prefix
inline bool parse_number(std::string_view s, std::uint64_t& out) {
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
    return parse_u64(s.substr(2), 16, out);
  return parse_u64(s, 10, out);
}

inline std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789ABCDEF";
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), digits[v & 0xF]);
    v >>= 4;
  }
  return s;
}

// Strips a trailing '#' comment and returns the trimmed payload.
inline std::string_view logical_line(std::string_view raw) {
  auto hash = raw.find('#');
  if (hash != std::string_view::npos) raw = raw.substr(0, hash);
  return trim(raw);
}

}  // namespace stim_detail

inline SimConfig parse_config(const std::string& text) {
  using namespace stim_detail;
  SimConfig cfg;
  std::istringstream in(text);
  std::string raw;
  long long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = logical_line(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw SimError(Err::BadValue, "line " + std::to_string(lineno) + ": expected key = value",
                     lineno);
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    auto bad = [&](const std::string& why) {
      return SimError(Err::BadValue,
                      "line " + std::to_string(lineno) + ": " + key + ": " + why, lineno);
    };
    std::uint64_t num = 0;
    if (key == "word_width") {
      if (!parse_number(value, num)) throw bad("not a number");
      cfg.word_width = static_cast<unsigned>(num);
    } else if (key == "array_words") {
      if (!parse_number(value, num)) throw bad("not a number");
      cfg.array_words = num;
    } else if (key == "clk_freq_hz") {
      if (!parse_number(value, num)) throw bad("not a number");
      cfg.clk_freq_hz = num;
    } else if (key == "init_fill") {
      if (!parse_number(value, num)) throw bad("not a number");
      cfg.init_fill = num;
    } else if (key == "priority") {
      PriorityOrder order{};
      int count = 0;
      std::size_t pos = 0;
      std::string val(value);
      while (pos <= val.size()) {
        auto comma = val.find(',', pos);
        std::string_view item =
            trim(std::string_view(val).substr(pos, comma == std::string::npos ? std::string::npos
                                                                              : comma - pos));
        if (item.size() != 1 || !port_from_letter(item[0]))
          throw bad("expected a comma-separated permutation of A,B,C,D");
        if (count >= kPortCount) throw bad("too many ports listed");
        order[count++] = *port_from_letter(item[0]);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (count != kPortCount) throw bad("expected exactly 4 ports");
      cfg.priority = order;
    } else {
      throw SimError(Err::UnknownKey, "line " + std::to_string(lineno) + ": unknown key '" +
                                          key + "'",
                     lineno);
    }
  }
  return validate_config(cfg);
}

inline std::string render_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "word_width = " << cfg.word_width << "\n";
  out << "array_words = " << cfg.array_words << "\n";
  out << "priority = ";
  for (int i = 0; i < kPortCount; ++i)
    out << (i ? "," : "") << port_letter(cfg.priority[i]);
  out << "\n";
  out << "clk_freq_hz = " << cfg.clk_freq_hz << "\n";
  out << "init_fill = 0x" << stim_detail::to_hex(cfg.init_fill) << "\n";
  return out.str();
}

inline std::vector<RequestFrame> parse_stimulus(const std::string& text, const SimConfig& cfg) {
  using namespace stim_detail;
  std::vector<RequestFrame> frames;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = logical_line(raw);
    if (line.empty()) continue;
    const long long cycle = static_cast<long long>(frames.size());

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      auto semi = line.find(';', pos);
      fields.push_back(trim(line.substr(pos, semi == std::string_view::npos ? std::string_view::npos
                                                                            : semi - pos)));
      if (semi == std::string_view::npos) break;
      pos = semi + 1;
    }
    if (fields.size() != kPortCount)
      throw SimError(Err::BadField,
                     "cycle " + std::to_string(cycle) + ": expected 4 port fields, got " +
                         std::to_string(fields.size()),
                     cycle);

    RequestFrame frame{};
    for (int p = 0; p < kPortCount; ++p) {
      std::string_view f = fields[p];
      std::string who = std::to_string(cycle) + ", port " +
                        std::string(1, port_letter(port_from_index(p)));
      auto bad_field = [&]() {
        return SimError(Err::BadField,
                        "cycle " + who + ": bad field '" + std::string(f) + "'", cycle, p);
      };
      if (f == "-") continue;
      if (f.size() < 2 || (f[0] != 'R' && f[0] != 'r' && f[0] != 'W' && f[0] != 'w') ||
          f[1] != ':')
        throw bad_field();
      const bool is_write = (f[0] == 'W' || f[0] == 'w');
      std::string_view rest = f.substr(2);
      std::uint64_t addr = 0, data = 0;
      if (is_write) {
        auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw bad_field();
        if (!parse_u64(trim(rest.substr(0, colon)), 16, addr)) throw bad_field();
        if (!parse_u64(trim(rest.substr(colon + 1)), 16, data)) throw bad_field();
      } else {
        if (!parse_u64(trim(rest), 16, addr)) throw bad_field();
      }
      if (addr >= cfg.array_words)
        throw SimError(Err::AddrOutOfRange,
                       "cycle " + who + ": addr 0x" + to_hex(addr) + " >= array_words " +
                           std::to_string(cfg.array_words),
                       cycle, p);
      if (is_write && (data & ~cfg.word_mask()))
        throw SimError(Err::DataTooWide,
                       "cycle " + who + ": data 0x" + to_hex(data) + " exceeds " +
                           std::to_string(cfg.word_width) + "-bit word",
                       cycle, p);
      frame[p] = is_write ? PortRequest::write(addr, data) : PortRequest::read(addr);
    }
    frames.push_back(frame);
  }
  return frames;
}

// Canonical text for a stimulus; parse_stimulus(render_stimulus(s)) == s for
// canonical frames (disabled ports all-default, reads carry wdata 0).
inline std::string render_stimulus(const std::vector<RequestFrame>& frames) {
  using stim_detail::to_hex;
  std::ostringstream out;
  for (const RequestFrame& frame : frames) {
    for (int p = 0; p < kPortCount; ++p) {
      if (p) out << "; ";
      const PortRequest& r = frame[p];
      if (!r.enabled)
        out << "-";
      else if (r.write_not_read)
        out << "W:" << to_hex(r.addr) << ":" << to_hex(r.wdata);
      else
        out << "R:" << to_hex(r.addr);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace qpsim
