#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qpsim/trace.hpp"
#include "qpsim/types.hpp"

namespace qpsim {

// IEEE 1364 textual VCD, the subset common to every viewer: $timescale,
// one $scope, $var wire declarations, $dumpvars with initial values, then
// #time sections with scalar (0<id>) and vector (b<bits> <id>) changes.
// Output is fully deterministic: identifiers come from declaration order and
// no date or host information is emitted, so identical runs give identical
// bytes.

namespace vcd_detail {

inline std::string make_id(std::uint32_t n) {
  // printable id alphabet '!'..'~'
  std::string s;
  do {
    s.push_back(static_cast<char>('!' + n % 94));
    n /= 94;
  } while (n > 0);
  return s;
}

inline std::string to_binary(Word v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), (v & 1) ? '1' : '0');
    v >>= 1;
  }
  return s;
}

inline void emit_value(std::ostream& out, const TraceSignal& sig, const std::string& id,
                       Word value) {
  if (sig.width == 1)
    out << (value & 1) << id << "\n";
  else
    out << "b" << to_binary(value) << " " << id << "\n";
}

}  // namespace vcd_detail

inline void write_vcd(std::ostream& out, const Trace& t) {
  using namespace vcd_detail;
  out << "$version qpsim $end\n";
  out << "$timescale " << t.timescale_ps << "ps $end\n";
  out << "$scope module wrapper $end\n";
  for (std::uint32_t i = 0; i < t.signals.size(); ++i) {
    const TraceSignal& s = t.signals[i];
    out << "$var wire " << s.width << " " << make_id(i) << " " << s.name;
    if (s.width > 1) out << " [" << (s.width - 1) << ":0]";
    out << " $end\n";
  }
  out << "$upscope $end\n";
  out << "$enddefinitions $end\n";
  out << "$dumpvars\n";
  for (std::uint32_t i = 0; i < t.signals.size(); ++i)
    emit_value(out, t.signals[i], make_id(i), t.initial[i]);
  out << "$end\n";
  bool have_tick = false;
  std::uint64_t cur = 0;
  for (const TraceChange& c : t.changes) {
    if (!have_tick || c.tick != cur) {
      if (have_tick && c.tick < cur)
        throw SimError(Err::NonMonotonicTime, "change list not time-ordered");
      out << "#" << c.tick << "\n";
      cur = c.tick;
      have_tick = true;
    }
    emit_value(out, t.signals[c.sig], make_id(c.sig), c.value);
  }
}

inline std::string emit_vcd(const Trace& t) {
  std::ostringstream os;
  write_vcd(os, t);
  return os.str();
}

// ---------------------------------------------------------------------------
// Minimal VCD reader. This is the round-trip oracle for write_vcd, so it
// shares nothing with the emitter: it re-derives everything from the text.

struct ParsedVcd {
  std::uint64_t timescale_ps = 1;
  std::vector<TraceSignal> signals;  // declaration order
  std::vector<Word> initial;
  std::vector<TraceChange> changes;
};

namespace vcd_detail {

class Tokens {
 public:
  explicit Tokens(const std::string& text) : in_(text) {}
  bool next(std::string& tok) { return static_cast<bool>(in_ >> tok); }
  std::string expect(const char* what) {
    std::string tok;
    if (!next(tok)) throw SimError(Err::BadValue, std::string("vcd ended inside ") + what);
    return tok;
  }
  void skip_until_end(const char* what) {
    std::string tok;
    while (next(tok))
      if (tok == "$end") return;
    throw SimError(Err::BadValue, std::string("vcd: missing $end after ") + what);
  }

 private:
  std::istringstream in_;
};

inline Word parse_binary(const std::string& bits, const std::string& ctx) {
  Word v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw SimError(Err::BadValue, "vcd: unsupported value bit '" + std::string(1, c) +
                                        "' in " + ctx);
    v = (v << 1) | static_cast<Word>(c - '0');
  }
  return v;
}

}  // namespace vcd_detail

inline ParsedVcd parse_vcd(const std::string& text) {
  using namespace vcd_detail;
  ParsedVcd r;
  Tokens toks(text);
  std::map<std::string, std::uint32_t> by_id;
  bool defs_done = false;
  bool in_dump = false;
  std::uint64_t tick = 0;
  bool seen_tick = false;

  auto apply = [&](const std::string& id, Word value) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw SimError(Err::BadValue, "vcd: change for undeclared id '" + id + "'");
    if (in_dump && !seen_tick)
      r.initial[it->second] = value;
    else
      r.changes.push_back({tick, it->second, value});
  };

  std::string tok;
  while (toks.next(tok)) {
    if (tok == "$date" || tok == "$version" || tok == "$comment" || tok == "$scope" ||
        tok == "$upscope") {
      toks.skip_until_end(tok.c_str());
    } else if (tok == "$timescale") {
      std::string body;
      std::string t2;
      while ((t2 = toks.expect("$timescale")) != "$end") body += t2;
      std::size_t pos = 0;
      while (pos < body.size() && body[pos] >= '0' && body[pos] <= '9') ++pos;
      if (pos == 0) throw SimError(Err::BadValue, "vcd: bad timescale '" + body + "'");
      std::uint64_t mag = std::stoull(body.substr(0, pos));
      std::string unit = body.substr(pos);
      std::uint64_t mult;
      if (unit == "ps") mult = 1;
      else if (unit == "ns") mult = 1000;
      else if (unit == "us") mult = 1000000;
      else if (unit == "ms") mult = 1000000000ULL;
      else if (unit == "s") mult = 1000000000000ULL;
      else throw SimError(Err::BadValue, "vcd: bad timescale unit '" + unit + "'");
      r.timescale_ps = mag * mult;
    } else if (tok == "$var") {
      std::string type = toks.expect("$var");
      std::string width_s = toks.expect("$var");
      std::string id = toks.expect("$var");
      std::string name = toks.expect("$var");
      std::string t2 = toks.expect("$var");
      if (t2 != "$end") {
        // optional bit range token, e.g. [7:0]
        if (toks.expect("$var") != "$end")
          throw SimError(Err::BadValue, "vcd: malformed $var for '" + name + "'");
      }
      unsigned width = static_cast<unsigned>(std::stoul(width_s));
      by_id[id] = static_cast<std::uint32_t>(r.signals.size());
      r.signals.push_back({name, width});
      r.initial.push_back(0);
    } else if (tok == "$enddefinitions") {
      toks.skip_until_end(tok.c_str());
      defs_done = true;
    } else if (tok == "$dumpvars") {
      in_dump = true;
    } else if (tok == "$end") {
      in_dump = false;
    } else if (tok[0] == '#') {
      std::uint64_t t2 = std::stoull(tok.substr(1));
      if (seen_tick && t2 < tick)
        throw SimError(Err::NonMonotonicTime, "vcd: time goes backwards at " + tok);
      tick = t2;
      seen_tick = true;
    } else if (tok[0] == '0' || tok[0] == '1') {
      if (!defs_done) throw SimError(Err::BadValue, "vcd: change before $enddefinitions");
      apply(tok.substr(1), static_cast<Word>(tok[0] - '0'));
    } else if (tok[0] == 'b' || tok[0] == 'B') {
      if (!defs_done) throw SimError(Err::BadValue, "vcd: change before $enddefinitions");
      Word v = parse_binary(tok.substr(1), tok);
      apply(toks.expect("vector change"), v);
    } else if (tok[0] == 'x' || tok[0] == 'z' || tok[0] == 'X' || tok[0] == 'Z' ||
               tok[0] == 'r' || tok[0] == 'R') {
      throw SimError(Err::BadValue, "vcd: unsupported value token '" + tok + "'");
    } else {
      throw SimError(Err::BadValue, "vcd: unexpected token '" + tok + "'");
    }
  }
  return r;
}

// Field-by-field comparison used by the round-trip tests.
inline bool same_waveform(const Trace& t, const ParsedVcd& p) {
  return t.timescale_ps == p.timescale_ps && t.signals == p.signals &&
         t.initial == p.initial && t.changes == p.changes;
}

}  // namespace qpsim
