#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qpsim/types.hpp"

namespace qpsim {

struct TraceSignal {
  std::string name;
  unsigned width;  // bits

  bool operator==(const TraceSignal&) const = default;
};

struct TraceChange {
  std::uint64_t tick;
  std::uint32_t sig;  // index into Trace::signals
  Word value;

  bool operator==(const TraceChange&) const = default;
};

// Recorded waveform: declared signals with initial values, plus a
// time-ordered list of value changes. record() drops writes that do not
// change a signal's value, so the change list is a true VCD-style delta
// stream (each BACK pulse shows up as exactly one rise and one fall).
struct Trace {
  std::uint64_t timescale_ps = 1;
  std::vector<TraceSignal> signals;
  std::vector<Word> initial;  // parallel to signals
  std::vector<TraceChange> changes;

  std::uint32_t add_signal(std::string name, unsigned width, Word initial_value = 0) {
    signals.push_back({std::move(name), width});
    initial.push_back(initial_value);
    last_value_.push_back(initial_value);
    last_tick_.push_back(0);
    has_change_.push_back(false);
    return static_cast<std::uint32_t>(signals.size() - 1);
  }

  void record(std::uint64_t tick, std::uint32_t sig, Word value) {
    if (!changes.empty() && tick < changes.back().tick)
      throw SimError(Err::NonMonotonicTime,
                     "tick " + std::to_string(tick) + " after tick " +
                         std::to_string(changes.back().tick));
    if (value == last_value_[sig]) return;
    if (has_change_[sig] && last_tick_[sig] == tick)
      throw SimError(Err::NonMonotonicTime,
                     "signal '" + signals[sig].name + "' written twice at tick " +
                         std::to_string(tick));
    changes.push_back({tick, sig, value});
    last_value_[sig] = value;
    last_tick_[sig] = tick;
    has_change_[sig] = true;
  }

  bool operator==(const Trace& o) const {
    return timescale_ps == o.timescale_ps && signals == o.signals &&
           initial == o.initial && changes == o.changes;
  }

 private:
  std::vector<Word> last_value_;
  std::vector<std::uint64_t> last_tick_;
  std::vector<bool> has_change_;
};

// Signal ids for the wrapper's standard dump layout.
struct WrapperSignals {
  std::uint32_t clk, clkp, back, clk2, sel, mem_acc;
  std::array<std::uint32_t, kPortCount> port_en, w_rb, addr, w_data, r_data;
};

inline unsigned addr_bits(std::uint64_t array_words) {
  if (array_words <= 1) return 1;
  return static_cast<unsigned>(std::bit_width(array_words - 1));
}

inline WrapperSignals declare_wrapper_signals(Trace& t, const SimConfig& cfg) {
  WrapperSignals s{};
  s.clk = t.add_signal("CLK", 1);
  s.clkp = t.add_signal("CLKP", 1);
  s.back = t.add_signal("BACK", 1);
  s.clk2 = t.add_signal("CLK2", 1);
  s.sel = t.add_signal("SEL", 2);
  const unsigned abits = addr_bits(cfg.array_words);
  for (int i = 0; i < kPortCount; ++i) {
    std::string p(1, port_letter(port_from_index(i)));
    s.port_en[i] = t.add_signal(p + "_port_en", 1);
    s.w_rb[i] = t.add_signal(p + "_w_rb", 1);
    s.addr[i] = t.add_signal(p + "_addr", abits);
    s.w_data[i] = t.add_signal(p + "_w_data", cfg.word_width);
    s.r_data[i] = t.add_signal(p + "_r_data", cfg.word_width);
  }
  s.mem_acc = t.add_signal("MEM_ACC", 1);
  return s;
}

// Run totals from the per-cycle access counts. Rate and bandwidth stay in
// integer arithmetic: accesses * clk / cycles is exact for every schedule the
// acceptance suite checks (and truncates toward zero otherwise).
inline Stats summarize(const std::vector<std::uint64_t>& per_cycle_accesses,
                       std::uint64_t reads, std::uint64_t writes, const SimConfig& cfg) {
  Stats st;
  st.cycles_run = per_cycle_accesses.size();
  for (std::uint64_t c : per_cycle_accesses) st.sram_accesses += c;
  st.reads = reads;
  st.writes = writes;
  if (st.sram_accesses != reads + writes)
    throw SimError(Err::InternalSequencing,
                   "access log total disagrees with read/write counters");
  if (st.cycles_run > 0)
    st.effective_rate_hz = st.sram_accesses * cfg.clk_freq_hz / st.cycles_run;
  st.bandwidth_bits_per_s = st.effective_rate_hz * cfg.word_width;
  return st;
}

}  // namespace qpsim
