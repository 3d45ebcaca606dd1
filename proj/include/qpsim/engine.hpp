#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpsim/arbiter.hpp"
#include "qpsim/clockgen.hpp"
#include "qpsim/sram.hpp"
#include "qpsim/trace.hpp"
#include "qpsim/types.hpp"

namespace qpsim {

// Wrapper state between external clock cycles.
struct EngineState {
  explicit EngineState(const SimConfig& cfg) : mem(cfg) {}

  std::uint64_t cycle = 0;
  RequestFrame latched{};
  std::optional<Port> selected;  // mux select; empty only while no port is enabled
  OutputFrame out_regs{};        // capture registers, written on BACK edges
  OutputFrame presented{};       // what the ports drove during the last cycle
  SramMacro mem;
};

// Trace destination for a run: the collected waveform plus the wrapper's
// signal layout and the tick geometry of one external period.
struct TraceSink {
  Trace* trace = nullptr;
  WrapperSignals sigs{};
  std::uint64_t period_ps = 4000;
};

inline std::uint64_t clk_period_ps(const SimConfig& cfg) {
  return 1'000'000'000'000ULL / cfg.clk_freq_hz;
}

inline TraceSink make_trace_sink(Trace& trace, const SimConfig& cfg) {
  TraceSink sink;
  sink.trace = &trace;
  sink.sigs = declare_wrapper_signals(trace, cfg);
  sink.period_ps = clk_period_ps(cfg);
  // 2*4 sub-cycle slots of at least 2 ps each must fit in one period, or the
  // 1 ps trace resolution cannot separate the edges
  if (sink.period_ps < 16)
    throw SimError(Err::BadValue,
                   "clk_freq_hz too high to trace at 1 ps resolution (period "
                   "must be at least 16 ps)");
  return sink;
}

// Architectural throughput: N accesses per external clock.
inline double effective_access_rate(double n_active_avg, std::uint64_t clk_freq_hz) {
  return n_active_avg * static_cast<double>(clk_freq_hz);
}

namespace engine_detail {

inline void check_requests(const RequestFrame& requests, const SimConfig& cfg) {
  for (int i = 0; i < kPortCount; ++i) {
    const PortRequest& r = requests[i];
    if (!r.enabled) continue;
    std::string who(1, port_letter(port_from_index(i)));
    if (r.addr >= cfg.array_words)
      throw SimError(Err::AddrOutOfRange,
                     "port " + who + ": addr " + std::to_string(r.addr) +
                         " >= array_words " + std::to_string(cfg.array_words),
                     -1, i);
    if (r.write_not_read && (r.wdata & ~cfg.word_mask()))
      throw SimError(Err::DataTooWide,
                     "port " + who + ": write data exceeds " +
                         std::to_string(cfg.word_width) + "-bit word",
                     -1, i);
  }
}

// Buffered per-cycle trace events; sorted by tick before hitting the
// recorder because pulse falls interleave with later rises.
struct CycleEvents {
  std::vector<TraceChange> ev;
  void add(std::uint64_t tick, std::uint32_t sig, Word value) {
    ev.push_back({tick, sig, value});
  }
  void flush(Trace& t) {
    std::stable_sort(ev.begin(), ev.end(),
                     [](const TraceChange& a, const TraceChange& b) { return a.tick < b.tick; });
    for (const TraceChange& c : ev) t.record(c.tick, c.sig, c.value);
  }
};

}  // namespace engine_detail

// One external clock cycle:
//   1. the ports present the previous cycle's output registers;
//   2. CLKP latches the inputs and async-loads the FSM with the
//      highest-priority enabled port;
//   3. each BACK edge services the selected port against the SRAM (reads are
//      captured into that port's output register), each CLK2 edge advances
//      the FSM to the next enabled port;
//   4. registers of ports that did not read this cycle hold their value with
//      fresh cleared.
// Returns what the ports presented during this cycle.
inline OutputFrame wrapper_cycle(EngineState& st, const RequestFrame& requests,
                                 const SimConfig& cfg, const TraceSink* sink = nullptr) {
  using namespace engine_detail;
  check_requests(requests, cfg);

  const OutputFrame presented = st.out_regs;
  st.presented = presented;

  st.latched = requests;
  const unsigned mask = enabled_mask(st.latched);
  const int n_active = count_enabled(st.latched);
  const ClockEvents clocks = generate_clock_events(n_active);

  st.mem.begin_cycle();
  for (PortOutput& o : st.out_regs) o.fresh = false;

  CycleEvents trace_ev;
  const std::uint64_t t0 = sink ? st.cycle * sink->period_ps : 0;
  const std::uint64_t slot_w = sink ? sink->period_ps / clocks.slot_count() : 0;
  const std::uint64_t half = slot_w / 2;
  auto slot_tick = [&](int slot) { return t0 + slot * slot_w; };

  if (sink) {
    const WrapperSignals& sg = sink->sigs;
    trace_ev.add(t0, sg.clk, 1);
    trace_ev.add(t0 + sink->period_ps / 2, sg.clk, 0);
    for (int i = 0; i < kPortCount; ++i) {
      trace_ev.add(t0, sg.port_en[i], st.latched[i].enabled ? 1 : 0);
      if (st.latched[i].enabled) {
        // disabled ports leave their input buses holding the old values
        trace_ev.add(t0, sg.w_rb[i], st.latched[i].write_not_read ? 1 : 0);
        trace_ev.add(t0, sg.addr[i], st.latched[i].addr);
        if (st.latched[i].write_not_read) trace_ev.add(t0, sg.w_data[i], st.latched[i].wdata);
      }
      trace_ev.add(t0, sg.r_data[i], presented[i].rdata);
    }
  }

  int serviced = 0;
  int last_pos = -1;
  auto priority_pos = [&](Port p) {
    for (int i = 0; i < kPortCount; ++i)
      if (cfg.priority[i] == p) return i;
    return kPortCount;  // unreachable for validated configs
  };

  for (const SubEvent& ev : clocks.events) {
    switch (ev.kind) {
      case SubEventKind::ClkpSpike: {
        st.selected = fsm_reset(mask, cfg.priority);
        if (sink) {
          trace_ev.add(t0, sink->sigs.clkp, 1);
          trace_ev.add(t0 + half, sink->sigs.clkp, 0);
          if (st.selected)
            trace_ev.add(t0, sink->sigs.sel, static_cast<Word>(port_index(*st.selected)));
        }
        break;
      }
      case SubEventKind::BackEdge: {
        if (!st.selected)
          throw SimError(Err::InternalSequencing, "BACK edge with no selected port");
        const int pos = priority_pos(*st.selected);
        if (pos <= last_pos)
          throw SimError(Err::InternalSequencing, "service order left priority order");
        last_pos = pos;
        const int idx = port_index(*st.selected);
        const PortRequest& req = st.latched[idx];
        if (!req.enabled)
          throw SimError(Err::InternalSequencing, "selected port is not enabled");
        if (req.write_not_read) {
          st.mem.write(req.addr, req.wdata);
        } else {
          st.out_regs[idx] = {st.mem.read(req.addr), true};
        }
        ++serviced;
        if (sink) {
          const std::uint64_t tk = slot_tick(ev.slot);
          trace_ev.add(tk, sink->sigs.back, 1);
          trace_ev.add(tk + half, sink->sigs.back, 0);
          trace_ev.add(tk, sink->sigs.mem_acc, 1);
          trace_ev.add(tk + half, sink->sigs.mem_acc, 0);
        }
        break;
      }
      case SubEventKind::Clk2Edge: {
        if (!st.selected)
          throw SimError(Err::InternalSequencing, "CLK2 edge with no selected port");
        st.selected = fsm_step(*st.selected, mask, cfg.priority);
        if (sink) {
          const std::uint64_t tk = slot_tick(ev.slot);
          trace_ev.add(tk, sink->sigs.clk2, 1);
          trace_ev.add(tk + half, sink->sigs.clk2, 0);
          trace_ev.add(tk, sink->sigs.sel, static_cast<Word>(port_index(*st.selected)));
        }
        break;
      }
    }
  }

  if (serviced != n_active)
    throw SimError(Err::InternalSequencing,
                   "serviced " + std::to_string(serviced) + " ports, expected " +
                       std::to_string(n_active));
  if (st.mem.access_log().back() != static_cast<std::uint64_t>(n_active))
    throw SimError(Err::InternalSequencing, "SRAM access count disagrees with n_active");

  if (sink) trace_ev.flush(*sink->trace);
  ++st.cycle;
  return presented;
}

struct RunResult {
  EngineState state;                 // state after the last cycle
  std::vector<OutputFrame> outputs;  // outputs[t] = what the ports showed during cycle t
  Trace trace;
  Stats stats;
};

// Fold wrapper_cycle over a stimulus. Errors gain the offending cycle index.
inline RunResult run_stimulus(const SimConfig& cfg, const std::vector<RequestFrame>& stimulus,
                              bool record_trace = true) {
  validate_config(cfg);
  RunResult r{EngineState(cfg), {}, {}, {}};
  TraceSink sink;
  if (record_trace) sink = make_trace_sink(r.trace, cfg);
  r.outputs.reserve(stimulus.size());
  for (std::size_t t = 0; t < stimulus.size(); ++t) {
    try {
      r.outputs.push_back(
          wrapper_cycle(r.state, stimulus[t], cfg, record_trace ? &sink : nullptr));
    } catch (const SimError& e) {
      throw SimError(e.code(), "cycle " + std::to_string(t) + ": " + e.msg(),
                     static_cast<long long>(t), e.port());
    }
  }
  r.stats = summarize(r.state.mem.access_log(), r.state.mem.total_reads(),
                      r.state.mem.total_writes(), cfg);
  return r;
}

}  // namespace qpsim
