#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpsim/engine.hpp"
#include "qpsim/oracle.hpp"
#include "qpsim/rng.hpp"
#include "qpsim/types.hpp"

namespace qpsim {

// Random stimulus used by `verify` and `gen`. The draw order is part of the
// tool's external contract (README "Random numbers"): Fisher-Yates over the
// priority first when asked for, then per cycle, for ports A..D in order,
// always four draws per port: enable bit, write bit, address, data. Draws for
// fields a port does not use are made and discarded so the stream does not
// depend on earlier outcomes.

inline PriorityOrder random_priority(Xorshift64Star& rng) {
  PriorityOrder order = kDefaultPriority;
  for (int i = kPortCount - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

inline RequestFrame random_frame(Xorshift64Star& rng, const SimConfig& cfg) {
  RequestFrame frame{};
  for (int p = 0; p < kPortCount; ++p) {
    const bool enabled = rng.coin();
    const bool write = rng.coin();
    const Word addr = rng.below(cfg.array_words);
    const Word data = rng.next() & cfg.word_mask();
    if (!enabled) continue;  // draws above keep the stream position fixed
    frame[p] = write ? PortRequest::write(addr, data) : PortRequest::read(addr);
  }
  return frame;
}

inline std::vector<RequestFrame> random_stimulus(Xorshift64Star& rng, const SimConfig& cfg,
                                                 std::uint64_t cycles) {
  std::vector<RequestFrame> stim;
  stim.reserve(cycles);
  for (std::uint64_t t = 0; t < cycles; ++t) stim.push_back(random_frame(rng, cfg));
  return stim;
}

struct Divergence {
  std::string kind;  // "output" or "memory"
  std::uint64_t cycle = 0;
  int port = -1;     // output divergences
  std::uint64_t addr = 0;  // memory divergences
  Word expected = 0;
  bool expected_fresh = false;
  Word got = 0;
  bool got_fresh = false;
};

// Test-only hook: mutates the engine state after each cycle so the harness's
// ability to detect divergence can itself be checked.
using FaultHook = std::function<void(EngineState&, std::uint64_t cycle)>;

// Runs engine and oracle over the same stimulus and compares them under the
// one-cycle presentation shift: what the oracle read at cycle t must appear
// at the ports during cycle t+1 (for the final cycle, in the output
// registers), and the two memories must be identical afterwards.
inline std::optional<Divergence> check_equivalence(const SimConfig& cfg,
                                                   const std::vector<RequestFrame>& stimulus,
                                                   const FaultHook& fault = {}) {
  EngineState st(cfg);
  std::vector<OutputFrame> outs;
  outs.reserve(stimulus.size());
  for (std::uint64_t t = 0; t < stimulus.size(); ++t) {
    outs.push_back(wrapper_cycle(st, stimulus[t], cfg));
    if (fault) fault(st, t);
  }
  const OracleRun oracle = oracle_run(cfg, stimulus);

  const std::uint64_t n = stimulus.size();
  for (std::uint64_t t = 0; t < n; ++t) {
    const OutputFrame& got = (t + 1 < n) ? outs[t + 1] : st.out_regs;
    for (int p = 0; p < kPortCount; ++p) {
      const std::optional<Word>& want = oracle.results[t][p];
      const PortOutput& o = got[p];
      if (o.fresh != want.has_value() || (want && o.rdata != *want)) {
        Divergence d;
        d.kind = "output";
        d.cycle = t;
        d.port = p;
        d.expected = want.value_or(0);
        d.expected_fresh = want.has_value();
        d.got = o.rdata;
        d.got_fresh = o.fresh;
        return d;
      }
    }
  }
  for (std::uint64_t a = 0; a < cfg.array_words; ++a) {
    if (st.mem.peek(a) != oracle.mem[a]) {
      Divergence d;
      d.kind = "memory";
      d.cycle = n;
      d.addr = a;
      d.expected = oracle.mem[a];
      d.got = st.mem.peek(a);
      return d;
    }
  }
  return std::nullopt;
}

}  // namespace qpsim
