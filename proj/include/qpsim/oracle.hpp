#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qpsim/types.hpp"

namespace qpsim {

// Reference model for equivalence testing. Deliberately has none of the
// wrapper's structure: no clocks, no FSM, no latches, no output registers.
// One cycle is a plain fold over the enabled ports in priority order, writes
// applied immediately, reads taken from the memory as it stands. Keep it that
// way; its value is exactly that it cannot share a bug with the engine.

using OracleResults = std::array<std::optional<Word>, kPortCount>;

inline OracleResults oracle_cycle(std::vector<Word>& mem, const RequestFrame& requests,
                                  const PriorityOrder& priority, Word word_mask) {
  OracleResults results{};
  for (Port p : priority) {
    const PortRequest& r = requests[port_index(p)];
    if (!r.enabled) continue;
    if (r.addr >= mem.size())
      throw SimError(Err::AddrOutOfRange,
                     "addr " + std::to_string(r.addr) + " >= " + std::to_string(mem.size()),
                     -1, port_index(p));
    if (r.write_not_read) {
      if (r.wdata & ~word_mask)
        throw SimError(Err::DataTooWide, "write data exceeds word width", -1, port_index(p));
      mem[r.addr] = r.wdata;
    } else {
      results[port_index(p)] = mem[r.addr];
    }
  }
  return results;
}

struct OracleRun {
  std::vector<Word> mem;
  std::vector<OracleResults> results;  // results[t] = reads requested at cycle t
};

// Note: the one-cycle presentation delay of the engine is NOT applied here;
// the comparison harness shifts by one cycle when lining the two up.
inline OracleRun oracle_run(const SimConfig& cfg, const std::vector<RequestFrame>& stimulus) {
  OracleRun run;
  run.mem.assign(cfg.array_words, cfg.init_fill & cfg.word_mask());
  run.results.reserve(stimulus.size());
  for (std::size_t t = 0; t < stimulus.size(); ++t) {
    try {
      run.results.push_back(oracle_cycle(run.mem, stimulus[t], cfg.priority, cfg.word_mask()));
    } catch (const SimError& e) {
      throw SimError(e.code(), "cycle " + std::to_string(t) + ": " + e.msg(),
                     static_cast<long long>(t), e.port());
    }
  }
  return run;
}

}  // namespace qpsim
