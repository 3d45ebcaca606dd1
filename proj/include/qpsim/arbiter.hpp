#pragma once

#include <optional>
#include <string>

#include "qpsim/types.hpp"

namespace qpsim {

// Enabled-port bitmask, bit i = port i. Small enough that the arbiter tests
// can sweep all 16 masks against all 24 priority permutations.
inline unsigned enabled_mask(const RequestFrame& requests) {
  unsigned m = 0;
  for (int i = 0; i < kPortCount; ++i)
    if (requests[i].enabled) m |= 1u << i;
  return m;
}

inline bool mask_has(unsigned mask, Port p) { return (mask >> port_index(p)) & 1u; }

inline std::optional<Port> highest_priority(unsigned mask, const PriorityOrder& priority) {
  for (Port p : priority)
    if (mask_has(mask, p)) return p;
  return std::nullopt;
}

// Same selection as highest_priority, but triggered by the CLKP spike: the
// priority encoder asynchronously reloads the FSM at every CLK posedge.
inline std::optional<Port> fsm_reset(unsigned mask, const PriorityOrder& priority) {
  return highest_priority(mask, priority);
}

// One CLK2 transition: advance to the next enabled port after `current` in
// priority order, skipping disabled ports. Wraps to the first enabled port
// after the last one; a correct cycle never exercises the wrap because CLK2
// fires only n_active-1 times.
inline Port fsm_step(Port current, unsigned mask, const PriorityOrder& priority) {
  if (!mask_has(mask, current))
    throw SimError(Err::CurrentDisabled,
                   std::string("FSM state is disabled port ") + port_letter(current),
                   -1, port_index(current));
  int pos = 0;
  while (priority[pos] != current) ++pos;
  for (int step = 1; step <= kPortCount; ++step) {
    Port cand = priority[(pos + step) % kPortCount];
    if (mask_has(mask, cand)) return cand;
  }
  return current;  // mask == {current}: wrap lands back on it
}

}  // namespace qpsim
