#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpsim/types.hpp"

namespace qpsim {

// Sub-cycle events inside one external clock period. CLKP spikes once at the
// CLK posedge (input latch + FSM reset), then BACK fires once per serviced
// port (output capture) and CLK2 once per port-to-port transition. For N
// enabled ports that is N BACK pulses and N-1 CLK2 pulses.
enum class SubEventKind : std::uint8_t { ClkpSpike, BackEdge, Clk2Edge };

struct SubEvent {
  SubEventKind kind;
  int ordinal;  // pulse number k, 1-based; 0 for the CLKP spike
  int slot;     // tick slot inside the cycle, 0 .. slot_count()-1

  bool operator==(const SubEvent&) const = default;
};

struct ClockEvents {
  int n_active = 0;
  std::vector<SubEvent> events;
  std::optional<std::uint8_t> b1b0;  // enabled-port count encoding, n_active >= 1 only

  // One external period is split into 2*max(n_active,1) equal tick slots:
  // CLKP at slot 0, BackEdge(k) at slot 2k-1, Clk2Edge(k) at slot 2k.
  int slot_count() const { return 2 * std::max(n_active, 1); }
};

inline int count_enabled(const RequestFrame& requests) {
  int n = 0;
  for (const PortRequest& r : requests) n += r.enabled ? 1 : 0;
  return n;
}

// B1B0: 00 => 1 port, 01 => 2 ports, 10 => 3 ports, 11 => 4 ports.
inline std::uint8_t encode_port_count(int n) {
  if (n < 1 || n > kPortCount)
    throw SimError(Err::OutOfRange,
                   "port count " + std::to_string(n) + " has no B1B0 encoding");
  return static_cast<std::uint8_t>(n - 1);
}

inline ClockEvents generate_clock_events(int n_active) {
  ClockEvents ev;
  ev.n_active = n_active;
  ev.events.push_back({SubEventKind::ClkpSpike, 0, 0});
  for (int k = 1; k <= n_active; ++k) {
    ev.events.push_back({SubEventKind::BackEdge, k, 2 * k - 1});
    if (k < n_active) ev.events.push_back({SubEventKind::Clk2Edge, k, 2 * k});
  }
  if (n_active >= 1) ev.b1b0 = encode_port_count(n_active);
  return ev;
}

}  // namespace qpsim
