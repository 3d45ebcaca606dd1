// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criteria with a stated time budget are wall-clocked and fail on overrun.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "qpsim/qpsim.hpp"

using namespace qpsim;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

template <typename A, typename B>
void require_eq(const A& a, const B& b, const std::string& what) {
  if (!(a == static_cast<A>(b))) {
    std::ostringstream os;
    os << what << " (got " << a << ", want " << b << ")";
    throw CheckFailure(os.str());
  }
}

const std::string kScenarioDir = QPSIM_SCENARIO_DIR;

class Scratch {
 public:
  Scratch() {
    dir_ = std::filesystem::temp_directory_path() /
           ("qpsim_accept_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

 private:
  std::filesystem::path dir_;
};

std::string all_port_write_stim(int cycles) {
  std::string s;
  for (int i = 0; i < cycles; ++i) s += "W:0:11; W:1:22; W:2:33; W:3:44\n";
  return s;
}

std::string one_port_write_stim(int cycles) {
  std::string s;
  for (int i = 0; i < cycles; ++i) s += "W:0:11; -; -; -\n";
  return s;
}

std::uint64_t stat_value(const std::string& stats, const std::string& key) {
  auto pos = stats.find(key + ": ");
  require(pos != std::string::npos, "stats output missing key " + key);
  return std::stoull(stats.substr(pos + key.size() + 2));
}

// ---------------------------------------------------------------------------

// 1. 4x bandwidth: 1000 all-4-port cycles at 250 MHz -> exactly 1 GHz and 4x
//    the accesses of the matching 1-port run.
void criterion_bandwidth(std::ostream& log) {
  Scratch tmp;
  std::string cfg = tmp.write("cfg", "");  // defaults: 8 x 2048 @ 250 MHz

  std::ostringstream out4, err4;
  RunOptions opt4{cfg, tmp.write("four.stim", all_port_write_stim(1000)), {}, {}};
  require_eq(cmd_run(opt4, out4, err4), kExitOk, "4-port run exit code");
  require_eq(stat_value(out4.str(), "effective_rate_hz"), 1'000'000'000ULL,
             "effective_rate_hz of the all-4-port run");
  require_eq(stat_value(out4.str(), "bandwidth_bits_per_s"), 8'000'000'000ULL,
             "bandwidth of the all-4-port run");

  std::ostringstream out1, err1;
  RunOptions opt1{cfg, tmp.write("one.stim", one_port_write_stim(1000)), {}, {}};
  require_eq(cmd_run(opt1, out1, err1), kExitOk, "1-port run exit code");

  const std::uint64_t acc4 = stat_value(out4.str(), "accesses");
  const std::uint64_t acc1 = stat_value(out1.str(), "accesses");
  require_eq(acc4, 4000ULL, "accesses in the 4-port run");
  require_eq(acc4, 4 * acc1, "4-port accesses vs 4x the 1-port accesses");
  require_eq(stat_value(out1.str(), "effective_rate_hz"), 250'000'000ULL,
             "1-port baseline rate");
  log << "rate=1GHz bandwidth=8Gb/s accesses " << acc4 << " vs " << acc1;
}

// 2. Clock rule: N BACK / N-1 CLK2 pulses for every n, and the fig4 schedule
//    visible in the emitted VCD.
void criterion_clock_rule(std::ostream& log) {
  for (int n = 0; n <= 4; ++n) {
    ClockEvents ev = generate_clock_events(n);
    int back = 0, clk2 = 0, clkp = 0;
    for (const SubEvent& e : ev.events) {
      back += e.kind == SubEventKind::BackEdge;
      clk2 += e.kind == SubEventKind::Clk2Edge;
      clkp += e.kind == SubEventKind::ClkpSpike;
    }
    require_eq(back, n, "BACK pulse count for n=" + std::to_string(n));
    require_eq(clk2, std::max(n - 1, 0), "CLK2 pulse count for n=" + std::to_string(n));
    require_eq(clkp, 1, "CLKP spike count");
    require(ev.events.front().kind == SubEventKind::ClkpSpike, "CLKP must come first");
  }

  Scratch tmp;
  std::ostringstream out, err;
  RunOptions opt{kScenarioDir + "/default.cfg", kScenarioDir + "/fig4.stim",
                 tmp.path("fig4.vcd"), {}};
  require_eq(cmd_run(opt, out, err), kExitOk, "fig4 run exit code");
  ParsedVcd vcd = parse_vcd(Scratch::slurp(tmp.path("fig4.vcd")));

  auto rises_per_cycle = [&](const std::string& name) {
    std::uint32_t id = static_cast<std::uint32_t>(-1);
    for (std::uint32_t s = 0; s < vcd.signals.size(); ++s)
      if (vcd.signals[s].name == name) id = s;
    require(id != static_cast<std::uint32_t>(-1), "VCD lacks signal " + name);
    std::vector<int> per(4, 0);
    for (const TraceChange& c : vcd.changes)
      if (c.sig == id && c.value == 1) per[c.tick / 4000]++;
    return per;
  };
  require(rises_per_cycle("BACK") == std::vector<int>{4, 3, 2, 1},
          "per-cycle BACK pulses in the fig4 VCD");
  require(rises_per_cycle("CLK2") == std::vector<int>{3, 2, 1, 0},
          "per-cycle CLK2 pulses in the fig4 VCD");
  log << "N/N-1 rule holds for n=0..4; fig4 VCD shows BACK [4,3,2,1], CLK2 [3,2,1,0]";
}

// 3. Arbitration walk, exhaustive over 16 masks x 24 permutations.
void criterion_arbitration(std::ostream& log) {
  std::array<Port, 4> perm = {Port::A, Port::B, Port::C, Port::D};
  int cases = 0;
  do {
    PriorityOrder prio = perm;
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::vector<Port> expected;
      for (Port p : prio)
        if (mask_has(mask, p)) expected.push_back(p);

      std::optional<Port> sel = fsm_reset(mask, prio);
      if (expected.empty()) {
        require(!sel.has_value(), "reset must be empty for an empty mask");
        ++cases;
        continue;
      }
      std::vector<Port> walk{*sel};
      for (std::size_t i = 1; i < expected.size(); ++i) {
        sel = fsm_step(*sel, mask, prio);
        walk.push_back(*sel);
      }
      require(walk == expected, "walk must visit enabled ports in priority order");
      ++cases;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  require_eq(cases, 16 * 24, "exhaustive case count");
  log << cases << " mask x permutation cases, each visits every enabled port exactly once";
}

// 4. Oracle equivalence under random configs, 10 seeds x 10^4 cycles.
void criterion_oracle_equivalence(std::ostream& log) {
  Scratch tmp;
  Xorshift64Star meta(2024);
  std::uint64_t total_cycles = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimConfig cfg;
    cfg.word_width = 1 + static_cast<unsigned>(meta.below(32));  // 1..32
    cfg.array_words = 16 + meta.below(4096 - 16 + 1);            // 16..4096
    std::string cfg_path = tmp.write("cfg" + std::to_string(seed), render_config(cfg));

    std::ostringstream out, err;
    VerifyOptions opt{cfg_path, seed, 10000};
    int rc = cmd_verify(opt, out, err);
    require_eq(rc, kExitOk, "verify seed " + std::to_string(seed) + ": " + err.str());
    total_cycles += opt.cycles;
  }
  log << "10 seeds x 10000 cycles (" << total_cycles << " cycles), zero divergences";
}

// 5. Single-port degeneration vs a bare macro replay, 1000 random ops.
void criterion_single_port(std::ostream& log) {
  SimConfig cfg;
  cfg.array_words = 256;
  Xorshift64Star rng(555);
  const int port = 1;  // port B only

  std::vector<RequestFrame> stim;
  SramMacro bare(cfg);
  std::vector<std::optional<Word>> replay;
  for (int i = 0; i < 1000; ++i) {
    RequestFrame f{};
    std::uint64_t addr = rng.below(cfg.array_words);
    if (rng.coin()) {
      Word data = rng.next() & cfg.word_mask();
      f[port] = PortRequest::write(addr, data);
      bare.write(addr, data);
      replay.push_back(std::nullopt);
    } else {
      f[port] = PortRequest::read(addr);
      replay.push_back(bare.read(addr));
    }
    stim.push_back(f);
  }

  RunResult r = run_stimulus(cfg, stim, false);
  require(r.state.mem.words() == bare.words(), "final memories must match");
  for (std::size_t t = 0; t < stim.size(); ++t) {
    const PortOutput& out =
        (t + 1 < stim.size()) ? r.outputs[t + 1][port] : r.state.out_regs[port];
    require_eq(out.fresh, replay[t].has_value(),
               "fresh flag at op " + std::to_string(t));
    if (replay[t])
      require_eq(out.rdata, *replay[t], "read value at op " + std::to_string(t));
  }
  require_eq(r.stats.sram_accesses, 1000ULL, "one access per op");
  log << "1000 ops replayed identically (one-cycle shift applied)";
}

// 6. Latency contract: fresh data exactly one cycle after the read, never
//    earlier or later.
void criterion_latency(std::ostream& log) {
  SimConfig cfg;
  cfg.array_words = 128;
  Xorshift64Star rng(777);
  cfg.priority = random_priority(rng);
  std::vector<RequestFrame> stim = random_stimulus(rng, cfg, 3000);

  RunResult r = run_stimulus(cfg, stim, false);
  OracleRun oracle = oracle_run(cfg, stim);

  for (int p = 0; p < kPortCount; ++p)
    require(!r.outputs[0][p].fresh, "nothing can be fresh in cycle 0");

  std::uint64_t checked = 0;
  for (std::size_t t = 0; t < stim.size(); ++t) {
    for (int p = 0; p < kPortCount; ++p) {
      const bool requested_read = stim[t][p].enabled && !stim[t][p].write_not_read;
      const PortOutput& at_t1 =
          (t + 1 < stim.size()) ? r.outputs[t + 1][p] : r.state.out_regs[p];
      // fresh at t+1 if and only if a read was requested at t
      require_eq(at_t1.fresh, requested_read,
                 "fresh flag at cycle " + std::to_string(t + 1) + " port " +
                     std::string(1, port_letter(port_from_index(p))));
      if (requested_read) {
        require(oracle.results[t][p].has_value(), "oracle must have the read");
        require_eq(at_t1.rdata, *oracle.results[t][p],
                   "read value at cycle " + std::to_string(t + 1));
        ++checked;
      }
    }
  }
  log << checked << " reads, each presented exactly once, one cycle after request";
}

// 7. Determinism: byte-identical VCD/stats files and verify output.
void criterion_determinism(std::ostream& log) {
  Scratch tmp;
  const std::string cfg = kScenarioDir + "/default.cfg";
  const std::string stim = kScenarioDir + "/fig4.stim";

  std::ostringstream o1, e1, o2, e2;
  RunOptions a{cfg, stim, tmp.path("a.vcd"), tmp.path("a.stats")};
  RunOptions b{cfg, stim, tmp.path("b.vcd"), tmp.path("b.stats")};
  require_eq(cmd_run(a, o1, e1), kExitOk, "first run");
  require_eq(cmd_run(b, o2, e2), kExitOk, "second run");
  require(Scratch::slurp(tmp.path("a.vcd")) == Scratch::slurp(tmp.path("b.vcd")),
          "VCD files must be byte-identical");
  require(Scratch::slurp(tmp.path("a.stats")) == Scratch::slurp(tmp.path("b.stats")),
          "stats files must be byte-identical");
  require(o1.str() == o2.str(), "run stdout must be identical");

  std::ostringstream v1o, v1e, v2o, v2e;
  VerifyOptions v{cfg, 7, 2000};
  require_eq(cmd_verify(v, v1o, v1e), kExitOk, "first verify");
  require_eq(cmd_verify(v, v2o, v2e), kExitOk, "second verify");
  require(v1o.str() == v2o.str(), "verify output must be identical");
  log << "repeated run/verify invocations are byte-identical";
}

// 8. VCD validity: emitted files survive the independent parser with the
//    exact change list. (Third-party consumer check: see README, CI notes.)
void criterion_vcd_validity(std::ostream& log) {
  SimConfig cfg;
  std::vector<RequestFrame> stim = parse_stimulus(
      Scratch::slurp(kScenarioDir + "/fig4.stim"), cfg);
  RunResult fig4 = run_stimulus(cfg, stim);
  require(same_waveform(fig4.trace, parse_vcd(emit_vcd(fig4.trace))),
          "fig4 VCD must round-trip");

  Xorshift64Star rng(12);
  SimConfig rcfg;
  rcfg.array_words = 64;
  rcfg.word_width = 16;
  std::vector<RequestFrame> rstim = random_stimulus(rng, rcfg, 200);
  RunResult rr = run_stimulus(rcfg, rstim);
  require(same_waveform(rr.trace, parse_vcd(emit_vcd(rr.trace))),
          "random-run VCD must round-trip");
  log << "emit/parse round trip exact on fig4 and a 200-cycle random run";
}

struct Criterion {
  int number;
  std::string name;
  std::function<void(std::ostream&)> fn;
  double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "4x bandwidth at 250 MHz", criterion_bandwidth, 1.0},
      {2, "clock rule: N BACK / N-1 CLK2 pulses", criterion_clock_rule, 1.0},
      {3, "arbitration walk (16 masks x 24 priorities)", criterion_arbitration, 1.0},
      {4, "oracle equivalence, 10 seeds x 10^4 cycles", criterion_oracle_equivalence, 30.0},
      {5, "single-port degeneration", criterion_single_port, 0.0},
      {6, "one-cycle read latency contract", criterion_latency, 0.0},
      {7, "byte-identical determinism", criterion_determinism, 0.0},
      {8, "VCD validity round trip", criterion_vcd_validity, 0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    try {
      c.fn(detail);
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
      ok = false;
      why = "exceeded " + std::to_string(c.budget_seconds) + "s budget";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name;
    if (ok && detail.str().size()) std::cout << " -- " << detail.str();
    if (!ok) std::cout << " -- " << why;
    std::cout << " (" << std::fixed << std::setprecision(2) << secs << "s)" << std::endl;
    std::cout.unsetf(std::ios::fixed);
    failures += ok ? 0 : 1;
  }
  if (failures) {
    std::cout << failures << " criterion(s) FAILED" << std::endl;
    return 1;
  }
  std::cout << "all 8 acceptance criteria passed" << std::endl;
  return 0;
}
