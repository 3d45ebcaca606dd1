#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "qpsim/engine.hpp"
#include "qpsim/stimulus.hpp"
#include "qpsim/vcd.hpp"
#include "qpsim/verify.hpp"

namespace qpsim {

// Exit codes shared by all subcommands:
//   0  success
//   1  file / parse / validation problem (diagnostic names file and line)
//   2  internal invariant failure
//   3  verify found a divergence
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInternal = 2;
inline constexpr int kExitDivergence = 3;

namespace cli_detail {

inline int exit_code_for(const SimError& e) {
  switch (e.code()) {
    case Err::InternalSequencing:
    case Err::CurrentDisabled:
    case Err::NonMonotonicTime:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError(Err::Io, path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SimError(Err::Io, path + ": cannot open for writing");
  out << content;
  if (!out) throw SimError(Err::Io, path + ": write failed");
}

inline std::string format_stats(const Stats& s) {
  std::ostringstream out;
  out << "cycles: " << s.cycles_run << "\n";
  out << "accesses: " << s.sram_accesses << "\n";
  out << "reads: " << s.reads << "\n";
  out << "writes: " << s.writes << "\n";
  out << "effective_rate_hz: " << s.effective_rate_hz << "\n";
  out << "bandwidth_bits_per_s: " << s.bandwidth_bits_per_s << "\n";
  return out.str();
}

inline std::string priority_string(const PriorityOrder& p) {
  std::string s;
  for (int i = 0; i < kPortCount; ++i) {
    if (i) s += ",";
    s += port_letter(p[i]);
  }
  return s;
}

}  // namespace cli_detail

struct RunOptions {
  std::string config_path;
  std::string stimulus_path;
  std::optional<std::string> vcd_out;
  std::optional<std::string> stats_out;
};

inline int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  try {
    SimConfig cfg;
    std::vector<RequestFrame> stimulus;
    try {
      cfg = parse_config(read_file(opt.config_path));
    } catch (const SimError& e) {
      err << opt.config_path << ": " << e.what() << "\n";
      return exit_code_for(e);
    }
    try {
      stimulus = parse_stimulus(read_file(opt.stimulus_path), cfg);
    } catch (const SimError& e) {
      err << opt.stimulus_path << ": " << e.what() << "\n";
      return exit_code_for(e);
    }

    RunResult result = run_stimulus(cfg, stimulus, opt.vcd_out.has_value());
    if (opt.vcd_out) write_file(*opt.vcd_out, emit_vcd(result.trace));
    const std::string stats = format_stats(result.stats);
    out << stats;
    if (opt.stats_out) write_file(*opt.stats_out, stats);
    return kExitOk;
  } catch (const SimError& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  }
}

struct VerifyOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  std::uint64_t cycles = 10000;
};

// fault is a test-only hook (see verify.hpp); the command line never sets it.
inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err,
                      const FaultHook& fault = {}) {
  using namespace cli_detail;
  try {
    SimConfig cfg;
    try {
      cfg = parse_config(read_file(opt.config_path));
    } catch (const SimError& e) {
      err << opt.config_path << ": " << e.what() << "\n";
      return exit_code_for(e);
    }

    Xorshift64Star rng(opt.seed);
    cfg.priority = random_priority(rng);
    const std::vector<RequestFrame> stimulus = random_stimulus(rng, cfg, opt.cycles);
    const std::optional<Divergence> div = check_equivalence(cfg, stimulus, fault);

    if (!div) {
      out << "verify PASS: seed=" << opt.seed << " cycles=" << opt.cycles
          << " priority=" << priority_string(cfg.priority) << " divergences=0";
      if (opt.cycles == 0) out << " (vacuous)";
      out << "\n";
      return kExitOk;
    }
    err << "verify FAIL: seed=" << opt.seed << " kind=" << div->kind << " cycle=" << div->cycle;
    if (div->kind == "output") {
      err << " port=" << port_letter(port_from_index(div->port)) << " expected=";
      if (div->expected_fresh)
        err << "0x" << stim_detail::to_hex(div->expected) << " (fresh)";
      else
        err << "(stale)";
      err << " got=";
      if (div->got_fresh)
        err << "0x" << stim_detail::to_hex(div->got) << " (fresh)";
      else
        err << "0x" << stim_detail::to_hex(div->got) << " (stale)";
    } else {
      err << " addr=0x" << stim_detail::to_hex(div->addr) << " expected=0x"
          << stim_detail::to_hex(div->expected) << " got=0x" << stim_detail::to_hex(div->got);
    }
    err << "\n";
    return kExitDivergence;
  } catch (const SimError& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  }
}

struct GenOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  std::uint64_t cycles = 16;
  std::optional<std::string> out_path;
};

inline int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  try {
    SimConfig cfg;
    try {
      cfg = parse_config(read_file(opt.config_path));
    } catch (const SimError& e) {
      err << opt.config_path << ": " << e.what() << "\n";
      return exit_code_for(e);
    }
    Xorshift64Star rng(opt.seed);
    std::ostringstream text;
    text << "# generated stimulus: seed=" << opt.seed << " cycles=" << opt.cycles << "\n";
    text << render_stimulus(random_stimulus(rng, cfg, opt.cycles));
    if (opt.out_path)
      write_file(*opt.out_path, text.str());
    else
      out << text.str();
    return kExitOk;
  } catch (const SimError& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace qpsim
