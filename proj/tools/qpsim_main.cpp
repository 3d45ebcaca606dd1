#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qpsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qpsim - pseudo-quad-port SRAM wrapper simulator"};
  app.require_subcommand(1);

  qpsim::RunOptions run_opt;
  std::string run_vcd, run_stats;
  CLI::App* run = app.add_subcommand("run", "simulate a stimulus file");
  run->add_option("config", run_opt.config_path, "config file")->required();
  run->add_option("stimulus", run_opt.stimulus_path, "stimulus file")->required();
  run->add_option("--vcd", run_vcd, "write a VCD waveform to the given path");
  run->add_option("--stats", run_stats, "also write the stats report to the given path");

  qpsim::VerifyOptions ver_opt;
  CLI::App* verify =
      app.add_subcommand("verify", "run a seeded random stimulus against the reference model");
  verify->add_option("config", ver_opt.config_path, "config file")->required();
  verify->add_option("--seed", ver_opt.seed, "PRNG seed")->capture_default_str();
  verify->add_option("--cycles", ver_opt.cycles, "number of cycles")->capture_default_str();

  qpsim::GenOptions gen_opt;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a seeded random stimulus file");
  gen->add_option("config", gen_opt.config_path, "config file")->required();
  gen->add_option("--seed", gen_opt.seed, "PRNG seed")->capture_default_str();
  gen->add_option("--cycles", gen_opt.cycles, "number of cycles")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    if (!run_vcd.empty()) run_opt.vcd_out = run_vcd;
    if (!run_stats.empty()) run_opt.stats_out = run_stats;
    return qpsim::cmd_run(run_opt, std::cout, std::cerr);
  }
  if (*verify) return qpsim::cmd_verify(ver_opt, std::cout, std::cerr);
  if (*gen) {
    if (!gen_out.empty()) gen_opt.out_path = gen_out;
    return qpsim::cmd_gen(gen_opt, std::cout, std::cerr);
  }
  return qpsim::kExitUsage;
}
