// Command-line front end for the ifosim shared library. Talks to the core
// exclusively through the C API in ifosim.h.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ifosim.h"

namespace {

// Exit codes: 0 ok, 2 ingestion (io/parse), 3 configuration, 4 runtime.
int exit_code_for(ifo_status status) {
  switch (status) {
    case IFO_OK: return 0;
    case IFO_ERR_IO:
    case IFO_ERR_PARSE: return 2;
    case IFO_ERR_INVALID: return 3;
    case IFO_ERR_DOMAIN:
    case IFO_ERR_INTERNAL: return 4;
  }
  return 4;
}

int finish(ifo_status status) {
  if (status != IFO_OK) std::fprintf(stderr, "ifosim: error: %s\n", ifo_last_error());
  return exit_code_for(status);
}

// Expands `--config FILE` into option tokens ahead of the explicit flags.
// The file holds one key=value per line ('#' comments allowed), keys named
// like the long options without the leading dashes; explicit flags win
// because options take the last value given.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::size_t pos = 0;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      pos = i;
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      pos = i;
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ConversionError("config line is not key=value: " + line);
    const std::string key = line.substr(first, eq - first);
    const std::string value = line.substr(eq + 1);
    if (value == "true") {
      injected.push_back("--" + key);
    } else if (value == "false") {
      // flag left unset
    } else {
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  // Insert where --config stood, so config values come before later flags.
  args.insert(args.begin() + pos, injected.begin(), injected.end());
  return args;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-coupled integrate-and-fire oscillators on weighted directed networks"};
  app.set_version_flag("--version", std::string("ifosim ") + ifo_version());
  app.require_subcommand(1);

  // ---- detect ----
  std::string d_network, d_delim, d_out = "detect_out";
  std::uint64_t d_seed = 1;
  int d_restarts = 20;
  auto* detect = app.add_subcommand("detect", "Detect communities by modularity maximization");
  detect->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  detect->add_option("--network", d_network, "Edge-list file")->required();
  detect->add_option("--delim", d_delim, "Field delimiter (default: whitespace)");
  detect->add_option("--seed", d_seed, "Optimizer seed");
  detect->add_option("--restarts", d_restarts, "Randomized restarts");
  detect->add_option("--out", d_out, "Output directory");

  // ---- simulate ----
  ifo_simulate_config sim;
  ifo_simulate_config_init(&sim);
  std::string s_network, s_delim, s_partition, s_out = "simulate_out";
  long s_replicas = sim.replicas;
  std::uint64_t s_seed = 0, s_detect_seed = sim.detect_seed;
  double s_b = sim.b, s_sync_fraction = sim.sync_fraction, s_max_cycles = sim.max_cycles;
  double s_sample_interval = sim.sample_interval;
  int s_jobs = 1, s_detect_restarts = sim.detect_restarts;
  bool s_detect_flag = false;
  auto* simulate = app.add_subcommand("simulate", "Run the oscillator ensemble");
  simulate->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  simulate->add_option("--network", s_network, "Edge-list file")->required();
  simulate->add_option("--delim", s_delim, "Field delimiter (default: whitespace)");
  simulate->add_option("--b", s_b, "Dissipation parameter");
  simulate->add_option("--replicas", s_replicas, "Number of replicas");
  simulate->add_option("--seed", s_seed, "Base seed for replica streams");
  simulate->add_option("--sync-fraction", s_sync_fraction, "Stop fraction in (0,1]");
  simulate->add_option("--max-cycles", s_max_cycles, "Censor runs past this clock");
  simulate->add_option("--sample-interval", s_sample_interval, "r sampling period");
  auto* part_opt = simulate->add_option("--partition", s_partition, "Partition CSV to use");
  auto* det_flag =
      simulate->add_flag("--detect-communities", s_detect_flag, "Detect the partition first");
  det_flag->excludes(part_opt);
  simulate->add_option("--detect-seed", s_detect_seed, "Optimizer seed (with --detect-communities)");
  simulate->add_option("--detect-restarts", s_detect_restarts, "Optimizer restarts");
  simulate->add_option("--out", s_out, "Output directory");
  simulate->add_option("--jobs", s_jobs, "Concurrent replicas");

  // ---- generate ----
  ifo_generate_config gen;
  ifo_generate_config_init(&gen);
  std::string g_kind = "complete", g_out, g_truth;
  int g_n = gen.n, g_blocks = gen.blocks, g_block_size = gen.block_size;
  double g_weight = gen.weight, g_intra = gen.intra, g_inter = gen.inter, g_density = gen.density;
  std::uint64_t g_seed = 0;
  auto* generate = app.add_subcommand("generate", "Write a synthetic edge list");
  generate->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  generate->add_option("--kind", g_kind, "complete | planted_blocks | random_sparse")
      ->check(CLI::IsMember({"complete", "planted_blocks", "random_sparse"}));
  generate->add_option("--n", g_n, "Nodes (complete, random_sparse)");
  generate->add_option("--weight", g_weight, "Edge weight (complete)");
  generate->add_option("--blocks", g_blocks, "Block count (planted_blocks)");
  generate->add_option("--block-size", g_block_size, "Nodes per block");
  generate->add_option("--intra", g_intra, "Within-block weight");
  generate->add_option("--inter", g_inter, "Between-block weight");
  generate->add_option("--density", g_density, "Arc probability (random_sparse)");
  generate->add_option("--seed", g_seed, "Generator seed (random_sparse)");
  generate->add_option("--out", g_out, "Output edge-list path")->required();
  generate->add_option("--truth-out", g_truth, "Ground-truth partition path (planted_blocks)");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    args.erase(args.begin()); // program name
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3; // configuration error
  }

  if (detect->parsed()) {
    ifo_detect_stats stats;
    const ifo_status st = ifo_cmd_detect(d_network.c_str(), d_delim.empty() ? nullptr : d_delim.c_str(),
                                         d_seed, d_restarts, d_out.c_str(), &stats);
    if (st == IFO_OK)
      std::printf("detect: n=%d links=%lld density=%.6g q=%.6g m=%d -> %s\n", stats.n,
                  static_cast<long long>(stats.links), stats.density, stats.q, stats.m,
                  d_out.c_str());
    return finish(st);
  }

  if (simulate->parsed()) {
    sim.network_path = s_network.c_str();
    sim.delim = s_delim.empty() ? nullptr : s_delim.c_str();
    sim.b = s_b;
    sim.replicas = s_replicas;
    sim.base_seed = s_seed;
    sim.sync_fraction = s_sync_fraction;
    sim.max_cycles = s_max_cycles;
    sim.sample_interval = s_sample_interval;
    sim.partition_source = s_detect_flag ? IFO_PARTITION_DETECT
                           : !s_partition.empty() ? IFO_PARTITION_FILE
                                                  : IFO_PARTITION_NONE;
    sim.partition_path = s_partition.empty() ? nullptr : s_partition.c_str();
    sim.detect_seed = s_detect_seed;
    sim.detect_restarts = s_detect_restarts;
    sim.out_dir = s_out.c_str();
    sim.jobs = s_jobs;

    ifo_simulate_stats stats;
    const ifo_status st = ifo_cmd_simulate(&sim, &stats);
    if (st == IFO_OK)
      std::printf("simulate: replicas=%ld synced=%ld censored=%ld cascades=%lld -> %s\n",
                  stats.replicas, stats.synced, stats.censored,
                  static_cast<long long>(stats.total_cascades), s_out.c_str());
    return finish(st);
  }

  // generate
  gen.kind = g_kind == "complete"         ? IFO_GEN_COMPLETE
             : g_kind == "planted_blocks" ? IFO_GEN_PLANTED_BLOCKS
                                          : IFO_GEN_RANDOM_SPARSE;
  gen.n = g_n;
  gen.weight = g_weight;
  gen.blocks = g_blocks;
  gen.block_size = g_block_size;
  gen.intra = g_intra;
  gen.inter = g_inter;
  gen.density = g_density;
  gen.seed = g_seed;
  gen.out_path = g_out.c_str();
  gen.truth_out = g_truth.empty() ? nullptr : g_truth.c_str();
  const ifo_status st = ifo_cmd_generate(&gen);
  if (st == IFO_OK) std::printf("generate: %s -> %s\n", g_kind.c_str(), g_out.c_str());
  return finish(st);
}
