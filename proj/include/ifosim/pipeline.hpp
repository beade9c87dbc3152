#ifndef IFOSIM_PIPELINE_HPP
#define IFOSIM_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ifosim/community.hpp"
#include "ifosim/dynamics.hpp"
#include "ifosim/metrics.hpp"
#include "ifosim/network.hpp"

namespace ifo {

inline constexpr const char* kVersion = "0.1.0";

// ---- synthetic networks (test fixtures and desk-scale experiments) ----

// Complete digraph on n nodes, every ordered pair carrying `weight`.
Network make_complete(int n, double weight = 1.0);

// `blocks` groups of `block_size` nodes; all ordered pairs present with
// weight `intra` inside a block and `inter` across blocks. Ground truth
// community of node i is i / block_size.
Network make_planted_blocks(int blocks, int block_size, double intra, double inter);

// Each ordered pair independently present with probability `density`,
// weight uniform in (0,1].
Network make_random_sparse(int n, double density, std::uint64_t seed);

struct GenerateConfig {
  enum class Kind { complete, planted_blocks, random_sparse };
  Kind kind = Kind::complete;
  int n = 5;                 // complete, random_sparse
  double weight = 1.0;       // complete
  int blocks = 4;            // planted_blocks
  int block_size = 10;
  double intra = 10.0;
  double inter = 0.1;
  double density = 0.2;      // random_sparse
  std::uint64_t seed = 0;    // random_sparse
  std::string out_path;
  std::string truth_out;     // planted_blocks; empty -> out_path + ".truth.csv"
};

// Writes the synthetic network as an edge list (plus the ground-truth
// partition for planted blocks). Returns the network.
Network cmd_generate(const GenerateConfig& config);

// ---- community detection command ----

struct DetectConfig {
  std::string network_path;
  std::string delim;
  std::uint64_t seed = 1;
  int restarts = 20;
  std::string out_dir;
};

struct DetectStats {
  int n = 0;
  std::int64_t links = 0;
  double density = 0.0;
  double mean_k_total = 0.0;
  double mean_strength = 0.0;
  double q = 0.0;
  int m = 0;
  std::vector<int> sizes;
};

// Writes partition.csv, network_summary.csv and detect_summary.csv under
// out_dir and returns the headline numbers.
DetectStats cmd_detect(const DetectConfig& config);

// ---- ensemble simulation command ----

enum class PartitionSource { none, detect, file };

struct SimulateConfig {
  std::string network_path;
  std::string delim;
  double b = 3.0;
  long replicas = 1000;
  std::uint64_t base_seed = 0;
  double sync_fraction = 0.9;
  double max_cycles = 1e4;
  double sample_interval = 0.1;
  PartitionSource partition_source = PartitionSource::none;
  std::string partition_path;       // when partition_source == file
  std::uint64_t detect_seed = 1;    // when partition_source == detect
  int detect_restarts = 20;
  std::string out_dir;
  int jobs = 1;
};

struct SimulateStats {
  long replicas = 0;
  long synced = 0;
  long censored = 0;
  std::int64_t total_cascades = 0;
};

// Runs the ensemble and writes the figure-data files plus a manifest with a
// checksum per file. Output bytes depend only on the config and base seed,
// not on `jobs`. On failure, files already written are removed.
SimulateStats cmd_simulate(const SimulateConfig& config);

// ---- RunResult serialization (also used by cmd_simulate for replica 0) ----

// `cycle_time,origin,size,members` with members as ;-joined node indices.
void write_cascades_csv(const RunResult& result, const std::string& path);
// `cycle_time,r[,r_alpha_0,...]`
void write_r_samples_csv(const RunResult& result, int n_communities, const std::string& path);
// `cycle_time,node,community`; community -1 when no partition was used.
void write_firing_raster_csv(const RunResult& result, const Partition* part,
                             const std::string& path);
// `bin_low,bin_high,count[,cumulative]`, censored count in a comment line.
void write_histogram_csv(const Histogram& hist, const std::string& path);
// `r_global,r_alpha,community`
void write_scatter_csv(const std::vector<ScatterRow>& rows, const std::string& path);
void write_fit_json(const PowerLawFit& fit, const std::string& path);

} // namespace ifo

#endif
