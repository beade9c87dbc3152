#include "ifosim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ifosim/error.hpp"
#include "ifosim/io.hpp"
#include "ifosim/rng.hpp"

namespace fs = std::filesystem;

namespace ifo {

namespace {

std::vector<std::string> index_labels(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "n" + std::to_string(i);
  return labels;
}

// Tracks files written by a command so a failure can remove partial output.
class OutputSet {
public:
  std::ofstream open(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
    files_.push_back(path);
    return out;
  }
  void add(const std::string& path) { files_.push_back(path); }
  const std::vector<std::string>& files() const { return files_; }
  void discard() noexcept {
    for (const auto& f : files_) std::remove(f.c_str());
  }

private:
  std::vector<std::string> files_;
};

} // namespace

Network make_complete(int n, double weight) {
  if (n < 2) fail(ErrorKind::invalid_argument, "complete network needs n >= 2");
  if (!(weight > 0.0)) fail(ErrorKind::invalid_argument, "weight must be > 0");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) edges.push_back({i, j, weight});
  return Network(index_labels(n), std::move(edges));
}

Network make_planted_blocks(int blocks, int block_size, double intra, double inter) {
  if (blocks < 1 || block_size < 1 || blocks * block_size < 2)
    fail(ErrorKind::invalid_argument, "planted blocks need at least 2 nodes");
  if (!(intra > 0.0) || !(inter > 0.0))
    fail(ErrorKind::invalid_argument, "block weights must be > 0");
  const int n = blocks * block_size;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        edges.push_back({i, j, (i / block_size == j / block_size) ? intra : inter});
  return Network(index_labels(n), std::move(edges));
}

Network make_random_sparse(int n, double density, std::uint64_t seed) {
  if (n < 2) fail(ErrorKind::invalid_argument, "random network needs n >= 2");
  if (!(density >= 0.0 && density <= 1.0))
    fail(ErrorKind::invalid_argument, "density must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (uniform01(rng) < density) edges.push_back({i, j, 1.0 - uniform01(rng)});
    }
  return Network(index_labels(n), std::move(edges));
}

Network cmd_generate(const GenerateConfig& config) {
  if (config.out_path.empty()) fail(ErrorKind::invalid_argument, "output path required");

  OutputSet out;
  try {
    switch (config.kind) {
      case GenerateConfig::Kind::complete: {
        Network net = make_complete(config.n, config.weight);
        out.add(config.out_path);
        net.save_edge_list(config.out_path);
        return net;
      }
      case GenerateConfig::Kind::random_sparse: {
        Network net = make_random_sparse(config.n, config.density, config.seed);
        out.add(config.out_path);
        net.save_edge_list(config.out_path);
        return net;
      }
      case GenerateConfig::Kind::planted_blocks: {
        Network net = make_planted_blocks(config.blocks, config.block_size, config.intra,
                                          config.inter);
        out.add(config.out_path);
        net.save_edge_list(config.out_path);
        std::vector<int> truth(net.n_nodes());
        for (int i = 0; i < net.n_nodes(); ++i) truth[i] = i / config.block_size;
        const std::string truth_path =
            config.truth_out.empty() ? config.out_path + ".truth.csv" : config.truth_out;
        out.add(truth_path);
        write_partition_csv(net, Partition(net, std::move(truth)), truth_path);
        return net;
      }
    }
    fail(ErrorKind::invalid_argument, "unknown generator kind");
  } catch (...) {
    out.discard();
    throw;
  }
}

namespace {

std::string join_sizes(const std::vector<int>& sizes) {
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(sizes[i]);
  }
  return s;
}

} // namespace

DetectStats cmd_detect(const DetectConfig& config) {
  Network net = Network::load_edge_list(config.network_path, config.delim);
  Partition part = optimize_modularity(net, config.seed, config.restarts);

  fs::create_directories(config.out_dir);
  const std::string dir = config.out_dir.empty() ? "." : config.out_dir;

  OutputSet out;
  try {
    out.add(dir + "/partition.csv");
    write_partition_csv(net, part, dir + "/partition.csv");
    out.add(dir + "/network_summary.csv");
    write_summary_csv(net, dir + "/network_summary.csv");

    const NetworkSummary s = net.summarize();
    std::vector<int> sizes = part.sizes();
    std::sort(sizes.rbegin(), sizes.rend());

    auto f = out.open(dir + "/detect_summary.csv");
    f << "n,links,density,mean_k_total,mean_k_in,mean_k_out,mean_strength,links_undirected,q,m,"
         "sizes\n";
    f << s.n << ',' << s.links << ',' << fmt_double(s.density) << ','
      << fmt_double(s.mean_k_total) << ',' << fmt_double(s.mean_k_in) << ','
      << fmt_double(s.mean_k_out) << ',' << fmt_double(s.mean_strength) << ','
      << s.links_undirected << ',' << fmt_double(part.q()) << ',' << part.n_communities() << ','
      << join_sizes(sizes) << '\n';
    if (!f) fail(ErrorKind::io, "write failed for detect_summary.csv");
    f.close();

    DetectStats stats;
    stats.n = s.n;
    stats.links = s.links;
    stats.density = s.density;
    stats.mean_k_total = s.mean_k_total;
    stats.mean_strength = s.mean_strength;
    stats.q = part.q();
    stats.m = part.n_communities();
    stats.sizes = std::move(sizes);
    return stats;
  } catch (...) {
    out.discard();
    throw;
  }
}

void write_cascades_csv(const RunResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << "cycle_time,origin,size,members\n";
  for (const CascadeRecord& c : result.cascades) {
    out << fmt_double(c.cycle_time) << ',' << c.origin << ',' << c.size << ',';
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      if (i) out << ';';
      out << c.members[i];
    }
    out << '\n';
  }
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_r_samples_csv(const RunResult& result, int n_communities, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << "cycle_time,r";
  for (int a = 0; a < n_communities; ++a) out << ",r_alpha_" << a;
  out << '\n';
  for (const OrderParameterSample& s : result.r_samples) {
    out << fmt_double(s.clock) << ',' << fmt_double(s.r_global);
    for (double r : s.r_by_community) out << ',' << fmt_double(r);
    out << '\n';
  }
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_firing_raster_csv(const RunResult& result, const Partition* part,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << "cycle_time,node,community\n";
  for (const CascadeRecord& c : result.cascades)
    for (int node : c.members)
      out << fmt_double(c.cycle_time) << ',' << node << ','
          << (part ? part->community_of(node) : -1) << '\n';
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_histogram_csv(const Histogram& hist, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  std::int64_t total = hist.censored;
  for (auto c : hist.counts) total += c;
  out << "# total=" << total << " censored=" << hist.censored << '\n';
  out << "bin_low,bin_high,count" << (hist.cumulative ? ",cumulative" : "") << '\n';
  std::int64_t running = 0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    running += hist.counts[b];
    out << fmt_double(hist.bin_edges[b]) << ',' << fmt_double(hist.bin_edges[b + 1]) << ','
        << hist.counts[b];
    if (hist.cumulative) out << ',' << running;
    out << '\n';
  }
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_scatter_csv(const std::vector<ScatterRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << "r_global,r_alpha,community\n";
  for (const ScatterRow& row : rows)
    out << fmt_double(row.r_global) << ',' << fmt_double(row.r_alpha) << ',' << row.community
        << '\n';
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_fit_json(const PowerLawFit& fit, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << "{\n"
      << "  \"exponent\": " << fmt_double(fit.exponent) << ",\n"
      << "  \"intercept\": " << fmt_double(fit.intercept) << ",\n"
      << "  \"fit_min\": " << fmt_double(fit.fit_min) << ",\n"
      << "  \"fit_max\": " << fmt_double(fit.fit_max) << ",\n"
      << "  \"r_squared\": " << fmt_double(fit.r_squared) << ",\n"
      << "  \"n_points\": " << fit.n_points << "\n"
      << "}\n";
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

namespace {

void check_simulate_config(const SimulateConfig& c) {
  if (c.network_path.empty()) fail(ErrorKind::invalid_argument, "network path required");
  if (c.out_dir.empty()) fail(ErrorKind::invalid_argument, "output directory required");
  if (c.replicas < 1) fail(ErrorKind::invalid_argument, "replicas must be >= 1");
  if (c.jobs < 1) fail(ErrorKind::invalid_argument, "jobs must be >= 1");
  if (!(c.sample_interval > 0.0)) fail(ErrorKind::invalid_argument, "sample_interval must be > 0");
  if (c.partition_source == PartitionSource::file && c.partition_path.empty())
    fail(ErrorKind::invalid_argument, "partition file path required");
}

} // namespace

SimulateStats cmd_simulate(const SimulateConfig& config) {
  check_simulate_config(config);

  Network net = Network::load_edge_list(config.network_path, config.delim);

  std::optional<Partition> partition;
  switch (config.partition_source) {
    case PartitionSource::none:
      break;
    case PartitionSource::detect:
      partition = optimize_modularity(net, config.detect_seed, config.detect_restarts);
      break;
    case PartitionSource::file:
      partition = load_partition_csv(net, config.partition_path);
      break;
  }
  const Partition* part = partition ? &*partition : nullptr;

  RunParams params;
  params.b = config.b;
  params.sync_fraction = config.sync_fraction;
  params.max_cycles = config.max_cycles;
  params.sample_interval = config.sample_interval;

  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(config.replicas));
  for (std::size_t k = 0; k < seeds.size(); ++k)
    seeds[k] = derive_seed(config.base_seed, static_cast<std::uint64_t>(k));

  EnsembleOptions options;
  options.jobs = config.jobs;
  options.sample_only_first = true;
  options.members_only_first = true;

  std::vector<RunResult> results = run_ensemble(net, params, seeds, options, part);

  fs::create_directories(config.out_dir);
  const std::string dir = config.out_dir;
  OutputSet out;
  try {
    const Histogram sync_hist = sync_time_distribution(results, 50.0);
    out.add(dir + "/sync_time_hist.csv");
    write_histogram_csv(sync_hist, dir + "/sync_time_hist.csv");

    const Histogram size_hist = cascade_size_distribution(results, net.n_nodes());
    out.add(dir + "/cascade_size_hist.csv");
    write_histogram_csv(size_hist, dir + "/cascade_size_hist.csv");

    // Default fit window: above single-node firings, below the finite-size
    // bump at the system size.
    const double fit_min = 2.0;
    const double fit_max = std::max(fit_min, net.n_nodes() / 2.0);
    out.add(dir + "/power_law_fit.json");
    try {
      write_fit_json(fit_power_law(size_hist, fit_min, fit_max), dir + "/power_law_fit.json");
    } catch (const Error& e) {
      auto f = std::ofstream(dir + "/power_law_fit.json");
      f << "{\n  \"error\": \"" << e.what() << "\"\n}\n";
    }

    const RunResult& first = results.front();
    out.add(dir + "/firing_raster.csv");
    write_firing_raster_csv(first, part, dir + "/firing_raster.csv");
    out.add(dir + "/r_timeseries.csv");
    write_r_samples_csv(first, part ? part->n_communities() : 0, dir + "/r_timeseries.csv");
    out.add(dir + "/r_scatter.csv");
    write_scatter_csv(r_alpha_vs_r_scatter(first.r_samples), dir + "/r_scatter.csv");
    out.add(dir + "/replica0_cascades.csv");
    write_cascades_csv(first, dir + "/replica0_cascades.csv");
    if (part) {
      out.add(dir + "/partition_used.csv");
      write_partition_csv(net, *partition, dir + "/partition_used.csv");
    }

    SimulateStats stats;
    stats.replicas = config.replicas;
    for (const RunResult& r : results) {
      stats.total_cascades += static_cast<std::int64_t>(r.cascades.size());
      if (r.sync_time)
        ++stats.synced;
      else
        ++stats.censored;
    }

    const std::vector<std::string> data_files = out.files();
    auto mf = out.open(dir + "/manifest.txt");
    mf << "# ifosim simulate manifest\n";
    mf << "version=" << kVersion << '\n';
    mf << "network=" << config.network_path << '\n';
    mf << "delim=" << config.delim << '\n';
    mf << "b=" << fmt_double(config.b) << '\n';
    mf << "replicas=" << config.replicas << '\n';
    mf << "base_seed=" << config.base_seed << '\n';
    mf << "sync_fraction=" << fmt_double(config.sync_fraction) << '\n';
    mf << "max_cycles=" << fmt_double(config.max_cycles) << '\n';
    mf << "sample_interval=" << fmt_double(config.sample_interval) << '\n';
    switch (config.partition_source) {
      case PartitionSource::none:
        mf << "partition=none\n";
        break;
      case PartitionSource::detect:
        mf << "partition=detect\n";
        mf << "detect_seed=" << config.detect_seed << '\n';
        mf << "detect_restarts=" << config.detect_restarts << '\n';
        break;
      case PartitionSource::file:
        mf << "partition=file:" << config.partition_path << '\n';
        break;
    }
    mf << "seed_derivation=splitmix64(base_seed + k * 0x9e3779b97f4a7c15)\n";
    mf << "n_nodes=" << net.n_nodes() << '\n';
    mf << "synced=" << stats.synced << '\n';
    mf << "censored=" << stats.censored << '\n';
    mf << "total_cascades=" << stats.total_cascades << '\n';
    for (const std::string& f : data_files)
      mf << "file=" << fs::path(f).filename().string() << " fnv1a64=" << fnv1a64_file(f) << '\n';
    if (!mf) fail(ErrorKind::io, "write failed for manifest");
    mf.close();

    return stats;
  } catch (...) {
    out.discard();
    throw;
  }
}

} // namespace ifo
