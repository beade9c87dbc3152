#include "ifosim.h"

#include <cstring>
#include <string>

#include "ifosim/community.hpp"
#include "ifosim/dynamics.hpp"
#include "ifosim/error.hpp"
#include "ifosim/metrics.hpp"
#include "ifosim/network.hpp"
#include "ifosim/pipeline.hpp"

// Handle bodies: thin owners around the C++ core types.
struct ifo_network {
  ifo::Network net;
  ifo::CouplingMatrix coupling;
  explicit ifo_network(ifo::Network n) : net(std::move(n)), coupling(net) {}
};
struct ifo_partition {
  ifo::Partition part;
};
struct ifo_run_result {
  ifo::RunResult result;
};

namespace {

thread_local std::string t_last_error;

ifo_status status_of(ifo::ErrorKind kind) {
  switch (kind) {
    case ifo::ErrorKind::io: return IFO_ERR_IO;
    case ifo::ErrorKind::parse: return IFO_ERR_PARSE;
    case ifo::ErrorKind::invalid_argument: return IFO_ERR_INVALID;
    case ifo::ErrorKind::domain: return IFO_ERR_DOMAIN;
    case ifo::ErrorKind::internal: return IFO_ERR_INTERNAL;
  }
  return IFO_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes + last-error message.
template <typename Fn>
ifo_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return IFO_OK;
  } catch (const ifo::Error& e) {
    t_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return IFO_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return IFO_ERR_INTERNAL;
  }
}

ifo_status invalid(const char* msg) {
  t_last_error = msg;
  return IFO_ERR_INVALID;
}

} // namespace

extern "C" {

const char* ifo_version(void) { return ifo::kVersion; }

const char* ifo_last_error(void) { return t_last_error.c_str(); }

/* ---- networks ------------------------------------------------------- */

ifo_status ifo_network_load(const char* path, const char* delim, ifo_network** out) {
  if (!path || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new ifo_network(ifo::Network::load_edge_list(path, delim ? delim : ""));
  });
}

void ifo_network_free(ifo_network* net) { delete net; }

int ifo_network_n_nodes(const ifo_network* net) { return net ? net->net.n_nodes() : -1; }

int64_t ifo_network_n_links(const ifo_network* net) { return net ? net->net.n_links() : -1; }

const char* ifo_network_node_label(const ifo_network* net, int node) {
  if (!net || node < 0 || node >= net->net.n_nodes()) return nullptr;
  return net->net.label(node).c_str();
}

ifo_status ifo_network_out_strength(const ifo_network* net, int node, double* out) {
  if (!net || !out) return invalid("null argument");
  return guarded([&] { *out = net->net.out_strength(node); });
}

ifo_status ifo_network_in_strength(const ifo_network* net, int node, double* out) {
  if (!net || !out) return invalid("null argument");
  return guarded([&] { *out = net->net.in_strength(node); });
}

ifo_status ifo_network_summary_get(const ifo_network* net, ifo_network_summary* out) {
  if (!net || !out) return invalid("null argument");
  return guarded([&] {
    const ifo::NetworkSummary s = net->net.summarize();
    out->n = s.n;
    out->links = s.links;
    out->links_undirected = s.links_undirected;
    out->density = s.density;
    out->mean_k_total = s.mean_k_total;
    out->mean_k_in = s.mean_k_in;
    out->mean_k_out = s.mean_k_out;
    out->mean_strength = s.mean_strength;
  });
}

/* ---- oscillator state curve ----------------------------------------- */

ifo_status ifo_state_from_phase(double phi, double b, double* x) {
  if (!x) return invalid("null argument");
  return guarded([&] { *x = ifo::state_from_phase(phi, b); });
}

ifo_status ifo_phase_from_state(double x, double b, double* phi) {
  if (!phi) return invalid("null argument");
  return guarded([&] { *phi = ifo::phase_from_state(x, b); });
}

/* ---- synchronization metrics ---------------------------------------- */

ifo_status ifo_order_parameter(const double* phases, int n, double* r) {
  if (!phases || !r) return invalid("null argument");
  if (n < 1) return invalid("need at least one phase");
  return guarded([&] { *r = ifo::order_parameter(std::span<const double>(phases, n)); });
}

/* ---- communities ----------------------------------------------------- */

ifo_status ifo_modularity(const ifo_network* net, const int* assignment, double* q) {
  if (!net || !assignment || !q) return invalid("null argument");
  return guarded([&] {
    *q = ifo::modularity(net->net,
                         std::span<const int>(assignment, net->net.n_nodes()));
  });
}

ifo_status ifo_partition_detect(const ifo_network* net, uint64_t seed, int restarts,
                                ifo_partition** out) {
  if (!net || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new ifo_partition{ifo::optimize_modularity(net->net, seed, restarts)};
  });
}

ifo_status ifo_partition_brute_force(const ifo_network* net, ifo_partition** out) {
  if (!net || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = new ifo_partition{ifo::brute_force_modularity(net->net)}; });
}

ifo_status ifo_partition_load(const ifo_network* net, const char* path, ifo_partition** out) {
  if (!net || !path || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = new ifo_partition{ifo::load_partition_csv(net->net, path)}; });
}

void ifo_partition_free(ifo_partition* part) { delete part; }

int ifo_partition_n_communities(const ifo_partition* part) {
  return part ? part->part.n_communities() : -1;
}

double ifo_partition_q(const ifo_partition* part) { return part ? part->part.q() : 0.0; }

int ifo_partition_community_of(const ifo_partition* part, int node) {
  if (!part || node < 0 || node >= part->part.n_nodes()) return -1;
  return part->part.community_of(node);
}

int ifo_partition_community_size(const ifo_partition* part, int community) {
  if (!part || community < 0 || community >= part->part.n_communities()) return -1;
  return part->part.sizes()[community];
}

/* ---- simulation ------------------------------------------------------ */

void ifo_run_params_init(ifo_run_params* params) {
  if (!params) return;
  params->b = 3.0;
  params->sync_fraction = 0.9;
  params->max_cycles = 1e4;
  params->sample_interval = 0.1;
}

ifo_status ifo_run_replica(const ifo_network* net, const ifo_partition* partition,
                           const ifo_run_params* params, uint64_t seed, ifo_run_result** out) {
  if (!net || !params || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    ifo::RunParams p;
    p.b = params->b;
    p.sync_fraction = params->sync_fraction;
    p.max_cycles = params->max_cycles;
    p.sample_interval = params->sample_interval;
    *out = new ifo_run_result{ifo::run_replica(net->net, net->coupling, p, seed,
                                               partition ? &partition->part : nullptr)};
  });
}

void ifo_run_result_free(ifo_run_result* result) { delete result; }

int ifo_run_result_synced(const ifo_run_result* result) {
  return result && result->result.sync_time ? 1 : 0;
}

ifo_status ifo_run_result_sync_time(const ifo_run_result* result, double* t) {
  if (!result || !t) return invalid("null argument");
  if (!result->result.sync_time) return invalid("run was censored before sync");
  *t = *result->result.sync_time;
  return IFO_OK;
}

int64_t ifo_run_result_n_cascades(const ifo_run_result* result) {
  return result ? static_cast<int64_t>(result->result.cascades.size()) : -1;
}

ifo_status ifo_run_result_cascade(const ifo_run_result* result, int64_t index, double* cycle_time,
                                  int* origin, int* size) {
  if (!result) return invalid("null argument");
  const auto& cascades = result->result.cascades;
  if (index < 0 || index >= static_cast<int64_t>(cascades.size()))
    return invalid("cascade index out of range");
  const ifo::CascadeRecord& c = cascades[static_cast<std::size_t>(index)];
  if (cycle_time) *cycle_time = c.cycle_time;
  if (origin) *origin = c.origin;
  if (size) *size = c.size;
  return IFO_OK;
}

/* ---- commands -------------------------------------------------------- */

ifo_status ifo_cmd_detect(const char* network_path, const char* delim, uint64_t seed, int restarts,
                          const char* out_dir, ifo_detect_stats* stats) {
  if (!network_path || !out_dir) return invalid("null argument");
  return guarded([&] {
    ifo::DetectConfig config;
    config.network_path = network_path;
    config.delim = delim ? delim : "";
    config.seed = seed;
    config.restarts = restarts;
    config.out_dir = out_dir;
    const ifo::DetectStats s = ifo::cmd_detect(config);
    if (stats) {
      stats->n = s.n;
      stats->links = s.links;
      stats->density = s.density;
      stats->q = s.q;
      stats->m = s.m;
    }
  });
}

void ifo_simulate_config_init(ifo_simulate_config* config) {
  if (!config) return;
  std::memset(config, 0, sizeof(*config));
  config->b = 3.0;
  config->replicas = 1000;
  config->sync_fraction = 0.9;
  config->max_cycles = 1e4;
  config->sample_interval = 0.1;
  config->partition_source = IFO_PARTITION_NONE;
  config->detect_seed = 1;
  config->detect_restarts = 20;
  config->jobs = 1;
}

ifo_status ifo_cmd_simulate(const ifo_simulate_config* config, ifo_simulate_stats* stats) {
  if (!config) return invalid("null argument");
  if (!config->network_path || !config->out_dir)
    return invalid("network_path and out_dir are required");
  return guarded([&] {
    ifo::SimulateConfig c;
    c.network_path = config->network_path;
    c.delim = config->delim ? config->delim : "";
    c.b = config->b;
    c.replicas = config->replicas;
    c.base_seed = config->base_seed;
    c.sync_fraction = config->sync_fraction;
    c.max_cycles = config->max_cycles;
    c.sample_interval = config->sample_interval;
    switch (config->partition_source) {
      case IFO_PARTITION_NONE: c.partition_source = ifo::PartitionSource::none; break;
      case IFO_PARTITION_DETECT: c.partition_source = ifo::PartitionSource::detect; break;
      case IFO_PARTITION_FILE: c.partition_source = ifo::PartitionSource::file; break;
      default: ifo::fail(ifo::ErrorKind::invalid_argument, "bad partition_source");
    }
    c.partition_path = config->partition_path ? config->partition_path : "";
    c.detect_seed = config->detect_seed;
    c.detect_restarts = config->detect_restarts;
    c.out_dir = config->out_dir;
    c.jobs = config->jobs;
    const ifo::SimulateStats s = ifo::cmd_simulate(c);
    if (stats) {
      stats->replicas = s.replicas;
      stats->synced = s.synced;
      stats->censored = s.censored;
      stats->total_cascades = s.total_cascades;
    }
  });
}

void ifo_generate_config_init(ifo_generate_config* config) {
  if (!config) return;
  std::memset(config, 0, sizeof(*config));
  config->kind = IFO_GEN_COMPLETE;
  config->n = 5;
  config->weight = 1.0;
  config->blocks = 4;
  config->block_size = 10;
  config->intra = 10.0;
  config->inter = 0.1;
  config->density = 0.2;
}

ifo_status ifo_cmd_generate(const ifo_generate_config* config) {
  if (!config) return invalid("null argument");
  if (!config->out_path) return invalid("out_path is required");
  return guarded([&] {
    ifo::GenerateConfig c;
    switch (config->kind) {
      case IFO_GEN_COMPLETE: c.kind = ifo::GenerateConfig::Kind::complete; break;
      case IFO_GEN_PLANTED_BLOCKS: c.kind = ifo::GenerateConfig::Kind::planted_blocks; break;
      case IFO_GEN_RANDOM_SPARSE: c.kind = ifo::GenerateConfig::Kind::random_sparse; break;
      default: ifo::fail(ifo::ErrorKind::invalid_argument, "bad generator kind");
    }
    c.n = config->n;
    c.weight = config->weight;
    c.blocks = config->blocks;
    c.block_size = config->block_size;
    c.intra = config->intra;
    c.inter = config->inter;
    c.density = config->density;
    c.seed = config->seed;
    c.out_path = config->out_path;
    c.truth_out = config->truth_out ? config->truth_out : "";
    ifo::cmd_generate(c);
  });
}

} // extern "C"
