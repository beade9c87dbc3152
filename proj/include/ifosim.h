/* ifosim: pulse-coupled integrate-and-fire oscillators on weighted
 * directed networks.
 *
 * C interface to the simulator core. All objects are opaque handles owned
 * by the library; every fallible call returns an ifo_status and leaves a
 * human-readable message in ifo_last_error() (thread-local). Queries on
 * handles return values directly and expect a non-NULL handle.
 */
#ifndef IFOSIM_H
#define IFOSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define IFO_API __declspec(dllexport)
#else
#define IFO_API __attribute__((visibility("default")))
#endif

typedef enum ifo_status {
  IFO_OK = 0,
  IFO_ERR_IO = 1,       /* file missing / unreadable / unwritable */
  IFO_ERR_PARSE = 2,    /* malformed input data */
  IFO_ERR_INVALID = 3,  /* bad argument or configuration */
  IFO_ERR_DOMAIN = 4,   /* numeric domain violation */
  IFO_ERR_INTERNAL = 5
} ifo_status;

typedef struct ifo_network ifo_network;
typedef struct ifo_partition ifo_partition;
typedef struct ifo_run_result ifo_run_result;

IFO_API const char* ifo_version(void);
/* Message from the most recent failing call on this thread ("" if none). */
IFO_API const char* ifo_last_error(void);

/* ---- networks ------------------------------------------------------- */

/* Edge-list text format: `source target weight` per line, '#' comments.
 * delim: NULL or "" for whitespace, else a single character. */
IFO_API ifo_status ifo_network_load(const char* path, const char* delim, ifo_network** out);
IFO_API void ifo_network_free(ifo_network* net);

IFO_API int ifo_network_n_nodes(const ifo_network* net);
IFO_API int64_t ifo_network_n_links(const ifo_network* net);
/* NULL if the index is out of range. Owned by the network handle. */
IFO_API const char* ifo_network_node_label(const ifo_network* net, int node);
IFO_API ifo_status ifo_network_out_strength(const ifo_network* net, int node, double* out);
IFO_API ifo_status ifo_network_in_strength(const ifo_network* net, int node, double* out);

typedef struct ifo_network_summary {
  int n;
  int64_t links;            /* directed arc count */
  int64_t links_undirected; /* unordered pairs joined by >= 1 arc */
  double density;           /* links / (N (N-1)) */
  double mean_k_total;
  double mean_k_in;
  double mean_k_out;
  double mean_strength;
} ifo_network_summary;

IFO_API ifo_status ifo_network_summary_get(const ifo_network* net, ifo_network_summary* out);

/* ---- oscillator state curve ----------------------------------------- */

/* x = (1/b) ln(1 + (e^b - 1) phi), phi in [0,1], b > 0. */
IFO_API ifo_status ifo_state_from_phase(double phi, double b, double* x);
/* phi = (e^{b x} - 1) / (e^b - 1). */
IFO_API ifo_status ifo_phase_from_state(double x, double b, double* phi);

/* ---- synchronization metrics ---------------------------------------- */

/* Order parameter |mean_j e^{2 pi i phi_j}| over n phases. */
IFO_API ifo_status ifo_order_parameter(const double* phases, int n, double* r);

/* ---- communities ----------------------------------------------------- */

/* Directed weighted modularity of an assignment (one community id >= 0 per
 * node, array of length n_nodes). */
IFO_API ifo_status ifo_modularity(const ifo_network* net, const int* assignment, double* q);

IFO_API ifo_status ifo_partition_detect(const ifo_network* net, uint64_t seed, int restarts,
                                        ifo_partition** out);
/* Exact optimum by exhaustive enumeration; networks up to 12 nodes. */
IFO_API ifo_status ifo_partition_brute_force(const ifo_network* net, ifo_partition** out);
/* Partition CSV `node_label,community_id`. */
IFO_API ifo_status ifo_partition_load(const ifo_network* net, const char* path,
                                      ifo_partition** out);
IFO_API void ifo_partition_free(ifo_partition* part);

IFO_API int ifo_partition_n_communities(const ifo_partition* part);
IFO_API double ifo_partition_q(const ifo_partition* part);
IFO_API int ifo_partition_community_of(const ifo_partition* part, int node);
IFO_API int ifo_partition_community_size(const ifo_partition* part, int community);

/* ---- simulation ------------------------------------------------------ */

typedef struct ifo_run_params {
  double b;               /* dissipation parameter, > 0 */
  double sync_fraction;   /* stop when one cascade reaches ceil(f*N), (0,1] */
  double max_cycles;      /* censor the run past this clock */
  double sample_interval; /* r sampling period; <= 0 disables sampling */
} ifo_run_params;

/* Protocol defaults: b=3, sync_fraction=0.9, max_cycles=1e4, interval=0.1. */
IFO_API void ifo_run_params_init(ifo_run_params* params);

/* One deterministic replica; partition may be NULL (no r_alpha sampling). */
IFO_API ifo_status ifo_run_replica(const ifo_network* net, const ifo_partition* partition,
                                   const ifo_run_params* params, uint64_t seed,
                                   ifo_run_result** out);
IFO_API void ifo_run_result_free(ifo_run_result* result);

/* 1 if the sync stop condition was met, else 0 (censored at max_cycles). */
IFO_API int ifo_run_result_synced(const ifo_run_result* result);
/* Sync time in cycle units; IFO_ERR_INVALID if the run was censored. */
IFO_API ifo_status ifo_run_result_sync_time(const ifo_run_result* result, double* t);
IFO_API int64_t ifo_run_result_n_cascades(const ifo_run_result* result);
IFO_API ifo_status ifo_run_result_cascade(const ifo_run_result* result, int64_t index,
                                          double* cycle_time, int* origin, int* size);

/* ---- commands (the surfaces behind the CLI) -------------------------- */

typedef struct ifo_detect_stats {
  int n;
  int64_t links;
  double density;
  double q;
  int m;
} ifo_detect_stats;

/* Writes partition.csv, network_summary.csv, detect_summary.csv to out_dir. */
IFO_API ifo_status ifo_cmd_detect(const char* network_path, const char* delim, uint64_t seed,
                                  int restarts, const char* out_dir,
                                  ifo_detect_stats* stats /* nullable */);

typedef enum ifo_partition_source {
  IFO_PARTITION_NONE = 0,
  IFO_PARTITION_DETECT = 1,
  IFO_PARTITION_FILE = 2
} ifo_partition_source;

typedef struct ifo_simulate_config {
  const char* network_path;
  const char* delim;            /* NULL for whitespace */
  double b;
  long replicas;
  uint64_t base_seed;
  double sync_fraction;
  double max_cycles;
  double sample_interval;
  int partition_source;         /* ifo_partition_source */
  const char* partition_path;   /* when IFO_PARTITION_FILE */
  uint64_t detect_seed;
  int detect_restarts;
  const char* out_dir;
  int jobs;
} ifo_simulate_config;

/* Paper-protocol defaults: b=3, 1000 replicas, sync_fraction=0.9. */
IFO_API void ifo_simulate_config_init(ifo_simulate_config* config);

typedef struct ifo_simulate_stats {
  long replicas;
  long synced;
  long censored;
  int64_t total_cascades;
} ifo_simulate_stats;

/* Runs the ensemble and writes the figure-data CSVs plus manifest.txt.
 * Output bytes depend only on config values, not on jobs. */
IFO_API ifo_status ifo_cmd_simulate(const ifo_simulate_config* config,
                                    ifo_simulate_stats* stats /* nullable */);

typedef enum ifo_generate_kind {
  IFO_GEN_COMPLETE = 0,
  IFO_GEN_PLANTED_BLOCKS = 1,
  IFO_GEN_RANDOM_SPARSE = 2
} ifo_generate_kind;

typedef struct ifo_generate_config {
  int kind;            /* ifo_generate_kind */
  int n;               /* complete, random_sparse */
  double weight;       /* complete */
  int blocks;          /* planted_blocks */
  int block_size;
  double intra;
  double inter;
  double density;      /* random_sparse */
  uint64_t seed;       /* random_sparse */
  const char* out_path;
  const char* truth_out; /* planted_blocks; NULL -> out_path + ".truth.csv" */
} ifo_generate_config;

IFO_API void ifo_generate_config_init(ifo_generate_config* config);
IFO_API ifo_status ifo_cmd_generate(const ifo_generate_config* config);

#ifdef __cplusplus
}
#endif

#endif /* IFOSIM_H */
