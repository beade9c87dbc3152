#ifndef IFOSIM_METRICS_HPP
#define IFOSIM_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ifosim/community.hpp"
#include "ifosim/dynamics.hpp"

namespace ifo {

// Kuramoto-style order parameter |(1/N) sum_j e^{2 pi i phi_j}|: 1 at
// complete phase synchronization, near 0 when incoherent.
double order_parameter(std::span<const double> phases);

// Order parameter restricted to each community's members, indexed by
// community id.
std::vector<double> community_order_parameters(std::span<const double> phases,
                                               const Partition& part);

struct Histogram {
  std::vector<double> bin_edges;   // size counts.size() + 1, monotone
  std::vector<std::int64_t> counts;
  bool cumulative = false;         // emit a running-total column when true
  std::int64_t censored = 0;       // replicas excluded from the bins
};

// Cumulative frequency of sync times over replicas that reached sync; bins
// of bin_width starting at 0. Censored replicas are counted separately.
Histogram sync_time_distribution(std::span<const RunResult> results, double bin_width = 50.0);

// Frequency of cascade sizes pooled over all replicas, unit-width integer
// bins 1..n_nodes.
Histogram cascade_size_distribution(std::span<const RunResult> results, int n_nodes);

struct PowerLawFit {
  double exponent = 0.0;  // slope on log-log axes
  double intercept = 0.0; // log-frequency at log size 0
  double fit_min = 0.0;
  double fit_max = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

// Least-squares line on (log size, log frequency) over nonzero bins whose
// centers fall in [fit_min, fit_max]. Needs at least 3 such bins.
PowerLawFit fit_power_law(const Histogram& hist, double fit_min, double fit_max);

struct ScatterRow {
  double r_global = 0.0;
  double r_alpha = 0.0;
  int community = 0;
};

// One row per (sample, community) for the r_alpha-vs-r scatter export.
std::vector<ScatterRow> r_alpha_vs_r_scatter(std::span<const OrderParameterSample> samples);

} // namespace ifo

#endif
