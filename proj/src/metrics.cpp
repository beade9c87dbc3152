#include "ifosim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ifosim/error.hpp"

namespace ifo {

double order_parameter(std::span<const double> phases) {
  if (phases.empty()) fail(ErrorKind::invalid_argument, "order parameter of empty phase vector");
  double c = 0.0, s = 0.0;
  for (double phi : phases) {
    const double a = 2.0 * std::numbers::pi * phi;
    c += std::cos(a);
    s += std::sin(a);
  }
  const double n = static_cast<double>(phases.size());
  c /= n;
  s /= n;
  return std::sqrt(c * c + s * s);
}

std::vector<double> community_order_parameters(std::span<const double> phases,
                                               const Partition& part) {
  if (static_cast<int>(phases.size()) != part.n_nodes())
    fail(ErrorKind::invalid_argument, "partition does not cover the phase vector");
  const int m = part.n_communities();
  std::vector<double> c(m, 0.0), s(m, 0.0);
  for (int i = 0; i < part.n_nodes(); ++i) {
    const double a = 2.0 * std::numbers::pi * phases[i];
    const int alpha = part.community_of(i);
    c[alpha] += std::cos(a);
    s[alpha] += std::sin(a);
  }
  std::vector<double> r(m);
  for (int alpha = 0; alpha < m; ++alpha) {
    const double n_alpha = static_cast<double>(part.sizes()[alpha]);
    r[alpha] = std::sqrt(c[alpha] * c[alpha] + s[alpha] * s[alpha]) / n_alpha;
  }
  return r;
}

Histogram sync_time_distribution(std::span<const RunResult> results, double bin_width) {
  if (results.empty()) fail(ErrorKind::invalid_argument, "no replicas");
  if (!(bin_width > 0.0)) fail(ErrorKind::invalid_argument, "bin_width must be > 0");

  double t_max = 0.0;
  std::int64_t synced = 0;
  for (const RunResult& r : results)
    if (r.sync_time) {
      t_max = std::max(t_max, *r.sync_time);
      ++synced;
    }

  Histogram h;
  h.cumulative = true;
  h.censored = static_cast<std::int64_t>(results.size()) - synced;
  if (synced == 0) {
    h.bin_edges = {0.0};
    return h;
  }
  const int n_bins = static_cast<int>(std::floor(t_max / bin_width)) + 1;
  h.bin_edges.resize(n_bins + 1);
  for (int b = 0; b <= n_bins; ++b) h.bin_edges[b] = bin_width * b;
  h.counts.assign(n_bins, 0);
  for (const RunResult& r : results)
    if (r.sync_time) {
      int b = static_cast<int>(std::floor(*r.sync_time / bin_width));
      b = std::clamp(b, 0, n_bins - 1);
      ++h.counts[b];
    }
  return h;
}

Histogram cascade_size_distribution(std::span<const RunResult> results, int n_nodes) {
  if (results.empty()) fail(ErrorKind::invalid_argument, "no replicas");
  if (n_nodes < 1) fail(ErrorKind::invalid_argument, "n_nodes must be >= 1");

  Histogram h;
  h.bin_edges.resize(n_nodes + 1);
  for (int s = 0; s <= n_nodes; ++s) h.bin_edges[s] = static_cast<double>(s + 1);
  h.counts.assign(n_nodes, 0);
  for (const RunResult& r : results)
    for (const CascadeRecord& c : r.cascades) {
      if (c.size < 1 || c.size > n_nodes)
        fail(ErrorKind::internal, "cascade size " + std::to_string(c.size) + " out of bins");
      ++h.counts[c.size - 1];
    }
  return h;
}

PowerLawFit fit_power_law(const Histogram& hist, double fit_min, double fit_max) {
  if (hist.counts.size() + 1 != hist.bin_edges.size())
    fail(ErrorKind::invalid_argument, "malformed histogram");
  if (!(fit_min <= fit_max)) fail(ErrorKind::invalid_argument, "empty fit range");

  std::vector<double> lx, ly;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    if (hist.counts[b] <= 0) continue;
    // Unit bins [s, s+1) represent the integer size s; wider bins use the center.
    const double width = hist.bin_edges[b + 1] - hist.bin_edges[b];
    const double size =
        width == 1.0 ? hist.bin_edges[b] : 0.5 * (hist.bin_edges[b] + hist.bin_edges[b + 1]);
    if (size < fit_min || size > fit_max) continue;
    lx.push_back(std::log(size));
    ly.push_back(std::log(static_cast<double>(hist.counts[b])));
  }
  const int n = static_cast<int>(lx.size());
  if (n < 3)
    fail(ErrorKind::invalid_argument,
         "power-law fit needs >= 3 nonzero bins in range, got " + std::to_string(n));

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = lx[i] - mx, dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) fail(ErrorKind::invalid_argument, "degenerate fit: sizes coincide");

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.fit_min = fit_min;
  fit.fit_max = fit_max;
  fit.n_points = n;
  const double ss_res = syy - sxy * sxy / sxx;
  fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  return fit;
}

std::vector<ScatterRow> r_alpha_vs_r_scatter(std::span<const OrderParameterSample> samples) {
  std::vector<ScatterRow> rows;
  for (const OrderParameterSample& s : samples)
    for (std::size_t alpha = 0; alpha < s.r_by_community.size(); ++alpha)
      rows.push_back({s.r_global, s.r_by_community[alpha], static_cast<int>(alpha)});
  return rows;
}

} // namespace ifo
