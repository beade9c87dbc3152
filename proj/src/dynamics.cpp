#include "ifosim/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <mutex>
#include <thread>

#include "ifosim/community.hpp"
#include "ifosim/error.hpp"
#include "ifosim/metrics.hpp"
#include "ifosim/rng.hpp"

namespace ifo {

namespace {

void check_b(double b) {
  if (!(b > 0.0)) fail(ErrorKind::domain, "dissipation parameter b must be > 0");
}

} // namespace

double state_from_phase(double phi, double b) {
  check_b(b);
  if (!(phi >= 0.0 && phi <= 1.0)) fail(ErrorKind::domain, "phase outside [0,1]");
  return std::log1p(std::expm1(b) * phi) / b;
}

double phase_from_state(double x, double b) {
  check_b(b);
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::domain, "state outside [0,1]");
  return std::expm1(b * x) / std::expm1(b);
}

CouplingMatrix::CouplingMatrix(const Network& net) : pulses_(net.n_nodes()) {
  // Edge j -> i (exports of j to i) couples receiver j to firing node i.
  for (const Edge& e : net.edges()) {
    const int j = e.src, i = e.dst;
    const double s_out = net.out_strength(j);
    if (s_out > 0.0) pulses_[i].push_back({j, e.weight / s_out});
  }
  for (auto& row : pulses_)
    std::sort(row.begin(), row.end(),
              [](const Pulse& a, const Pulse& b) { return a.receiver < b.receiver; });
}

std::vector<double> init_phases(int n, std::uint64_t seed) {
  if (n < 2) fail(ErrorKind::invalid_argument, "need at least 2 oscillators");
  std::mt19937_64 rng(seed);
  std::vector<double> phases(n);
  for (double& p : phases) p = uniform01(rng);
  return phases;
}

FiringEvent advance_to_next_firing(OscillatorSystem& sys) {
  auto& phi = sys.phases;
  if (phi.empty()) fail(ErrorKind::invalid_argument, "no oscillators");
  std::size_t lead = 0;
  for (std::size_t i = 1; i < phi.size(); ++i)
    if (phi[i] > phi[lead]) lead = i; // ties keep the lowest index
  const double elapsed = 1.0 - phi[lead];
  for (double& p : phi) p = std::min(p + elapsed, 1.0);
  phi[lead] = 1.0;
  sys.clock += elapsed;
  return {static_cast<int>(lead), elapsed};
}

CascadeRecord resolve_cascade(OscillatorSystem& sys, int origin) {
  auto& phi = sys.phases;
  const int n = static_cast<int>(phi.size());
  if (origin < 0 || origin >= n) fail(ErrorKind::invalid_argument, "cascade origin out of range");

  CascadeRecord rec;
  rec.origin = origin;
  rec.cycle_time = sys.clock;

  std::vector<char> member(n, 0);
  std::deque<int> queue;
  member[origin] = 1;
  phi[origin] = 0.0;
  rec.members.push_back(origin);
  queue.push_back(origin);

  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop_front();
    if (!sys.coupling) continue;
    for (const auto& pulse : sys.coupling->pulses_from(k)) {
      const int j = pulse.receiver;
      if (member[j]) continue;
      const double x = state_from_phase(phi[j], sys.b) + pulse.eps;
      if (x >= 1.0) {
        member[j] = 1;
        phi[j] = 0.0;
        rec.members.push_back(j);
        queue.push_back(j);
      } else {
        phi[j] = phase_from_state(x, sys.b);
      }
    }
  }
  rec.size = static_cast<int>(rec.members.size());
  return rec;
}

namespace {

void check_params(const RunParams& p) {
  check_b(p.b);
  if (!(p.sync_fraction > 0.0 && p.sync_fraction <= 1.0))
    fail(ErrorKind::invalid_argument, "sync_fraction must be in (0,1]");
  if (!(p.max_cycles > 0.0)) fail(ErrorKind::invalid_argument, "max_cycles must be > 0");
}

OrderParameterSample take_sample(const std::vector<double>& phases, double at, double delta,
                                 const Partition* partition) {
  // Phases advance linearly between events, so the state at an intermediate
  // time is just a common shift.
  static thread_local std::vector<double> shifted;
  shifted.assign(phases.begin(), phases.end());
  for (double& p : shifted) p = std::min(p + delta, 1.0);
  OrderParameterSample s;
  s.clock = at;
  s.r_global = order_parameter(shifted);
  if (partition) s.r_by_community = community_order_parameters(shifted, *partition);
  return s;
}

} // namespace

RunResult run_replica(const Network& net, const CouplingMatrix& coupling, const RunParams& params,
                      std::uint64_t seed, const Partition* partition) {
  check_params(params);
  const int n = net.n_nodes();
  const int sync_size = static_cast<int>(std::ceil(params.sync_fraction * n));

  RunResult result;
  result.seed = seed;

  OscillatorSystem sys;
  sys.phases = init_phases(n, seed);
  sys.b = params.b;
  sys.coupling = &coupling;

  const bool sampling = params.sample_interval > 0.0;
  long sample_idx = 0;

  for (;;) {
    // Next threshold crossing; peek without mutating so samples inside the
    // gap can be taken first.
    const double phi_max = *std::max_element(sys.phases.begin(), sys.phases.end());
    const double t_next = sys.clock + (1.0 - phi_max);

    if (sampling) {
      for (;;) {
        const double t_s = params.sample_interval * static_cast<double>(sample_idx);
        if (t_s >= t_next || t_s > params.max_cycles) break;
        result.r_samples.push_back(take_sample(sys.phases, t_s, t_s - sys.clock, partition));
        ++sample_idx;
      }
    }

    if (t_next > params.max_cycles) break; // censored: sync_time stays empty

    const FiringEvent ev = advance_to_next_firing(sys);
    CascadeRecord cascade = resolve_cascade(sys, ev.node);
    if (!params.record_members) {
      cascade.members.clear();
      cascade.members.shrink_to_fit();
    }
    const int size = cascade.size;
    result.cascades.push_back(std::move(cascade));
    if (size >= sync_size) {
      result.sync_time = sys.clock;
      break;
    }
  }
  return result;
}

RunResult run_replica(const Network& net, const RunParams& params, std::uint64_t seed,
                      const Partition* partition) {
  CouplingMatrix coupling(net);
  return run_replica(net, coupling, params, seed, partition);
}

void for_each_replica(const Network& net, const RunParams& params,
                      const std::vector<std::uint64_t>& seeds, const EnsembleOptions& options,
                      const Partition* partition,
                      const std::function<void(std::size_t, RunResult&&)>& consume) {
  check_params(params);
  if (seeds.empty()) fail(ErrorKind::invalid_argument, "seed list is empty");
  const int jobs = options.jobs;
  if (jobs < 1) fail(ErrorKind::invalid_argument, "jobs must be >= 1");

  const CouplingMatrix coupling(net);
  RunParams rest = params;
  if (options.sample_only_first) rest.sample_interval = 0.0;
  if (options.members_only_first) rest.record_members = false;

  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_idx = seeds.size();

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        const RunParams& p = (i == 0) ? params : rest;
        RunResult r = run_replica(net, coupling, p, seeds[i], partition);
        std::lock_guard<std::mutex> lk(sink_mutex);
        consume(i, std::move(r));
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mutex);
        if (i < first_error_idx) {
          first_error_idx = i;
          first_error = std::current_exception();
        }
      }
    }
  };

  const int width = std::min<int>(jobs, static_cast<int>(seeds.size()));
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (int t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const Error& e) {
      fail(e.kind(), "replica seed " + std::to_string(seeds[first_error_idx]) + ": " + e.what());
    } catch (const std::exception& e) {
      fail(ErrorKind::internal,
           "replica seed " + std::to_string(seeds[first_error_idx]) + ": " + e.what());
    }
  }
}

std::vector<RunResult> run_ensemble(const Network& net, const RunParams& params,
                                    const std::vector<std::uint64_t>& seeds,
                                    const EnsembleOptions& options, const Partition* partition) {
  std::vector<RunResult> results(seeds.size());
  for_each_replica(net, params, seeds, options, partition,
                   [&](std::size_t i, RunResult&& r) { results[i] = std::move(r); });
  return results;
}

} // namespace ifo
