#ifndef IFOSIM_DYNAMICS_HPP
#define IFOSIM_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ifosim/network.hpp"

namespace ifo {

class Partition; // community.hpp

// State variable of an integrate-and-fire oscillator as a function of phase:
// x = (1/b) ln(1 + (e^b - 1) phi). Monotone increasing, concave down, with
// x(0) = 0 and x(1) = 1. b > 0 controls the concavity; b -> 0 is the linear
// limit and is rejected.
double state_from_phase(double phi, double b);

// Inverse curve: phi = (e^{b x} - 1) / (e^b - 1).
double phase_from_state(double x, double b);

// Pulse amplitudes derived from the trade flows. When node i fires, each
// node j that exports to i receives eps(i, j) = w_ji / s_j^out, the fraction
// of j's total exports going to i. Nodes with zero out-strength have no
// export fractions and receive no pulses.
class CouplingMatrix {
public:
  struct Pulse {
    int receiver;
    double eps;
  };

  explicit CouplingMatrix(const Network& net);

  int n_nodes() const { return static_cast<int>(pulses_.size()); }
  // Receivers of a firing node, ascending by receiver index.
  const std::vector<Pulse>& pulses_from(int firing_node) const { return pulses_.at(firing_node); }

private:
  std::vector<std::vector<Pulse>> pulses_;
};

// Independent uniform [0,1) phases from a seeded generator; identical seeds
// give identical vectors.
std::vector<double> init_phases(int n, std::uint64_t seed);

struct OscillatorSystem {
  std::vector<double> phases;          // each in [0,1) between events
  double b = 3.0;                      // dissipation parameter
  const CouplingMatrix* coupling = nullptr;
  double clock = 0.0;                  // cycle units
};

struct FiringEvent {
  int node;
  double elapsed;
};

// Advances all phases to the moment the leading oscillator reaches threshold
// and returns that node (lowest index on ties) with the elapsed time.
// The firing node's phase is left at exactly 1; resolve_cascade resets it.
FiringEvent advance_to_next_firing(OscillatorSystem& sys);

struct CascadeRecord {
  int origin = 0;
  std::vector<int> members; // firing order, origin first, no duplicates
  int size = 0;
  double cycle_time = 0.0;
};

// Fires `origin` and propagates pulses breadth-first. A node receiving a
// pulse gets x <- f(phi) + eps; at or past threshold it resets to 0, joins
// the cascade and fires in turn, otherwise phi <- f^-1(x). Each node fires
// at most once per cascade and ignores pulses after its reset.
CascadeRecord resolve_cascade(OscillatorSystem& sys, int origin);

struct OrderParameterSample {
  double clock = 0.0;
  double r_global = 0.0;
  std::vector<double> r_by_community; // empty when no partition was given
};

struct RunParams {
  double b = 3.0;
  double sync_fraction = 0.9;   // in (0,1]
  double max_cycles = 1e4;
  double sample_interval = 0.1; // <= 0 disables r sampling
  bool record_members = true;   // false keeps only origin/size/time per cascade
};

struct RunResult {
  std::vector<CascadeRecord> cascades;
  std::optional<double> sync_time; // empty: censored at max_cycles
  std::vector<OrderParameterSample> r_samples;
  std::uint64_t seed = 0;
};

// One deterministic replica: alternates advance_to_next_firing and
// resolve_cascade, sampling r (and r_alpha when a partition is given) every
// sample_interval cycles, until one cascade reaches
// ceil(sync_fraction * N) members or the clock passes max_cycles.
RunResult run_replica(const Network& net, const CouplingMatrix& coupling, const RunParams& params,
                      std::uint64_t seed, const Partition* partition = nullptr);

RunResult run_replica(const Network& net, const RunParams& params, std::uint64_t seed,
                      const Partition* partition = nullptr);

struct EnsembleOptions {
  int jobs = 1;
  // Memory knobs for large ensembles: replica 0 always gets the full
  // treatment, the rest can skip r sampling / cascade member lists.
  bool sample_only_first = false;
  bool members_only_first = false;
};

// Runs one replica per seed, at most `jobs` concurrently. Results are keyed
// by seed order; output is independent of scheduling.
std::vector<RunResult> run_ensemble(const Network& net, const RunParams& params,
                                    const std::vector<std::uint64_t>& seeds,
                                    const EnsembleOptions& options = {},
                                    const Partition* partition = nullptr);

// Ensemble plumbing for reducers that do not want to hold every RunResult:
// consume(replica_index, result) is invoked under a mutex, in arbitrary order.
void for_each_replica(const Network& net, const RunParams& params,
                      const std::vector<std::uint64_t>& seeds, const EnsembleOptions& options,
                      const Partition* partition,
                      const std::function<void(std::size_t, RunResult&&)>& consume);

} // namespace ifo

#endif
