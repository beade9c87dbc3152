#ifndef IFOSIM_COMMUNITY_HPP
#define IFOSIM_COMMUNITY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ifosim/network.hpp"

namespace ifo {

// Node -> community assignment with the modularity of that split.
// Community ids are dense 0..M-1 in first-appearance order over node index.
class Partition {
public:
  Partition(const Network& net, std::vector<int> assignment);

  const std::vector<int>& assignment() const { return assignment_; }
  int community_of(int node) const { return assignment_.at(node); }
  int n_communities() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  double q() const { return q_; }
  int n_nodes() const { return static_cast<int>(assignment_.size()); }

private:
  std::vector<int> assignment_;
  std::vector<int> sizes_;
  double q_ = 0.0;
};

// Directed weighted modularity:
//   Q = (1/2w) sum_ij (w_ij - s_i^out s_j^in / 2w) delta(C_i, C_j),
// with 2w the total weight. Community ids may be any nonnegative ints.
double modularity(const Network& net, std::span<const int> assignment);

// Multi-level greedy maximization (Louvain-style local moves + community
// aggregation) under the directed null model, best of `restarts` randomized
// node orders. Deterministic given the seed.
Partition optimize_modularity(const Network& net, std::uint64_t seed, int restarts = 8);

// Exact argmax of Q over all set partitions, N <= 12. Ties break toward
// fewer communities, then lexicographically smaller canonical assignment.
Partition brute_force_modularity(const Network& net);

// Partition CSV: `node_label,community_id` with header. Community ids in the
// file may be arbitrary nonnegative ints; they are relabeled densely in
// first-appearance order over node index.
Partition load_partition_csv(const Network& net, const std::string& path);
void write_partition_csv(const Network& net, const Partition& part, const std::string& path);

} // namespace ifo

#endif
