#ifndef IFOSIM_NETWORK_HPP
#define IFOSIM_NETWORK_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace ifo {

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0; // strictly positive once stored
};

// Per-network statistics in the conventions of trade-network tables:
// density = links / (N (N-1)), mean strength = total weight / N.
// links_undirected counts unordered pairs joined by at least one arc;
// both directed and collapsed link counts are reported since published
// tables rarely say which convention they use.
struct NetworkSummary {
  int n = 0;
  std::int64_t links = 0;
  std::int64_t links_undirected = 0;
  double density = 0.0;
  double mean_k_total = 0.0; // in-degree + out-degree, averaged over nodes
  double mean_k_in = 0.0;
  double mean_k_out = 0.0;
  double mean_strength = 0.0;
};

// Weighted directed graph, immutable after construction. Node labels are
// interned to dense indices 0..N-1 in first-appearance order. No self-loops,
// no duplicate arcs, weights strictly positive (zero-weight records are
// dropped at ingestion).
class Network {
public:
  // labels: one per node; edges reference dense indices. Validates everything.
  Network(std::vector<std::string> labels, std::vector<Edge> edges);

  // Edge-list text format: one `source target weight` record per line,
  // '#'-prefixed comment lines and blank lines skipped. delim empty means
  // any run of spaces/tabs; otherwise a single-character delimiter.
  static Network load_edge_list(const std::string& path, const std::string& delim = "");

  // Writes the same format back; weights round-trip bit-exactly.
  void save_edge_list(const std::string& path) const;

  int n_nodes() const { return static_cast<int>(labels_.size()); }
  std::int64_t n_links() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const;
  // -1 if the label is unknown
  int index_of(const std::string& label) const;

  double out_strength(int i) const; // sum of w_ij over j (total exports)
  double in_strength(int i) const;  // sum of w_ji over j (total imports)
  double total_weight() const { return total_weight_; }

  NetworkSummary summarize() const;

private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<double> s_out_;
  std::vector<double> s_in_;
  std::unordered_map<std::string, int> index_;
  double total_weight_ = 0.0;

  void check_node(int i) const;
};

void write_summary_csv(const Network& net, const std::string& path);

} // namespace ifo

#endif
