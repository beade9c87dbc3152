#include "ifosim/community.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <unordered_map>

#include "ifosim/error.hpp"
#include "ifosim/rng.hpp"

namespace ifo {

namespace {

constexpr double kQTieTol = 1e-12;

// Relabel communities to dense 0..M-1 in first-appearance order.
std::vector<int> densify(std::span<const int> assignment) {
  std::unordered_map<int, int> ids;
  std::vector<int> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto [it, inserted] = ids.emplace(assignment[i], static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

} // namespace

Partition::Partition(const Network& net, std::vector<int> assignment) {
  if (static_cast<int>(assignment.size()) != net.n_nodes())
    fail(ErrorKind::invalid_argument, "assignment does not cover all nodes");
  for (int c : assignment)
    if (c < 0) fail(ErrorKind::invalid_argument, "negative community id");
  assignment_ = densify(assignment);
  int m = 0;
  for (int c : assignment_) m = std::max(m, c + 1);
  sizes_.assign(m, 0);
  for (int c : assignment_) ++sizes_[c];
  q_ = modularity(net, assignment_);
}

double modularity(const Network& net, std::span<const int> assignment) {
  const int n = net.n_nodes();
  if (n == 0) fail(ErrorKind::invalid_argument, "empty network");
  if (static_cast<int>(assignment.size()) != n)
    fail(ErrorKind::invalid_argument, "assignment does not cover all nodes");
  const double total = net.total_weight(); // 2w in the usual notation
  if (!(total > 0.0)) fail(ErrorKind::invalid_argument, "total weight is zero");

  std::vector<int> comm = densify(assignment);
  int m = 0;
  for (int c : comm) m = std::max(m, c + 1);

  std::vector<double> sum_out(m, 0.0), sum_in(m, 0.0);
  for (int i = 0; i < n; ++i) {
    sum_out[comm[i]] += net.out_strength(i);
    sum_in[comm[i]] += net.in_strength(i);
  }
  double intra = 0.0;
  for (const Edge& e : net.edges())
    if (comm[e.src] == comm[e.dst]) intra += e.weight;

  double null = 0.0;
  for (int c = 0; c < m; ++c) null += sum_out[c] * sum_in[c];
  return intra / total - null / (total * total);
}

namespace {

// Aggregated graph used between optimizer levels; unlike Network it allows
// self-loops (intra-community weight collapses onto the diagonal; strengths
// include it, move deltas skip it since it follows the node everywhere).
struct AggGraph {
  int n = 0;
  double total = 0.0;
  std::vector<std::vector<std::pair<int, double>>> out_adj; // (dst, w)
  std::vector<std::vector<std::pair<int, double>>> in_adj;  // (src, w)
  std::vector<double> s_out, s_in;
};

AggGraph from_network(const Network& net) {
  AggGraph g;
  g.n = net.n_nodes();
  g.total = net.total_weight();
  g.out_adj.resize(g.n);
  g.in_adj.resize(g.n);
  g.s_out.resize(g.n);
  g.s_in.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    g.s_out[i] = net.out_strength(i);
    g.s_in[i] = net.in_strength(i);
  }
  for (const Edge& e : net.edges()) {
    g.out_adj[e.src].emplace_back(e.dst, e.weight);
    g.in_adj[e.dst].emplace_back(e.src, e.weight);
  }
  return g;
}

// One pass of local moves. comm is updated in place (dense ids on entry).
// Returns true if any node changed community.
bool one_level(const AggGraph& g, std::vector<int>& comm, std::mt19937_64& rng) {
  const double total = g.total;
  int m = 0;
  for (int c : comm) m = std::max(m, c + 1);
  std::vector<double> sum_out(m, 0.0), sum_in(m, 0.0);
  for (int i = 0; i < g.n; ++i) {
    sum_out[comm[i]] += g.s_out[i];
    sum_in[comm[i]] += g.s_in[i];
  }

  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  // Scratch maps of weights to/from each candidate community.
  std::vector<double> w_to(m, 0.0), w_from(m, 0.0);
  std::vector<int> touched;

  bool any_move = false;
  bool improved = true;
  int sweeps = 0;
  while (improved && sweeps < 128) {
    improved = false;
    ++sweeps;
    for (int u : order) {
      const int old_c = comm[u];
      // Take u out of its community.
      sum_out[old_c] -= g.s_out[u];
      sum_in[old_c] -= g.s_in[u];

      touched.clear();
      auto touch = [&](int c) {
        if (w_to[c] == 0.0 && w_from[c] == 0.0) touched.push_back(c);
      };
      for (const auto& [v, w] : g.out_adj[u])
        if (v != u) {
          touch(comm[v]);
          w_to[comm[v]] += w;
        }
      for (const auto& [v, w] : g.in_adj[u])
        if (v != u) {
          touch(comm[v]);
          w_from[comm[v]] += w;
        }
      if (w_to[old_c] == 0.0 && w_from[old_c] == 0.0) touched.push_back(old_c);

      auto gain = [&](int c) {
        return (w_to[c] + w_from[c]) / total -
               (g.s_out[u] * sum_in[c] + g.s_in[u] * sum_out[c]) / (total * total);
      };
      // Ties keep the current community.
      int best_c = old_c;
      double best_gain = gain(old_c);
      for (int c : touched) {
        if (c == old_c) continue;
        const double gc = gain(c);
        if (gc > best_gain + kQTieTol) {
          best_gain = gc;
          best_c = c;
        }
      }

      sum_out[best_c] += g.s_out[u];
      sum_in[best_c] += g.s_in[u];
      comm[u] = best_c;
      if (best_c != old_c) {
        improved = true;
        any_move = true;
      }

      for (int c : touched) {
        w_to[c] = 0.0;
        w_from[c] = 0.0;
      }
    }
  }
  return any_move;
}

AggGraph aggregate(const AggGraph& g, const std::vector<int>& comm, int m) {
  AggGraph a;
  a.n = m;
  a.total = g.total;
  a.out_adj.resize(m);
  a.in_adj.resize(m);
  a.s_out.assign(m, 0.0);
  a.s_in.assign(m, 0.0);

  std::vector<std::unordered_map<int, double>> acc(m);
  for (int i = 0; i < g.n; ++i) {
    a.s_out[comm[i]] += g.s_out[i];
    a.s_in[comm[i]] += g.s_in[i];
    for (const auto& [j, w] : g.out_adj[i]) acc[comm[i]][comm[j]] += w;
  }
  for (int c = 0; c < m; ++c) {
    std::vector<std::pair<int, double>> row(acc[c].begin(), acc[c].end());
    std::sort(row.begin(), row.end());
    for (const auto& [d, w] : row) {
      a.out_adj[c].emplace_back(d, w);
      a.in_adj[d].emplace_back(c, w);
    }
  }
  return a;
}

void renumber(std::vector<int>& comm) {
  std::unordered_map<int, int> ids;
  for (int& c : comm) {
    auto [it, _] = ids.emplace(c, static_cast<int>(ids.size()));
    c = it->second;
  }
}

std::vector<int> louvain_once(const Network& net, std::uint64_t seed) {
  AggGraph g = from_network(net);
  std::mt19937_64 rng(seed);

  std::vector<int> flat(net.n_nodes());
  std::iota(flat.begin(), flat.end(), 0);

  std::vector<int> comm(g.n);
  std::iota(comm.begin(), comm.end(), 0);

  for (;;) {
    const bool moved = one_level(g, comm, rng);
    renumber(comm);
    int m = 0;
    for (int c : comm) m = std::max(m, c + 1);

    for (int& f : flat) f = comm[f];

    if (!moved || m == g.n) break;
    g = aggregate(g, comm, m);
    comm.assign(m, 0);
    std::iota(comm.begin(), comm.end(), 0);
  }
  return flat;
}

} // namespace

Partition optimize_modularity(const Network& net, std::uint64_t seed, int restarts) {
  if (net.n_nodes() < 2) fail(ErrorKind::invalid_argument, "need at least 2 nodes");
  if (restarts < 1) fail(ErrorKind::invalid_argument, "restarts must be >= 1");

  std::vector<int> best;
  double best_q = 0.0;
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> cand = louvain_once(net, derive_seed(seed, static_cast<std::uint64_t>(r)));
    const double q = modularity(net, cand);
    if (best.empty() || q > best_q + kQTieTol) {
      best = std::move(cand);
      best_q = q;
    }
  }
  return Partition(net, std::move(best));
}

Partition brute_force_modularity(const Network& net) {
  const int n = net.n_nodes();
  if (n < 2) fail(ErrorKind::invalid_argument, "need at least 2 nodes");
  if (n > 12)
    fail(ErrorKind::invalid_argument,
         "brute force limited to N <= 12 (Bell numbers grow too fast), got N = " +
             std::to_string(n));

  // Enumerate restricted growth strings in lexicographic order: a[0] = 0,
  // a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  std::vector<int> best;
  double best_q = 0.0;
  int best_m = 0;

  auto consider = [&](const std::vector<int>& cand) {
    const double q = modularity(net, cand);
    int m = 0;
    for (int c : cand) m = std::max(m, c + 1);
    if (best.empty() || q > best_q + kQTieTol) {
      best = cand;
      best_q = q;
      best_m = m;
    } else if (q >= best_q - kQTieTol && m < best_m) {
      // Lexicographic tie-break is implied by enumeration order.
      best = cand;
      best_q = std::max(best_q, q);
      best_m = m;
    }
  };

  for (;;) {
    consider(a);
    // next RGS
    int i = n - 1;
    while (i > 0) {
      int pmax = 0;
      for (int k = 0; k < i; ++k) pmax = std::max(pmax, a[k]);
      if (a[i] <= pmax) break;
      --i;
    }
    if (i == 0) break;
    ++a[i];
    for (int k = i + 1; k < n; ++k) a[k] = 0;
  }
  return Partition(net, std::move(best));
}

Partition load_partition_csv(const Network& net, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open partition '" + path + "'");

  std::vector<int> assignment(net.n_nodes(), -1);
  std::string line;
  long lineno = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      fail(ErrorKind::parse, path + ":" + std::to_string(lineno) + ": expected 'label,community'");
    const std::string label = line.substr(0, comma);
    const std::string cid_s = line.substr(comma + 1);
    if (first_record) {
      first_record = false;
      if (label == "node_label") continue; // header
    }
    int cid = 0;
    auto [p, ec] = std::from_chars(cid_s.data(), cid_s.data() + cid_s.size(), cid);
    if (ec != std::errc() || p != cid_s.data() + cid_s.size() || cid < 0)
      fail(ErrorKind::parse,
           path + ":" + std::to_string(lineno) + ": bad community id '" + cid_s + "'");
    const int node = net.index_of(label);
    if (node < 0)
      fail(ErrorKind::parse,
           path + ":" + std::to_string(lineno) + ": unknown node label '" + label + "'");
    if (assignment[node] != -1)
      fail(ErrorKind::parse,
           path + ":" + std::to_string(lineno) + ": node '" + label + "' assigned twice");
    assignment[node] = cid;
  }
  for (int i = 0; i < net.n_nodes(); ++i)
    if (assignment[i] == -1)
      fail(ErrorKind::parse, path + ": node '" + net.label(i) + "' has no community");

  // Partition relabels ids densely in first-appearance order over node index;
  // arbitrary ids in the file are fine.
  return Partition(net, std::move(assignment));
}

void write_partition_csv(const Network& net, const Partition& part, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write partition '" + path + "'");
  out << "node_label,community_id\n";
  for (int i = 0; i < net.n_nodes(); ++i) out << net.label(i) << ',' << part.community_of(i) << '\n';
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

} // namespace ifo
