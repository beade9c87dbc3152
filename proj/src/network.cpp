#include "ifosim/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "ifosim/error.hpp"
#include "ifosim/io.hpp"

namespace ifo {

Network::Network(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const int n = static_cast<int>(labels_.size());
  if (n < 2) fail(ErrorKind::parse, "network needs at least 2 nodes, got " + std::to_string(n));

  index_.reserve(labels_.size());
  for (int i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], i).second)
      fail(ErrorKind::parse, "duplicate node label '" + labels_[i] + "'");
  }

  s_out_.assign(n, 0.0);
  s_in_.assign(n, 0.0);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      fail(ErrorKind::internal, "edge index out of range");
    if (e.src == e.dst)
      fail(ErrorKind::parse, "self-loop on node '" + labels_[e.src] + "'");
    if (e.weight < 0.0)
      fail(ErrorKind::parse, "negative weight on edge " + labels_[e.src] + " -> " + labels_[e.dst]);
    if (e.weight == 0.0)
      fail(ErrorKind::internal, "zero-weight edge must be dropped before construction");
    if (!seen.emplace(e.src, e.dst).second)
      fail(ErrorKind::parse, "duplicate edge " + labels_[e.src] + " -> " + labels_[e.dst]);
    s_out_[e.src] += e.weight;
    s_in_[e.dst] += e.weight;
    total_weight_ += e.weight;
  }
}

namespace {

std::vector<std::string> split_record(const std::string& line, const std::string& delim) {
  std::vector<std::string> out;
  if (delim.empty()) {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
  } else {
    std::string::size_type pos = 0;
    while (pos <= line.size()) {
      auto next = line.find(delim[0], pos);
      if (next == std::string::npos) next = line.size();
      std::string tok = line.substr(pos, next - pos);
      // trim surrounding spaces so "a, b, 1.0" parses
      auto b = tok.find_first_not_of(" \t\r");
      auto e = tok.find_last_not_of(" \t\r");
      out.push_back(b == std::string::npos ? std::string() : tok.substr(b, e - b + 1));
      pos = next + 1;
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
  }
  return out;
}

} // namespace

Network Network::load_edge_list(const std::string& path, const std::string& delim) {
  if (delim.size() > 1)
    fail(ErrorKind::invalid_argument, "delimiter must be a single character or empty");
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open edge list '" + path + "'");

  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const std::string& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(s);
    index.emplace(s, id);
    return id;
  };

  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    auto where = [&] { return path + ":" + std::to_string(lineno); };
    auto fields = split_record(line, delim);
    if (fields.size() != 3)
      fail(ErrorKind::parse, where() + ": expected 'source target weight', got " +
                                 std::to_string(fields.size()) + " fields");
    double w = 0.0;
    const std::string& ws = fields[2];
    auto [p, ec] = std::from_chars(ws.data(), ws.data() + ws.size(), w);
    if (ec != std::errc() || p != ws.data() + ws.size())
      fail(ErrorKind::parse, where() + ": unparseable weight '" + ws + "'");
    if (w < 0.0) fail(ErrorKind::parse, where() + ": negative weight " + ws);
    if (fields[0] == fields[1]) fail(ErrorKind::parse, where() + ": self-loop on '" + fields[0] + "'");
    if (w == 0.0) continue; // zero-weight records carry no information

    int src = intern(fields[0]);
    int dst = intern(fields[1]);
    if (!seen.emplace(src, dst).second)
      fail(ErrorKind::parse, where() + ": duplicate edge " + fields[0] + " -> " + fields[1]);
    edges.push_back({src, dst, w});
  }
  if (labels.size() < 2)
    fail(ErrorKind::parse, path + ": a network needs at least 2 nodes (" +
                               std::to_string(labels.size()) + " found)");
  return Network(std::move(labels), std::move(edges));
}

void Network::save_edge_list(const std::string& path) const {
  // The format has no way to declare a node that touches no edge; refuse
  // instead of silently dropping it.
  std::vector<char> covered(labels_.size(), 0);
  for (const Edge& e : edges_) covered[e.src] = covered[e.dst] = 1;
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (!covered[i])
      fail(ErrorKind::invalid_argument, "node '" + labels_[i] +
                                            "' has no edges; the edge-list format cannot "
                                            "represent isolated nodes");
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write edge list '" + path + "'");
  for (const Edge& e : edges_)
    out << labels_[e.src] << ' ' << labels_[e.dst] << ' ' << fmt_double(e.weight) << '\n';
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void Network::check_node(int i) const {
  if (i < 0 || i >= n_nodes())
    fail(ErrorKind::invalid_argument,
         "node index " + std::to_string(i) + " out of range [0," + std::to_string(n_nodes()) + ")");
}

const std::string& Network::label(int i) const {
  check_node(i);
  return labels_[i];
}

int Network::index_of(const std::string& label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : it->second;
}

double Network::out_strength(int i) const {
  check_node(i);
  return s_out_[i];
}

double Network::in_strength(int i) const {
  check_node(i);
  return s_in_[i];
}

NetworkSummary Network::summarize() const {
  const int n = n_nodes();
  NetworkSummary s;
  s.n = n;
  s.links = n_links();

  std::set<std::pair<int, int>> pairs;
  for (const Edge& e : edges_) pairs.emplace(std::min(e.src, e.dst), std::max(e.src, e.dst));
  s.links_undirected = static_cast<std::int64_t>(pairs.size());

  s.density = static_cast<double>(s.links) / (static_cast<double>(n) * (n - 1));
  s.mean_k_in = static_cast<double>(s.links) / n;
  s.mean_k_out = s.mean_k_in;
  s.mean_k_total = 2.0 * static_cast<double>(s.links) / n;
  s.mean_strength = total_weight_ / n;
  return s;
}

void write_summary_csv(const Network& net, const std::string& path) {
  NetworkSummary s = net.summarize();
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write summary '" + path + "'");
  out << "n,links,density,mean_k_total,mean_k_in,mean_k_out,mean_strength,links_undirected\n";
  out << s.n << ',' << s.links << ',' << fmt_double(s.density) << ',' << fmt_double(s.mean_k_total)
      << ',' << fmt_double(s.mean_k_in) << ',' << fmt_double(s.mean_k_out) << ','
      << fmt_double(s.mean_strength) << ',' << s.links_undirected << '\n';
}

} // namespace ifo
