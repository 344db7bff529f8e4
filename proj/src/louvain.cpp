#include <algorithm>
#include <map>
#include <numeric>

#include "biblio/conetwork.hpp"
#include "biblio/random.hpp"

namespace biblio {

int Partition::community_count() const {
  if (community.empty()) return 0;
  return *std::max_element(community.begin(), community.end()) + 1;
}

double modularity(const CoNetwork& network, const std::vector<int>& community) {
  const double m = static_cast<double>(network.total_weight());
  if (m <= 0.0) return 0.0;
  std::map<int, double> internal;
  std::map<int, double> tot;
  for (const auto& e : network.edges) {
    const double w = static_cast<double>(e.weight);
    tot[community[e.u]] += w;
    tot[community[e.v]] += w;
    if (community[e.u] == community[e.v]) internal[community[e.u]] += w;
  }
  double q = 0.0;
  for (const auto& [c, t] : tot) {
    auto it = internal.find(c);
    const double in = it == internal.end() ? 0.0 : it->second;
    q += in / m - (t / (2.0 * m)) * (t / (2.0 * m));
  }
  return q;
}

namespace {

// Weighted graph with self-loops; loop[i] holds the total weight of edges
// inside node i counted twice (as in the adjacency matrix diagonal).
struct Graph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> loop;
  std::vector<double> degree;
  double two_m = 0.0;
};

Graph graph_from_network(const CoNetwork& network) {
  Graph g;
  const std::size_t n = network.size();
  g.adj.resize(n);
  g.loop.assign(n, 0.0);
  g.degree.assign(n, 0.0);
  for (const auto& e : network.edges) {
    const double w = static_cast<double>(e.weight);
    g.adj[e.u].push_back({e.v, w});
    g.adj[e.v].push_back({e.u, w});
    g.degree[e.u] += w;
    g.degree[e.v] += w;
    g.two_m += 2.0 * w;
  }
  return g;
}

double graph_modularity(const Graph& g, const std::vector<std::size_t>& comm) {
  if (g.two_m <= 0.0) return 0.0;
  const std::size_t k = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
  std::vector<double> in(k, 0.0);
  std::vector<double> tot(k, 0.0);
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    tot[comm[i]] += g.degree[i];
    in[comm[i]] += g.loop[i];
    for (const auto& [j, w] : g.adj[i]) {
      if (comm[j] == comm[i]) in[comm[i]] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    q += in[c] / g.two_m - (tot[c] / g.two_m) * (tot[c] / g.two_m);
  }
  return q;
}

// Local moving phase. Returns true if any node changed community.
bool move_nodes(const Graph& g, std::vector<std::size_t>& comm, Rng& rng) {
  const std::size_t n = g.adj.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += g.degree[i];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  seeded_shuffle(order, rng);

  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto i : order) {
      const std::size_t own = comm[i];
      touched.clear();
      for (const auto& [j, w] : g.adj[i]) {
        if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
        link[comm[j]] += w;
      }
      tot[own] -= g.degree[i];
      const double ki = g.degree[i];
      double best_gain = link[own] - tot[own] * ki / g.two_m;
      std::size_t best = own;
      std::sort(touched.begin(), touched.end());
      for (auto c : touched) {
        if (c == own) continue;
        const double gain = link[c] - tot[c] * ki / g.two_m;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += ki;
      for (auto c : touched) link[c] = 0.0;
      if (best != own) {
        comm[i] = best;
        moved = true;
        any = true;
      }
    }
  }
  return any;
}

std::vector<std::size_t> renumber(std::vector<std::size_t>& comm) {
  std::map<std::size_t, std::size_t> ids;
  for (auto& c : comm) {
    auto [it, inserted] = ids.emplace(c, ids.size());
    c = it->second;
  }
  return comm;
}

Graph aggregate(const Graph& g, const std::vector<std::size_t>& comm, std::size_t k) {
  Graph out;
  out.adj.resize(k);
  out.loop.assign(k, 0.0);
  out.degree.assign(k, 0.0);
  out.two_m = g.two_m;
  std::vector<std::map<std::size_t, double>> acc(k);
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    const std::size_t ci = comm[i];
    out.degree[ci] += g.degree[i];
    out.loop[ci] += g.loop[i];
    for (const auto& [j, w] : g.adj[i]) {
      if (comm[j] == ci) {
        out.loop[ci] += w;
      } else {
        acc[ci][comm[j]] += w;
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& [d, w] : acc[c]) out.adj[c].push_back({d, w});
  }
  return out;
}

}  // namespace

Partition louvain(const CoNetwork& network, std::uint64_t seed) {
  Partition result;
  const std::size_t n = network.size();
  result.community.assign(n, 0);
  std::iota(result.community.begin(), result.community.end(), 0);
  Graph g = graph_from_network(network);
  if (n == 0 || g.two_m <= 0.0) {
    result.modularity = 0.0;
    return result;
  }
  Rng rng(seed);
  std::vector<std::size_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  double q = graph_modularity(g, identity);

  while (true) {
    std::vector<std::size_t> comm(g.adj.size());
    std::iota(comm.begin(), comm.end(), 0);
    if (!move_nodes(g, comm, rng)) break;
    renumber(comm);
    const double next_q = graph_modularity(g, comm);
    if (next_q - q < 1e-7) break;
    const std::size_t k = *std::max_element(comm.begin(), comm.end()) + 1;
    for (auto& m : membership) m = comm[m];
    q = next_q;
    g = aggregate(g, comm, k);
    if (k == 1) break;
  }

  std::vector<std::size_t> final_comm = membership;
  renumber(final_comm);
  for (std::size_t i = 0; i < n; ++i) result.community[i] = static_cast<int>(final_comm[i]);
  result.modularity = modularity(network, result.community);
  return result;
}

}  // namespace biblio
