#include "biblio/conetwork.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace biblio {

bool operator==(const Edge& a, const Edge& b) {
  return a.u == b.u && a.v == b.v && a.weight == b.weight;
}

long long CoNetwork::total_weight() const {
  long long s = 0;
  for (const auto& e : edges) s += e.weight;
  return s;
}

std::size_t CoNetwork::index_of(const std::string& node) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
  if (it == nodes.end() || *it != node) throw std::out_of_range("node not in network: " + node);
  return static_cast<std::size_t>(it - nodes.begin());
}

namespace {

using PairWeights = std::map<std::pair<std::string, std::string>, long long>;

CoNetwork from_pair_weights(Level level, std::set<std::string> node_set, const PairWeights& pairs) {
  CoNetwork net;
  net.level = level;
  net.nodes.assign(node_set.begin(), node_set.end());
  for (const auto& [key, w] : pairs) {
    std::size_t a = net.index_of(key.first);
    std::size_t b = net.index_of(key.second);
    net.edges.push_back({std::min(a, b), std::max(a, b), w});
  }
  std::sort(net.edges.begin(), net.edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return net;
}

}  // namespace

CoNetwork make_network(Level level, std::vector<std::string> nodes,
                       const std::vector<std::tuple<std::string, std::string, long long>>& edges) {
  std::set<std::string> node_set(nodes.begin(), nodes.end());
  PairWeights pairs;
  for (const auto& [a, b, w] : edges) {
    if (a == b) throw std::invalid_argument("self-loop on " + a);
    if (w <= 0) throw std::invalid_argument("edge weight must be positive");
    node_set.insert(a);
    node_set.insert(b);
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (!pairs.emplace(key, w).second) {
      throw std::invalid_argument("duplicate edge " + key.first + " -- " + key.second);
    }
  }
  return from_pair_weights(level, std::move(node_set), pairs);
}

CoNetwork network_from_groups(Level level, const std::vector<std::vector<std::string>>& groups,
                              long long min_edge_weight, Diagnostics* diags) {
  if (min_edge_weight < 1) throw std::invalid_argument("min_edge_weight must be >= 1");
  PairWeights pairs;
  std::set<std::string> seen;
  for (const auto& g : groups) {
    std::set<std::string> members(g.begin(), g.end());
    seen.insert(members.begin(), members.end());
    for (auto a = members.begin(); a != members.end(); ++a) {
      for (auto b = std::next(a); b != members.end(); ++b) ++pairs[{*a, *b}];
    }
  }
  std::set<std::string> kept;
  for (auto it = pairs.begin(); it != pairs.end();) {
    if (it->second < min_edge_weight) {
      it = pairs.erase(it);
    } else {
      kept.insert(it->first.first);
      kept.insert(it->first.second);
      ++it;
    }
  }
  if (diags != nullptr) {
    std::vector<std::string> dropped;
    std::set_difference(seen.begin(), seen.end(), kept.begin(), kept.end(),
                        std::back_inserter(dropped));
    if (!dropped.empty()) {
      std::string sample;
      for (std::size_t i = 0; i < dropped.size() && i < 5; ++i) {
        sample += (i == 0 ? "" : "; ") + dropped[i];
      }
      if (dropped.size() > 5) sample += "; ...";
      diags->info(std::string("network:") + std::string(to_string(level)),
                  std::to_string(dropped.size()) + " nodes without an edge of weight >= " +
                      std::to_string(min_edge_weight) + " not plotted (" + sample + ")");
    }
  }
  return from_pair_weights(level, std::move(kept), pairs);
}

CoNetwork build_network(const Corpus& corpus, Level level, long long min_edge_weight,
                        Diagnostics& diags) {
  std::vector<std::vector<std::string>> groups;
  groups.reserve(corpus.publications.size());
  for (const auto& pub : corpus.publications) {
    auto entities = publication_entities(corpus, pub, level);
    entities.erase(std::remove(entities.begin(), entities.end(), std::string(kUnknownEntity)),
                   entities.end());
    groups.push_back(std::move(entities));
  }
  return network_from_groups(level, groups, min_edge_weight, &diags);
}

std::map<std::string, long long> network_degrees(const CoNetwork& network) {
  std::map<std::string, long long> out;
  for (const auto& n : network.nodes) out[n] = 0;
  for (const auto& e : network.edges) {
    out[network.nodes[e.u]] += e.weight;
    out[network.nodes[e.v]] += e.weight;
  }
  return out;
}

std::map<std::string, long long> network_link_counts(const CoNetwork& network) {
  std::map<std::string, long long> out;
  for (const auto& n : network.nodes) out[n] = 0;
  for (const auto& e : network.edges) {
    ++out[network.nodes[e.u]];
    ++out[network.nodes[e.v]];
  }
  return out;
}

std::vector<std::vector<std::size_t>> connected_components(const CoNetwork& network) {
  const std::size_t n = network.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : network.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      comp.push_back(u);
      for (auto v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          q.push(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace biblio
