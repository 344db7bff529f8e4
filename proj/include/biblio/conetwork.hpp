#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "biblio/common.hpp"
#include "biblio/corpus.hpp"

namespace biblio {

// ---------------------------------------------------------------------------
// Collaboration networks
// ---------------------------------------------------------------------------

struct Edge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  long long weight = 0;
};

bool operator==(const Edge& a, const Edge& b);

/// Undirected weighted graph over entity ids. Nodes are sorted; edges are
/// sorted by (u, v), u < v, no self-loops, no duplicates.
struct CoNetwork {
  Level level = Level::author;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;

  std::size_t size() const { return nodes.size(); }
  long long total_weight() const;
  /// Index of `node`; throws std::out_of_range if absent.
  std::size_t index_of(const std::string& node) const;
};

/// Builds a network from explicit edges (node names need not be sorted).
/// Throws std::invalid_argument on self-loops, duplicate pairs or
/// non-positive weights.
CoNetwork make_network(Level level, std::vector<std::string> nodes,
                       const std::vector<std::tuple<std::string, std::string, long long>>& edges);

/// Every unordered pair of distinct entities in one group gains weight 1.
/// Edges below `min_edge_weight` are removed, then nodes left without edges.
/// Dropped nodes are reported as one INFO diagnostic when `diags` is given.
CoNetwork network_from_groups(Level level, const std::vector<std::vector<std::string>>& groups,
                              long long min_edge_weight, Diagnostics* diags = nullptr);

/// Co-occurrence network of the corpus at `level` (UNKNOWN entities skipped).
CoNetwork build_network(const Corpus& corpus, Level level, long long min_edge_weight,
                        Diagnostics& diags);

/// Weighted degree (sum of incident edge weights) per node.
std::map<std::string, long long> network_degrees(const CoNetwork& network);
/// Number of distinct neighbours per node.
std::map<std::string, long long> network_link_counts(const CoNetwork& network);

// ---------------------------------------------------------------------------
// Communities
// ---------------------------------------------------------------------------

struct Partition {
  std::vector<int> community;  // aligned with CoNetwork::nodes, ids dense from 0
  double modularity = 0.0;

  int community_count() const;
};

/// Q = (1/2m) sum_ij [w_ij - k_i k_j / 2m] delta(c_i, c_j); 0 when m = 0.
double modularity(const CoNetwork& network, const std::vector<int>& community);

/// Two-phase Louvain modularity maximization at resolution 1. Node visit
/// order is a seeded shuffle, so (network, seed) fixes the result.
Partition louvain(const CoNetwork& network, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Layout
// ---------------------------------------------------------------------------

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Layout {
  std::vector<Point> positions;  // aligned with CoNetwork::nodes
  double stress = 0.0;
  double initial_stress = 0.0;
  /// Total stress after every sweep; trace[0] is the circular start.
  std::vector<double> stress_trace;
  std::size_t components = 0;
};

/// Per-component stress sum_{u<v} (|p_u - p_v| - d_uv)^2 / d_uv^2, where d_uv
/// is the hop distance scaled so its mean over the component is 1.
double layout_stress(const CoNetwork& network, const std::vector<Point>& positions);

/// Kamada-Kawai style layout: seeded order on the unit circle, then
/// sweeps of per-node updates in decreasing-gradient order. Each update takes
/// the better of a Newton step and a local majorization step and is only
/// accepted when it lowers the node's energy, so stress never increases.
/// Stops when the relative improvement of a sweep is below `tolerance` or
/// after `max_iter` sweeps. Components are packed on a grid whose cells are
/// padded by the largest component diameter.
Layout kamada_kawai(const CoNetwork& network, std::uint64_t seed, double tolerance = 1e-5,
                    int max_iter = 1000);

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// Connected components (node index lists) ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(const CoNetwork& network);

}  // namespace biblio
