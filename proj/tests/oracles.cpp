#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace oracle {

Inversion invert_y_index(long long j, double h) {
  Inversion best;
  best.error = std::numeric_limits<double>::infinity();
  best.runner_up = std::numeric_limits<double>::infinity();
  for (long long fp = 0; fp <= j; ++fp) {
    const long long rp = j - fp;
    const double angle = fp == 0 ? M_PI / 2 : std::atan(static_cast<double>(rp) / static_cast<double>(fp));
    const double err = std::fabs(angle - h);
    if (err < best.error) {
      best.runner_up = best.error;
      best.error = err;
      best.fp = fp;
      best.rp = rp;
    } else if (err < best.runner_up) {
      best.runner_up = err;
    }
  }
  return best;
}

std::vector<std::vector<double>> dense(const biblio::CoNetwork& net) {
  std::vector<std::vector<double>> a(net.size(), std::vector<double>(net.size(), 0.0));
  for (const auto& e : net.edges) {
    a[e.u][e.v] += static_cast<double>(e.weight);
    a[e.v][e.u] += static_cast<double>(e.weight);
  }
  return a;
}

double modularity(const biblio::CoNetwork& net, const std::vector<int>& community) {
  const auto a = dense(net);
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (community[i] == community[j]) q += a[i][j] - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

std::vector<int> canonical_labels(const std::vector<int>& community) {
  std::map<int, int> relabel;
  std::vector<int> out;
  for (int c : community) {
    auto it = relabel.emplace(c, static_cast<int>(relabel.size())).first;
    out.push_back(it->second);
  }
  return out;
}

BestPartition exhaustive_modularity(const biblio::CoNetwork& net, double tie_eps) {
  const std::size_t n = net.size();
  BestPartition best;
  best.q = -std::numeric_limits<double>::infinity();
  if (n == 0) return best;
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    const double q = oracle::modularity(net, rgs);
    if (q > best.q + tie_eps) {
      best.q = q;
      best.optima = {rgs};
    } else if (std::fabs(q - best.q) <= tie_eps) {
      best.optima.push_back(rgs);
    }
    // Next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t t = i + 1; t < n; ++t) {
      rgs[t] = 0;
      prefix_max[t] = prefix_max[i];
    }
  }
  return best;
}

double stress(const biblio::CoNetwork& net, const std::vector<biblio::Point>& pos) {
  const std::size_t n = net.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : net.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> comp(n, -1);
  int comps = 0;
  std::vector<std::vector<long long>> hop(n, std::vector<long long>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    hop[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : adj[u]) {
        if (hop[s][v] < 0) {
          hop[s][v] = hop[s][u] + 1;
          q.push(v);
        }
      }
    }
    if (comp[s] < 0) {
      for (std::size_t v = 0; v < n; ++v) {
        if (hop[s][v] >= 0) comp[v] = comps;
      }
      ++comps;
    }
  }
  double total = 0.0;
  for (int c = 0; c < comps; ++c) {
    double sum = 0.0;
    long long pairs = 0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (comp[u] == c && comp[v] == c) {
          sum += static_cast<double>(hop[u][v]);
          ++pairs;
        }
      }
    }
    if (pairs == 0) continue;
    const double scale = static_cast<double>(pairs) / sum;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (comp[u] != c || comp[v] != c) continue;
        const double d = static_cast<double>(hop[u][v]) * scale;
        const double dist = std::hypot(pos[u].x - pos[v].x, pos[u].y - pos[v].y);
        total += (dist - d) * (dist - d) / (d * d);
      }
    }
  }
  return total;
}

double path3_ratio_grid_search() {
  // Ideal distances 1, 1, 2 scaled to mean 1: 0.75, 0.75, 1.5.
  const double d1 = 0.75;
  const double d2 = 1.5;
  auto f = [&](double ab, double bc, double ac) {
    return (ab - d1) * (ab - d1) / (d1 * d1) + (bc - d1) * (bc - d1) / (d1 * d1) +
           (ac - d2) * (ac - d2) / (d2 * d2);
  };
  double best = std::numeric_limits<double>::infinity();
  double ratio = 0.0;
  for (int ia = 1; ia <= 60; ++ia) {
    const double a = 0.05 * ia;
    for (int ir = 1; ir <= 60; ++ir) {
      const double r = 0.05 * ir;
      for (int it = 0; it <= 180; ++it) {
        const double t = M_PI * it / 180.0;
        const double cx = a + r * std::cos(t);
        const double cy = r * std::sin(t);
        const double ac = std::hypot(cx, cy);
        const double val = f(a, r, ac);
        if (val < best) {
          best = val;
          ratio = ac / a;
        }
      }
    }
  }
  return ratio;
}

}  // namespace oracle
