#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "biblio/conetwork.hpp"
#include "biblio/random.hpp"

namespace biblio {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Component {
  std::vector<std::size_t> members;  // network node indices
  std::vector<std::vector<double>> d;  // scaled ideal distances
  std::vector<Point> pos;
  double diameter = 0.0;
  bool done = false;
};

std::vector<std::vector<std::size_t>> adjacency(const CoNetwork& network) {
  std::vector<std::vector<std::size_t>> adj(network.size());
  for (const auto& e : network.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

// Hop distances within one component, scaled to mean 1 over unordered pairs.
std::vector<std::vector<double>> ideal_distances(const std::vector<std::vector<std::size_t>>& adj,
                                                 const std::vector<std::size_t>& members) {
  const std::size_t k = members.size();
  std::vector<std::size_t> local(adj.size(), k);
  for (std::size_t i = 0; i < k; ++i) local[members[i]] = i;
  std::vector<std::vector<double>> d(k, std::vector<double>(k, 0.0));
  double sum = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<long long> hop(k, -1);
    std::queue<std::size_t> q;
    hop[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto nb : adj[members[u]]) {
        auto v = local[nb];
        if (hop[v] < 0) {
          hop[v] = hop[u] + 1;
          q.push(v);
        }
      }
    }
    for (std::size_t t = 0; t < k; ++t) {
      d[s][t] = static_cast<double>(hop[t]);
      if (t > s) sum += d[s][t];
    }
  }
  if (k > 1) {
    const double mean = sum / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
    for (auto& row : d) {
      for (auto& x : row) x /= mean;
    }
  }
  return d;
}

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double component_stress(const Component& c) {
  double s = 0.0;
  for (std::size_t u = 0; u < c.pos.size(); ++u) {
    for (std::size_t v = u + 1; v < c.pos.size(); ++v) {
      const double diff = dist(c.pos[u], c.pos[v]) - c.d[u][v];
      s += diff * diff / (c.d[u][v] * c.d[u][v]);
    }
  }
  return s;
}

double node_energy(const Component& c, std::size_t m, const Point& p) {
  double e = 0.0;
  for (std::size_t v = 0; v < c.pos.size(); ++v) {
    if (v == m) continue;
    const double diff = dist(p, c.pos[v]) - c.d[m][v];
    e += diff * diff / (c.d[m][v] * c.d[m][v]);
  }
  return e;
}

// Gradient of the node energy (up to a factor 2) and its 2x2 Hessian.
struct Derivs {
  double gx = 0.0, gy = 0.0;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

Derivs node_derivs(const Component& c, std::size_t m) {
  Derivs r;
  const Point& p = c.pos[m];
  for (std::size_t v = 0; v < c.pos.size(); ++v) {
    if (v == m) continue;
    const double dx = p.x - c.pos[v].x;
    const double dy = p.y - c.pos[v].y;
    const double len = std::hypot(dx, dy);
    if (len < 1e-12) continue;
    const double l = c.d[m][v];
    const double k = 1.0 / (l * l);
    r.gx += k * (dx - l * dx / len);
    r.gy += k * (dy - l * dy / len);
    const double len3 = len * len * len;
    r.hxx += k * (1.0 - l * dy * dy / len3);
    r.hxy += k * (l * dx * dy / len3);
    r.hyy += k * (1.0 - l * dx * dx / len3);
  }
  return r;
}

Point majorization_step(const Component& c, std::size_t m) {
  const Point& p = c.pos[m];
  double sx = 0.0, sy = 0.0, sw = 0.0;
  for (std::size_t v = 0; v < c.pos.size(); ++v) {
    if (v == m) continue;
    const double l = c.d[m][v];
    const double w = 1.0 / (l * l);
    const double dx = p.x - c.pos[v].x;
    const double dy = p.y - c.pos[v].y;
    const double len = std::hypot(dx, dy);
    double ux = 1.0, uy = 0.0;
    if (len >= 1e-12) {
      ux = dx / len;
      uy = dy / len;
    }
    sx += w * (c.pos[v].x + l * ux);
    sy += w * (c.pos[v].y + l * uy);
    sw += w;
  }
  return {sx / sw, sy / sw};
}

// One sweep over the component, nodes visited in decreasing gradient norm.
void sweep(Component& c) {
  const std::size_t k = c.pos.size();
  std::vector<double> grad(k);
  for (std::size_t m = 0; m < k; ++m) {
    auto g = node_derivs(c, m);
    grad[m] = std::hypot(g.gx, g.gy);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grad[a] > grad[b]; });
  for (auto m : order) {
    const double current = node_energy(c, m, c.pos[m]);
    Point best = c.pos[m];
    double best_e = current;
    auto g = node_derivs(c, m);
    const double det = g.hxx * g.hyy - g.hxy * g.hxy;
    if (std::abs(det) > 1e-15) {
      const double sx = (g.hyy * g.gx - g.hxy * g.gy) / det;
      const double sy = (g.hxx * g.gy - g.hxy * g.gx) / det;
      Point cand{c.pos[m].x - sx, c.pos[m].y - sy};
      if (std::isfinite(cand.x) && std::isfinite(cand.y)) {
        const double e = node_energy(c, m, cand);
        if (e < best_e) {
          best_e = e;
          best = cand;
        }
      }
    }
    Point maj = majorization_step(c, m);
    const double e = node_energy(c, m, maj);
    if (e < best_e) {
      best_e = e;
      best = maj;
    }
    if (best_e < current) c.pos[m] = best;
  }
}

void circular_start(Component& c, Rng& rng) {
  const std::size_t k = c.members.size();
  if (k == 1) {
    c.pos.assign(1, Point{});
    return;
  }
  std::vector<std::size_t> slot(k);
  std::iota(slot.begin(), slot.end(), 0);
  seeded_shuffle(slot, rng);
  c.pos.assign(k, Point{});
  for (std::size_t i = 0; i < k; ++i) {
    const double angle = 2.0 * kPi * static_cast<double>(slot[i]) / static_cast<double>(k);
    c.pos[i] = {std::cos(angle), std::sin(angle)};
  }
}

}  // namespace

double layout_stress(const CoNetwork& network, const std::vector<Point>& positions) {
  if (positions.size() != network.size()) {
    throw std::invalid_argument("layout does not cover the network");
  }
  const auto adj = adjacency(network);
  double total = 0.0;
  for (const auto& members : connected_components(network)) {
    Component c;
    c.members = members;
    c.d = ideal_distances(adj, members);
    for (auto m : members) c.pos.push_back(positions[m]);
    total += component_stress(c);
  }
  return total;
}

Layout kamada_kawai(const CoNetwork& network, std::uint64_t seed, double tolerance, int max_iter) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");
  Layout layout;
  layout.positions.assign(network.size(), Point{});
  if (network.size() == 0) return layout;

  Rng rng(seed);
  const auto adj = adjacency(network);
  std::vector<Component> comps;
  for (auto& members : connected_components(network)) {
    Component c;
    c.members = std::move(members);
    c.d = ideal_distances(adj, c.members);
    for (const auto& row : c.d) {
      for (double x : row) c.diameter = std::max(c.diameter, x);
    }
    circular_start(c, rng);
    c.done = c.members.size() < 2;
    comps.push_back(std::move(c));
  }
  layout.components = comps.size();

  std::vector<double> stress(comps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    stress[i] = component_stress(comps[i]);
    total += stress[i];
  }
  layout.initial_stress = total;
  layout.stress_trace.push_back(total);

  for (int iter = 0; iter < max_iter; ++iter) {
    bool active = false;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      auto& c = comps[i];
      if (c.done) continue;
      active = true;
      sweep(c);
      const double next = component_stress(c);
      if (stress[i] <= 0.0 || (stress[i] - next) / stress[i] < tolerance) c.done = true;
      stress[i] = next;
    }
    if (!active) break;
    total = std::accumulate(stress.begin(), stress.end(), 0.0);
    layout.stress_trace.push_back(total);
  }
  layout.stress = std::accumulate(stress.begin(), stress.end(), 0.0);

  // Grid packing, larger components first.
  std::vector<std::size_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (comps[a].members.size() != comps[b].members.size()) {
      return comps[a].members.size() > comps[b].members.size();
    }
    return comps[a].members.front() < comps[b].members.front();
  });
  double extent = 0.0;
  double pad = 1.0;
  std::vector<Point> centre(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    double minx = std::numeric_limits<double>::infinity(), maxx = -minx;
    double miny = minx, maxy = -minx;
    for (const auto& p : c.pos) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    centre[i] = {(minx + maxx) / 2.0, (miny + maxy) / 2.0};
    extent = std::max({extent, maxx - minx, maxy - miny});
    pad = std::max(pad, c.diameter);
  }
  const double cell = extent + pad;
  const auto cols = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(comps.size()))));
  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    const auto& c = comps[order[slot]];
    const Point& mid = centre[order[slot]];
    const double ox = static_cast<double>(slot % cols) * cell;
    const double oy = static_cast<double>(slot / cols) * cell;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      double x = c.pos[i].x - mid.x + ox;
      double y = c.pos[i].y - mid.y + oy;
      if (x == 0.0) x = 0.0;  // drop negative zero
      if (y == 0.0) y = 0.0;
      layout.positions[c.members[i]] = {x, y};
    }
  }
  return layout;
}

}  // namespace biblio
