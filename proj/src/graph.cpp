#include "growthlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "growthlab/errors.hpp"

namespace growthlab {

int WeightedGraph::add_vertex(std::string label) {
  adjacency_.emplace_back();
  labels_.push_back(std::move(label));
  return static_cast<int>(adjacency_.size()) - 1;
}

void WeightedGraph::add_edge(int u, int v, double w) {
  if (u == v) return;
  adjacency_[u].emplace_back(v, w);
  adjacency_[v].emplace_back(u, w);
  ++edge_count_;
}

std::vector<double> WeightedGraph::dijkstra(int source) const {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(vertex_count(), inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [u, w] : adjacency_[v]) {
      if (d + w < dist[u] - 1e-12) {
        dist[u] = d + w;
        pq.emplace(dist[u], u);
      }
    }
  }
  return dist;
}

double WeightedGraph::distance(int u, int v) const {
  auto d = dijkstra(u);
  return d[v];
}

std::vector<int> WeightedGraph::shortest_path(int u, int v) const {
  auto dist = dijkstra(u);
  if (std::isinf(dist[v])) throw Error("shortest_path: vertices not connected");
  // Walk back from v choosing the smallest-index predecessor on a geodesic.
  std::vector<int> rev{v};
  int cur = v;
  while (cur != u) {
    int best = -1;
    for (auto [w, weight] : adjacency_[cur]) {
      if (std::abs(dist[w] + weight - dist[cur]) < 1e-9) {
        if (best < 0 || w < best) best = w;
      }
    }
    if (best < 0) throw Error("shortest_path: broken predecessor chain");
    rev.push_back(best);
    cur = best;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

double WeightedGraph::four_point_delta(double dxy, double dzw, double dxz,
                                       double dyw, double dxw, double dyz) {
  double s1 = dxy + dzw, s2 = dxz + dyw, s3 = dxw + dyz;
  double hi = std::max({s1, s2, s3});
  double mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
  return 0.5 * (hi - mid);
}

}  // namespace growthlab
