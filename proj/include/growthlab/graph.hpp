#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace growthlab {

// Undirected weighted graph with deterministic shortest paths (ties broken
// toward smaller vertex indices).
class WeightedGraph {
 public:
  int add_vertex(std::string label = "");
  void add_edge(int u, int v, double w);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::pair<int, double>>& neighbors(int v) const {
    return adjacency_[v];
  }

  std::vector<double> dijkstra(int source) const;
  double distance(int u, int v) const;
  std::vector<int> shortest_path(int u, int v) const;

  // Gromov four-point quantity: half the gap between the two largest of the
  // three pairwise distance sums.
  static double four_point_delta(double dxy, double dzw, double dxz, double dyw,
                                 double dxw, double dyz);

 private:
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

}  // namespace growthlab
