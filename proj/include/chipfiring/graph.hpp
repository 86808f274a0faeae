#pragma once

#include <random>
#include <utility>
#include <vector>

namespace chipfiring {

// Finite simple undirected connected graph on dense vertex ids 0..n-1.
// Immutable after construction, safe to share across threads.
class graph {
 public:
  graph() = default;

  // Validates ids, simplicity (no self-loops, no duplicate edges) and
  // connectivity, with a distinct error message per defect.
  static graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

  int size() const { return static_cast<int>(adj_.size()); }
  int degree(int v) const;
  const std::vector<int>& neighbors(int v) const;
  bool has_edge(int u, int v) const;
  int edge_count() const { return edge_count_; }
  bool is_tree() const { return edge_count_ == size() - 1; }
  bool is_leaf(int v) const { return degree(v) == 1; }

  // Breadth-first hop counts from v; total on a connected graph.
  std::vector<int> distances_from(int v) const;
  int distance(int u, int v) const;

  // Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edge_list() const;

  static graph path(int n);
  static graph cycle(int n);            // n >= 3
  static graph star(int n);             // center 0 joined to n - 1 leaves
  static graph complete(int n);
  static graph random_tree(int n, std::mt19937_64& rng);  // uniform over labeled trees
  static graph random_connected(int n, double extra_edge_prob, std::mt19937_64& rng);

  bool operator==(const graph& other) const { return adj_ == other.adj_; }

 private:
  void check_vertex(int v) const;

  std::vector<std::vector<int>> adj_;
  int edge_count_ = 0;
};

}  // namespace chipfiring
