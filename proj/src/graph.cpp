#include "chipfiring/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "chipfiring/errors.hpp"

namespace chipfiring {

graph graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw input_error("graph needs at least one vertex");
  graph g;
  g.adj_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw input_error("edge endpoint out of range: " + std::to_string(u) + " " +
                        std::to_string(v));
    if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      throw input_error("duplicate edge " + std::to_string(key.first) + " " +
                        std::to_string(key.second));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  g.edge_count_ = static_cast<int>(seen.size());
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());

  auto dist = g.distances_from(0);
  if (std::find(dist.begin(), dist.end(), -1) != dist.end())
    throw input_error("graph is disconnected");
  return g;
}

int graph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(adj_[v].size());
}

const std::vector<int>& graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

bool graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<int> graph::distances_from(int v) const {
  check_vertex(v);
  std::vector<int> dist(size(), -1);
  std::deque<int> frontier{v};
  dist[v] = 0;
  while (!frontier.empty()) {
    int x = frontier.front();
    frontier.pop_front();
    for (int y : adj_[x]) {
      if (dist[y] == -1) {
        dist[y] = dist[x] + 1;
        frontier.push_back(y);
      }
    }
  }
  return dist;
}

int graph::distance(int u, int v) const {
  check_vertex(v);
  return distances_from(u)[v];
}

std::vector<std::pair<int, int>> graph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(edge_count_);
  for (int u = 0; u < size(); ++u)
    for (int v : adj_[u])
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

graph graph::path(int n) {
  if (n < 1) throw input_error("path needs at least one vertex");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edge_list(n, edges);
}

graph graph::cycle(int n) {
  if (n < 3) throw input_error("cycle needs at least three vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return from_edge_list(n, edges);
}

graph graph::star(int n) {
  if (n < 2) throw input_error("star needs at least two vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return from_edge_list(n, edges);
}

graph graph::complete(int n) {
  if (n < 1) throw input_error("complete graph needs at least one vertex");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return from_edge_list(n, edges);
}

graph graph::random_tree(int n, std::mt19937_64& rng) {
  if (n < 1) throw input_error("tree needs at least one vertex");
  if (n <= 2) return path(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> code(n - 2);
  for (int& c : code) c = pick(rng);

  // Standard decoding of a labeled-tree code: repeatedly join the smallest
  // remaining leaf to the next code entry.
  std::vector<int> deg(n, 1);
  for (int c : code) ++deg[c];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.insert(v);
  std::vector<std::pair<int, int>> edges;
  for (int c : code) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
    if (--deg[c] == 1) leaves.insert(c);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return from_edge_list(n, edges);
}

graph graph::random_connected(int n, double extra_edge_prob, std::mt19937_64& rng) {
  if (extra_edge_prob < 0.0 || extra_edge_prob > 1.0)
    throw input_error("edge probability must lie in [0, 1]");
  graph tree = random_tree(n, rng);
  auto edges = tree.edge_list();
  std::bernoulli_distribution flip(extra_edge_prob);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!tree.has_edge(u, v) && flip(rng)) edges.emplace_back(u, v);
  return from_edge_list(n, edges);
}

void graph::check_vertex(int v) const {
  if (v < 0 || v >= size())
    throw input_error("vertex id out of range: " + std::to_string(v));
}

}  // namespace chipfiring
