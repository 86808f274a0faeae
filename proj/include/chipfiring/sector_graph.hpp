#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "chipfiring/engine.hpp"

namespace chipfiring {

// One walk state of a pair of cyclic words at some index i: the symbols at
// i-1 and i and the sector signs at i and i+1, for each word.
struct sector_state {
  std::uint8_t p_prev, p_cur;
  int sp_cur, sp_next;  // -1 or +1
  std::uint8_t q_prev, q_cur;
  int sq_cur, sq_next;
  bool operator==(const sector_state&) const = default;
};

struct weighted_digraph {
  int n = 0;
  std::vector<std::tuple<int, int, long long>> edges;  // (from, to, weight)
};

// The digraph of all locally consistent walk states. Every out-edge of a
// state carries that state's own disagreement-minus-switch weight.
class sector_graph {
 public:
  const std::vector<sector_state>& states() const { return states_; }
  const std::vector<std::vector<int>>& successors() const { return successors_; }
  long long weight(int state) const { return weights_[state]; }
  int edge_count() const { return edge_count_; }
  int index_of(const sector_state& s) const;  // -1 if absent
  bool has_edge(int from, int to) const;

  weighted_digraph as_weighted_digraph() const;
  std::string to_dot() const;

  friend sector_graph build_sector_graph();

 private:
  std::vector<sector_state> states_;
  std::vector<std::vector<int>> successors_;
  std::vector<long long> weights_;
  int edge_count_ = 0;
};

sector_graph build_sector_graph();

// Bellman-Ford with an implicit zero-weight source into every vertex; returns
// a witness cycle as a vertex list if any negative cycle exists.
std::optional<std::vector<int>> find_negative_cycle(const weighted_digraph& g);

// Walks the state sequence of the pair (p, q) once around the cycle and sums
// the visited states' weights. Throws internal_error if a visited state or a
// step between consecutive states is missing from the graph.
long long path_weight_of_pair(const sector_graph& g, const bit_vector& p, const bit_vector& q,
                              std::uint8_t alternating_kind = 0);

}  // namespace chipfiring
