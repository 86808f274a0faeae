#include "chipfiring/sector_graph.hpp"

#include <algorithm>
#include <sstream>

#include "chipfiring/errors.hpp"
#include "chipfiring/patterns.hpp"

namespace chipfiring {

namespace {

// Local consistency of one word's half of a state. With b the kind written by
// the sign `s`: a switch between i and i+1 needs symbols (b, b) at (i-1, i);
// without a switch, the pair may not be (1-b, 1-b), which would be two
// opposite symbols strictly inside one sector.
bool half_valid(std::uint8_t prev, std::uint8_t cur, int s, int s_next) {
  std::uint8_t b = s > 0 ? 1 : 0;
  if (s_next != s) return prev == b && cur == b;
  return !(prev == 1 - b && cur == 1 - b);
}

long long state_weight(const sector_state& u) {
  return static_cast<long long>(u.sp_cur) * (u.p_cur - u.q_prev) +
         static_cast<long long>(u.sq_cur) * (u.q_cur - u.p_prev) -
         (u.sp_cur != u.sp_next ? 1 : 0) - (u.sq_cur != u.sq_next ? 1 : 0);
}

}  // namespace

sector_graph build_sector_graph() {
  sector_graph g;
  const int signs[2] = {-1, +1};
  for (std::uint8_t p_prev : {0, 1})
    for (std::uint8_t p_cur : {0, 1})
      for (int sp_cur : signs)
        for (int sp_next : signs)
          for (std::uint8_t q_prev : {0, 1})
            for (std::uint8_t q_cur : {0, 1})
              for (int sq_cur : signs)
                for (int sq_next : signs) {
                  sector_state s{p_prev, p_cur, sp_cur, sp_next, q_prev, q_cur, sq_cur, sq_next};
                  if (half_valid(p_prev, p_cur, sp_cur, sp_next) &&
                      half_valid(q_prev, q_cur, sq_cur, sq_next))
                    g.states_.push_back(s);
                }

  g.weights_.reserve(g.states_.size());
  for (auto& s : g.states_) g.weights_.push_back(state_weight(s));

  g.successors_.assign(g.states_.size(), {});
  for (std::size_t u = 0; u < g.states_.size(); ++u) {
    for (std::size_t v = 0; v < g.states_.size(); ++v) {
      const sector_state& a = g.states_[u];
      const sector_state& b = g.states_[v];
      if (b.p_prev == a.p_cur && b.sp_cur == a.sp_next && b.q_prev == a.q_cur &&
          b.sq_cur == a.sq_next) {
        g.successors_[u].push_back(static_cast<int>(v));
        ++g.edge_count_;
      }
    }
  }
  return g;
}

int sector_graph::index_of(const sector_state& s) const {
  auto it = std::find(states_.begin(), states_.end(), s);
  return it == states_.end() ? -1 : static_cast<int>(it - states_.begin());
}

bool sector_graph::has_edge(int from, int to) const {
  auto& succ = successors_[from];
  return std::find(succ.begin(), succ.end(), to) != succ.end();
}

weighted_digraph sector_graph::as_weighted_digraph() const {
  weighted_digraph g;
  g.n = static_cast<int>(states_.size());
  for (int u = 0; u < g.n; ++u)
    for (int v : successors_[u]) g.edges.emplace_back(u, v, weights_[u]);
  return g;
}

std::string sector_graph::to_dot() const {
  std::ostringstream out;
  out << "digraph sector_states {\n";
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const sector_state& s = states_[i];
    out << "  s" << i << " [label=\"" << int(s.p_prev) << int(s.p_cur)
        << (s.sp_cur > 0 ? '+' : '-') << (s.sp_next > 0 ? '+' : '-') << "/" << int(s.q_prev)
        << int(s.q_cur) << (s.sq_cur > 0 ? '+' : '-') << (s.sq_next > 0 ? '+' : '-') << "\"];\n";
  }
  for (std::size_t u = 0; u < states_.size(); ++u)
    for (int v : successors_[u])
      out << "  s" << u << " -> s" << v << " [label=\"" << weights_[u] << "\"];\n";
  out << "}\n";
  return out.str();
}

std::optional<std::vector<int>> find_negative_cycle(const weighted_digraph& g) {
  if (g.n == 0) return std::nullopt;
  // Zero-weight virtual source into every vertex: start all distances at 0.
  std::vector<long long> dist(g.n, 0);
  std::vector<int> pred(g.n, -1);
  int last_improved = -1;
  for (int round = 0; round < g.n; ++round) {
    last_improved = -1;
    for (auto& [u, v, w] : g.edges) {
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        pred[v] = u;
        last_improved = v;
      }
    }
    if (last_improved == -1) return std::nullopt;
  }
  // A relaxation in round n proves a negative cycle; walk predecessors n
  // times to land inside it, then peel the cycle off.
  int x = last_improved;
  for (int i = 0; i < g.n; ++i) x = pred[x];
  std::vector<int> cycle{x};
  for (int v = pred[x]; v != x; v = pred[v]) cycle.push_back(v);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

long long path_weight_of_pair(const sector_graph& g, const bit_vector& p, const bit_vector& q,
                              std::uint8_t alternating_kind) {
  if (p.empty()) throw input_error("empty word");
  if (p.size() != q.size()) throw input_error("words must have equal length");
  const int n = static_cast<int>(p.size());
  auto dp = sectors(p, alternating_kind);
  auto dq = sectors(q, alternating_kind);

  auto state_at = [&](int i) {
    int prev = (i + n - 1) % n;
    int next = (i + 1) % n;
    return sector_state{p[prev], p[i], dp.s[i], dp.s[next], q[prev], q[i], dq.s[i], dq.s[next]};
  };

  long long total = 0;
  int here = g.index_of(state_at(0));
  if (here == -1) throw internal_error("walk state missing from sector graph at index 0");
  for (int i = 0; i < n; ++i) {
    int next = g.index_of(state_at((i + 1) % n));
    if (next == -1)
      throw internal_error("walk state missing from sector graph at index " +
                           std::to_string((i + 1) % n));
    if (!g.has_edge(here, next))
      throw internal_error("walk step missing from sector graph at index " + std::to_string(i));
    total += g.weight(here);
    here = next;
  }
  return total;
}

}  // namespace chipfiring
