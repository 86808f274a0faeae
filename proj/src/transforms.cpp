#include "chipfiring/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "chipfiring/errors.hpp"
#include "chipfiring/patterns.hpp"

namespace chipfiring {

bool schedules_equal(const motor_schedule& x, const motor_schedule& y) {
  long long horizon =
      std::max(x.transient.size(), y.transient.size()) +
      std::lcm(static_cast<long long>(x.cycle.size()), static_cast<long long>(y.cycle.size()));
  for (long long t = 0; t < horizon; ++t)
    if (x.bit_at(t) != y.bit_at(t)) return false;
  return true;
}

namespace {

simulation_result simulate_periodic(const game& gm, const char* what) {
  auto result = simulate(gm);
  if (result.transient_length() != 0)
    throw input_error(std::string(what) +
                      " must start in a periodic position (simulate and rebase first)");
  return result;
}

motor_schedule schedule_of_record(const simulation_result& result, int v) {
  motor_schedule s;
  auto record = firing_sequence(result, v);
  s.transient.assign(record.begin(), record.begin() + result.transient_length());
  s.cycle.assign(record.begin() + result.transient_length(), record.end());
  return s;
}

}  // namespace

conversion_result motorize_to_ordinary(const game& motorized,
                                       const std::map<int, realizer>& realizers) {
  motorized.validate();
  if (motorized.ordinary()) throw input_error("game has no motors to convert");
  for (auto& [v, r] : realizers)
    if (!motorized.is_motor(v))
      throw input_error("realizer supplied for non-motor vertex " + std::to_string(v));
  for (auto& [m, schedule] : motorized.motors) {
    (void)schedule;
    if (realizers.find(m) == realizers.end())
      throw input_error("no realizer for motor " + std::to_string(m));
  }

  auto source_run = simulate_periodic(motorized, "motorized game");
  const long long period = source_run.period();
  const graph& g = motorized.graph;

  // Validate each realizer: ordinary, and its witness really fires the
  // claimed schedule, which must equal the motor's schedule from t = 0.
  for (auto& [m, r] : realizers) {
    r.g.validate();
    if (!r.g.ordinary()) throw input_error("realizer game must be motor-free");
    if (r.witness < 0 || r.witness >= r.g.graph.size())
      throw input_error("realizer witness out of range");
    auto run = simulate(r.g);
    if (!schedules_equal(schedule_of_record(run, r.witness), r.claims))
      throw input_error("realizer witness does not fire its claimed schedule (motor " +
                        std::to_string(m) + ")");
    if (!schedules_equal(r.claims, motorized.motors.at(m)))
      throw input_error("realizer schedule differs from the schedule of motor " +
                        std::to_string(m));
  }

  conversion_result out;
  std::vector<std::pair<int, int>> edges = g.edge_list();
  chip_vector chips = motorized.chips;
  int next_id = g.size();

  for (auto& [m, r] : realizers) {
    motor_conversion conv;
    conv.motor = m;
    conv.min_chips = motorized.chips[m];
    conv.max_chips = motorized.chips[m];
    for (long long t = 0; t < period; ++t) {
      conv.min_chips = std::min(conv.min_chips, source_run.chips_at(t)[m]);
      conv.max_chips = std::max(conv.max_chips, source_run.chips_at(t)[m]);
    }
    conv.copies = static_cast<int>(conv.max_chips - conv.min_chips) + 1;

    const graph& a = r.g.graph;
    for (int j = 0; j < conv.copies; ++j) {
      std::vector<int> ids(a.size());
      for (int w = 0; w < a.size(); ++w) {
        if (w == r.witness) {
          ids[w] = m;
        } else {
          ids[w] = next_id++;
          chips.push_back(r.g.chips[w]);
        }
      }
      for (auto [x, y] : a.edge_list())
        edges.emplace_back(std::min(ids[x], ids[y]), std::max(ids[x], ids[y]));
      conv.copy_vertices.push_back(std::move(ids));
    }

    chips[m] = static_cast<chip_count>(conv.copies) * r.g.chips[r.witness] + g.degree(m) +
               motorized.chips[m] - conv.min_chips;
    out.motors.push_back(std::move(conv));
  }

  out.converted.graph = graph::from_edge_list(next_id, edges);
  out.converted.chips = std::move(chips);
  return out;
}

game complement(const game& gm) {
  gm.validate();
  if (!gm.ordinary()) throw input_error("complement is defined for motor-free games");
  simulate_periodic(gm, "game");
  game out = gm;
  for (int v = 0; v < gm.graph.size(); ++v) {
    chip_count ceiling = 2 * gm.graph.degree(v) - 1;
    if (gm.chips[v] > ceiling)
      throw input_error("vertex " + std::to_string(v) + " holds " +
                        std::to_string(gm.chips[v]) + " chips, above the complement ceiling " +
                        std::to_string(ceiling) + " (saturated orbit)");
    out.chips[v] = ceiling - gm.chips[v];
  }
  return out;
}

namespace {

prune_result drop_vertex(const game& gm, int removed, chip_count neighbor_chips, int neighbor) {
  prune_result out;
  const int n = gm.graph.size();
  std::vector<int> new_id(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == removed) continue;
    new_id[v] = static_cast<int>(out.kept.size());
    out.kept.push_back(v);
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : gm.graph.edge_list())
    if (u != removed && v != removed) edges.emplace_back(new_id[u], new_id[v]);
  out.pruned.graph = graph::from_edge_list(n - 1, edges);
  out.pruned.chips.resize(n - 1);
  for (int v = 0; v < n; ++v)
    if (v != removed) out.pruned.chips[new_id[v]] = v == neighbor ? neighbor_chips : gm.chips[v];
  return out;
}

}  // namespace

prune_result prune_leaf(const game& gm, int leaf) {
  gm.validate();
  if (!gm.ordinary()) throw input_error("pruning is defined for motor-free games");
  if (leaf < 0 || leaf >= gm.graph.size())
    throw input_error("vertex id out of range: " + std::to_string(leaf));
  if (!gm.graph.is_leaf(leaf))
    throw input_error("vertex " + std::to_string(leaf) + " is not a leaf");
  if (gm.graph.size() < 3) throw input_error("pruning would leave fewer than two vertices");

  auto result = simulate_periodic(gm, "game");
  const long long p = result.period();
  auto words = pfp_all(result);
  bool double_fire = false, double_wait = false;
  for (auto& w : words) {
    const int len = static_cast<int>(w.size());
    for (int i = 0; i < len; ++i) {
      if (w[i] && w[(i + 1) % len]) double_fire = true;
      if (!w[i] && !w[(i + 1) % len]) double_wait = true;
    }
  }
  if (double_fire && double_wait)
    throw input_error("game has both a double-firing and a double-waiting vertex");

  const int m = gm.graph.neighbors(leaf)[0];
  const chip_count deg_m = gm.graph.degree(m);
  const bool leaf_fires = result.fires(leaf, 0);

  // Each mode shifts the neighbor's chips by a fixed offset at every time, so
  // it keeps m's decisions exactly when the chips never sit on the pruned
  // threshold at the bad parity. The wait-free mode additionally needs the
  // leaf to echo the neighbor's decision with delay one (automatic in the
  // fire-free regime, not in this one when the leaf hoards chips).
  auto fire_free_ok = [&] {
    if (double_fire) return false;
    for (long long t = 0; t < p; ++t)
      if (result.fires(leaf, t) && result.chips_at(t)[m] == deg_m - 1) return false;
    return true;
  };
  auto wait_free_ok = [&] {
    if (double_wait) return false;
    for (long long t = 0; t < p; ++t) {
      if (!result.fires(leaf, t) && result.chips_at(t)[m] == deg_m) return false;
      if (result.fires(leaf, t + 1) != result.fires(m, t)) return false;
    }
    return true;
  };

  chip_count adjusted;
  if (fire_free_ok()) {
    adjusted = gm.chips[m] - (leaf_fires ? 0 : 1);
  } else if (wait_free_ok()) {
    // Period 1 here means the all-fire fixed point, which survives the degree
    // drop with no adjustment at all.
    adjusted = p == 1 ? gm.chips[m] : gm.chips[m] - 2 + (leaf_fires ? 1 : 0);
  } else {
    throw input_error("the leaf's pattern collides with vertex " + std::to_string(m) +
                      "'s firing threshold; pruning cannot preserve every pattern");
  }
  if (adjusted < 0)
    throw input_error("chip adjustment would make vertex " + std::to_string(m) +
                      " negative; the game violates the pruning preconditions");
  return drop_vertex(gm, leaf, adjusted, m);
}

void validate_treelike(const graph& g, int root, const std::vector<int>& subtree) {
  if (root < 0 || root >= g.size())
    throw input_error("vertex id out of range: " + std::to_string(root));
  if (subtree.empty()) throw input_error("subtree must be nonempty");
  std::set<int> members;
  for (int v : subtree) {
    if (v < 0 || v >= g.size()) throw input_error("vertex id out of range: " + std::to_string(v));
    if (v == root) throw input_error("root cannot be part of the removed subtree");
    if (!members.insert(v).second)
      throw input_error("duplicate subtree vertex " + std::to_string(v));
  }
  if (g.size() - static_cast<int>(members.size()) < 2)
    throw input_error("pruning would leave fewer than two vertices");

  int crossing = 0, internal = 0;
  for (int v : members) {
    for (int w : g.neighbors(v)) {
      if (members.count(w)) {
        ++internal;
      } else if (w == root) {
        ++crossing;
      } else {
        throw input_error("subtree has an edge leaving it at vertex " + std::to_string(v) +
                          " that does not reach the root");
      }
    }
  }
  internal /= 2;
  if (crossing != 1)
    throw input_error("subtree must meet the root through exactly one edge, found " +
                      std::to_string(crossing));
  if (internal != static_cast<int>(members.size()) - 1)
    throw input_error("subtree is not a tree");
  // Edge count |H| - 1 with one outside connection forces connectivity, but
  // verify explicitly to reject edge-miscounted inputs loudly.
  std::set<int> reached{*members.begin()};
  std::vector<int> stack{*members.begin()};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : g.neighbors(x))
      if (members.count(y) && reached.insert(y).second) stack.push_back(y);
  }
  if (reached.size() != members.size()) throw input_error("subtree is not a tree");
}

prune_result prune_treelike(const game& gm, int root, const std::vector<int>& subtree) {
  gm.validate();
  validate_treelike(gm.graph, root, subtree);

  prune_result out;
  out.pruned = gm;
  out.kept.resize(gm.graph.size());
  std::iota(out.kept.begin(), out.kept.end(), 0);

  std::set<int> remaining(subtree.begin(), subtree.end());
  while (!remaining.empty()) {
    int chosen_original = -1, chosen_current = -1;
    for (std::size_t cur = 0; cur < out.kept.size(); ++cur) {
      int original = out.kept[cur];
      if (remaining.count(original) && out.pruned.graph.is_leaf(static_cast<int>(cur))) {
        chosen_original = original;
        chosen_current = static_cast<int>(cur);
        break;
      }
    }
    if (chosen_original == -1) throw internal_error("pendant subtree ran out of leaves");
    prune_result step = prune_leaf(out.pruned, chosen_current);
    std::vector<int> kept;
    kept.reserve(step.kept.size());
    for (int cur : step.kept) kept.push_back(out.kept[cur]);
    out.pruned = std::move(step.pruned);
    out.kept = std::move(kept);
    remaining.erase(chosen_original);
  }
  return out;
}

cycle_realization realize_pfp_on_cycle(const bit_vector& pfp) {
  const int n = static_cast<int>(pfp.size());
  if (n < 3) throw input_error("realizable patterns need length at least 3");
  if (is_clumpy(pfp)) throw input_error("clumpy patterns are not realizable");
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (int i = 0; i < n && repeats; ++i) repeats = pfp[i] == pfp[i % d];
    if (repeats)
      throw input_error("pattern repeats a shorter word (period " + std::to_string(d) + ")");
  }
  if (n > 12) throw input_error("realization search is limited to patterns of length <= 12");

  std::set<bit_vector> rotations;
  for (int r = 0; r < n; ++r) {
    bit_vector rot(n);
    for (int i = 0; i < n; ++i) rot[i] = pfp[(i + r) % n];
    rotations.insert(std::move(rot));
  }

  graph ring = graph::cycle(n);
  std::vector<int> chips(n, 0);
  std::vector<bit_vector> rows(n, bit_vector(n));
  // Smallest chip vector (lexicographically) whose orbit returns in n steps
  // with every row a rotation of the word. Periodic cycle positions keep at
  // most 2*deg - 1 = 3 chips per vertex, so the search space is [0,3]^n.
  while (true) {
    chip_vector pos(chips.begin(), chips.end());
    for (int t = 0; t < n; ++t) {
      bit_vector f(n);
      for (int v = 0; v < n; ++v) {
        f[v] = pos[v] >= 2;
        rows[v][t] = f[v];
      }
      for (int v = 0; v < n; ++v)
        pos[v] += f[(v + n - 1) % n] + f[(v + 1) % n] - 2 * static_cast<chip_count>(f[v]);
    }
    bool ok = std::equal(chips.begin(), chips.end(), pos.begin());
    for (int v = 0; v < n && ok; ++v) ok = rotations.count(rows[v]) != 0;
    if (ok) break;

    int i = n - 1;
    while (i >= 0 && chips[i] == 3) chips[i--] = 0;
    if (i < 0)
      throw internal_error("realization search exhausted for pattern " + bits_to_string(pfp) +
                           "; this contradicts the cycle-realizability guarantee");
    ++chips[i];
  }

  // Shift the start time so some vertex fires the word with no offset, then
  // relabel that vertex to 0 picking the lexicographically larger of the two
  // ring orientations, so equal inputs always produce the same game.
  for (int tau = 0; tau < n; ++tau) {
    for (int v = 0; v < n; ++v) {
      bool exact = true;
      for (int t = 0; t < n && exact; ++t) exact = rows[v][(tau + t) % n] == pfp[t];
      if (!exact) continue;
      chip_vector pos(chips.begin(), chips.end());
      for (int t = 0; t < tau; ++t) {
        bit_vector f(n);
        for (int w = 0; w < n; ++w) f[w] = pos[w] >= 2;
        for (int w = 0; w < n; ++w)
          pos[w] += f[(w + n - 1) % n] + f[(w + 1) % n] - 2 * static_cast<chip_count>(f[w]);
      }
      chip_vector forward(n), backward(n);
      for (int i = 0; i < n; ++i) {
        forward[i] = pos[(v + i) % n];
        backward[i] = pos[(v - i % n + n) % n];
      }
      cycle_realization out;
      out.g.graph = ring;
      out.g.chips = std::max(forward, backward);
      out.witness = 0;
      return out;
    }
  }
  throw internal_error("realized orbit contains no exact witness for pattern " +
                       bits_to_string(pfp));
}

}  // namespace chipfiring
