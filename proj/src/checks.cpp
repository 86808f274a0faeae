#include "chipfiring/checks.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "chipfiring/errors.hpp"
#include "chipfiring/patterns.hpp"
#include "chipfiring/text_io.hpp"
#include "chipfiring/transforms.hpp"

namespace chipfiring {

namespace {

check_report pass(const char* name) { return {name, true, ""}; }

check_report fail(const char* name, const simulation_result& result, const std::string& what) {
  return {name, false, what + "\nreplay:\n" + serialize_game(result.source())};
}

}  // namespace

check_report scan_nonclumpy_rows(const std::vector<bit_vector>& pfps) {
  for (std::size_t v = 0; v < pfps.size(); ++v) {
    if (is_clumpy(pfps[v]))
      return {"nonclumpy", false,
              "vertex " + std::to_string(v) + " has clumpy pattern " + bits_to_string(pfps[v])};
  }
  return pass("nonclumpy");
}

check_report scan_nonclumpy(const simulation_result& result) {
  if (!result.source().ordinary())
    throw input_error("clumpiness scan is defined for motor-free games");
  auto report = scan_nonclumpy_rows(pfp_all(result));
  if (!report.pass) report.detail += "\nreplay:\n" + serialize_game(result.source());
  return report;
}

check_report check_dichotomy(const simulation_result& result) {
  if (!result.source().ordinary())
    throw input_error("the fire/wait dichotomy is defined for motor-free games");
  int doubled_firer = -1, doubled_waiter = -1;
  auto words = pfp_all(result);
  for (std::size_t v = 0; v < words.size(); ++v) {
    const auto& w = words[v];
    const int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) {
      if (w[i] && w[(i + 1) % n] && doubled_firer == -1) doubled_firer = static_cast<int>(v);
      if (!w[i] && !w[(i + 1) % n] && doubled_waiter == -1) doubled_waiter = static_cast<int>(v);
    }
  }
  if (doubled_firer != -1 && doubled_waiter != -1)
    return fail("dichotomy", result,
                "vertex " + std::to_string(doubled_firer) + " fires twice in a row while vertex " +
                    std::to_string(doubled_waiter) + " waits twice in a row");
  return pass("dichotomy");
}

check_report check_lemma_bounds(const simulation_result& result, int v, long long a,
                                long long b) {
  if (v < 0 || v >= result.source().graph.size())
    throw input_error("vertex id out of range: " + std::to_string(v));
  if (a <= result.transient_length())
    throw input_error("window must start after the transient (a > t0)");
  if (b < a) throw input_error("window end precedes its start");
  if (b - a + 1 > 2 * result.period())
    throw input_error("window longer than two periods");

  const chip_count deg = result.source().graph.degree(v);
  chip_count sum = 0;
  for (long long t = a; t <= b; ++t)
    sum += result.received(v, t - 1) - deg * (result.fires(v, t) ? 1 : 0);
  if (sum <= -deg || sum >= deg)
    return fail("lemma-bounds", result,
                "vertex " + std::to_string(v) + " window [" + std::to_string(a) + "," +
                    std::to_string(b) + "] sums to " + std::to_string(sum) +
                    ", outside (-deg, deg) = (-" + std::to_string(deg) + "," +
                    std::to_string(deg) + ")");
  return pass("lemma-bounds");
}

check_report sweep_lemma_bounds(const simulation_result& result) {
  const long long t0 = result.transient_length();
  const long long p = result.period();
  const int n = result.source().graph.size();
  for (int v = 0; v < n; ++v) {
    const chip_count deg = result.source().graph.degree(v);
    // Prefix sums of the per-step terms over [t0+1, t0+2p]; a window [a, b]
    // is in bounds iff prefix[b] - prefix[a-1] stays within (-deg, deg), so
    // running extrema of earlier prefixes certify every window ending at b.
    chip_count prefix = 0, low = 0, high = 0;
    for (long long t = t0 + 1; t <= t0 + 2 * p; ++t) {
      prefix += result.received(v, t - 1) - deg * (result.fires(v, t) ? 1 : 0);
      if (prefix - low >= deg || prefix - high <= -deg) {
        // Rescan for the exact witness window.
        for (long long a = t0 + 1; a <= t; ++a) {
          auto report = check_lemma_bounds(result, v, a, t);
          if (!report.pass) return report;
        }
      }
      low = std::min(low, prefix);
      high = std::max(high, prefix);
    }
  }
  return pass("lemma-bounds");
}

namespace {

// Indices of the set members whose whole neighborhood is inside the set.
std::vector<int> interior(const graph& g, const std::vector<bool>& members) {
  std::vector<int> inside;
  for (int v = 0; v < g.size(); ++v) {
    if (!members[v]) continue;
    bool all = true;
    for (int w : g.neighbors(v)) all = all && members[w];
    if (all) inside.push_back(v);
  }
  return inside;
}

}  // namespace

check_report check_fey_levine(const simulation_result& result, long long a, long long b) {
  if (a < result.transient_length() || b < result.transient_length())
    throw input_error("times must lie in the periodic window");
  const graph& g = result.source().graph;
  std::vector<bool> waiters(g.size()), firers(g.size());
  for (int v = 0; v < g.size(); ++v) {
    waiters[v] = !result.fires(v, a);
    firers[v] = result.fires(v, b);
  }
  auto iw = interior(g, waiters);
  auto ifi = interior(g, firers);
  if (!iw.empty() && !ifi.empty())
    return fail("fey-levine", result,
                "waiters at t=" + std::to_string(a) + " have interior vertex " +
                    std::to_string(iw[0]) + " and firers at t=" + std::to_string(b) +
                    " have interior vertex " + std::to_string(ifi[0]));
  return pass("fey-levine");
}

check_report sweep_fey_levine(const simulation_result& result) {
  const long long t0 = result.transient_length();
  const long long p = result.period();
  const graph& g = result.source().graph;
  // The pair (a, b) fails only if both interiors are nonempty, so it suffices
  // to find one a with waiter-interior and one b with firer-interior.
  long long bad_a = -1, bad_b = -1;
  for (long long t = t0; t < t0 + p; ++t) {
    std::vector<bool> waiters(g.size()), firers(g.size());
    for (int v = 0; v < g.size(); ++v) {
      waiters[v] = !result.fires(v, t);
      firers[v] = result.fires(v, t);
    }
    if (bad_a == -1 && !interior(g, waiters).empty()) bad_a = t;
    if (bad_b == -1 && !interior(g, firers).empty()) bad_b = t;
  }
  if (bad_a != -1 && bad_b != -1) return check_fey_levine(result, bad_a, bad_b);
  return pass("fey-levine");
}

check_report check_equal_firing(const simulation_result& result) {
  const long long t0 = result.transient_length();
  const long long p = result.period();
  const int n = result.source().graph.size();
  std::vector<long long> counts(n, 0);
  for (long long t = t0; t < t0 + p; ++t)
    for (int v = 0; v < n; ++v) counts[v] += result.fires(v, t) ? 1 : 0;
  for (int v = 1; v < n; ++v)
    if (counts[v] != counts[0])
      return fail("equal-firing", result,
                  "vertex 0 fires " + std::to_string(counts[0]) + " times per period, vertex " +
                      std::to_string(v) + " fires " + std::to_string(counts[v]));
  return pass("equal-firing");
}

check_report check_conservation(const simulation_result& result) {
  const auto& positions = result.positions();
  chip_count total = std::accumulate(positions[0].begin(), positions[0].end(), chip_count{0});
  for (std::size_t t = 1; t < positions.size(); ++t) {
    chip_count now = std::accumulate(positions[t].begin(), positions[t].end(), chip_count{0});
    if (now != total)
      return fail("conservation", result,
                  "total chips moved from " + std::to_string(total) + " to " +
                      std::to_string(now) + " at t=" + std::to_string(t));
  }
  return pass("conservation");
}

check_report check_motor_following(const simulation_result& result, int m) {
  const game& gm = result.source();
  if (!gm.graph.is_tree()) throw input_error("motor following is defined on trees");
  if (gm.motors.size() != 1 || !gm.is_motor(m))
    throw input_error("game must have exactly one motor, at the given vertex");

  const long long p = result.period();
  auto motor_word = pfp_extract(result, m);
  auto dist = gm.graph.distances_from(m);
  auto motor_clumps = max_clumps(motor_word, true);
  const bool exact_mode = !is_clumpy(motor_word) && !motor_clumps.empty();

  for (int v = 0; v < gm.graph.size(); ++v) {
    auto word = pfp_extract(result, v);
    const long long d = dist[v];
    for (auto& clump : max_clumps(word, true)) {
      for (int i = 0; i < clump.length; ++i) {
        long long t = ((clump.begin + i - d) % p + p) % p;
        if (motor_word[t] != clump.kind)
          return fail("motor-following", result,
                      "clump of vertex " + std::to_string(v) + " at [" +
                          std::to_string(clump.begin) + "," + std::to_string(clump.end()) +
                          "] shifted by distance " + std::to_string(d) +
                          " leaves the motor's matching positions");
      }
    }
    if (exact_mode) {
      for (long long t = 0; t < p; ++t) {
        if (word[(t + d) % p] != motor_word[t])
          return fail("motor-following", result,
                      "vertex " + std::to_string(v) + " is not a " + std::to_string(d) +
                          "-delayed copy of the motor at t=" + std::to_string(t));
      }
    }
  }
  auto report = pass("motor-following");
  report.detail = exact_mode ? "containment and exact delayed copies"
                             : "containment only (motor pattern has no usable clump)";
  return report;
}

check_report check_treelike_formula(const simulation_result& result, int root,
                                    const std::vector<int>& subtree) {
  const game& gm = result.source();
  if (!gm.ordinary()) throw input_error("the pendant-chip schedule requires a motor-free game");
  validate_treelike(gm.graph, root, subtree);
  const long long t0 = result.transient_length();
  const long long p = result.period();
  if (p < 3) throw input_error("the pendant-chip schedule requires period >= 3");

  auto words = pfp_all(result);
  bool double_fire = false, double_wait = false;
  for (auto& w : words) {
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      if (w[i] && w[(i + 1) % w.size()]) double_fire = true;
      if (!w[i] && !w[(i + 1) % w.size()]) double_wait = true;
    }
  }
  if (double_fire && double_wait)
    throw input_error("game has both a double-firing and a double-waiting vertex");

  const auto& root_word = words[root];
  auto dist = gm.graph.distances_from(root);
  for (int v : subtree) {
    const chip_count deg = gm.graph.degree(v);
    const long long d = dist[v];
    for (long long t = 0; t < p; ++t) {
      bool fm = root_word[((t - d) % p + p) % p] != 0;
      bool fm1 = root_word[((t - d - 1) % p + p) % p] != 0;
      chip_count want;
      if (!double_fire) {
        want = fm ? deg : (fm1 ? 0 : deg - 1);
      } else {
        want = !fm ? deg - 1 : (!fm1 ? 2 * deg - 1 : deg);
      }
      chip_count got = result.chips_at(t0 + t)[v];
      if (got != want)
        return fail("treelike-formula", result,
                    "vertex " + std::to_string(v) + " at t=" + std::to_string(t0 + t) +
                        " holds " + std::to_string(got) + " chips, schedule predicts " +
                        std::to_string(want));
    }
  }
  return pass("treelike-formula");
}

}  // namespace chipfiring
