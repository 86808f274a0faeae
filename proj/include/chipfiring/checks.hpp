#pragma once

#include <string>
#include <vector>

#include "chipfiring/engine.hpp"

namespace chipfiring {

struct check_report {
  std::string name;
  bool pass = false;
  std::string detail;  // witness description when failing
};

// Pass iff no vertex's periodic firing pattern is clumpy.
check_report scan_nonclumpy(const simulation_result& result);
// Raw-row variant, for synthetic records.
check_report scan_nonclumpy_rows(const std::vector<bit_vector>& pfps);

// Pass iff the game has no double-firing vertex or no double-waiting vertex
// (cyclically, over the periodic window).
check_report check_dichotomy(const simulation_result& result);

// Pass iff the chips received during [a-1, b-1] minus the chips sent during
// [a, b] stay within (-deg(v), deg(v)) exclusive. Requires a > t0.
check_report check_lemma_bounds(const simulation_result& result, int v, long long a, long long b);
// All vertices, all windows inside the first two periodic periods.
check_report sweep_lemma_bounds(const simulation_result& result);

// Pass iff the waiters at time a or the firers at time b have an empty
// interior (vertices all of whose neighbors are inside the set).
check_report check_fey_levine(const simulation_result& result, long long a, long long b);
// All (a, b) pairs within one period.
check_report sweep_fey_levine(const simulation_result& result);

// Every vertex fires the same number of times per period.
check_report check_equal_firing(const simulation_result& result);

// Total chips identical at every recorded time.
check_report check_conservation(const simulation_result& result);

// On a single-motor tree: every max-clump of every vertex's periodic record,
// shifted back by the vertex's distance from the motor, lands inside the
// motor's same-bit positions; and when the motor's pattern is nonclumpy with
// at least one max-clump, every vertex copies the motor exactly with that
// delay.
check_report check_motor_following(const simulation_result& result, int m);

// On a periodic no-double-fire (or no-double-wait) game of period >= 3 with a
// pendant subtree rooted outside it: every subtree vertex's chips follow the
// three-value schedule determined by the root's firing, delayed by distance.
check_report check_treelike_formula(const simulation_result& result, int root,
                                    const std::vector<int>& subtree);

}  // namespace chipfiring
