#pragma once

#include <map>
#include <vector>

#include "chipfiring/engine.hpp"

namespace chipfiring {

// An ordinary game plus a vertex whose firing sequence equals a claimed
// schedule; supplies the building block attached at a motor during
// motorized-to-ordinary conversion.
struct realizer {
  game g;
  int witness = 0;
  motor_schedule claims;
  bool operator==(const realizer&) const = default;
};

// Exact equality of two eventually periodic schedules, for all times.
bool schedules_equal(const motor_schedule& x, const motor_schedule& y);

struct motor_conversion {
  int motor = 0;
  chip_count min_chips = 0;  // least motor chips over one period
  chip_count max_chips = 0;  // greatest motor chips over one period
  int copies = 0;            // max - min + 1
  // copy_vertices[j][w] = converted-graph id of vertex w in the j-th attached
  // copy; the realizer's witness maps to the motor itself.
  std::vector<std::vector<int>> copy_vertices;
};

struct conversion_result {
  game converted;
  std::vector<motor_conversion> motors;
};

// Replaces every motor by attached copies of its realizer so that an ordinary
// game reproduces all original firing sequences on the original vertices.
// Requires the motorized game to start in a periodic position and each
// realizer's witness sequence to equal its motor's schedule from t = 0.
conversion_result motorize_to_ordinary(const game& motorized,
                                       const std::map<int, realizer>& realizers);

// chips -> 2*deg - 1 - chips. Requires an ordinary game started in a periodic
// position with chips(v) <= 2*deg(v) - 1 everywhere; inverts every firing
// decision and is an involution.
game complement(const game& gm);

struct prune_result {
  game pruned;
  std::vector<int> kept;  // original id of each surviving vertex, in new-id order
  bool operator==(const prune_result&) const = default;
};

// Removes one leaf from a periodic ordinary game without double-firing
// vertices (or, dually, without double-waiting vertices), adjusting the
// neighbor's chips so every surviving vertex keeps its exact firing pattern.
prune_result prune_leaf(const game& gm, int leaf);

// Iterated leaf removal of a pendant subtree hanging off `root`.
prune_result prune_treelike(const game& gm, int root, const std::vector<int>& subtree);

// Throws input_error unless `subtree` is a tree joined to the rest of the
// graph by the single edge into `root`, with at least two vertices left over.
void validate_treelike(const graph& g, int root, const std::vector<int>& subtree);

struct cycle_realization {
  game g;           // game on the cycle of length |word|
  int witness = 0;  // vertex whose firing pattern equals the word exactly
};

// Finds a game on the simple cycle of length |pfp| whose every vertex fires a
// rotation of the word, with the witness matching it exactly. The word must
// have length >= 3, be nonclumpy, and not repeat a shorter word.
cycle_realization realize_pfp_on_cycle(const bit_vector& pfp);

}  // namespace chipfiring
