#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chipfiring/engine.hpp"

namespace chipfiring {

// Inclusive cyclic index interval of one kind. end < begin means the sector
// wraps past the last index.
struct sector {
  int begin;
  int end;
  std::uint8_t kind;
  bool operator==(const sector&) const = default;
};

// Partition of a cyclic word into sectors, with the per-index sign table
// s (-1 inside 0-sectors, +1 inside 1-sectors) and the switch table delta
// (1 exactly at each sector's final index when there are >= 2 sectors).
struct sector_decomposition {
  std::vector<sector> parts;
  std::vector<int> s;
  std::vector<int> delta;
};

// Maximal same-bit run of length >= 2 flanked on both sides by the opposite
// bit. `begin + length - 1` may pass the end of a cyclic word; reduce mod n.
struct max_clump {
  int begin;
  int length;
  std::uint8_t kind;
  int end() const { return begin + length - 1; }
  bool operator==(const max_clump&) const = default;
};

struct fraction {
  long long num;
  long long den;
  bool operator==(const fraction&) const = default;
};

// Firing word of one vertex over [t0, t0 + p).
bit_vector pfp_extract(const simulation_result& result, int v);
std::vector<bit_vector> pfp_all(const simulation_result& result);

// Cyclic test: the word contains both "00" and "11" reading around the cycle.
bool is_clumpy(const bit_vector& word);
// Plain factor test on a finite window, no wrap-around.
bool is_clumpy_sequence(const bit_vector& seq);

// All maximal runs of length >= 2 with their kind. Cyclic mode wraps; acyclic
// mode omits runs touching either boundary (their flank is not visible).
std::vector<max_clump> max_clumps(const bit_vector& seq, bool cyclic);

// Cyclic sector decomposition. Anchors are the maximal runs of length >= 2; a
// b-sector ends where the last b-anchor before a (1-b)-anchor ends. Constant
// words and words whose anchors all share one kind form a single sector of
// that kind; pure alternating words form a single sector of kind
// `alternating_kind` (0 is the canonical choice; 1 exists for cross-checks).
sector_decomposition sectors(const bit_vector& word, std::uint8_t alternating_kind = 0);

// Sum over the index set of
//   s_i(p) (p_i - q_{i-1}) + s_i(q) (q_i - p_{i-1}) - delta_i(p) - delta_i(q).
long long signed_sum_M(const bit_vector& p, const bit_vector& q,
                       const std::vector<int>& indices, std::uint8_t alternating_kind = 0);
long long signed_sum_M_full(const bit_vector& p, const bit_vector& q,
                            std::uint8_t alternating_kind = 0);

// Plain disagreement sum over the index set of p_i - q_{i-1}.
long long disagreement_mu(const bit_vector& p, const bit_vector& q,
                          const std::vector<int>& indices);

// Fraction of positions that are 1, in lowest terms.
fraction activity(const bit_vector& pfp);

// Three-line rendering: 1-sectors bracketed above the word, 0-sectors below.
std::string sector_diagram(const bit_vector& word);

}  // namespace chipfiring
