#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "chipfiring/engine.hpp"
#include "chipfiring/patterns.hpp"

namespace chipfiring {

// Graph families the census can enumerate or sample.
enum class family_kind { path, cycle, star, complete, tree, connected };

family_kind family_from_string(const std::string& name);
std::string family_to_string(family_kind family);

// Per-vertex ceiling on initial chips, as a function of degree.
struct chip_cap {
  enum class mode { two_deg_minus_one, three_deg, constant };

  mode kind = mode::two_deg_minus_one;
  chip_count value = 0;  // used by mode::constant

  chip_count limit(int degree) const;
  std::string to_string() const;

  // Accepts "2deg-1", "3deg", or a nonnegative integer.
  static chip_cap parse(const std::string& text);
};

struct census_spec {
  family_kind family = family_kind::tree;
  int min_size = 2;
  int max_size = 5;
  chip_cap cap;
  bool exhaustive = true;
  long long sample_count = 0;  // number of random games when not exhaustive
  std::uint64_t seed = 0;
  long long max_steps = 1'000'000;
  int threads = 0;  // 0 picks the hardware concurrency
};

// One catalog line per simulated game.
struct census_row {
  std::string family;
  int n = 0;
  long long graph_index = 0;  // enumeration index (exhaustive) or sample index
  std::uint64_t chips_hash = 0;
  long long t0 = -1;  // -1 when the step budget ran out
  long long period = -1;
  fraction activity{0, 1};
  std::uint64_t pfp_fingerprint = 0;
  std::string verdict;  // "ok", "budget", or comma-joined failed check names
};

struct census_summary {
  long long graphs = 0;
  long long games = 0;
  long long clumpy_games = 0;
  long long check_failures = 0;   // games with at least one failed check
  long long budget_failures = 0;  // games that exhausted the step budget
  long long max_period = 0;
  long long max_transient = 0;
  std::map<long long, long long> period_histogram;
  std::string first_failure;  // replayable detail of the earliest bad game

  bool all_ok() const {
    return clumpy_games == 0 && check_failures == 0 && budget_failures == 0;
  }
};

using census_sink = std::function<void(const census_row&)>;

// Simulates every game in the spec to periodicity and runs the full check
// battery (nonclumpy scan, dichotomy, interior sweep, equal firing,
// conservation, window bounds) on each. Rows reach the sink in enumeration
// order regardless of thread count, so output bytes are reproducible.
census_summary run_census(const census_spec& spec, const census_sink& sink = {});

std::string census_row_tsv_header();
std::string census_row_to_tsv(const census_row& row);

// '#'-prefixed summary block appended after the TSV rows.
std::string census_summary_to_text(const census_summary& summary);

std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace chipfiring
