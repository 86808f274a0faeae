#include "chipfiring/census.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstring>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "chipfiring/checks.hpp"
#include "chipfiring/errors.hpp"
#include "chipfiring/graph.hpp"
#include "chipfiring/text_io.hpp"

namespace chipfiring {

namespace {

constexpr std::uint64_t fnv_offset = 14695981039346656037ULL;
constexpr std::uint64_t fnv_prime = 1099511628211ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_chips(const chip_vector& chips) {
  std::uint64_t h = fnv_offset;
  for (chip_count c : chips) {
    auto u = static_cast<std::uint64_t>(c);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (u >> (8 * byte)) & 0xffU;
      h *= fnv_prime;
    }
  }
  return h;
}

std::uint64_t hash_pfp_multiset(const std::vector<bit_vector>& pfps) {
  std::vector<std::string> words;
  words.reserve(pfps.size());
  for (const auto& row : pfps) words.push_back(bits_to_string(row));
  std::sort(words.begin(), words.end());
  std::uint64_t h = fnv_offset;
  for (const auto& word : words) {
    h = fnv1a64(word.data(), word.size()) ^ (h * fnv_prime);
  }
  return h;
}

int family_min_size(family_kind family) {
  switch (family) {
    case family_kind::cycle:
      return 3;
    case family_kind::star:
      return 2;
    default:
      return 1;
  }
}

// Labeled tree from the base-n digits of `code` (n >= 3).
graph tree_from_code(int n, long long code) {
  std::vector<int> seq(n - 2);
  for (int i = 0; i < n - 2; ++i) {
    seq[i] = static_cast<int>(code % n);
    code /= n;
  }
  std::vector<int> degree(n, 1);
  for (int x : seq) ++degree[x];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<std::pair<int, int>> edges;
  for (int x : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
    if (--degree[x] == 1) leaves.insert(x);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return graph::from_edge_list(n, edges);
}

std::vector<std::pair<int, int>> vertex_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

bool edge_mask_connected(int n, const std::vector<std::pair<int, int>>& pairs,
                         std::uint64_t mask) {
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!(mask & (1ULL << k))) continue;
    int a = find(pairs[k].first), b = find(pairs[k].second);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

// All graphs of the family with exactly n vertices, in a fixed order.
std::vector<graph> enumerate_graphs(family_kind family, int n) {
  switch (family) {
    case family_kind::path:
      return {graph::path(n)};
    case family_kind::cycle:
      return {graph::cycle(n)};
    case family_kind::star:
      return {graph::star(n)};
    case family_kind::complete:
      return {graph::complete(n)};
    case family_kind::tree: {
      if (n <= 2) return {graph::path(n)};
      std::vector<graph> out;
      long long total = 1;
      for (int i = 0; i < n - 2; ++i) total *= n;
      out.reserve(static_cast<std::size_t>(total));
      for (long long code = 0; code < total; ++code) out.push_back(tree_from_code(n, code));
      return out;
    }
    case family_kind::connected: {
      if (n == 1) return {graph::path(1)};
      auto pairs = vertex_pairs(n);
      if (pairs.size() > 20)
        throw input_error("exhaustive connected enumeration supports at most 6 vertices");
      std::vector<graph> out;
      for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
        if (!edge_mask_connected(n, pairs, mask)) continue;
        std::vector<std::pair<int, int>> edges;
        for (std::size_t k = 0; k < pairs.size(); ++k)
          if (mask & (1ULL << k)) edges.push_back(pairs[k]);
        out.push_back(graph::from_edge_list(n, edges));
      }
      return out;
    }
  }
  throw internal_error("unknown family");
}

graph sample_graph(family_kind family, int n, std::mt19937_64& rng) {
  switch (family) {
    case family_kind::path:
      return graph::path(n);
    case family_kind::cycle:
      return graph::cycle(n);
    case family_kind::star:
      return graph::star(n);
    case family_kind::complete:
      return graph::complete(n);
    case family_kind::tree:
      return graph::random_tree(n, rng);
    case family_kind::connected:
      return graph::random_connected(n, std::uniform_real_distribution<>(0.0, 0.5)(rng), rng);
  }
  throw internal_error("unknown family");
}

struct unit_summary {
  long long games = 0;
  long long clumpy_games = 0;
  long long check_failures = 0;
  long long budget_failures = 0;
  long long max_period = 0;
  long long max_transient = 0;
  std::map<long long, long long> period_histogram;
  std::string first_failure;
};

struct unit_result {
  std::vector<census_row> rows;
  unit_summary summary;
};

void record_failure(unit_summary& summary, const std::string& detail) {
  if (summary.first_failure.empty()) summary.first_failure = detail;
}

void process_game(const game& gm, family_kind family, int n, long long graph_index,
                  long long max_steps, bool want_row, unit_result& out) {
  ++out.summary.games;
  census_row row;
  row.family = family_to_string(family);
  row.n = n;
  row.graph_index = graph_index;
  row.chips_hash = hash_chips(gm.chips);

  simulation_options opts;
  opts.max_steps = max_steps;
  try {
    simulation_result result = simulate(gm, opts);
    row.t0 = result.transient_length();
    row.period = result.period();
    out.summary.max_period = std::max(out.summary.max_period, row.period);
    out.summary.max_transient = std::max(out.summary.max_transient, row.t0);
    ++out.summary.period_histogram[row.period];
    auto pfps = pfp_all(result);
    row.activity = activity(pfps[0]);
    row.pfp_fingerprint = hash_pfp_multiset(pfps);

    std::vector<check_report> reports;
    reports.push_back(scan_nonclumpy(result));
    reports.push_back(check_dichotomy(result));
    reports.push_back(sweep_fey_levine(result));
    reports.push_back(check_equal_firing(result));
    reports.push_back(check_conservation(result));
    reports.push_back(sweep_lemma_bounds(result));

    std::string failed;
    for (const auto& report : reports) {
      if (report.pass) continue;
      if (!failed.empty()) failed += ",";
      failed += report.name;
      record_failure(out.summary, report.name + ": " + report.detail);
    }
    if (failed.empty()) {
      row.verdict = "ok";
    } else {
      row.verdict = failed;
      ++out.summary.check_failures;
      if (!reports[0].pass) ++out.summary.clumpy_games;
    }
  } catch (const budget_error& err) {
    row.verdict = "budget";
    ++out.summary.budget_failures;
    record_failure(out.summary,
                   std::string("budget: ") + err.what() + "\nreplay:\n" + serialize_game(gm));
  }
  if (want_row) out.rows.push_back(std::move(row));
}

// Runs fn over chips vectors 0..cap per vertex in odometer order.
template <typename Fn>
void for_each_chip_vector(const graph& g, const chip_cap& cap, Fn&& fn) {
  int n = g.size();
  std::vector<chip_count> caps(n);
  for (int v = 0; v < n; ++v) {
    caps[v] = cap.limit(g.degree(v));
    if (caps[v] < 0) return;  // no admissible chip vector
  }
  chip_vector chips(n, 0);
  while (true) {
    fn(chips);
    int i = n - 1;
    while (i >= 0 && chips[i] == caps[i]) chips[i--] = 0;
    if (i < 0) break;
    ++chips[i];
  }
}

unit_result process_graph_unit(const census_spec& spec, int n, long long graph_index,
                               const graph& g, bool want_rows) {
  unit_result out;
  for_each_chip_vector(g, spec.cap, [&](const chip_vector& chips) {
    game gm;
    gm.graph = g;
    gm.chips = chips;
    process_game(gm, spec.family, n, graph_index, spec.max_steps, want_rows, out);
  });
  return out;
}

unit_result process_sample_unit(const census_spec& spec, long long index, bool want_rows) {
  std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(static_cast<std::uint64_t>(index))));
  int n = std::uniform_int_distribution<int>(spec.min_size, spec.max_size)(rng);
  game gm;
  gm.graph = sample_graph(spec.family, n, rng);
  gm.chips.resize(n);
  for (int v = 0; v < n; ++v) {
    chip_count cap = spec.cap.limit(gm.graph.degree(v));
    if (cap < 0) throw input_error("chip cap is negative for a degree-" +
                                   std::to_string(gm.graph.degree(v)) + " vertex");
    gm.chips[v] = std::uniform_int_distribution<chip_count>(0, cap)(rng);
  }
  unit_result out;
  process_game(gm, spec.family, n, index, spec.max_steps, want_rows, out);
  return out;
}

void merge_summary(census_summary& total, const unit_summary& part) {
  total.games += part.games;
  total.clumpy_games += part.clumpy_games;
  total.check_failures += part.check_failures;
  total.budget_failures += part.budget_failures;
  total.max_period = std::max(total.max_period, part.max_period);
  total.max_transient = std::max(total.max_transient, part.max_transient);
  for (auto [period, count] : part.period_histogram) total.period_histogram[period] += count;
  if (total.first_failure.empty()) total.first_failure = part.first_failure;
}

void validate_spec(const census_spec& spec) {
  if (spec.min_size < family_min_size(spec.family))
    throw input_error("size range starts below the family minimum of " +
                      std::to_string(family_min_size(spec.family)));
  if (spec.max_size < spec.min_size) throw input_error("size range is empty");
  if (!spec.exhaustive && spec.sample_count <= 0)
    throw input_error("sample mode needs a positive sample count");
  if (spec.max_steps <= 0) throw input_error("step budget must be positive");
  if (spec.threads < 0) throw input_error("thread count must be nonnegative");
}

}  // namespace

family_kind family_from_string(const std::string& name) {
  if (name == "path") return family_kind::path;
  if (name == "cycle") return family_kind::cycle;
  if (name == "star") return family_kind::star;
  if (name == "complete") return family_kind::complete;
  if (name == "tree") return family_kind::tree;
  if (name == "connected") return family_kind::connected;
  throw input_error("unknown graph family: " + name);
}

std::string family_to_string(family_kind family) {
  switch (family) {
    case family_kind::path:
      return "path";
    case family_kind::cycle:
      return "cycle";
    case family_kind::star:
      return "star";
    case family_kind::complete:
      return "complete";
    case family_kind::tree:
      return "tree";
    case family_kind::connected:
      return "connected";
  }
  throw internal_error("unknown family");
}

chip_count chip_cap::limit(int degree) const {
  switch (kind) {
    case mode::two_deg_minus_one:
      return 2 * static_cast<chip_count>(degree) - 1;
    case mode::three_deg:
      return 3 * static_cast<chip_count>(degree);
    case mode::constant:
      return value;
  }
  throw internal_error("unknown chip cap mode");
}

std::string chip_cap::to_string() const {
  switch (kind) {
    case mode::two_deg_minus_one:
      return "2deg-1";
    case mode::three_deg:
      return "3deg";
    case mode::constant:
      return std::to_string(value);
  }
  throw internal_error("unknown chip cap mode");
}

chip_cap chip_cap::parse(const std::string& text) {
  chip_cap cap;
  if (text == "2deg-1") {
    cap.kind = mode::two_deg_minus_one;
    return cap;
  }
  if (text == "3deg") {
    cap.kind = mode::three_deg;
    return cap;
  }
  std::istringstream in(text);
  chip_count value;
  std::string rest;
  if (!(in >> value) || (in >> rest) || value < 0)
    throw input_error("chip cap must be \"2deg-1\", \"3deg\", or a nonnegative integer");
  cap.kind = mode::constant;
  cap.value = value;
  return cap;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = fnv_offset;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= fnv_prime;
  }
  return h;
}

census_summary run_census(const census_spec& spec, const census_sink& sink) {
  validate_spec(spec);
  census_summary total;

  // Work units: one per graph when exhaustive, one per sample otherwise.
  std::vector<std::pair<int, graph>> graphs;  // (n, graph), exhaustive mode
  std::size_t unit_count;
  if (spec.exhaustive) {
    for (int n = spec.min_size; n <= spec.max_size; ++n)
      for (auto& g : enumerate_graphs(spec.family, n)) graphs.emplace_back(n, std::move(g));
    unit_count = graphs.size();
    total.graphs = static_cast<long long>(graphs.size());
  } else {
    unit_count = static_cast<std::size_t>(spec.sample_count);
    total.graphs = spec.sample_count;
  }
  if (unit_count == 0) return total;

  const bool want_rows = static_cast<bool>(sink);
  auto process_unit = [&](std::size_t i) {
    if (spec.exhaustive)
      return process_graph_unit(spec, graphs[i].first, static_cast<long long>(i),
                                graphs[i].second, want_rows);
    return process_sample_unit(spec, static_cast<long long>(i), want_rows);
  };

  unsigned hardware = std::thread::hardware_concurrency();
  std::size_t workers = spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                                         : std::max(1u, hardware);
  workers = std::min(workers, unit_count);

  if (workers <= 1) {
    for (std::size_t i = 0; i < unit_count; ++i) {
      unit_result result = process_unit(i);
      for (const auto& row : result.rows) sink(row);
      merge_summary(total, result.summary);
    }
    return total;
  }

  // Workers claim units from a shared counter; the merge below replays the
  // finished units strictly in index order so output is thread-count agnostic.
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, unit_result> finished;
  std::atomic<std::size_t> next_unit{0};
  std::exception_ptr worker_error;

  auto worker = [&] {
    while (true) {
      std::size_t i = next_unit.fetch_add(1);
      if (i >= unit_count) break;
      try {
        unit_result result = process_unit(i);
        std::lock_guard<std::mutex> lock(mu);
        finished.emplace(i, std::move(result));
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!worker_error) worker_error = std::current_exception();
        finished.emplace(i, unit_result{});
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);

  for (std::size_t flush = 0; flush < unit_count; ++flush) {
    unit_result result;
    {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return finished.count(flush) > 0; });
      result = std::move(finished[flush]);
      finished.erase(flush);
    }
    for (const auto& row : result.rows) sink(row);
    merge_summary(total, result.summary);
  }
  for (auto& t : pool) t.join();
  if (worker_error) std::rethrow_exception(worker_error);
  return total;
}

std::string census_row_tsv_header() {
  return "family\tn\tgraph\tchips_hash\tt0\tperiod\tactivity\tpfp_hash\tverdict\n";
}

std::string census_row_to_tsv(const census_row& row) {
  std::ostringstream out;
  out << row.family << "\t" << row.n << "\t" << row.graph_index << "\t" << std::hex
      << row.chips_hash << std::dec << "\t" << row.t0 << "\t" << row.period << "\t"
      << row.activity.num << "/" << row.activity.den << "\t" << std::hex
      << row.pfp_fingerprint << std::dec << "\t" << row.verdict << "\n";
  return out.str();
}

std::string census_summary_to_text(const census_summary& summary) {
  std::ostringstream out;
  out << "# summary graphs=" << summary.graphs << " games=" << summary.games
      << " clumpy=" << summary.clumpy_games << " check_failures=" << summary.check_failures
      << " budget_failures=" << summary.budget_failures << " max_period=" << summary.max_period
      << " max_transient=" << summary.max_transient << "\n";
  out << "# periods";
  for (auto [period, count] : summary.period_histogram) out << " " << period << ":" << count;
  out << "\n";
  if (!summary.first_failure.empty()) {
    out << "# first_failure";
    std::istringstream in(summary.first_failure);
    std::string line;
    while (std::getline(in, line)) out << "\n#   " << line;
    out << "\n";
  }
  return out.str();
}

}  // namespace chipfiring
