#include "chipfiring/patterns.hpp"

#include <algorithm>
#include <numeric>

#include "chipfiring/errors.hpp"

namespace chipfiring {

namespace {

struct run {
  int begin;
  int length;
  std::uint8_t kind;
};

// Maximal runs of a cyclic word, in cyclic order starting from some run
// boundary. A constant word is one run spanning everything.
std::vector<run> cyclic_runs(const bit_vector& w) {
  const int n = static_cast<int>(w.size());
  int start = -1;
  for (int i = 0; i < n; ++i) {
    if (w[i] != w[(i + n - 1) % n]) {
      start = i;
      break;
    }
  }
  if (start == -1) return {{0, n, w[0]}};

  std::vector<run> runs;
  int i = start;
  do {
    int len = 1;
    while (w[(i + len) % n] == w[i] && len < n) ++len;
    runs.push_back({i, len, w[i]});
    i = (i + len) % n;
  } while (i != start);
  return runs;
}

void require_word(const bit_vector& w) {
  if (w.empty()) throw input_error("empty word");
}

int sign_of(std::uint8_t kind) { return kind ? +1 : -1; }

sector_decomposition single_sector(int n, std::uint8_t kind) {
  sector_decomposition d;
  d.parts = {{0, n - 1, kind}};
  d.s.assign(n, sign_of(kind));
  d.delta.assign(n, 0);
  return d;
}

bool sector_contains(const sector& s, int i) {
  if (s.begin <= s.end) return s.begin <= i && i <= s.end;
  return i >= s.begin || i <= s.end;
}

}  // namespace

bit_vector pfp_extract(const simulation_result& result, int v) {
  if (v < 0 || v >= result.source().graph.size())
    throw input_error("vertex id out of range: " + std::to_string(v));
  bit_vector word(result.period());
  for (long long t = 0; t < result.period(); ++t)
    word[t] = result.fires(v, result.transient_length() + t);
  return word;
}

std::vector<bit_vector> pfp_all(const simulation_result& result) {
  std::vector<bit_vector> words;
  words.reserve(result.source().graph.size());
  for (int v = 0; v < result.source().graph.size(); ++v) words.push_back(pfp_extract(result, v));
  return words;
}

bool is_clumpy(const bit_vector& word) {
  require_word(word);
  const int n = static_cast<int>(word.size());
  bool zeros = false, ones = false;
  for (int i = 0; i < n; ++i) {
    std::uint8_t a = word[i], b = word[(i + 1) % n];
    if (a == 0 && b == 0) zeros = true;
    if (a == 1 && b == 1) ones = true;
  }
  return zeros && ones;
}

bool is_clumpy_sequence(const bit_vector& seq) {
  require_word(seq);
  bool zeros = false, ones = false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i] == 0 && seq[i + 1] == 0) zeros = true;
    if (seq[i] == 1 && seq[i + 1] == 1) ones = true;
  }
  return zeros && ones;
}

std::vector<max_clump> max_clumps(const bit_vector& seq, bool cyclic) {
  require_word(seq);
  const int n = static_cast<int>(seq.size());
  std::vector<max_clump> clumps;
  if (cyclic) {
    auto runs = cyclic_runs(seq);
    if (runs.size() == 1) return {};  // constant word: no opposite flank anywhere
    for (auto& r : runs)
      if (r.length >= 2) clumps.push_back({r.begin, r.length, r.kind});
    std::sort(clumps.begin(), clumps.end(),
              [](const max_clump& a, const max_clump& b) { return a.begin < b.begin; });
  } else {
    int i = 0;
    while (i < n) {
      int j = i;
      while (j + 1 < n && seq[j + 1] == seq[i]) ++j;
      // A run touching either boundary has no visible flank there.
      if (j - i + 1 >= 2 && i > 0 && j < n - 1) clumps.push_back({i, j - i + 1, seq[i]});
      i = j + 1;
    }
  }
  return clumps;
}

sector_decomposition sectors(const bit_vector& word, std::uint8_t alternating_kind) {
  require_word(word);
  const int n = static_cast<int>(word.size());

  auto runs = cyclic_runs(word);
  if (runs.size() == 1) return single_sector(n, word[0]);

  std::vector<run> anchors;
  for (auto& r : runs)
    if (r.length >= 2) anchors.push_back(r);

  if (anchors.empty()) return single_sector(n, alternating_kind);
  if (std::all_of(anchors.begin(), anchors.end(),
                  [&](const run& a) { return a.kind == anchors[0].kind; }))
    return single_sector(n, anchors[0].kind);

  // A sector of kind b ends where the last b-anchor before a (1-b)-anchor
  // ends; the next sector starts right after.
  const int m = static_cast<int>(anchors.size());
  std::vector<std::pair<int, std::uint8_t>> ends;  // (final index, kind)
  for (int j = 0; j < m; ++j) {
    if (anchors[j].kind != anchors[(j + 1) % m].kind)
      ends.emplace_back((anchors[j].begin + anchors[j].length - 1) % n, anchors[j].kind);
  }

  sector_decomposition d;
  const int k = static_cast<int>(ends.size());
  for (int j = 0; j < k; ++j) {
    int begin = (ends[(j + k - 1) % k].first + 1) % n;
    d.parts.push_back({begin, ends[j].first, ends[j].second});
  }
  auto first = std::find_if(d.parts.begin(), d.parts.end(),
                            [](const sector& s) { return sector_contains(s, 0); });
  std::rotate(d.parts.begin(), first, d.parts.end());

  d.s.assign(n, 0);
  d.delta.assign(n, 0);
  for (auto& part : d.parts) {
    for (int i = part.begin;; i = (i + 1) % n) {
      d.s[i] = sign_of(part.kind);
      if (i == part.end) break;
    }
    d.delta[part.end] = 1;
  }
  return d;
}

long long signed_sum_M(const bit_vector& p, const bit_vector& q, const std::vector<int>& indices,
                       std::uint8_t alternating_kind) {
  require_word(p);
  if (p.size() != q.size()) throw input_error("words must have equal length");
  const int n = static_cast<int>(p.size());
  auto dp = sectors(p, alternating_kind);
  auto dq = sectors(q, alternating_kind);
  long long total = 0;
  for (int i : indices) {
    if (i < 0 || i >= n) throw input_error("index out of range: " + std::to_string(i));
    int prev = (i + n - 1) % n;
    total += static_cast<long long>(dp.s[i]) * (p[i] - q[prev]) +
             static_cast<long long>(dq.s[i]) * (q[i] - p[prev]) - dp.delta[i] - dq.delta[i];
  }
  return total;
}

long long signed_sum_M_full(const bit_vector& p, const bit_vector& q,
                            std::uint8_t alternating_kind) {
  std::vector<int> all(p.size());
  std::iota(all.begin(), all.end(), 0);
  return signed_sum_M(p, q, all, alternating_kind);
}

long long disagreement_mu(const bit_vector& p, const bit_vector& q,
                          const std::vector<int>& indices) {
  require_word(p);
  if (p.size() != q.size()) throw input_error("words must have equal length");
  const int n = static_cast<int>(p.size());
  long long total = 0;
  for (int i : indices) {
    if (i < 0 || i >= n) throw input_error("index out of range: " + std::to_string(i));
    total += static_cast<long long>(p[i]) - q[(i + n - 1) % n];
  }
  return total;
}

fraction activity(const bit_vector& pfp) {
  require_word(pfp);
  long long ones = std::count(pfp.begin(), pfp.end(), std::uint8_t{1});
  long long n = static_cast<long long>(pfp.size());
  long long g = std::gcd(ones, n);
  if (g == 0) g = 1;
  return {ones / g, n / g};
}

std::string sector_diagram(const bit_vector& word) {
  auto d = sectors(word);
  const int n = static_cast<int>(word.size());
  std::string top(n, ' '), bottom(n, ' ');
  for (auto& part : d.parts) {
    std::string& line = part.kind ? top : bottom;
    if (part.begin == part.end) {
      line[part.begin] = '|';
    } else {
      line[part.begin] = '[';
      line[part.end] = ']';
    }
  }
  return top + "\n" + bits_to_string(word) + "\n" + bottom + "\n";
}

}  // namespace chipfiring
