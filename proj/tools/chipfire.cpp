#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chipfiring/census.hpp"
#include "chipfiring/checks.hpp"
#include "chipfiring/engine.hpp"
#include "chipfiring/errors.hpp"
#include "chipfiring/patterns.hpp"
#include "chipfiring/sector_graph.hpp"
#include "chipfiring/text_io.hpp"
#include "chipfiring/transforms.hpp"

namespace cf = chipfiring;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

long long parse_int(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  long long value;
  std::string rest;
  if (!(in >> value) || (in >> rest)) throw cf::input_error("malformed " + what + ": " + text);
  return value;
}

std::string activity_text(const cf::fraction& f) {
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

std::string chips_text(const cf::chip_vector& chips) {
  std::string out;
  for (std::size_t i = 0; i < chips.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(chips[i]);
  }
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    cf::write_file(out_path, content);
}

int run_simulate(const std::string& path, long long max_steps, const std::string& mode) {
  cf::game gm = cf::parse_game(cf::read_file(path));
  cf::simulation_options opts;
  opts.max_steps = max_steps;
  cf::simulation_result result = cf::simulate(gm, opts);
  long long window = result.transient_length() + result.period();

  std::cout << "t0=" << result.transient_length() << " period=" << result.period() << "\n";
  if (mode == "trace") {
    for (long long t = 0; t < window; ++t)
      std::cout << "t=" << t << " chips=" << chips_text(result.positions()[t])
                << " fires=" << cf::bits_to_string(result.firing()[t]) << "\n";
  } else if (mode == "tsv") {
    std::cout << "t\tv\tchips\tfires\n";
    for (long long t = 0; t < window; ++t)
      for (int v = 0; v < gm.graph.size(); ++v)
        std::cout << t << "\t" << v << "\t" << result.positions()[t][v] << "\t"
                  << static_cast<int>(result.firing()[t][v]) << "\n";
  } else {
    for (int v = 0; v < gm.graph.size(); ++v) {
      cf::bit_vector word = cf::pfp_extract(result, v);
      std::cout << "v" << v << " pfp=" << cf::bits_to_string(word)
                << " activity=" << activity_text(cf::activity(word)) << "\n";
    }
  }
  return 0;
}

int run_patterns(const std::string& word_text, const std::string& other_text) {
  cf::bit_vector word = cf::bits_from_string(word_text);
  if (word.empty()) throw cf::input_error("word must be nonempty");
  int n = static_cast<int>(word.size());

  std::cout << "word=" << word_text << " length=" << n << "\n";
  std::cout << "clumpy=" << (cf::is_clumpy(word) ? "yes" : "no") << "\n";
  std::cout << "activity=" << activity_text(cf::activity(word)) << "\n";

  std::cout << "max-clumps:";
  auto clumps = cf::max_clumps(word, true);
  if (clumps.empty()) std::cout << " none";
  for (const auto& clump : clumps)
    std::cout << " [" << clump.begin << "," << clump.end() % n << "]"
              << static_cast<int>(clump.kind);
  std::cout << "\n";

  auto decomposition = cf::sectors(word);
  std::cout << "sectors:";
  for (const auto& part : decomposition.parts)
    std::cout << " [" << part.begin << "," << part.end << "]" << static_cast<int>(part.kind);
  std::cout << "\n";
  std::cout << cf::sector_diagram(word);

  if (!other_text.empty()) {
    cf::bit_vector other = cf::bits_from_string(other_text);
    std::vector<int> all(word.size());
    std::iota(all.begin(), all.end(), 0);
    std::cout << "mu=" << cf::disagreement_mu(word, other, all) << "\n";
    std::cout << "M=" << cf::signed_sum_M_full(word, other) << "\n";
  }
  return 0;
}

int run_verify_sector_graph(const std::string& dot_path) {
  cf::sector_graph g = cf::build_sector_graph();
  std::cout << "states=" << g.states().size() << " edges=" << g.edge_count() << "\n";
  if (!dot_path.empty()) cf::write_file(dot_path, g.to_dot());
  auto cycle = cf::find_negative_cycle(g.as_weighted_digraph());
  if (!cycle) {
    std::cout << "no negative cycles\n";
    return 0;
  }
  std::cout << "negative cycle found:";
  for (int state : *cycle) std::cout << " " << state;
  std::cout << "\n";
  return 1;
}

// Compares firing decisions of both runs on the id-mapped vertices over every
// recorded transient plus three further periods.
bool firing_matches(const cf::simulation_result& a, const cf::simulation_result& b,
                    const std::vector<std::pair<int, int>>& vertex_pairs, bool inverted,
                    std::string& mismatch) {
  long long horizon = std::max(a.transient_length(), b.transient_length()) +
                      3 * std::max(a.period(), b.period());
  for (long long t = 0; t < horizon; ++t) {
    for (auto [va, vb] : vertex_pairs) {
      bool want = inverted ? !a.fires(va, t) : a.fires(va, t);
      if (b.fires(vb, t) != want) {
        mismatch = "vertex " + std::to_string(va) + " at t=" + std::to_string(t);
        return false;
      }
    }
  }
  return true;
}

int run_transform(const std::string& path, const std::vector<std::string>& realizer_specs,
                  bool complement_mode, const std::string& prune_spec,
                  const std::string& realize_word, bool check, const std::string& out_path) {
  int modes = (realizer_specs.empty() ? 0 : 1) + (complement_mode ? 1 : 0) +
              (prune_spec.empty() ? 0 : 1) + (realize_word.empty() ? 0 : 1);
  if (modes != 1)
    throw cf::input_error(
        "choose exactly one of --realizer, --complement, --prune, --realize-word");

  std::ostringstream report;
  cf::game transformed;
  std::vector<std::pair<int, int>> vertex_pairs;  // (input id, output id) to co-check
  bool inverted = false;
  cf::game input;

  if (!realize_word.empty()) {
    if (!path.empty()) throw cf::input_error("--realize-word takes no game file");
    cf::cycle_realization made = cf::realize_pfp_on_cycle(cf::bits_from_string(realize_word));
    transformed = made.g;
    report << "# realized " << realize_word << " on a cycle of " << made.g.graph.size()
           << " vertices, witness v" << made.witness << "\n";
    if (check) {
      cf::simulation_result run = cf::simulate(transformed);
      bool ok = run.transient_length() == 0 &&
                run.period() == static_cast<long long>(realize_word.size()) &&
                cf::bits_to_string(cf::pfp_extract(run, made.witness)) == realize_word;
      if (!ok) {
        emit(report.str() + cf::serialize_game(transformed), out_path);
        std::cerr << "check failed: witness pattern does not match\n";
        return 1;
      }
      report << "# check passed: t0=0 period=" << realize_word.size() << " witness exact\n";
    }
    emit(report.str() + cf::serialize_game(transformed), out_path);
    return 0;
  }

  if (path.empty()) throw cf::input_error("a game file is required");
  input = cf::parse_game(cf::read_file(path));

  if (!realizer_specs.empty()) {
    std::map<int, cf::realizer> realizers;
    for (const auto& spec : realizer_specs) {
      auto eq = spec.find('=');
      if (eq == std::string::npos)
        throw cf::input_error("--realizer expects <motor>=<file>: " + spec);
      int motor = static_cast<int>(parse_int(spec.substr(0, eq), "motor id"));
      realizers[motor] = cf::parse_realizer(cf::read_file(spec.substr(eq + 1)));
    }
    cf::conversion_result conversion = cf::motorize_to_ordinary(input, realizers);
    transformed = conversion.converted;
    for (const auto& mc : conversion.motors)
      report << "# motor " << mc.motor << ": chips range [" << mc.min_chips << ","
             << mc.max_chips << "] copies " << mc.copies << "\n";
    report << "# converted: " << transformed.graph.size() << " vertices, "
           << transformed.graph.edge_count() << " edges\n";
    for (int v = 0; v < input.graph.size(); ++v) vertex_pairs.emplace_back(v, v);
  } else if (complement_mode) {
    transformed = cf::complement(input);
    report << "# complemented: chips' = 2*deg - 1 - chips\n";
    for (int v = 0; v < input.graph.size(); ++v) vertex_pairs.emplace_back(v, v);
    inverted = true;
  } else {
    auto parts = split(prune_spec, ':');
    cf::prune_result pruned;
    if (parts.size() == 2 && parts[0] == "leaf") {
      int leaf = static_cast<int>(parse_int(parts[1], "leaf id"));
      pruned = cf::prune_leaf(input, leaf);
      report << "# pruned leaf " << leaf << "\n";
    } else if (parts.size() == 3 && parts[0] == "subtree") {
      int root = static_cast<int>(parse_int(parts[1], "root id"));
      std::vector<int> subtree;
      for (const auto& token : split(parts[2], ','))
        subtree.push_back(static_cast<int>(parse_int(token, "subtree vertex")));
      pruned = cf::prune_treelike(input, root, subtree);
      report << "# pruned subtree of " << subtree.size() << " vertices at root " << root << "\n";
    } else {
      throw cf::input_error("--prune expects leaf:<v> or subtree:<root>:<v1,v2,...>");
    }
    transformed = pruned.pruned;
    report << "# kept (new<-old):";
    for (std::size_t new_id = 0; new_id < pruned.kept.size(); ++new_id) {
      report << " " << new_id << "<-" << pruned.kept[new_id];
      vertex_pairs.emplace_back(pruned.kept[new_id], static_cast<int>(new_id));
    }
    report << "\n";
  }

  if (check) {
    cf::simulation_result before = cf::simulate(input);
    cf::simulation_result after = cf::simulate(transformed);
    std::string mismatch;
    if (!firing_matches(before, after, vertex_pairs, inverted, mismatch)) {
      emit(report.str() + cf::serialize_game(transformed), out_path);
      std::cerr << "check failed: firing contract violated at " << mismatch << "\n";
      return 1;
    }
    report << "# check passed: firing contract holds on all mapped vertices\n";
  }
  emit(report.str() + cf::serialize_game(transformed), out_path);
  return 0;
}

int run_census(const std::string& family, const std::string& range, const std::string& cap,
               bool exhaustive, long long sample, std::uint64_t seed, long long max_steps,
               int threads, const std::string& out_path) {
  cf::census_spec spec;
  spec.family = cf::family_from_string(family);
  auto dots = range.find("..");
  if (dots == std::string::npos) throw cf::input_error("--size-range expects <min>..<max>");
  spec.min_size = static_cast<int>(parse_int(range.substr(0, dots), "size"));
  spec.max_size = static_cast<int>(parse_int(range.substr(dots + 2), "size"));
  spec.cap = cf::chip_cap::parse(cap);
  if (exhaustive == (sample > 0))
    throw cf::input_error("choose exactly one of --exhaustive and --sample");
  spec.exhaustive = exhaustive;
  spec.sample_count = sample;
  spec.seed = seed;
  spec.max_steps = max_steps;
  spec.threads = threads;

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw cf::input_error("cannot create file: " + out_path);
  }
  std::ostream& rows = out_path.empty() ? std::cout : file;
  rows << cf::census_row_tsv_header();
  cf::census_summary summary =
      cf::run_census(spec, [&](const cf::census_row& row) { rows << cf::census_row_to_tsv(row); });
  rows << cf::census_summary_to_text(summary);
  if (!out_path.empty()) std::cout << cf::census_summary_to_text(summary);
  return summary.all_ok() ? 0 : 1;
}

int run_render(const std::string& path, const std::string& format, const std::string& out) {
  cf::game gm = cf::parse_game(cf::read_file(path));
  if (format == "dot") {
    std::string dot = cf::game_to_dot(gm, gm.chips, cf::fire_set(gm, gm.chips, 0));
    emit(dot, out);
    return 0;
  }
  cf::simulation_result result = cf::simulate(gm);
  long long window = result.transient_length() + result.period();
  int width = std::max<int>(2, std::to_string(window - 1).size());
  std::string prefix = out.empty() ? "frame" : out;
  for (long long t = 0; t < window; ++t) {
    std::ostringstream name;
    name << prefix << "_t" << std::setw(width) << std::setfill('0') << t << ".dot";
    cf::write_file(name.str(), cf::game_to_dot(gm, result.positions()[t], result.firing()[t]));
    std::cout << name.str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel chip-firing toolkit"};
  app.require_subcommand(1);

  std::string sim_path, sim_emit = "summary";
  long long sim_max_steps = 1'000'000;
  auto* sim = app.add_subcommand("simulate", "run a game to periodicity and report t0/period");
  sim->add_option("game", sim_path, "game file")->required();
  sim->add_option("--max-steps", sim_max_steps, "step budget before giving up");
  sim->add_option("--emit", sim_emit, "summary, trace, or tsv")
      ->check(CLI::IsMember({"summary", "trace", "tsv"}));

  std::string pat_word, pat_other;
  auto* pat = app.add_subcommand("patterns", "inspect a cyclic binary word");
  pat->add_option("word", pat_word, "binary word")->required();
  pat->add_option("other", pat_other, "second word for pairwise statistics");

  std::string verify_dot;
  auto* verify = app.add_subcommand("verify-sector-graph",
                                    "build the sector-state graph and search negative cycles");
  verify->add_option("--dot", verify_dot, "write the graph as DOT to this path");

  std::string tr_path, tr_prune, tr_word, tr_out;
  std::vector<std::string> tr_realizers;
  bool tr_complement = false, tr_check = false;
  auto* transform = app.add_subcommand("transform", "rewrite a game, preserving firing patterns");
  transform->add_option("game", tr_path, "game file");
  transform->add_option("--realizer", tr_realizers,
                        "<motor>=<file>: replace each motor by realizer copies");
  transform->add_flag("--complement", tr_complement, "invert every firing decision");
  transform->add_option("--prune", tr_prune, "leaf:<v> or subtree:<root>:<v1,v2,...>");
  transform->add_option("--realize-word", tr_word, "build a cycle game firing this word");
  transform->add_flag("--check", tr_check, "co-simulate input and output, verify the contract");
  transform->add_option("--out", tr_out, "write the result here instead of stdout");

  std::string cs_family = "tree", cs_range = "2..5", cs_cap = "2deg-1", cs_out;
  bool cs_exhaustive = false;
  long long cs_sample = 0, cs_max_steps = 1'000'000;
  std::uint64_t cs_seed = 0;
  int cs_threads = 0;
  auto* census = app.add_subcommand("census", "sweep a graph family and check every game");
  census->add_option("--family", cs_family, "path, cycle, star, complete, tree, or connected");
  census->add_option("--size-range", cs_range, "<min>..<max> vertex counts");
  census->add_option("--chip-cap", cs_cap, "per-vertex ceiling: 2deg-1, 3deg, or a constant");
  census->add_flag("--exhaustive", cs_exhaustive, "enumerate every graph and chip vector");
  census->add_option("--sample", cs_sample, "number of random games instead");
  census->add_option("--seed", cs_seed, "sampling seed");
  census->add_option("--max-steps", cs_max_steps, "per-game step budget");
  census->add_option("--threads", cs_threads, "worker threads (0 = hardware)");
  census->add_option("--out", cs_out,
                     "TSV path (columns: family, n, graph, chips_hash, t0, period, activity, "
                     "pfp_hash, verdict); stdout when omitted");

  std::string rd_path, rd_format = "dot", rd_out;
  auto* render = app.add_subcommand("render", "emit DOT figures of a game");
  render->add_option("game", rd_path, "game file")->required();
  render->add_option("--format", rd_format, "dot (initial position) or frames (one per step)")
      ->check(CLI::IsMember({"dot", "frames"}));
  render->add_option("--out", rd_out, "output path (dot) or filename prefix (frames)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sim) return run_simulate(sim_path, sim_max_steps, sim_emit);
    if (*pat) return run_patterns(pat_word, pat_other);
    if (*verify) return run_verify_sector_graph(verify_dot);
    if (*transform)
      return run_transform(tr_path, tr_realizers, tr_complement, tr_prune, tr_word, tr_check,
                           tr_out);
    if (*census)
      return run_census(cs_family, cs_range, cs_cap, cs_exhaustive, cs_sample, cs_seed,
                        cs_max_steps, cs_threads, cs_out);
    if (*render) return run_render(rd_path, rd_format, rd_out);
  } catch (const cf::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cf::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cf::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
