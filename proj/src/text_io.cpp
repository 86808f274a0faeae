#include "chipfiring/text_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "chipfiring/errors.hpp"

namespace chipfiring {

namespace {

// Data lines with comments and blanks stripped.
std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string token;
    if (probe >> token) lines.push_back(line);
  }
  return lines;
}

bool parse_two_ints(const std::string& line, long long& a, long long& b) {
  std::istringstream in(line);
  std::string rest;
  return (in >> a >> b) && !(in >> rest);
}

// Parses the graph section and returns the index of the first line after it.
graph parse_graph_section(const std::vector<std::string>& lines, std::size_t& next) {
  if (lines.empty()) throw input_error("missing graph header line \"n m\"");
  long long n, m;
  if (!parse_two_ints(lines[0], n, m))
    throw input_error("malformed graph header line: " + lines[0]);
  if (n < 1) throw input_error("graph needs at least one vertex");
  if (m < 0 || static_cast<std::size_t>(m) > lines.size() - 1)
    throw input_error("header promises " + std::to_string(m) + " edges, file has fewer lines");
  std::vector<std::pair<int, int>> edges;
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!parse_two_ints(lines[1 + i], u, v))
      throw input_error("malformed edge line: " + lines[1 + i]);
    if (u >= v) throw input_error("edge endpoints must satisfy u < v: " + lines[1 + i]);
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  next = static_cast<std::size_t>(m) + 1;
  return graph::from_edge_list(static_cast<int>(n), edges);
}

motor_schedule parse_schedule(const std::string& token, const std::string& context) {
  auto colon = token.find(':');
  if (colon == std::string::npos)
    throw input_error("expected <transient>:<cycle> in " + context + " line");
  motor_schedule s;
  s.transient = bits_from_string(token.substr(0, colon));
  s.cycle = bits_from_string(token.substr(colon + 1));
  if (s.cycle.empty()) throw input_error(context + " cycle must be nonempty");
  return s;
}

std::string schedule_text(const motor_schedule& s) {
  return bits_to_string(s.transient) + ":" + bits_to_string(s.cycle);
}

// Parses the game section and returns the index of the first line after it.
game parse_game_section(const std::vector<std::string>& lines, std::size_t& next) {
  game gm;
  gm.graph = parse_graph_section(lines, next);
  if (next >= lines.size()) throw input_error("missing chips line");
  std::istringstream chips_in(lines[next]);
  std::string head;
  chips_in >> head;
  if (head != "chips:") throw input_error("expected chips line, found: " + lines[next]);
  chip_count c;
  while (chips_in >> c) gm.chips.push_back(c);
  if (!chips_in.eof()) throw input_error("malformed chips line: " + lines[next]);
  if (static_cast<int>(gm.chips.size()) != gm.graph.size())
    throw input_error("chips line lists " + std::to_string(gm.chips.size()) + " values for " +
                      std::to_string(gm.graph.size()) + " vertices");
  ++next;
  while (next < lines.size()) {
    std::istringstream in(lines[next]);
    std::string word;
    in >> word;
    if (word != "motor") break;
    long long v;
    std::string token, rest;
    if (!(in >> v >> token) || (in >> rest))
      throw input_error("malformed motor line: " + lines[next]);
    if (v < 0 || v >= gm.graph.size())
      throw input_error("motor vertex out of range: " + std::to_string(v));
    if (!gm.motors.emplace(static_cast<int>(v), parse_schedule(token, "motor")).second)
      throw input_error("duplicate motor line for vertex " + std::to_string(v));
    ++next;
  }
  gm.validate();
  return gm;
}

}  // namespace

graph parse_graph(const std::string& text) {
  auto lines = data_lines(text);
  std::size_t next = 0;
  graph g = parse_graph_section(lines, next);
  if (next != lines.size()) throw input_error("unexpected trailing line: " + lines[next]);
  return g;
}

std::string serialize_graph(const graph& g) {
  std::ostringstream out;
  out << g.size() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edge_list()) out << u << " " << v << "\n";
  return out.str();
}

game parse_game(const std::string& text) {
  auto lines = data_lines(text);
  std::size_t next = 0;
  game gm = parse_game_section(lines, next);
  if (next != lines.size()) throw input_error("unexpected trailing line: " + lines[next]);
  return gm;
}

std::string serialize_game(const game& gm) {
  std::ostringstream out;
  out << serialize_graph(gm.graph);
  out << "chips:";
  for (chip_count c : gm.chips) out << " " << c;
  out << "\n";
  for (auto& [v, schedule] : gm.motors)
    out << "motor " << v << " " << schedule_text(schedule) << "\n";
  return out.str();
}

realizer parse_realizer(const std::string& text) {
  auto lines = data_lines(text);
  std::size_t next = 0;
  realizer r;
  r.g = parse_game_section(lines, next);
  if (next >= lines.size()) throw input_error("missing witness line");
  {
    std::istringstream in(lines[next]);
    std::string word, rest;
    long long v;
    if (!(in >> word >> v) || word != "witness" || (in >> rest))
      throw input_error("malformed witness line: " + lines[next]);
    if (v < 0 || v >= r.g.graph.size())
      throw input_error("witness vertex out of range: " + std::to_string(v));
    r.witness = static_cast<int>(v);
  }
  ++next;
  if (next >= lines.size()) throw input_error("missing claims line");
  {
    std::istringstream in(lines[next]);
    std::string word, token, rest;
    if (!(in >> word >> token) || word != "claims" || (in >> rest))
      throw input_error("malformed claims line: " + lines[next]);
    r.claims = parse_schedule(token, "claims");
  }
  ++next;
  if (next != lines.size()) throw input_error("unexpected trailing line: " + lines[next]);
  return r;
}

std::string serialize_realizer(const realizer& r) {
  std::ostringstream out;
  out << serialize_game(r.g);
  out << "witness " << r.witness << "\n";
  out << "claims " << schedule_text(r.claims) << "\n";
  return out.str();
}

std::string game_to_dot(const game& gm, const chip_vector& chips, const bit_vector& firing) {
  if (static_cast<int>(chips.size()) != gm.graph.size() || firing.size() != chips.size())
    throw input_error("chips/firing length does not match vertex count");
  std::ostringstream out;
  out << "graph chip_game {\n  node [shape=circle];\n";
  for (int v = 0; v < gm.graph.size(); ++v) {
    out << "  v" << v << " [label=\"v" << v << "\\n" << chips[v] << "\"";
    if (firing[v]) out << " peripheries=2";
    if (gm.is_motor(v)) out << " style=dashed";
    out << "];\n";
  }
  for (auto [u, v] : gm.graph.edge_list()) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot create file: " + path);
  out << content;
  if (!out.flush()) throw input_error("failed writing file: " + path);
}

}  // namespace chipfiring
