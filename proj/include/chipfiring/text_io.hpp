#pragma once

#include <string>

#include "chipfiring/engine.hpp"
#include "chipfiring/transforms.hpp"

namespace chipfiring {

// Edge-list format: '#' comment lines anywhere, first data line "n m", then m
// lines "u v" with 0 <= u < v < n.
graph parse_graph(const std::string& text);
std::string serialize_graph(const graph& g);

// Game format: the graph section, one "chips: c_0 ... c_{n-1}" line, then any
// number of "motor <v> <transient>:<cycle>" lines (the transient may be
// empty, the cycle may not).
game parse_game(const std::string& text);
std::string serialize_game(const game& gm);

// Realizer format: the game section, then "witness <u>" and
// "claims <transient>:<cycle>" lines.
realizer parse_realizer(const std::string& text);
std::string serialize_realizer(const realizer& r);

// Graphviz rendering of one position; firing vertices are doubly circled.
std::string game_to_dot(const game& gm, const chip_vector& chips, const bit_vector& firing);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace chipfiring
