#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chipfiring/engine.hpp"

namespace chipfiring::testing {

inline game make_game(graph g, chip_vector chips) {
  game gm;
  gm.graph = std::move(g);
  gm.chips = std::move(chips);
  return gm;
}

inline motor_schedule sched(const std::string& transient, const std::string& cycle) {
  motor_schedule s;
  s.transient = bits_from_string(transient);
  s.cycle = bits_from_string(cycle);
  return s;
}

inline game make_motor_game(graph g, chip_vector chips,
                            const std::vector<std::pair<int, motor_schedule>>& motors) {
  game gm = make_game(std::move(g), std::move(chips));
  for (const auto& [v, s] : motors) gm.motors[v] = s;
  return gm;
}

inline bit_vector bits(const std::string& text) { return bits_from_string(text); }

}  // namespace chipfiring::testing
