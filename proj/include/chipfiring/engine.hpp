#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chipfiring/graph.hpp"

namespace chipfiring {

using chip_count = std::int64_t;
using chip_vector = std::vector<chip_count>;
using bit_vector = std::vector<std::uint8_t>;

std::string bits_to_string(const bit_vector& bits);
bit_vector bits_from_string(const std::string& text);  // '0'/'1' only

// Firing schedule of a motor: `transient` is consumed once, then `cycle`
// repeats forever. `cycle` must be nonempty.
struct motor_schedule {
  bit_vector transient;
  bit_vector cycle;

  std::uint8_t bit_at(long long t) const;
  // Schedule state index at time t. Equal phases at two times mean the
  // schedule emits the same bits from those times on.
  long long phase_at(long long t) const;
  bool operator==(const motor_schedule&) const = default;
};

struct game {
  chipfiring::graph graph;
  chip_vector chips;
  std::map<int, motor_schedule> motors;

  bool ordinary() const { return motors.empty(); }
  bool is_motor(int v) const { return motors.count(v) != 0; }
  // Throws input_error on: chip vector length mismatch, negative chips on a
  // non-motor vertex, invalid motor vertex, empty motor cycle.
  void validate() const;
  bool operator==(const game&) const = default;
};

struct simulation_options {
  long long max_steps = 1'000'000;
};

// A completed run: positions and firings for t in [0, t0+p), where t0 is the
// least time whose full state (position plus motor phases) recurs and p the
// least positive recurrence interval.
class simulation_result {
 public:
  simulation_result(game source, long long t0, long long p,
                    std::vector<chip_vector> positions, std::vector<bit_vector> firing);

  const game& source() const { return game_; }
  long long transient_length() const { return t0_; }
  long long period() const { return p_; }

  const std::vector<chip_vector>& positions() const { return positions_; }
  const std::vector<bit_vector>& firing() const { return firing_; }

  // Map any t >= 0 into the stored window, wrapping around the periodic part.
  long long wrap(long long t) const;
  const chip_vector& chips_at(long long t) const;
  bool fires(int v, long long t) const;
  // Chips sent to v by its firing neighbors during step t.
  chip_count received(int v, long long t) const;

 private:
  game game_;
  long long t0_;
  long long p_;
  std::vector<chip_vector> positions_;
  std::vector<bit_vector> firing_;
};

// Fire decision of one vertex: schedule bit for motors, chips >= degree
// otherwise.
bool fires(const game& gm, const chip_vector& position, int v, long long t);

// Fire decisions of every vertex at once.
bit_vector fire_set(const game& gm, const chip_vector& position, long long t);

// One parallel update of the position. Throws internal_error if a non-motor
// vertex holds negative chips (corrupted state).
chip_vector step(const game& gm, const chip_vector& position, long long t);

// Runs the game until its full state recurs; throws budget_error if that does
// not happen within opts.max_steps steps.
simulation_result simulate(const game& gm, const simulation_options& opts = {});

// Firing bits of v over [0, t0+p).
bit_vector firing_sequence(const simulation_result& result, int v);

// The same game restarted at its first periodic time: chips from t0 and motor
// schedules advanced by t0 steps. Simulating the result gives t0 = 0.
game rebase_to_periodic(const simulation_result& result);

}  // namespace chipfiring
