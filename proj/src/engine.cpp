#include "chipfiring/engine.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "chipfiring/errors.hpp"

namespace chipfiring {

std::string bits_to_string(const bit_vector& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

bit_vector bits_from_string(const std::string& text) {
  bit_vector out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw input_error(std::string("non-binary character '") + c + "'");
    out.push_back(c == '1');
  }
  return out;
}

std::uint8_t motor_schedule::bit_at(long long t) const {
  if (t < static_cast<long long>(transient.size())) return transient[t];
  long long i = (t - static_cast<long long>(transient.size())) %
                static_cast<long long>(cycle.size());
  return cycle[i];
}

long long motor_schedule::phase_at(long long t) const {
  long long len = static_cast<long long>(transient.size());
  if (t < len) return t;
  return len + (t - len) % static_cast<long long>(cycle.size());
}

void game::validate() const {
  if (static_cast<int>(chips.size()) != graph.size())
    throw input_error("chip vector length does not match vertex count");
  for (auto& [v, schedule] : motors) {
    if (v < 0 || v >= graph.size())
      throw input_error("motor vertex out of range: " + std::to_string(v));
    if (schedule.cycle.empty())
      throw input_error("motor cycle must be nonempty (vertex " + std::to_string(v) + ")");
  }
  for (int v = 0; v < graph.size(); ++v)
    if (chips[v] < 0 && !is_motor(v))
      throw input_error("negative chips on non-motor vertex " + std::to_string(v));
}

bool fires(const game& gm, const chip_vector& position, int v, long long t) {
  auto it = gm.motors.find(v);
  if (it != gm.motors.end()) return it->second.bit_at(t) != 0;
  return position[v] >= gm.graph.degree(v);
}

bit_vector fire_set(const game& gm, const chip_vector& position, long long t) {
  bit_vector f(gm.graph.size());
  for (int v = 0; v < gm.graph.size(); ++v) f[v] = fires(gm, position, v, t);
  return f;
}

namespace {

chip_vector apply_firing(const game& gm, const chip_vector& position, const bit_vector& f) {
  chip_vector next = position;
  for (int v = 0; v < gm.graph.size(); ++v) {
    if (f[v]) next[v] -= gm.graph.degree(v);
    for (int w : gm.graph.neighbors(v))
      if (f[w]) ++next[v];
  }
  return next;
}

std::uint64_t hash_position(const chip_vector& position) {
  std::uint64_t h = 1469598103934665603ull;
  for (chip_count c : position) {
    auto u = static_cast<std::uint64_t>(c);
    for (int shift = 0; shift < 64; shift += 8) {
      h ^= (u >> shift) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

bool phases_equal(const game& gm, long long t1, long long t2) {
  for (auto& [v, schedule] : gm.motors)
    if (schedule.phase_at(t1) != schedule.phase_at(t2)) return false;
  return true;
}

}  // namespace

chip_vector step(const game& gm, const chip_vector& position, long long t) {
  if (static_cast<int>(position.size()) != gm.graph.size())
    throw input_error("position length does not match vertex count");
  for (int v = 0; v < gm.graph.size(); ++v)
    if (position[v] < 0 && !gm.is_motor(v))
      throw internal_error("state corruption: negative chips on non-motor vertex " +
                           std::to_string(v));
  return apply_firing(gm, position, fire_set(gm, position, t));
}

simulation_result simulate(const game& gm, const simulation_options& opts) {
  gm.validate();
  if (opts.max_steps < 1) throw input_error("max_steps must be at least 1");

  std::vector<chip_vector> positions;
  std::vector<bit_vector> firing;
  std::unordered_map<std::uint64_t, std::vector<long long>> seen;
  chip_vector pos = gm.chips;

  for (long long t = 0;; ++t) {
    auto& bucket = seen[hash_position(pos)];
    for (long long earlier : bucket) {
      if (positions[earlier] == pos && phases_equal(gm, earlier, t)) {
        return simulation_result(gm, earlier, t - earlier, std::move(positions),
                                 std::move(firing));
      }
    }
    if (t >= opts.max_steps)
      throw budget_error("no state recurrence within " + std::to_string(opts.max_steps) +
                             " steps",
                         opts.max_steps);
    bucket.push_back(t);
    positions.push_back(pos);
    bit_vector f = fire_set(gm, pos, t);
    pos = apply_firing(gm, pos, f);
    firing.push_back(std::move(f));
  }
}

simulation_result::simulation_result(game source, long long t0, long long p,
                                     std::vector<chip_vector> positions,
                                     std::vector<bit_vector> firing)
    : game_(std::move(source)),
      t0_(t0),
      p_(p),
      positions_(std::move(positions)),
      firing_(std::move(firing)) {
  if (p_ < 1 || t0_ < 0 || static_cast<long long>(positions_.size()) != t0_ + p_ ||
      firing_.size() != positions_.size())
    throw internal_error("inconsistent simulation record");
}

long long simulation_result::wrap(long long t) const {
  if (t < 0) throw input_error("negative time");
  if (t < t0_ + p_) return t;
  return t0_ + (t - t0_) % p_;
}

const chip_vector& simulation_result::chips_at(long long t) const {
  return positions_[wrap(t)];
}

bool simulation_result::fires(int v, long long t) const {
  return firing_[wrap(t)][v] != 0;
}

chip_count simulation_result::received(int v, long long t) const {
  const bit_vector& f = firing_[wrap(t)];
  chip_count total = 0;
  for (int w : game_.graph.neighbors(v)) total += f[w];
  return total;
}

bit_vector firing_sequence(const simulation_result& result, int v) {
  if (v < 0 || v >= result.source().graph.size())
    throw input_error("vertex id out of range: " + std::to_string(v));
  bit_vector out;
  out.reserve(result.firing().size());
  for (auto& f : result.firing()) out.push_back(f[v]);
  return out;
}

game rebase_to_periodic(const simulation_result& result) {
  game rebased = result.source();
  rebased.chips = result.chips_at(result.transient_length());
  long long t0 = result.transient_length();
  for (auto& [v, schedule] : rebased.motors) {
    long long len = static_cast<long long>(schedule.transient.size());
    if (t0 < len) {
      schedule.transient.erase(schedule.transient.begin(), schedule.transient.begin() + t0);
    } else {
      schedule.transient.clear();
      long long shift = (t0 - len) % static_cast<long long>(schedule.cycle.size());
      std::rotate(schedule.cycle.begin(), schedule.cycle.begin() + shift, schedule.cycle.end());
    }
  }
  return rebased;
}

}  // namespace chipfiring
