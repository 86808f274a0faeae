#include <doctest.h>

#include <numeric>

#include "chipfiring/engine.hpp"
#include "chipfiring/errors.hpp"
#include "helpers.hpp"

using namespace chipfiring;
using namespace chipfiring::testing;

TEST_CASE("bit string conversions") {
  CHECK(bits_to_string({1, 0, 0, 1}) == "1001");
  CHECK(bits_from_string("0110") == bit_vector{0, 1, 1, 0});
  CHECK(bits_from_string("").empty());
  CHECK_THROWS_AS(bits_from_string("10x"), input_error);
}

TEST_CASE("motor schedule bit_at and phase_at") {
  const motor_schedule s = sched("", "10000");
  CHECK(s.bit_at(0) == 1);
  CHECK(s.bit_at(3) == 0);
  CHECK(s.bit_at(5) == 1);
  CHECK(s.phase_at(2) == s.phase_at(7));
  CHECK(s.phase_at(0) != s.phase_at(1));

  const motor_schedule t = sched("110", "10");
  CHECK(t.bit_at(0) == 1);
  CHECK(t.bit_at(2) == 0);
  CHECK(t.bit_at(3) == 1);  // first cycle bit
  CHECK(t.bit_at(6) == 0);
  CHECK(t.phase_at(1) != t.phase_at(3));  // transient position vs cycle position
  CHECK(t.phase_at(3) == t.phase_at(5));
}

TEST_CASE("game validation rejects each defect") {
  game gm = make_game(graph::path(3), {1, 0, 1});
  CHECK_NOTHROW(gm.validate());

  game short_chips = gm;
  short_chips.chips = {1, 0};
  CHECK_THROWS_AS(short_chips.validate(), input_error);

  game negative = gm;
  negative.chips = {1, -1, 1};
  CHECK_THROWS_AS(negative.validate(), input_error);

  game negative_motor = gm;
  negative_motor.chips = {1, -1, 1};
  negative_motor.motors[1] = sched("", "10");
  CHECK_NOTHROW(negative_motor.validate());  // motors may hold negative chips

  game bad_vertex = gm;
  bad_vertex.motors[7] = sched("", "1");
  CHECK_THROWS_AS(bad_vertex.validate(), input_error);

  game empty_cycle = gm;
  empty_cycle.motors[0] = sched("10", "");
  CHECK_THROWS_AS(empty_cycle.validate(), input_error);
}

TEST_CASE("three-vertex path reaches its two-cycle immediately") {
  const game gm = make_game(graph::path(3), {1, 0, 1});
  const auto r = simulate(gm);
  CHECK(r.transient_length() == 0);
  CHECK(r.period() == 2);
  REQUIRE(r.positions().size() == 2);
  CHECK(r.positions()[0] == chip_vector{1, 0, 1});
  CHECK(r.positions()[1] == chip_vector{0, 2, 0});
  CHECK(bits_to_string(firing_sequence(r, 0)) == "10");
  CHECK(bits_to_string(firing_sequence(r, 1)) == "01");
  CHECK(bits_to_string(firing_sequence(r, 2)) == "10");
}

TEST_CASE("three-cycle rotates a single firing") {
  const game gm = make_game(graph::cycle(3), {2, 1, 0});
  const auto r = simulate(gm);
  CHECK(r.transient_length() == 0);
  CHECK(r.period() == 3);
  CHECK(bits_to_string(firing_sequence(r, 0)) == "100");
  CHECK(bits_to_string(firing_sequence(r, 1)) == "010");
  CHECK(bits_to_string(firing_sequence(r, 2)) == "001");
}

TEST_CASE("four-cycle settles into a fixed point after one step") {
  const game gm = make_game(graph::cycle(4), {2, 0, 0, 0});
  const auto r = simulate(gm);
  CHECK(r.transient_length() == 1);
  CHECK(r.period() == 1);
  CHECK(r.chips_at(1) == chip_vector{0, 1, 0, 1});

  const game rebased = rebase_to_periodic(r);
  CHECK(rebased.chips == chip_vector{0, 1, 0, 1});
  const auto r2 = simulate(rebased);
  CHECK(r2.transient_length() == 0);
  CHECK(r2.period() == 1);
}

TEST_CASE("two vertices trading a chip") {
  const auto r = simulate(make_game(graph::complete(2), {1, 0}));
  CHECK(r.transient_length() == 0);
  CHECK(r.period() == 2);
  CHECK(bits_to_string(firing_sequence(r, 0)) == "10");
  CHECK(bits_to_string(firing_sequence(r, 1)) == "01");

  const auto all = simulate(make_game(graph::complete(2), {1, 1}));
  CHECK(all.period() == 1);
  CHECK(bits_to_string(firing_sequence(all, 0)) == "1");
}

TEST_CASE("wrap maps any time into the recorded window") {
  const auto r = simulate(make_game(graph::cycle(4), {2, 0, 0, 0}));  // t0=1 p=1
  CHECK(r.wrap(0) == 0);
  CHECK(r.wrap(1) == 1);
  CHECK(r.wrap(17) == 1);
  CHECK(r.chips_at(1000) == r.chips_at(1));
  CHECK_THROWS_AS(r.wrap(-1), input_error);

  const auto s = simulate(make_game(graph::cycle(3), {2, 1, 0}));  // t0=0 p=3
  for (long long t = 0; t < 12; ++t) CHECK(s.fires(0, t) == (t % 3 == 0));
}

TEST_CASE("free functions agree with the recorded run") {
  const game gm = make_game(graph::path(3), {1, 0, 1});
  const auto r = simulate(gm);
  chip_vector pos = gm.chips;
  for (long long t = 0; t < 6; ++t) {
    const bit_vector expected = fire_set(gm, pos, t);
    for (int v = 0; v < 3; ++v) {
      CHECK(fires(gm, pos, v, t) == static_cast<bool>(expected[v]));
      CHECK(static_cast<bool>(expected[v]) == r.fires(v, t));
    }
    pos = step(gm, pos, t);
    CHECK(pos == r.chips_at(t + 1));
  }
}

TEST_CASE("received counts the chips arriving from firing neighbors") {
  const auto r = simulate(make_game(graph::path(3), {1, 0, 1}));
  // at t=0 both endpoints fire, so the middle receives two chips
  CHECK(r.received(1, 0) == 2);
  CHECK(r.received(0, 0) == 0);
  // at t=1 the middle fires and sends one chip each way
  CHECK(r.received(0, 1) == 1);
  CHECK(r.received(2, 1) == 1);
}

TEST_CASE("motor drives a star with one step of delay") {
  game gm = make_motor_game(graph::star(4), {0, 0, 0, 0}, {{0, sched("", "100")}});
  const auto r = simulate(gm);
  CHECK(r.transient_length() == 0);
  CHECK(r.period() == 3);
  CHECK(bits_to_string(firing_sequence(r, 1)) == "010");
  CHECK(bits_to_string(firing_sequence(r, 2)) == "010");
}

TEST_CASE("motors may drive their own chips negative") {
  game gm = make_motor_game(graph::complete(2), {0, 0}, {{0, sched("", "1")}});
  const auto r = simulate(gm);
  CHECK(r.transient_length() == 1);
  CHECK(r.period() == 1);
  CHECK(r.chips_at(1) == chip_vector{-1, 1});
}

TEST_CASE("periodicity requires motor phases to match, not just chips") {
  // chips recur every step but the schedule phase distinguishes times
  game gm = make_motor_game(graph::complete(2), {0, 5}, {{0, sched("110", "10")}});
  const auto r = simulate(gm);
  CHECK(r.transient_length() == 10);
  CHECK(r.period() == 2);

  const game rebased = rebase_to_periodic(r);
  CHECK(rebased.motors.at(0).transient.empty());
  CHECK(bits_to_string(rebased.motors.at(0).cycle) == "01");
  CHECK(rebased.chips == chip_vector{4, 1});
  const auto r2 = simulate(rebased);
  CHECK(r2.transient_length() == 0);
  CHECK(r2.period() == 2);
}

TEST_CASE("incompatible motor rates never recur and exhaust the budget") {
  game gm = make_motor_game(graph::path(3), {0, 0, 0},
                            {{0, sched("", "10")}, {2, sched("", "100")}});
  simulation_options opts;
  opts.max_steps = 500;
  try {
    simulate(gm, opts);
    FAIL("expected budget_error");
  } catch (const budget_error& e) {
    CHECK(e.steps_taken() == 500);
  }
}

TEST_CASE("chip total is conserved in ordinary games") {
  const game gm = make_game(graph::from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}}),
                            {3, 1, 4, 0, 2});
  const auto r = simulate(gm);
  const chip_count total = std::accumulate(gm.chips.begin(), gm.chips.end(), chip_count{0});
  for (const auto& pos : r.positions()) {
    CHECK(std::accumulate(pos.begin(), pos.end(), chip_count{0}) == total);
  }
}

TEST_CASE("every vertex fires equally often over one period") {
  const game gm = make_game(graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}),
                            {2, 2, 1, 0});
  const auto r = simulate(gm);
  const long long t0 = r.transient_length(), p = r.period();
  long long first = -1;
  for (int v = 0; v < gm.graph.size(); ++v) {
    long long count = 0;
    for (long long t = t0; t < t0 + p; ++t) count += r.fires(v, t);
    if (first < 0) first = count;
    CHECK(count == first);
  }
}

TEST_CASE("step rejects corrupted positions") {
  const game gm = make_game(graph::path(3), {1, 0, 1});
  CHECK_THROWS_AS(step(gm, {1, -2, 1}, 0), internal_error);
}
