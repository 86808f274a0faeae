#include <doctest.h>

#include <random>

#include "chipfiring/errors.hpp"
#include "chipfiring/patterns.hpp"
#include "chipfiring/transforms.hpp"
#include "helpers.hpp"

using namespace chipfiring;
using namespace chipfiring::testing;

namespace {

realizer make_realizer(game g, int witness, const motor_schedule& claims) {
  realizer r;
  r.g = std::move(g);
  r.witness = witness;
  r.claims = claims;
  return r;
}

// firing equality of mapped vertices over a shared horizon
void check_cosimulation(const game& original, const game& converted,
                        const std::vector<int>& vertex_map, long long horizon) {
  const auto a = simulate(original);
  const auto b = simulate(converted);
  for (std::size_t v = 0; v < vertex_map.size(); ++v) {
    for (long long t = 0; t < horizon; ++t) {
      REQUIRE(a.fires(static_cast<int>(v), t) == b.fires(vertex_map[v], t));
    }
  }
}

}  // namespace

TEST_CASE("schedules_equal compares emitted bits, not representations") {
  CHECK(schedules_equal(sched("", "10"), sched("10", "10")));
  CHECK(schedules_equal(sched("", "1010"), sched("", "10")));
  CHECK_FALSE(schedules_equal(sched("", "10"), sched("", "01")));
  CHECK_FALSE(schedules_equal(sched("0", "10"), sched("", "10")));
}

TEST_CASE("motorize replaces a two-phase motor by two realizer copies") {
  game motorized = make_motor_game(graph::complete(2), {0, 0}, {{0, sched("", "10")}});
  const realizer r =
      make_realizer(make_game(graph::complete(2), {1, 0}), 0, sched("", "10"));

  const conversion_result conv = motorize_to_ordinary(motorized, {{0, r}});

  REQUIRE(conv.motors.size() == 1);
  const motor_conversion& mc = conv.motors[0];
  CHECK(mc.motor == 0);
  CHECK(mc.min_chips == -1);
  CHECK(mc.max_chips == 0);
  CHECK(mc.copies == 2);
  REQUIRE(mc.copy_vertices.size() == 2);
  CHECK(mc.copy_vertices[0] == std::vector<int>{0, 2});
  CHECK(mc.copy_vertices[1] == std::vector<int>{0, 3});

  const game& h = conv.converted;
  CHECK(h.ordinary());
  CHECK(h.graph.size() == 4);
  CHECK(h.graph.edge_count() == 3);
  CHECK(h.chips == chip_vector{4, 0, 0, 0});
  // original vertices keep their degrees toward each other
  CHECK(h.graph.has_edge(0, 1));
  CHECK(h.graph.has_edge(0, 2));
  CHECK(h.graph.has_edge(0, 3));
  CHECK_FALSE(h.graph.has_edge(1, 2));

  check_cosimulation(motorized, h, {0, 1}, 3 * 2);
}

TEST_CASE("motorize with a constant motor needs a single copy") {
  game motorized = make_motor_game(graph::complete(2), {0, 1}, {{0, sched("", "1")}});
  const realizer r = make_realizer(make_game(graph::complete(2), {1, 1}), 0, sched("", "1"));

  const conversion_result conv = motorize_to_ordinary(motorized, {{0, r}});
  CHECK(conv.motors[0].copies == 1);
  CHECK(conv.converted.graph.size() == 3);
  CHECK(conv.converted.chips == chip_vector{2, 1, 1});
  check_cosimulation(motorized, conv.converted, {0, 1}, 5);
}

TEST_CASE("motorize rejects bad inputs with specific messages") {
  const realizer r =
      make_realizer(make_game(graph::complete(2), {1, 0}), 0, sched("", "10"));

  SUBCASE("ordinary game") {
    CHECK_THROWS_WITH_AS(motorize_to_ordinary(make_game(graph::complete(2), {1, 0}), {}),
                         "game has no motors to convert", input_error);
  }
  SUBCASE("missing realizer") {
    game motorized = make_motor_game(graph::complete(2), {0, 0}, {{0, sched("", "10")}});
    CHECK_THROWS_WITH_AS(motorize_to_ordinary(motorized, {}), "no realizer for motor 0",
                         input_error);
  }
  SUBCASE("realizer aimed at a non-motor") {
    game motorized = make_motor_game(graph::complete(2), {0, 0}, {{0, sched("", "10")}});
    CHECK_THROWS_WITH_AS(motorize_to_ordinary(motorized, {{0, r}, {1, r}}),
                         "realizer supplied for non-motor vertex 1", input_error);
  }
  SUBCASE("non-periodic start") {
    game drifting = make_motor_game(graph::complete(2), {0, 5}, {{0, sched("110", "10")}});
    CHECK_THROWS_AS(motorize_to_ordinary(drifting, {{0, r}}), input_error);
  }
  SUBCASE("witness does not fire its claim") {
    game motorized = make_motor_game(graph::complete(2), {0, 0}, {{0, sched("", "10")}});
    const realizer lying =
        make_realizer(make_game(graph::complete(2), {1, 0}), 0, sched("", "01"));
    CHECK_THROWS_WITH_AS(motorize_to_ordinary(motorized, {{0, lying}}),
                         "realizer witness does not fire its claimed schedule (motor 0)",
                         input_error);
  }
  SUBCASE("claim disagrees with the motor") {
    game motorized = make_motor_game(graph::complete(2), {0, 0}, {{0, sched("", "10")}});
    const realizer offbeat =
        make_realizer(make_game(graph::complete(2), {1, 0}), 1, sched("", "01"));
    CHECK_THROWS_WITH_AS(motorize_to_ordinary(motorized, {{0, offbeat}}),
                         "realizer schedule differs from the schedule of motor 0", input_error);
  }
}

TEST_CASE("complement flips every firing decision") {
  const game k2 = make_game(graph::complete(2), {1, 0});
  CHECK(complement(k2).chips == chip_vector{0, 1});

  const game p3 = make_game(graph::path(3), {1, 0, 1});
  const game flipped = complement(p3);
  CHECK(flipped.chips == chip_vector{0, 3, 0});
  CHECK(complement(flipped) == p3);

  const auto before = simulate(p3);
  const auto after = simulate(flipped);
  REQUIRE(before.period() == after.period());
  for (int v = 0; v < 3; ++v) {
    for (long long t = 0; t < before.period(); ++t) {
      CHECK(before.fires(v, t) != after.fires(v, t));
    }
  }
}

TEST_CASE("complement turns all-fire into all-wait") {
  const game busy = make_game(graph::path(3), {1, 2, 1});
  const auto busy_run = simulate(busy);
  CHECK(busy_run.period() == 1);
  CHECK(busy_run.fires(1, 0));

  const game idle = complement(busy);
  CHECK(idle.chips == chip_vector{0, 1, 0});
  const auto idle_run = simulate(idle);
  CHECK(idle_run.period() == 1);
  for (int v = 0; v < 3; ++v) CHECK_FALSE(idle_run.fires(v, 0));
}

TEST_CASE("complement rejects saturated and non-periodic games") {
  // (2,1) is periodic but vertex 0 exceeds 2*deg-1 = 1
  CHECK_THROWS_AS(complement(make_game(graph::complete(2), {2, 1})), input_error);
  // (2,0,0,0) only becomes periodic after one step
  CHECK_THROWS_AS(complement(make_game(graph::cycle(4), {2, 0, 0, 0})), input_error);
  game motorized = make_motor_game(graph::complete(2), {0, 1}, {{0, sched("", "1")}});
  CHECK_THROWS_AS(complement(motorized), input_error);
}

TEST_CASE("prune_leaf drops an alternating leaf") {
  const auto pruned = prune_leaf(make_game(graph::path(3), {1, 0, 1}), 2);
  CHECK(pruned.kept == std::vector<int>{0, 1});
  CHECK(pruned.pruned.graph == graph::complete(2));
  CHECK(pruned.pruned.chips == chip_vector{1, 0});

  // surviving vertices keep their firing words
  const auto before = simulate(make_game(graph::path(3), {1, 0, 1}));
  const auto after = simulate(pruned.pruned);
  REQUIRE(before.period() == after.period());
  for (long long t = 0; t < 2 * before.period(); ++t) {
    CHECK(before.fires(0, t) == after.fires(0, t));
    CHECK(before.fires(1, t) == after.fires(1, t));
  }
}

TEST_CASE("prune_leaf handles the chip-hoarding leaf through the dual mode") {
  const auto pruned = prune_leaf(make_game(graph::path(3), {0, 3, 0}), 2);
  CHECK(pruned.pruned.chips == chip_vector{0, 1});
  const auto before = simulate(make_game(graph::path(3), {0, 3, 0}));
  const auto after = simulate(pruned.pruned);
  for (long long t = 0; t < 4; ++t) {
    CHECK(before.fires(0, t) == after.fires(0, t));
    CHECK(before.fires(1, t) == after.fires(1, t));
  }
}

TEST_CASE("prune_leaf keeps the all-fire fixed point untouched") {
  const game busy = make_game(graph::star(4), {3, 1, 1, 1});
  REQUIRE(simulate(busy).period() == 1);
  const auto pruned = prune_leaf(busy, 3);
  CHECK(pruned.pruned.chips == chip_vector{3, 1, 1});
  CHECK(simulate(pruned.pruned).fires(0, 0));
}

TEST_CASE("prune_leaf rejects games outside its contract") {
  SUBCASE("frozen game would need negative chips") {
    CHECK_THROWS_AS(prune_leaf(make_game(graph::path(3), {0, 0, 0}), 2), input_error);
  }
  SUBCASE("threshold collision in both modes") {
    CHECK_THROWS_WITH_AS(
        prune_leaf(make_game(graph::path(4), {0, 2, 2, 0}), 3),
        "the leaf's pattern collides with vertex 2's firing threshold; pruning cannot "
        "preserve every pattern",
        input_error);
  }
  SUBCASE("not a leaf") {
    CHECK_THROWS_AS(prune_leaf(make_game(graph::path(3), {1, 0, 1}), 1), input_error);
  }
  SUBCASE("result too small") {
    CHECK_THROWS_AS(prune_leaf(make_game(graph::complete(2), {1, 0}), 1), input_error);
  }
  SUBCASE("non-periodic start") {
    CHECK_THROWS_AS(prune_leaf(make_game(graph::path(3), {2, 0, 0}), 2), input_error);
  }
  SUBCASE("motorized game") {
    game motorized = make_motor_game(graph::path(3), {0, 1, 0}, {{0, sched("", "1")}});
    CHECK_THROWS_AS(prune_leaf(motorized, 2), input_error);
  }
}

TEST_CASE("prune_treelike matches iterated single-leaf pruning") {
  const game gm = make_game(graph::path(5), {0, 2, 0, 2, 0});
  REQUIRE(simulate(gm).period() == 2);

  const prune_result once = prune_leaf(gm, 4);
  const prune_result twice = prune_leaf(once.pruned, 3);
  const prune_result whole = prune_treelike(gm, 2, {3, 4});

  CHECK(whole.pruned == twice.pruned);
  CHECK(whole.kept == std::vector<int>{0, 1, 2});
  CHECK(whole.pruned.chips == chip_vector{0, 2, 0});
}

TEST_CASE("prune_treelike removes a pendant path from a triangle") {
  const graph g = graph::from_edge_list(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {3, 4}});
  const game gm = make_game(g, {3, 1, 0, 1, 0});
  const auto run = simulate(gm);
  REQUIRE(run.transient_length() == 0);
  REQUIRE(run.period() == 3);

  const prune_result pruned = prune_treelike(gm, 0, {3, 4});
  CHECK(pruned.kept == std::vector<int>{0, 1, 2});
  CHECK(pruned.pruned.graph == graph::cycle(3));
  CHECK(pruned.pruned.chips == chip_vector{2, 1, 0});

  const auto after = simulate(pruned.pruned);
  for (long long t = 0; t < 6; ++t) {
    for (int v = 0; v < 3; ++v) CHECK(run.fires(v, t) == after.fires(v, t));
  }
}

TEST_CASE("validate_treelike rejects malformed subtrees") {
  const graph cycle4 = graph::cycle(4);
  CHECK_THROWS_WITH_AS(validate_treelike(cycle4, 0, {0, 1}),
                       "root cannot be part of the removed subtree", input_error);
  CHECK_THROWS_WITH_AS(validate_treelike(cycle4, 0, {1, 1}), "duplicate subtree vertex 1",
                       input_error);
  CHECK_THROWS_WITH_AS(validate_treelike(graph::path(3), 1, {0, 2}),
                       "pruning would leave fewer than two vertices", input_error);
  CHECK_THROWS_WITH_AS(validate_treelike(cycle4, 0, {1}),
                       "subtree has an edge leaving it at vertex 1 that does not reach the root",
                       input_error);

  // two edges into the root
  const graph kite = graph::from_edge_list(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  CHECK_THROWS_WITH_AS(validate_treelike(kite, 0, {1, 2}),
                       "subtree must meet the root through exactly one edge, found 2",
                       input_error);

  // pendant triangle is not a tree
  const graph looped =
      graph::from_edge_list(5, {{0, 4}, {0, 1}, {1, 2}, {2, 3}, {1, 3}});
  CHECK_THROWS_WITH_AS(validate_treelike(looped, 0, {1, 2, 3}), "subtree is not a tree",
                       input_error);

  CHECK_NOTHROW(validate_treelike(graph::path(5), 2, {3, 4}));
}

TEST_CASE("realize builds the canonical rotor for 100") {
  const cycle_realization made = realize_pfp_on_cycle(bits("100"));
  CHECK(made.g.graph == graph::cycle(3));
  CHECK(made.g.chips == chip_vector{2, 1, 0});
  CHECK(made.witness == 0);

  const auto run = simulate(made.g);
  CHECK(run.transient_length() == 0);
  CHECK(run.period() == 3);
  CHECK(pfp_extract(run, 0) == bits("100"));
}

TEST_CASE("realized games start periodic and rotate the word") {
  for (const char* text : {"110", "1011", "11010", "101011", "1101011", "10110110"}) {
    const bit_vector word = bits(text);
    const int n = static_cast<int>(word.size());
    const cycle_realization made = realize_pfp_on_cycle(word);
    const auto run = simulate(made.g);
    REQUIRE(run.transient_length() == 0);
    REQUIRE(run.period() == n);
    CHECK(pfp_extract(run, made.witness) == word);
    for (int v = 0; v < n; ++v) {
      // every vertex fires some rotation of the word
      const bit_vector seen = pfp_extract(run, v);
      bool rotation = false;
      for (int shift = 0; shift < n && !rotation; ++shift) {
        bool all = true;
        for (int i = 0; i < n; ++i) all = all && seen[i] == word[(i + shift) % n];
        rotation = all;
      }
      CHECK(rotation);
    }
  }
}

TEST_CASE("realize rejects unusable words") {
  CHECK_THROWS_WITH_AS(realize_pfp_on_cycle(bits("1010")),
                       "pattern repeats a shorter word (period 2)", input_error);
  CHECK_THROWS_WITH_AS(realize_pfp_on_cycle(bits("110100")),
                       "clumpy patterns are not realizable", input_error);
  CHECK_THROWS_WITH_AS(realize_pfp_on_cycle(bits("10")),
                       "realizable patterns need length at least 3", input_error);
  CHECK_THROWS_AS(realize_pfp_on_cycle(bits("111")), input_error);  // repeats "1"
  CHECK_THROWS_AS(realize_pfp_on_cycle(bits("1011010110110")), input_error);  // length 13
}
