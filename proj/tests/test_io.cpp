#include <doctest.h>

#include <cstdio>

#include "chipfiring/errors.hpp"
#include "chipfiring/text_io.hpp"
#include "helpers.hpp"

using namespace chipfiring;
using namespace chipfiring::testing;

TEST_CASE("graph text round-trips") {
  const graph g = graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const std::string text = serialize_graph(g);
  CHECK(text == "4 4\n0 1\n0 3\n1 2\n2 3\n");
  CHECK(parse_graph(text) == g);
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text =
      "# a square\n"
      "\n"
      "4 4   # n m\n"
      "0 1\n"
      "  \n"
      "0 3\n"
      "1 2  # last two\n"
      "2 3\n";
  CHECK(parse_graph(text) == graph::cycle(4));
}

TEST_CASE("graph parsing rejects each defect distinctly") {
  CHECK_THROWS_WITH_AS(parse_graph(""), "missing graph header line \"n m\"", input_error);
  CHECK_THROWS_WITH_AS(parse_graph("two three\n"), "malformed graph header line: two three",
                       input_error);
  CHECK_THROWS_WITH_AS(parse_graph("2 5\n0 1\n"),
                       "header promises 5 edges, file has fewer lines", input_error);
  CHECK_THROWS_WITH_AS(parse_graph("2 1\n0 x\n"), "malformed edge line: 0 x", input_error);
  CHECK_THROWS_WITH_AS(parse_graph("2 1\n1 0\n"), "edge endpoints must satisfy u < v: 1 0",
                       input_error);
  CHECK_THROWS_WITH_AS(parse_graph("2 1\n0 1\nleftover\n"), "unexpected trailing line: leftover",
                       input_error);
  // structural defects surface through the graph constructor
  CHECK_THROWS_WITH_AS(parse_graph("3 1\n0 1\n"), "graph is disconnected", input_error);
  CHECK_THROWS_WITH_AS(parse_graph("2 2\n0 1\n0 1\n"), "duplicate edge 0 1", input_error);
  CHECK_THROWS_WITH_AS(parse_graph("2 1\n0 5\n"), "edge endpoint out of range: 0 5", input_error);
}

TEST_CASE("game text round-trips, motors included") {
  game gm = make_motor_game(graph::path(3), {4, 0, -2},
                            {{2, sched("11", "100")}, {0, sched("", "1")}});
  const std::string text = serialize_game(gm);
  CHECK(text ==
        "3 2\n0 1\n1 2\n"
        "chips: 4 0 -2\n"
        "motor 0 :1\n"
        "motor 2 11:100\n");
  CHECK(parse_game(text) == gm);

  const game plain = make_game(graph::complete(2), {1, 0});
  CHECK(parse_game(serialize_game(plain)) == plain);
}

TEST_CASE("game parsing rejects each defect distinctly") {
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\n"), "missing chips line", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nships: 1 0\n"),
                       "expected chips line, found: ships: 1 0", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 zero\n"),
                       "malformed chips line: chips: 1 zero", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 0 0\n"),
                       "chips line lists 3 values for 2 vertices", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 0\nmotor 0\n"),
                       "malformed motor line: motor 0", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 0\nmotor 9 :1\n"),
                       "motor vertex out of range: 9", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 0\nmotor 0 :1\nmotor 0 :10\n"),
                       "duplicate motor line for vertex 0", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 0\nmotor 0 10\n"),
                       "expected <transient>:<cycle> in motor line", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 0\nmotor 0 10:\n"),
                       "motor cycle must be nonempty", input_error);
  CHECK_THROWS_WITH_AS(parse_game("2 1\n0 1\nchips: 1 0\nwitness 0\n"),
                       "unexpected trailing line: witness 0", input_error);
  // validation runs on the parsed game: negative chips on a non-motor vertex
  CHECK_THROWS_AS(parse_game("2 1\n0 1\nchips: -1 0\n"), input_error);
}

TEST_CASE("realizer text round-trips") {
  realizer r;
  r.g = make_game(graph::complete(2), {1, 0});
  r.witness = 1;
  r.claims = sched("0", "01");
  const std::string text = serialize_realizer(r);
  CHECK(text ==
        "2 1\n0 1\n"
        "chips: 1 0\n"
        "witness 1\n"
        "claims 0:01\n");
  CHECK(parse_realizer(text) == r);
}

TEST_CASE("realizer parsing rejects each defect distinctly") {
  const std::string game_part = "2 1\n0 1\nchips: 1 0\n";
  CHECK_THROWS_WITH_AS(parse_realizer(game_part), "missing witness line", input_error);
  CHECK_THROWS_WITH_AS(parse_realizer(game_part + "witness x\n"),
                       "malformed witness line: witness x", input_error);
  CHECK_THROWS_WITH_AS(parse_realizer(game_part + "witness 4\n"),
                       "witness vertex out of range: 4", input_error);
  CHECK_THROWS_WITH_AS(parse_realizer(game_part + "witness 0\n"), "missing claims line",
                       input_error);
  CHECK_THROWS_WITH_AS(parse_realizer(game_part + "witness 0\nclaims\n"),
                       "malformed claims line: claims", input_error);
  CHECK_THROWS_WITH_AS(parse_realizer(game_part + "witness 0\nclaims 1\n"),
                       "expected <transient>:<cycle> in claims line", input_error);
  CHECK_THROWS_WITH_AS(parse_realizer(game_part + "witness 0\nclaims :1\nextra\n"),
                       "unexpected trailing line: extra", input_error);
}

TEST_CASE("dot rendering marks firing and motor vertices") {
  game gm = make_motor_game(graph::path(3), {1, 0, 1}, {{1, sched("", "01")}});
  const std::string dot = game_to_dot(gm, gm.chips, bits("101"));
  CHECK(dot.find("graph chip_game {") == 0);
  CHECK(dot.find("v0 [label=\"v0\\n1\" peripheries=2]") != std::string::npos);
  CHECK(dot.find("v1 [label=\"v1\\n0\" style=dashed]") != std::string::npos);
  CHECK(dot.find("v2 [label=\"v2\\n1\" peripheries=2]") != std::string::npos);
  CHECK(dot.find("v0 -- v1;") != std::string::npos);
  CHECK(dot.find("v1 -- v2;") != std::string::npos);

  CHECK_THROWS_WITH_AS(game_to_dot(gm, {1, 0}, bits("10")),
                       "chips/firing length does not match vertex count", input_error);
}

TEST_CASE("file helpers round-trip and report failures") {
  const std::string path = "io_roundtrip.tmp";
  write_file(path, "some\ncontent\n");
  CHECK(read_file(path) == "some\ncontent\n");
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_file("definitely/not/a/file"), input_error);
  CHECK_THROWS_AS(write_file("no_such_dir/file.txt", "x"), input_error);
}
