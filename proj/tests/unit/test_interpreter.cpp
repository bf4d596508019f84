#include <doctest.h>

#include <array>

#include "causim/interpreter.hpp"
#include "generators.hpp"

using namespace causim;

TEST_CASE("clamp_of reads literal polarities") {
  ClampSet c1 = clamp_of(InterventionSpec({pos(1), neg(2)}));
  CHECK(c1.value(1) == true);
  CHECK(c1.value(2) == false);
  CHECK_FALSE(c1.clamped(3));

  CHECK(clamp_of(InterventionSpec()).empty());

  ClampSet c2 = clamp_of(InterventionSpec({neg(5)}));
  CHECK(c2.entries().size() == 1);
  CHECK(c2.value(5) == false);
}

TEST_CASE("execute basics") {
  SUBCASE("single assignment") {
    auto s = execute(parse_program("X1 := 1"), Tape(), ClampSet());
    CHECK(s.halting_outputs == std::set<Tape>{Tape::from_ones({1})});
    CHECK_FALSE(s.diverges);
    CHECK(s.paths_explored == 1);
  }
  SUBCASE("writes to clamped variables are discarded") {
    ClampSet c;
    c.set(1, false);
    auto s = execute(parse_program("X1 := 1"), Tape(), c);
    CHECK(s.halting_outputs == std::set<Tape>{Tape()});
    CHECK_FALSE(s.diverges);
  }
  SUBCASE("choose forks; loop marks divergence and yields no output") {
    auto s = execute(parse_program("choose X2 := 1 or loop end"), Tape(), ClampSet());
    CHECK(s.halting_outputs == std::set<Tape>{Tape::from_ones({2})});
    CHECK(s.diverges);
    CHECK(s.paths_explored == 2);
  }
  SUBCASE("clamped reads see the clamp value before any write") {
    ClampSet c;
    c.set(1, true);
    auto s = execute(parse_program("X2 := X1"), Tape(), c);
    CHECK(s.halting_outputs == std::set<Tape>{Tape::from_ones({1, 2})});
  }
}

TEST_CASE("trace_execute replays one path") {
  std::array<std::size_t, 1> second{1};
  auto t1 = trace_execute(parse_program("choose X1 := 1 or X2 := 1 end"), Tape(), ClampSet(), second);
  CHECK_FALSE(t1.divergent);
  CHECK(t1.tape == Tape::from_ones({2}));

  auto t2 = trace_execute(parse_program("loop"), Tape(), ClampSet(), {});
  CHECK(t2.divergent);

  auto t3 = trace_execute(parse_program("X1 := !X1"), Tape::from_ones({1}), ClampSet(), {});
  CHECK_FALSE(t3.divergent);
  CHECK(t3.tape == Tape());

  std::array<std::size_t, 1> out_of_range{7};
  CHECK_THROWS_AS(trace_execute(parse_program("choose X1 := 1 or X2 := 1 end"), Tape(), ClampSet(), out_of_range),
                  std::out_of_range);
  CHECK_THROWS_AS(trace_execute(parse_program("choose X1 := 1 or X2 := 1 end"), Tape(), ClampSet(), {}),
                  std::out_of_range);
}

TEST_CASE("every enumerated path is replayable") {
  testgen::Rng rng(5150);
  for (int k = 0; k < 100; ++k) {
    PLProgram p = testgen::random_program(rng, 4, 4, true, true);
    Tape x = testgen::random_tape(rng, 4);
    ClampSet c = clamp_of(testgen::random_intervention(rng, 4, 2));
    for (const ExecutionPath& path : enumerate_paths(p, x, c)) {
      auto replay = trace_execute(p, x, c, path.choices);
      CHECK(replay.divergent == !path.output.has_value());
      if (path.output) CHECK(replay.tape == *path.output);
    }
  }
}

TEST_CASE("clamp persistence: outputs agree with the clamps") {
  testgen::Rng rng(31337);
  for (int k = 0; k < 150; ++k) {
    PLProgram p = testgen::random_program(rng, 5, 4, true, true);
    Tape x = testgen::random_tape(rng, 4);
    ClampSet c = clamp_of(testgen::random_intervention(rng, 4, 3));
    for (const Tape& out : execute(p, x, c).halting_outputs)
      for (const auto& [i, b] : c.entries()) CHECK(out.get(i) == b);
  }
}

TEST_CASE("deterministic programs have at most one halting output") {
  testgen::Rng rng(101);
  for (int k = 0; k < 150; ++k) {
    PLProgram p = testgen::random_program(rng, 5, 4, false, true);
    REQUIRE(conforms(p, Dialect::Det));
    auto s = execute(p, testgen::random_tape(rng, 4), clamp_of(testgen::random_intervention(rng, 4, 2)));
    CHECK(s.halting_outputs.size() <= 1);
    CHECK(s.paths_explored == 1);
  }
}

TEST_CASE("always-halting programs halt under every clamp") {
  testgen::Rng rng(202);
  for (int k = 0; k < 150; ++k) {
    PLProgram p = testgen::random_program(rng, 5, 4, true, false);
    REQUIRE(conforms(p, Dialect::Halting));
    auto s = execute(p, testgen::random_tape(rng, 4), clamp_of(testgen::random_intervention(rng, 4, 2)));
    CHECK_FALSE(s.diverges);
    CHECK(s.halting_outputs.size() >= 1);
  }
}

TEST_CASE("path count is the product of branch counts along the tree") {
  // Two sequential 2-way chooses inside a 3-way choose: 3 * nothing vs 2*2.
  PLProgram p = parse_program(
      "choose X1 := 1 or X2 := 1 or choose X3 := 0 or X3 := 1 end ; choose X4 := 0 or X4 := 1 end end");
  auto s = execute(p, Tape(), ClampSet());
  CHECK(s.paths_explored == 1 + 1 + 2 * 2);

  CHECK(execute(parse_program("choose X1 := 1 or X1 := 1 end"), Tape(), ClampSet()).paths_explored == 2);
}

TEST_CASE("the empty clamp is a plain run") {
  testgen::Rng rng(303);
  for (int k = 0; k < 100; ++k) {
    PLProgram p = testgen::random_program(rng, 5, 4, true, true);
    Tape x = testgen::random_tape(rng, 4);
    auto a = execute(p, x, ClampSet());
    auto b = execute(p, x, clamp_of(InterventionSpec()));
    CHECK(a.halting_outputs == b.halting_outputs);
    CHECK(a.diverges == b.diverges);
  }
}

TEST_CASE("tape literals") {
  CHECK(parse_tape("X1=1,X3=1") == Tape::from_ones({1, 3}));
  CHECK(parse_tape("") == Tape());
  CHECK(parse_tape("X2=0") == Tape());
  CHECK(parse_tape("X1=1,X1=0") == Tape());  // later pairs win
  CHECK(Tape::from_ones({1, 3}).to_string() == "X1=1,X3=1");
  CHECK(Tape().to_string() == "");
  CHECK_THROWS_AS(parse_tape("X1=2"), ParseError);
  CHECK_THROWS_AS(parse_tape("X1"), ParseError);

  // Output ordering is lexicographic on the sparse representation.
  CHECK(Tape::from_ones({1, 3}) < Tape::from_ones({2}));
  CHECK(Tape() < Tape::from_ones({1}));
}
