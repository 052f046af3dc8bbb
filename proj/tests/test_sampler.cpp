#include "doctest.h"
#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"
#include "markov_atlas/sampler.hpp"

using namespace markov_atlas;

namespace {

Subgraph c4() { return cycle_graph(4).as_subgraph(); }

TableVector c4_start() {
  TableVector z(0b1111);
  z.add(0b0000, 2);
  z.add(0b0101, 1);
  z.add(0b1010, 1);
  return z;
}

}  // namespace

TEST_CASE("walk stays in the fiber") {
  const Subgraph g = c4();
  const TableVector z = c4_start();
  const auto moves = fiber_moves(g, z, 4);
  REQUIRE_FALSE(moves.empty());
  RandomWalk walk(g, moves, z, 5);
  const MarginalSet m = graph_marginals(z, g);
  const Fiber f = fiber_through(g, z);
  for (int i = 0; i < 2000; ++i) {
    walk.step();
    CHECK(walk.state().is_nonnegative());
    CHECK(graph_marginals(walk.state(), g) == m);
    CHECK(f.index_of(walk.state()).has_value());
  }
  CHECK(walk.proposals() == 2000);
  CHECK(walk.accepted() > 0);
  CHECK(walk.accepted() < walk.proposals());
}

TEST_CASE("fixed seeds reproduce trajectories") {
  const Subgraph g = c4();
  const auto moves = fiber_moves(g, c4_start(), 4);
  RandomWalk a(g, moves, c4_start(), 99);
  RandomWalk b(g, moves, c4_start(), 99);
  RandomWalk c(g, moves, c4_start(), 100);
  bool diverged = false;
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.step() == b.step());
    CHECK(a.state() == b.state());
    c.step();
    diverged |= a.state() != c.state();
  }
  CHECK(diverged);
  WalkConfig cfg{500, 100, 7};
  WalkResult r1 = random_walk(g, moves, c4_start(), cfg);
  WalkResult r2 = random_walk(g, moves, c4_start(), cfg);
  CHECK(r1.state == r2.state);
  CHECK(r1.proposals == 600);
  CHECK(r1.acceptance_rate() == r2.acceptance_rate());
}

TEST_CASE("singleton fibers never move") {
  Subgraph edge = make_subgraph(0b11, {make_edge(0, 1)});
  TableVector z = TableVector::unit(0b11, 0b01, 3);
  auto moves = fiber_moves(edge, z, 2);
  CHECK(moves.empty());
  WalkResult r = random_walk(edge, moves, z, WalkConfig{100, 0, 1});
  CHECK(r.state == z);
  CHECK(r.accepted == 0);
}

TEST_CASE("walk rejects bad inputs") {
  const Subgraph g = c4();
  TableVector not_move = TableVector::unit(0b1111, 0b0001);
  CHECK_THROWS_AS(RandomWalk(g, {not_move}, c4_start(), 1), NotInKernel);
  CHECK_THROWS_AS(RandomWalk(g, {}, -c4_start(), 1), PreconditionViolated);
  CHECK_THROWS_AS(RandomWalk(g, {}, TableVector(0b111), 1), GroundSetMismatch);
}

TEST_CASE("connector moves connect the fiber") {
  const Subgraph g = c4();
  const auto moves = connector_moves(g, c4_start());
  for (const auto& m : moves) {
    CHECK(is_move(m, g));
    CHECK(m.l1_norm() <= 8);
  }
  // Every fiber element is reachable from the start with these moves.
  RandomWalk walk(g, moves, c4_start(), 3);
  const Fiber f = fiber_through(g, c4_start());
  std::vector<char> seen(f.size(), 0);
  for (int i = 0; i < 20000; ++i) {
    walk.step();
    seen[*f.index_of(walk.state())] = 1;
  }
  for (char s : seen) CHECK(s == 1);
}
