#include <random>

#include "doctest.h"
#include "markov_atlas/error.hpp"
#include "markov_atlas/graph.hpp"
#include "markov_atlas/sp_tree.hpp"
#include "oracles.hpp"

using namespace markov_atlas;

namespace {

bool is_valid_k4_model(const Subgraph& g, const K4Minor& m) {
  VertexMask used = 0;
  for (VertexMask s : m.branch_sets) {
    if (s == 0 || (s & used) || (s & ~g.vertices)) return false;
    used |= s;
    if (!is_connected(g.induced(s))) return false;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      bool touch = false;
      for (const auto& e : g.edges) {
        touch |= ((m.branch_sets[i] & bit(e.a)) && (m.branch_sets[j] & bit(e.b))) ||
                 ((m.branch_sets[i] & bit(e.b)) && (m.branch_sets[j] & bit(e.a)));
      }
      if (!touch) return false;
    }
  }
  return true;
}

Subgraph theta() {
  // Three paths of length two between 0 and 1.
  return make_subgraph(0b11111, {make_edge(0, 2), make_edge(2, 1), make_edge(0, 3),
                                 make_edge(3, 1), make_edge(0, 4), make_edge(4, 1)});
}

}  // namespace

TEST_CASE("parse_graph numbers vertices by first appearance") {
  Graph g = parse_graph("# comment\nx y\n\ny z  # trailing\nz x\nw\n");
  CHECK(g.vertex_count() == 4);
  CHECK(g.label(0) == "x");
  CHECK(g.label(3) == "w");
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(0, 2));
  Graph again = parse_graph(format_graph(g));
  CHECK(again.edge_count() == 3);
  CHECK(again.vertex_count() == 4);
}

TEST_CASE("parse_graph collapses duplicate edges and rejects bad lines") {
  CHECK(parse_graph("a b\nb a\na b\n").edge_count() == 1);
  CHECK_THROWS_AS(parse_graph("a a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("a b c\n"), ParseError);
  try {
    parse_graph("a b\nb c d\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("connectivity, cut vertices and blocks") {
  // Two triangles sharing vertex 2, plus a pendant edge 4-5 and isolated 6.
  Subgraph g = make_subgraph(0b1111111, {make_edge(0, 1), make_edge(1, 2), make_edge(0, 2),
                                         make_edge(2, 3), make_edge(3, 4), make_edge(2, 4),
                                         make_edge(4, 5)});
  CHECK(connected_components(g).size() == 2);
  CHECK_FALSE(is_connected(g));
  CHECK(cut_vertices(g) == std::vector<Vertex>{2, 4});
  auto bs = blocks(g);
  CHECK(bs.size() == 3);
  std::size_t edges = 0;
  for (const auto& b : bs) edges += b.edges.size();
  CHECK(edges == g.edges.size());
  CHECK(is_cycle(cycle_graph(5).as_subgraph()));
  CHECK_FALSE(is_cycle(path_graph(5).as_subgraph()));
  CHECK(is_forest(path_graph(5).as_subgraph()));
  CHECK(is_forest(Graph::with_vertices(3).as_subgraph()));
  CHECK(is_two_connected(complete_graph(4).as_subgraph()));
  CHECK_FALSE(is_two_connected(path_graph(3).as_subgraph()));
}

TEST_CASE("K4-minor test agrees with the brute-force oracle on all graphs up to 6 vertices") {
  int with_minor = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : oracle::all_graphs(n)) {
      const bool expected = oracle::has_k4_minor(g);
      CHECK(is_k4_minor_free(g) == !expected);
      auto m = find_k4_minor(g);
      CHECK(m.has_value() == expected);
      if (m) CHECK(is_valid_k4_model(g, *m));
      with_minor += expected ? 1 : 0;
    }
  }
  CHECK(with_minor > 0);
}

TEST_CASE("K4-minor test on random K4-minor-free graphs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Subgraph g = oracle::random_k4_free(rng, 8);
    CHECK(is_k4_minor_free(g));
    if (g.vertex_count() <= 7) CHECK_FALSE(oracle::has_k4_minor(g));
  }
}

TEST_CASE("sp_decompose realizes every random series-parallel block") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    for (const auto& b : blocks(oracle::random_k4_free(rng, 9))) {
      SPTree t = sp_decompose(b);
      CHECK(t.realize() == b);
      CHECK(canonicalize(t) == t);
      CHECK(t.reversed().reversed() == t);
      if (b.edges.size() > 1) CHECK(is_series_parallel_block(b));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("sp_decompose trees are flattened and pole-consistent") {
  SPTree t = sp_decompose(cycle_graph(5).as_subgraph());
  CHECK(t.kind == SPTree::Kind::Parallel);
  CHECK(t.children.size() == 2);
  CHECK(t.children[0].is_leaf());
  CHECK(t.children[1].kind == SPTree::Kind::Serial);
  CHECK(t.children[1].children.size() == 4);
  CHECK(t.children[1].join_vertices().size() == 3);

  SPTree th = sp_decompose(theta(), std::make_pair(0, 1));
  CHECK(th.kind == SPTree::Kind::Parallel);
  CHECK(th.children.size() == 3);
  for (const auto& c : th.children) {
    CHECK(c.kind == SPTree::Kind::Serial);
    CHECK(c.u == 0);
    CHECK(c.v == 1);
  }
}

TEST_CASE("sp_decompose errors") {
  CHECK_THROWS_AS(sp_decompose(complete_graph(4).as_subgraph()), NotSeriesParallel);
  CHECK_THROWS_AS(sp_decompose(Graph::with_vertices(2).as_subgraph()), NotSeriesParallel);
  CHECK_THROWS_AS(sp_decompose(theta(), std::make_pair(2, 3)), NotSeriesParallel);
  CHECK_THROWS_AS(SPTree::serial({SPTree::leaf(0, 1), SPTree::leaf(2, 3)}),
                  PreconditionViolated);
}

TEST_CASE("bridges and three-bridge poles") {
  Subgraph th = theta();
  CHECK(bridges(th, 0, 1).size() == 3);
  Subgraph with_edge = th;
  with_edge.edges.push_back(make_edge(0, 1));
  std::sort(with_edge.edges.begin(), with_edge.edges.end());
  auto bs = bridges(with_edge, 0, 1);
  REQUIRE(bs.size() == 4);
  CHECK(bs[0].edges == std::vector<Edge>{make_edge(0, 1)});
  ParallelPoles p = find_parallel3_poles(th);
  CHECK(p.u == 0);
  CHECK(p.v == 1);
  CHECK(p.bridges.size() == 3);
  CHECK_THROWS_AS(find_parallel3_poles(cycle_graph(6).as_subgraph()), NoSuchPoles);
  CHECK_THROWS_AS(find_parallel3_poles(complete_graph(4).as_subgraph()), NoSuchPoles);
}

TEST_CASE("Graph rejects malformed construction") {
  CHECK_THROWS_AS(Graph({"a", "b"}, {Edge{0, 0}}), PreconditionViolated);
  CHECK_THROWS_AS(Graph({"a", "a"}), PreconditionViolated);
  CHECK_THROWS_AS(Graph({"a", "b"}, {Edge{0, 5}}), PreconditionViolated);
}
