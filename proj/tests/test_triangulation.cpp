#include "doctest.h"
#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"
#include "markov_atlas/triangulation.hpp"
#include "oracles.hpp"

using namespace markov_atlas;

namespace {

const char* kOctahedron =
    "n 1 2\nn 2 3\nn 3 4\nn 4 1\n"
    "s 1 2\ns 2 3\ns 3 4\ns 4 1\n";

const char* kTetrahedron = "1 2 3\n1 2 4\n1 3 4\n2 3 4\n";

}  // namespace

TEST_CASE("loader validates closed surfaces") {
  Triangulation oct = load_triangulation(kOctahedron);
  CHECK(oct.vertex_count() == 6);
  CHECK(oct.edge_count() == 12);
  CHECK(oct.face_count() == 8);
  CHECK(oct.euler_characteristic() == 2);
  CHECK(oct.labels().front() == "n");
  CHECK(load_triangulation(format_triangulation(oct)).faces() == oct.faces());

  CHECK_THROWS_AS(load_triangulation("1 2 3\n"), InvalidTriangulation);
  CHECK_THROWS_AS(load_triangulation("1 2 3\n1 2 3\n"), InvalidTriangulation);
  CHECK_THROWS_AS(load_triangulation("1 1 2\n"), InvalidTriangulation);
  CHECK_THROWS_AS(load_triangulation("1 2\n"), ParseError);
  CHECK_THROWS_AS(load_triangulation("# nothing\n"), ParseError);
  // Three faces on edge 1-2.
  CHECK_THROWS_AS(load_triangulation(std::string(kTetrahedron) + "1 2 5\n"),
                  InvalidTriangulation);
}

TEST_CASE("octahedron is clean and 2-face-colorable") {
  Triangulation oct = load_triangulation(kOctahedron);
  CHECK(is_clean(oct));
  auto colors = two_face_coloring(oct);
  CHECK(colors.front() == FaceColor::Red);
  int red = 0;
  for (auto c : colors) red += c == FaceColor::Red ? 1 : 0;
  CHECK(red == 4);
  auto [r, b] = red_blue_vectors(oct, colors);
  Graph k6 = complete_graph(6);
  CHECK(r != b);
  CHECK(graph_marginals(r, k6) == graph_marginals(b, k6));
  CHECK(oracle::marginals(r, k6.as_subgraph()) == oracle::marginals(b, k6.as_subgraph()));
}

TEST_CASE("tetrahedron is clean but not 2-face-colorable") {
  Triangulation tet = load_triangulation(kTetrahedron);
  CHECK(is_clean(tet));
  CHECK_THROWS_AS(two_face_coloring(tet), NotColorable);
  LowerBoundCertificate c = certify_lower_bound(tet, true);
  CHECK_FALSE(c.colorable);
  CHECK_FALSE(c.bound.has_value());
  CHECK_FALSE(c.skeleton_k4_free);
}

TEST_CASE("double wheels") {
  for (int n = 3; n <= 10; ++n) {
    Triangulation w = double_wheel(n);
    CHECK(w.vertex_count() == n + 2);
    CHECK(w.edge_count() == 3 * n);
    CHECK(w.face_count() == 2 * n);
    CHECK(w.euler_characteristic() == 2);
  }
  // With N = 3 the equator is a triangle that bounds no face.
  CHECK_FALSE(is_clean(double_wheel(3)));
  CHECK(is_clean(double_wheel(4)));
  // Odd N gives an odd dual cycle around each apex.
  CHECK_THROWS_AS(two_face_coloring(double_wheel(5)), NotColorable);
  CHECK_NOTHROW(two_face_coloring(double_wheel(6)));
  CHECK_THROWS_AS(double_wheel(2), PreconditionViolated);
}

TEST_CASE("face exact covers") {
  FaceCover oct = face_exact_covers(load_triangulation(kOctahedron));
  CHECK(oct.complete);
  CHECK(oct.covers.size() == 2);
  for (const auto& c : oct.covers) CHECK(c.size() == 4);
  FaceCover w8 = face_exact_covers(double_wheel(8));
  CHECK(w8.covers.size() == 2);
  FaceCover starved = face_exact_covers(double_wheel(8), 3);
  CHECK_FALSE(starved.complete);
}

TEST_CASE("octahedron certificate matches direct fiber enumeration over K6") {
  Triangulation oct = load_triangulation(kOctahedron);
  LowerBoundCertificate c = certify_lower_bound(oct, true);
  CHECK(c.clean);
  CHECK(c.colorable);
  CHECK(c.skeleton_k4_free);
  REQUIRE(c.bound.has_value());
  CHECK(*c.bound == 4);
  REQUIRE(c.fiber_verified.has_value());
  CHECK(*c.fiber_verified);
  CHECK(c.fiber_size == 2);

  auto [r, b] = red_blue_vectors(oct, two_face_coloring(oct));
  Fiber f = fiber_through(complete_graph(6).as_subgraph(), r);
  CHECK(f.elements == c.fiber);
  CHECK((r - b).l1_norm() == 8);
}
