#include "curvagraph/errors.hpp"
#include "curvagraph/generators.hpp"
#include "curvagraph/map.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace curvagraph;
using testing::cube_map;

TEST_CASE("degree counts rotation slots") {
  const auto grid = pq_ball(4, 4, 2);
  CHECK(grid.degree(0) == 4);
  const auto pendant = parse_map("v 0: 1\nv 1: 0\n");
  CHECK(pendant.degree(0) == 1);
  // loop occupies two slots
  const auto loop = parse_map("h 0 0 1\nh 1 0 0\nh 2 0 3\nh 3 1 2\n");
  CHECK(loop.degree(*loop.find_label(0)) == 3);
  CHECK_FALSE(loop.is_simple());
}

TEST_CASE("cube has six square faces") {
  const auto cube = cube_map();
  const auto faces = trace_faces(cube);
  REQUIRE(faces.face_count() == 6);
  for (const auto& f : faces.faces) {
    CHECK(f.complete);
    CHECK(f.degree == FaceDegree::finite(4));
  }
  CHECK(cube.vertex_count() - cube.edge_count() + faces.face_count() == 2);
}

TEST_CASE("single edge is one face of degree two") {
  const auto edge = parse_map("v 0: 1\nv 1: 0\n");
  const auto faces = trace_faces(edge);
  REQUIRE(faces.face_count() == 1);
  CHECK(faces.faces[0].degree == FaceDegree::finite(2));
  REQUIRE(faces.corners.size() == 2);
  for (const auto& c : faces.corners) CHECK(c.multiplicity == 1);
}

TEST_CASE("path on three vertices has a doubled middle corner") {
  const auto path = testing::path3();
  const auto faces = trace_faces(path);
  REQUIRE(faces.face_count() == 1);
  CHECK(faces.faces[0].degree == FaceDegree::finite(4));
  for (const auto& c : faces.corners) CHECK(c.multiplicity == (path.label(c.vertex) == 1 ? 2 : 1));
}

TEST_CASE("face walks partition the half-edges") {
  for (const auto& map : {cube_map(), platonic_solid("octahedron"), platonic_solid("tetrahedron"), pq_ball(7, 3, 3),
                          pq_ball(4, 5, 3), regular_tree_ball(3, 3), line_ball(4)}) {
    const auto faces = trace_faces(map);
    std::vector<int> seen(map.halfedge_count(), 0);
    for (const auto& f : faces.faces)
      for (HalfEdgeId h : f.walk) ++seen[h];
    for (HalfEdgeId h = 0; h < map.halfedge_count(); ++h) {
      CHECK(seen[h] == 1);
      CHECK(faces.face_of[h] >= 0);
      CHECK(map.twin(map.twin(h)) == h);
    }
  }
}

TEST_CASE("closed maps satisfy Euler's formula") {
  for (const char* name : {"tetrahedron", "cube", "octahedron"}) {
    const auto m = platonic_solid(name);
    CHECK(m.is_closed());
    CHECK(m.vertex_count() - m.edge_count() + trace_faces(m).face_count() == 2);
  }
  const auto hub = octahedron_hub(3);
  CHECK(hub.vertex_count() - hub.edge_count() + trace_faces(hub).face_count() == 2);
}

TEST_CASE("truncated faces take the hint") {
  const auto m = pq_ball(7, 3, 2);
  const auto faces = trace_faces(m);
  int incomplete = 0;
  for (const auto& f : faces.faces)
    if (!f.complete) {
      ++incomplete;
      CHECK(f.degree == FaceDegree::finite(3));
    }
  CHECK(incomplete > 0);
  auto bare = parse_map("v 0: 1 2\nv 1: 0\nv 2: 0\nfrontier: 1 2\n");
  for (const auto& f : trace_faces(bare).faces) CHECK(f.degree.kind == FaceDegree::Kind::unknown);
}

TEST_CASE("sphere sizes") {
  const auto tree = regular_tree_ball(3, 3);
  const auto tb = ball(tree, trace_faces(tree), 0, 2);
  CHECK(tb.spheres[0].size() == 1);
  CHECK(tb.spheres[1].size() == 3);
  CHECK(tb.spheres[2].size() == 6);

  const auto grid = pq_ball(4, 4, 3);
  const auto gb = ball(grid, trace_faces(grid), 0, 2);
  CHECK(gb.spheres[1].size() == 4);
  CHECK(gb.spheres[2].size() == 8);

  const auto cube = cube_map();
  const auto cb = ball(cube, trace_faces(cube), 0, 3);
  CHECK(cb.spheres[0].size() == 1);
  CHECK(cb.spheres[1].size() == 3);
  CHECK(cb.spheres[2].size() == 3);
  CHECK(cb.spheres[3].size() == 1);
  CHECK(cb.ball_size(3) == 8);
}

TEST_CASE("balls must be faithful") {
  const auto tree = regular_tree_ball(3, 3);
  CHECK(faithful_radius(tree, {0}) == 3);
  CHECK_THROWS_AS(ball(tree, trace_faces(tree), 0, 5), PreconditionError);
}

TEST_CASE("induced sub-map keeps the rotation order") {
  const auto cube = cube_map();
  const auto square = induced_submap(cube, {0, 1, 5, 4}, false);
  CHECK(square.vertex_count() == 4);
  CHECK(square.edge_count() == 4);
  CHECK(square.is_closed());
  CHECK(trace_faces(square).face_count() == 2);
  const auto cut = induced_submap(cube, {0, 1, 5, 4}, true);
  CHECK(cut.frontier().size() == 4);
}

TEST_CASE("validate rejects broken rotation data") {
  CHECK_THROWS_AS(parse_map("v 0: 1\nv 1:\n"), InputError);
  CHECK_THROWS_AS(parse_map("h 0 0 0\n"), InputError);
}
