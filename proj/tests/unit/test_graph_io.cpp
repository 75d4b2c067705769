#include "curvagraph/errors.hpp"
#include "curvagraph/generators.hpp"
#include "curvagraph/graph_io.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace curvagraph;

TEST_CASE("cube file parses to eight vertices and six squares") {
  const auto cube = testing::cube_map();
  CHECK(cube.vertex_count() == 8);
  const auto faces = trace_faces(cube);
  CHECK(faces.face_count() == 6);
  for (const auto& f : faces.faces) CHECK(f.degree == FaceDegree::finite(4));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(parse_map(""), "no vertices", InputError);
  CHECK_THROWS_WITH_AS(parse_map("# only a comment\n"), "no vertices", InputError);
  CHECK_THROWS_AS(parse_map("v 0: 1\nv 1: 2\nv 2: 1\n"), InputError);
  CHECK_THROWS_AS(parse_map("v 0 1\n"), InputError);
  CHECK_THROWS_AS(parse_map("x 0: 1\n"), InputError);
  CHECK_THROWS_AS(parse_map("v 0: 1\nv 1: 0\nfrontier: 9\n"), InputError);
  CHECK_THROWS_AS(parse_map("v 0: 1\nv 1: 0\nfacehint: 0\n"), InputError);
  CHECK_THROWS_AS(parse_map("v 0: 1 1\nv 1: 0 0\n"), InputError);
}

TEST_CASE("serialization round trips") {
  for (const auto& map : {testing::cube_map(), pq_ball(7, 3, 3), regular_tree_ball(3, 3), line_ball(3),
                          octahedron_hub(2), parse_map("h 0 0 1\nh 1 0 0\nh 2 0 3\nh 3 1 2\n")}) {
    const std::string text = serialize_map(map);
    const auto back = parse_map(text);
    CHECK(serialize_map(back) == text);
    CHECK(back.vertex_count() == map.vertex_count());
    CHECK(back.edge_count() == map.edge_count());
    CHECK(back.frontier().size() == map.frontier().size());
    CHECK(trace_faces(back).face_count() == trace_faces(map).face_count());
  }
}

TEST_CASE("correspondence lines round trip") {
  const auto cube = testing::cube_map();
  const auto text = serialize_with_correspondence(cube, {{0, 10}, {1, 11}});
  const auto [map, corr] = parse_with_correspondence(text);
  CHECK(map.vertex_count() == 8);
  REQUIRE(corr.size() == 2);
  CHECK(corr[1] == std::pair<long, long>{1, 11});
}

TEST_CASE("generators") {
  const auto m73 = pq_ball(7, 3, 1);
  CHECK(m73.degree(0) == 7);
  const auto faces = trace_faces(m73);
  int triangles_at_center = 0;
  for (int c : faces.corners_at_vertex[0])
    if (faces.faces[faces.corners[c].face].complete && faces.faces[faces.corners[c].face].length() == 3)
      ++triangles_at_center;
  CHECK(triangles_at_center == 7);

  const auto tree = regular_tree_ball(3, 2);
  CHECK(tree.vertex_count() == 10);
  CHECK(tree.frontier().size() == 6);

  const auto cube = platonic_solid("cube");
  CHECK(cube.is_closed());
  CHECK(cube.vertex_count() - cube.edge_count() + trace_faces(cube).face_count() == 2);

  const auto hub = octahedron_hub(2);
  for (VertexId v = 0; v < 4; ++v) CHECK(hub.degree(v) == 4);
}

TEST_CASE("sphere sizes of {7,3}") {
  const auto m = pq_ball(7, 3, 5);
  const auto b = ball(m, trace_faces(m), 0, 5);
  const std::vector<std::size_t> expected{1, 7, 21, 56, 147, 385};
  for (int n = 0; n <= 5; ++n) CHECK(b.spheres[n].size() == expected[n]);
}

TEST_CASE("generator spec strings") {
  CHECK(parse_generator("pq:7,3", 2).kind == GeneratorSpec::Kind::pq_tessellation);
  CHECK(parse_generator("pq:3,inf", 2).q == 0);
  CHECK(parse_generator("radial-tree:3,1", 2).slope == 1);
  CHECK_THROWS_AS(parse_generator("pq:7", 2), InputError);
  CHECK_THROWS_AS(parse_generator("bogus", 2), InputError);
  CHECK_THROWS_AS(generate(parse_generator("pq:2,3", 2)), InputError);
  CHECK_THROWS_AS(platonic_solid("icosahedron"), InputError);
  CHECK_THROWS_AS(pq_ball(7, 3, 0), InputError);
}

TEST_CASE("generated maps pass validation and keep p-regular interiors") {
  for (auto [p, q] : {std::pair{7L, 3L}, {4L, 5L}, {3L, 7L}, {4L, 4L}, {3L, 6L}, {6L, 3L}, {5L, 4L}}) {
    const auto m = pq_ball(static_cast<int>(p), q, 3);
    m.validate();
    const auto faces = trace_faces(m);
    for (VertexId v = 0; v < m.vertex_count(); ++v)
      if (!m.is_frontier(v)) CHECK(m.degree(v) == p);
    for (const auto& f : faces.faces)
      if (f.complete) CHECK(f.length() == q);
  }
}
