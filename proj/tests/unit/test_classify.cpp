#include "curvagraph/classify.hpp"
#include "curvagraph/generators.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace curvagraph;

namespace {

// k parallel edges between two vertices with planar rotations.
CombinatorialMap parallel_edges(int k) {
  std::string text;
  for (int i = 0; i < k; ++i) text += "h " + std::to_string(2 * i) + " 0 " + std::to_string(2 * i + 1) + "\n";
  text += "h 1 1 0\n";
  for (int i = k - 1; i >= 1; --i) text += "h " + std::to_string(2 * i + 1) + " 1 " + std::to_string(2 * i) + "\n";
  return parse_map(text);
}

}  // namespace

TEST_CASE("degenerate faces") {
  const auto path = testing::path3();
  CHECK(degenerate_faces(path, trace_faces(path)).size() == 1);
  const auto cube = testing::cube_map();
  CHECK(degenerate_faces(cube, trace_faces(cube)).empty());
  const auto m = pq_ball(7, 3, 4);
  CHECK(degenerate_faces(m, trace_faces(m)).empty());
}

TEST_CASE("degenerate pairs of parallel edges") {
  const auto three = parallel_edges(3);
  const auto f3 = trace_faces(three);
  REQUIRE(f3.face_count() == 3);
  CHECK(degenerate_pairs(three, f3).empty());
  const auto four = parallel_edges(4);
  const auto f4 = trace_faces(four);
  REQUIRE(f4.face_count() == 4);
  CHECK(degenerate_pairs(four, f4).size() == 2);

  const auto cube = testing::cube_map();
  CHECK(degenerate_pairs(cube, trace_faces(cube)).empty());
  const auto chord = map_from_drawing({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  CHECK(trace_faces(chord).face_count() == 3);
  CHECK(degenerate_pairs(chord, trace_faces(chord)).empty());
}

TEST_CASE("extended edges") {
  const auto line = line_ball(4);
  const auto edges = extended_edges(line, trace_faces(line));
  REQUIRE_FALSE(edges.empty());
  for (const auto& e : edges) CHECK(e.regular);
  const auto m = pq_ball(7, 3, 3);
  CHECK(extended_edges(m, trace_faces(m)).empty());
}

TEST_CASE("classification") {
  const auto m73 = pq_ball(7, 3, 5);
  CHECK(classify(m73, trace_faces(m73)).cls == TessClass::tessellating);
  const auto tree = regular_tree_ball(3, 5);
  const auto ct = classify(tree, trace_faces(tree));
  CHECK(ct.cls == TessClass::strictly_locally);
  CHECK(ct.extended_edges.empty());
  const auto line = line_ball(6);
  CHECK(classify(line, trace_faces(line)).cls == TessClass::locally);
  const auto cube = testing::cube_map();
  CHECK(classify(cube, trace_faces(cube)).cls == TessClass::tessellating);
  const auto path = testing::path3();
  CHECK(classify(path, trace_faces(path)).cls == TessClass::other);
  CHECK(class_name(TessClass::locally) == "locally-tessellating");
}

TEST_CASE("side conditions of nonpositive curvature") {
  const auto grid = pq_ball(4, 4, 4);
  const auto sg = nonpositive_side_conditions(grid, trace_faces(grid), CurvatureMode::corner);
  CHECK(sg.nonpositive);
  CHECK(sg.simple);
  CHECK(sg.terminal_vertices.empty());
  CHECK(sg.irregular_extended_edges.empty());
  CHECK(sg.consistent());

  const auto path = testing::path3();
  const auto sp = nonpositive_side_conditions(path, trace_faces(path), CurvatureMode::vertex);
  CHECK_FALSE(sp.nonpositive);
  CHECK(*sp.sup > 0);
  CHECK(sp.consistent());

  const auto m = pq_ball(7, 3, 4);
  const auto sm = nonpositive_side_conditions(m, trace_faces(m), CurvatureMode::corner);
  CHECK(sm.negative);
  CHECK(sm.extended_edge_count == 0);
  CHECK(sm.consistent());
}
