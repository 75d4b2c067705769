#include "curvagraph/embedding.hpp"
#include "curvagraph/generators.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace curvagraph;

TEST_CASE("closing parameter") {
  const auto tree = regular_tree_ball(3, 6);
  const auto single = closing_parameter(tree, {0}, Rational(1));
  CHECK(single.diameter == 0);
  CHECK(single.min_degree == 3);
  CHECK(single.value == 6);
  const auto b2 = testing::ball_vertices(tree, 0, 2);
  const auto wide = closing_parameter(tree, b2, Rational(1, 10));
  CHECK(wide.diameter == 4);
  CHECK(wide.value == 50);
  CHECK(closing_parameter(tree, {0}, Rational(5)).value == 6);
  CHECK(closing_parameter(tree, {0}, Rational(1, 3)).value == 15);
}

TEST_CASE("simple connectivity of W") {
  const auto grid = pq_ball(4, 4, 4);
  CHECK(is_simply_connected(grid, testing::ball_vertices(grid, 0, 2)));
  std::vector<VertexId> ring;
  for (VertexId v : testing::ball_vertices(grid, 0, 2))
    if (v != 0) ring.push_back(v);
  CHECK_FALSE(is_simply_connected(grid, ring));
  CHECK(set_diameter(grid, testing::ball_vertices(grid, 0, 2)) == 4);
}

TEST_CASE("line graph gains two trees at each flat vertex") {
  const auto line = line_ball(8);
  EmbedOptions opt;
  opt.horizon = 3;
  const auto res = embed(line, {0}, Rational(1), opt);
  REQUIRE_FALSE(res.added_trees.empty());
  for (const auto& [v, count] : res.added_trees) CHECK(count == 2);
  const auto rep = verify_properties(res, line);
  CHECK(rep.all_passed());
}

TEST_CASE("line graph with W = {0,1}") {
  const auto line = line_ball(8);
  EmbedOptions opt;
  opt.horizon = 4;
  const auto res = embed(line, {0, 1}, Rational(1, 10), opt);
  for (const auto& [v, v2] : res.correspondence)
    if (!line.is_frontier(v) && res.supergraph.degree(v2) != line.degree(v)) CHECK(res.supergraph.degree(v2) == line.degree(v) + 2);
  const auto rep = verify_properties(res, line);
  for (const auto& p : rep.properties) CHECK_MESSAGE(p.passed, p.name);
}

TEST_CASE("negatively curved tree needs no trees") {
  const auto tree = regular_tree_ball(3, 7);
  EmbedOptions opt;
  opt.horizon = 4;
  const auto res = embed(tree, {0}, Rational(1, 4), opt);
  CHECK(res.added_trees.empty());
  CHECK(res.tree_vertex_count == 0);
  CHECK(verify_properties(res, tree).all_passed());
}

TEST_CASE("flat grid is left alone") {
  const auto grid = pq_ball(4, 4, 6);
  EmbedOptions opt;
  opt.horizon = 3;
  const auto res = embed(grid, {0}, Rational(1, 2), opt);
  CHECK(res.added_trees.empty());
  CHECK(res.closed_faces.empty());
  CHECK(verify_properties(res, grid).all_passed());
}
