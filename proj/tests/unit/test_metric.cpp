#include "curvagraph/errors.hpp"
#include "curvagraph/generators.hpp"
#include "curvagraph/metric.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace curvagraph;

TEST_CASE("cut locus") {
  const auto cube = testing::cube_map();
  const auto c = cut_locus(cube, 0, 3);
  REQUIRE(c.size() == 1);
  CHECK(bfs_distances(cube, {0})[c[0]] == 3);
  const auto m = pq_ball(7, 3, 6);
  CHECK(cut_locus(m, 0, 5).empty());
  const auto tree = regular_tree_ball(3, 7);
  CHECK(cut_locus(tree, 0, 6).empty());
  CHECK_THROWS_AS(cut_locus(tree, 0, 7), PreconditionError);
}

TEST_CASE("sphere enumeration is cyclic and aligned") {
  const auto m = pq_ball(7, 3, 5);
  const auto faces = trace_faces(m);
  const auto s = enumerate_spheres(m, faces, 0, 4);
  const std::vector<std::size_t> sizes{1, 7, 21, 56, 147};
  for (int n = 0; n <= 4; ++n) CHECK(s.levels[n].size() == sizes[n]);
  for (int n = 1; n <= 4; ++n) {
    CHECK(s.cyclic[n]);
    const auto nb = m.neighbors(s.levels[n][0]);
    CHECK(std::find(nb.begin(), nb.end(), s.levels[n - 1][0]) != nb.end());
  }
  // successive vertices on a sphere share a boundary face of the ball
  const auto walk = boundary_walk(m, faces, s.dist, 2, 0);
  CHECK(walk.sphere_order.size() == 21);
}

TEST_CASE("admissibility") {
  for (auto [p, q] : {std::pair{7, 3L}, {4, 5L}, {3, 7L}, {4, 4L}}) {
    const auto m = pq_ball(p, q, 6);
    const auto a = check_admissibility(m, trace_faces(m), 0, 5);
    CHECK_MESSAGE(a.all_pass(), p, ",", q);
  }
  const auto octa = platonic_solid("octahedron");
  const auto a = check_admissibility(octa, trace_faces(octa), 0, 2);
  CHECK(a.properties[1].verdict == Verdict::fail);
  const auto line = line_ball(6);
  CHECK(check_admissibility(line, trace_faces(line), 0, 5).all_pass());
}

TEST_CASE("bigon interior") {
  const auto grid = pq_ball(4, 4, 4);
  const auto faces = trace_faces(grid);
  const auto d = bfs_distances(grid, {0});
  // two geodesics around the unit square at the origin enclose nothing
  const auto nb = grid.neighbors(0);
  VertexId corner = -1, a = -1, b = -1;
  for (VertexId x : nb)
    for (VertexId y : nb)
      if (x < y)
        for (VertexId z : grid.neighbors(x)) {
          if (z == 0 || d[z] != 2 || !grid.has_edge(z, y)) continue;
          corner = z;
          a = x;
          b = y;
        }
  REQUIRE(corner >= 0);
  CHECK(bigon_interior(grid, faces, {0, a, corner}, {0, b, corner}).empty());
}

TEST_CASE("minimal bigons") {
  const auto m = pq_ball(4, 5, 6);
  const auto s = minimal_bigons(m, trace_faces(m), 4);
  CHECK(s.minimal > 0);
  CHECK(s.nonempty == 0);
  const auto tree = regular_tree_ball(3, 7);
  const auto st = minimal_bigons(tree, trace_faces(tree), 4);
  CHECK(st.bigons == 0);
  const auto grid = pq_ball(4, 4, 6);
  CHECK(minimal_bigons(grid, trace_faces(grid), 4).nonempty > 0);
}

TEST_CASE("growth") {
  const auto m = pq_ball(7, 3, 7);
  const auto g = growth_check(m, trace_faces(m), 0, 6);
  CHECK(g.kappa_v == Rational(-1, 6));
  CHECK(g.lower_factor == Rational(1, 2));
  CHECK(g.inequality_holds());
  CHECK(g.mu_in_bounds());
  CHECK(g.mu_lower == doctest::Approx(std::log(1.5)));
  CHECK(g.mu_upper == doctest::Approx(std::log(6.0)));

  const auto tree = regular_tree_ball(3, 9);
  const auto gt = growth_check(tree, trace_faces(tree), 0, 8);
  CHECK(gt.mu_ratio == doctest::Approx(std::log(2.0)));
  CHECK(gt.mu_upper == doctest::Approx(std::log(2.0)));
  CHECK(gt.ratio_in_bounds());

  const auto grid = pq_ball(4, 4, 5);
  CHECK_THROWS_AS(growth_check(grid, trace_faces(grid), 0, 4), PreconditionError);
}
