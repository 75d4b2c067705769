#pragma once

#include "curvagraph/map.hpp"
#include "curvagraph/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace curvagraph {

struct GeneratorSpec {
  enum class Kind { pq_tessellation, regular_tree, platonic_solid, octahedron_hub, line, radial_tree };

  Kind kind = Kind::pq_tessellation;
  int p = 3;       // vertex degree (pq, tree); base degree (radial tree)
  long q = 0;      // face degree, 0 for infinity
  int slope = 1;   // radial tree: degree p + slope * r at distance r
  int radius = 1;
  std::string name;  // platonic solid name
};

// "pq:7,3", "pq:3,inf", "tree:3", "line", "platonic:cube", "octa-hub",
// "radial-tree" or "radial-tree:3,1". The radius is supplied separately.
GeneratorSpec parse_generator(const std::string& text, int radius);
std::string describe(const GeneratorSpec& spec);

CombinatorialMap generate(const GeneratorSpec& spec);

// Ball of radius r around a vertex of the tiling with vertex degree p and face
// degree q, grown by layer-wise face completion. Vertex 0 is the center;
// ids follow BFS discovery order.
CombinatorialMap pq_ball(int p, long q, int radius);
CombinatorialMap regular_tree_ball(int p, int radius);
// Tree where every vertex at distance r from the root has degree base + slope*r.
CombinatorialMap radial_tree_ball(int base, int slope, int radius);
// The integers with nearest neighbor edges; id 0 is 0, ids 2k-1 and 2k are k and -k.
CombinatorialMap line_ball(int radius);
CombinatorialMap platonic_solid(const std::string& name);
// Octahedron: 4-cycle 0,1,2,3 and hubs 4,5; rays of length `ray` hang off both hubs.
CombinatorialMap octahedron_hub(int ray);
// A vertex whose consecutive incident faces have the given finite degrees;
// every other vertex is frontier. The center is vertex 0.
CombinatorialMap vertex_pattern_patch(const std::vector<long>& face_degrees);

// Rotation system read off a straight-line planar drawing: neighbors sorted
// counterclockwise by angle. Vertices listed in `open` get a gap in the
// angular sector facing away from the origin.
CombinatorialMap map_from_drawing(const std::vector<std::pair<double, double>>& coords,
                                  const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& open = {});

// Vertex degree as a function of the distance from the root for radially
// symmetric generators (trees); used where balls are too large to build.
struct RadialProfile {
  int base;
  int slope;

  int degree(int r) const { return base + slope * r; }
  // Children of a vertex at distance r.
  int branching(int r) const { return r == 0 ? degree(0) : degree(r) - 1; }
  Rational vertex_curvature(int r) const { return Rational(1) - Rational(degree(r), 2); }
};

}  // namespace curvagraph
