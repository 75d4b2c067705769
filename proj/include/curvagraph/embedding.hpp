#pragma once

#include "curvagraph/map.hpp"
#include "curvagraph/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace curvagraph {

// W is simply connected: G_W is connected and every component of the rest
// of the materialized map reaches the frontier (or the rest is connected
// when the map is closed).
bool is_simply_connected(const CombinatorialMap& map, const std::vector<VertexId>& W);

int set_diameter(const CombinatorialMap& map, const std::vector<VertexId>& W);

struct ClosingParameter {
  long value;       // ceiling of max{6, 2 diam W, (2 + min |v|) / eps}
  int diameter;
  int min_degree;   // over the materialized interior vertices
};
ClosingParameter closing_parameter(const CombinatorialMap& map, const std::vector<VertexId>& W,
                                   const Rational& eps);

struct ClosedFace {
  int level;         // n at which the face was closed
  VertexId a, b;     // endpoints of the added edge
  long degree;       // degree of the new polygon
};

struct PendingFace {
  VertexId first, last;  // ends of f cap B_M
  long size;             // |f cap B_M(W)|
};

struct EmbeddingResult {
  CombinatorialMap supergraph;
  std::vector<std::pair<VertexId, VertexId>> correspondence;  // v -> v'
  std::vector<VertexId> W;
  Rational epsilon;
  ClosingParameter closing{};
  int materialized_radius = 0;  // Step 2 performed for n = 1..materialized_radius
  std::vector<std::pair<VertexId, int>> added_trees;  // (v, number of trees)
  int tree_vertex_count = 0;
  int original_vertex_count = 0;
  std::vector<ClosedFace> closed_faces;
  std::vector<PendingFace> pending_faces;  // unbounded faces still open at radius M
};

struct EmbedOptions {
  int horizon = 30;
  long vertex_budget = 200000;
};

// Steps 1 and 2 on a faithful ball of a simple locally tessellating graph.
// Throws PreconditionError on positive curvature, on W that is not simply
// connected, or when the two vertices of f cap S_n(W) are not unique.
EmbeddingResult embed(const CombinatorialMap& map, const std::vector<VertexId>& W, const Rational& eps,
                      const EmbedOptions& options = {});

struct PropertyCheck {
  std::string name;
  bool applicable = true;
  bool passed = true;
  int checked = 0;
  std::vector<std::string> failures;
};

struct EmbeddingReport {
  std::vector<PropertyCheck> properties;  // G1..G5
  bool closed_faces_large = true;         // |g| >= max{6, 1/eps}
  bool tree_vertices_ok = true;           // |w| >= 3 for interior tree vertices
  bool complete_faces_polygons = true;

  bool all_passed() const;
};

EmbeddingReport verify_properties(const EmbeddingResult& result, const CombinatorialMap& original);

}  // namespace curvagraph
