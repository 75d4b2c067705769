#pragma once

#include "curvagraph/map.hpp"

#include <string>
#include <utility>
#include <vector>

namespace curvagraph {

// Line format:
//   v <id>: <n1> ... <nk>   neighbors in counterclockwise order; a `*` token
//                           marks missing neighbors between its two sides
//   h <id> <tail> <twin>    half-edge form for loops and multi-edges; the order
//                           of lines with a common tail is the rotation
//   frontier: <id> ...      truncated vertices (all slots gaps unless `*` used)
//   facehint: <deg|inf>     degree of incomplete faces
// `#` starts a comment. A file uses either v lines or h lines.
CombinatorialMap parse_map(const std::string& text);
std::string serialize_map(const CombinatorialMap& map);

CombinatorialMap load_map(const std::string& path);
void save_text(const std::string& path, const std::string& text);

// Graph text followed by `map <v> <v'>` correspondence lines.
std::string serialize_with_correspondence(const CombinatorialMap& map,
                                          const std::vector<std::pair<long, long>>& correspondence);
std::pair<CombinatorialMap, std::vector<std::pair<long, long>>> parse_with_correspondence(
    const std::string& text);

}  // namespace curvagraph
