#include "curvagraph/graph_io.hpp"

#include "curvagraph/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace curvagraph {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

long parse_id(const std::string& tok, int line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
    fail(line, "syntax error: expected a non-negative integer, got '" + tok + "'");
  try {
    return std::stol(tok);
  } catch (const std::exception&) {
    fail(line, "syntax error: integer out of range '" + tok + "'");
  }
}

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    // "v 3:" and "frontier:" keep the colon attached to the preceding word
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (raw[i] == ':') raw.insert(i + 1, " "), ++i;
    std::istringstream ls(raw);
    Line l{number, {}};
    std::string tok;
    while (ls >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) lines.push_back(std::move(l));
  }
  return lines;
}

FaceDegree parse_hint(const std::string& tok, int line) {
  if (tok == "inf") return FaceDegree::infinite();
  const long d = parse_id(tok, line);
  if (d < 1) fail(line, "face hint must be positive");
  return FaceDegree::finite(d);
}

std::string vertex_ref(long id) { return std::to_string(id); }

}  // namespace

CombinatorialMap parse_map(const std::string& text) {
  const auto lines = tokenize(text);

  struct VLine {
    int line;
    long id;
    std::vector<long> nbrs;
    std::vector<char> gap_after;  // per neighbor slot
  };
  struct HLine {
    int line;
    long id, tail, twin;
  };
  std::vector<VLine> vlines;
  std::vector<HLine> hlines;
  std::vector<std::pair<int, long>> frontier_ids;
  std::optional<FaceDegree> hint;

  for (const auto& l : lines) {
    const auto& t = l.tokens;
    if (t[0] == "v") {
      if (t.size() < 2 || t[1].size() < 2 || t[1].back() != ':')
        fail(l.number, "syntax error: expected 'v <id>: <neighbors>'");
      VLine v{l.number, parse_id(t[1].substr(0, t[1].size() - 1), l.number), {}, {}};
      bool leading_gap = false;
      for (std::size_t i = 2; i < t.size(); ++i) {
        if (t[i] == "*") {
          if (v.nbrs.empty()) leading_gap = true;
          else v.gap_after.back() = 1;
          continue;
        }
        v.nbrs.push_back(parse_id(t[i], l.number));
        v.gap_after.push_back(0);
      }
      if (leading_gap && !v.nbrs.empty()) v.gap_after.back() = 1;
      if (leading_gap && v.nbrs.empty()) frontier_ids.emplace_back(l.number, v.id);
      vlines.push_back(std::move(v));
    } else if (t[0] == "h") {
      if (t.size() != 4) fail(l.number, "syntax error: expected 'h <id> <tail> <twin>'");
      hlines.push_back({l.number, parse_id(t[1], l.number), parse_id(t[2], l.number),
                        parse_id(t[3], l.number)});
    } else if (t[0] == "frontier:") {
      for (std::size_t i = 1; i < t.size(); ++i)
        frontier_ids.emplace_back(l.number, parse_id(t[i], l.number));
    } else if (t[0] == "facehint:") {
      if (t.size() != 2) fail(l.number, "syntax error: expected 'facehint: <deg|inf>'");
      hint = parse_hint(t[1], l.number);
    } else {
      fail(l.number, "syntax error: unknown directive '" + t[0] + "'");
    }
  }
  if (!vlines.empty() && !hlines.empty())
    fail(hlines.front().line, "syntax error: v lines and h lines cannot be mixed");
  if (vlines.empty() && hlines.empty()) throw InputError("no vertices");

  CombinatorialMap map;
  std::set<long> explicit_gaps;
  if (!vlines.empty()) {
    for (const auto& v : vlines) {
      if (map.find_label(v.id)) fail(v.line, "duplicate vertex id " + vertex_ref(v.id));
      map.add_vertex(v.id);
    }
    std::map<std::pair<VertexId, VertexId>, HalfEdgeId> he;
    for (const auto& v : vlines) {
      const VertexId a = *map.find_label(v.id);
      std::set<long> seen;
      for (long n : v.nbrs) {
        if (!seen.insert(n).second)
          fail(v.line, "repeated neighbor " + vertex_ref(n) + " (use h lines for multi-edges)");
        if (n == v.id) fail(v.line, "loop at " + vertex_ref(n) + " (use h lines for loops)");
        auto b = map.find_label(n);
        if (!b) fail(v.line, "dangling neighbor reference " + vertex_ref(n));
        if (he.count({a, *b})) continue;
        const HalfEdgeId h = map.add_edge(a, *b);
        he[{a, *b}] = h;
        he[{*b, a}] = map.twin(h);
      }
    }
    for (const auto& v : vlines) {
      const VertexId a = *map.find_label(v.id);
      std::vector<HalfEdgeId> order;
      for (long n : v.nbrs) order.push_back(he.at({a, *map.find_label(n)}));
      if (static_cast<int>(order.size()) != map.degree(a)) {
        for (const auto& [key, h] : he) {
          if (key.first != a) continue;
          if (std::find(v.nbrs.begin(), v.nbrs.end(), map.label(key.second)) == v.nbrs.end())
            fail(v.line, "pairing error: " + vertex_ref(map.label(key.second)) + " lists " +
                             vertex_ref(v.id) + " but not vice versa");
        }
      }
      map.set_rotation(a, order);
      for (std::size_t i = 0; i < order.size(); ++i)
        if (v.gap_after[i]) {
          map.set_gap_after(order[i], true);
          explicit_gaps.insert(v.id);
        }
    }
  } else {
    std::map<long, const HLine*> by_id;
    for (const auto& h : hlines) {
      if (!by_id.emplace(h.id, &h).second) fail(h.line, "duplicate half-edge id");
      if (!map.find_label(h.tail)) map.add_vertex(h.tail);
    }
    std::map<long, HalfEdgeId> internal;
    for (const auto& h : hlines) {
      if (h.twin == h.id) fail(h.line, "pairing error: half-edge is its own twin");
      auto it = by_id.find(h.twin);
      if (it == by_id.end()) fail(h.line, "pairing error: unpaired half-edge " + vertex_ref(h.id));
      if (it->second->twin != h.id) fail(h.line, "pairing error: twin relation is not symmetric");
      if (internal.count(h.id)) continue;
      const HalfEdgeId e = map.add_edge(*map.find_label(h.tail), *map.find_label(it->second->tail));
      internal[h.id] = e;
      internal[h.twin] = map.twin(e);
      map.set_halfedge_label(e, h.id);
      map.set_halfedge_label(map.twin(e), h.twin);
    }
    std::map<VertexId, std::vector<HalfEdgeId>> rot;
    for (const auto& h : hlines) rot[*map.find_label(h.tail)].push_back(internal[h.id]);
    for (auto& [v, order] : rot) map.set_rotation(v, order);
  }

  for (const auto& [line, id] : frontier_ids) {
    auto v = map.find_label(id);
    if (!v) fail(line, "frontier lists unknown vertex " + vertex_ref(id));
    if (!explicit_gaps.count(id)) map.mark_frontier(*v);
  }
  map.set_uniform_hint(hint);
  map.validate();
  return map;
}

std::string serialize_map(const CombinatorialMap& map) {
  std::vector<VertexId> order(map.vertex_count());
  for (VertexId v = 0; v < map.vertex_count(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return map.label(a) < map.label(b); });
  std::ostringstream out;
  if (map.is_simple()) {
    for (VertexId v : order) {
      out << "v " << map.label(v) << ":";
      const auto rot = map.rotation(v);
      const bool all_gaps = !rot.empty() && std::all_of(rot.begin(), rot.end(), [&](HalfEdgeId h) {
        return map.gap_after(h);
      });
      for (HalfEdgeId h : rot) {
        out << ' ' << map.label(map.head(h));
        if (map.gap_after(h) && !all_gaps) out << " *";
      }
      out << '\n';
    }
  } else {
    for (VertexId v : order)
      for (HalfEdgeId h : map.rotation(v))
        out << "h " << map.halfedge_label(h) << ' ' << map.label(v) << ' '
            << map.halfedge_label(map.twin(h)) << '\n';
  }
  std::vector<long> frontier;
  for (VertexId v : map.frontier()) frontier.push_back(map.label(v));
  std::sort(frontier.begin(), frontier.end());
  if (!frontier.empty()) {
    out << "frontier:";
    for (long id : frontier) out << ' ' << id;
    out << '\n';
  }
  if (map.uniform_hint()) out << "facehint: " << map.uniform_hint()->str() << '\n';
  return out.str();
}

CombinatorialMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str());
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string serialize_with_correspondence(const CombinatorialMap& map,
                                          const std::vector<std::pair<long, long>>& correspondence) {
  std::string text = serialize_map(map);
  for (const auto& [a, b] : correspondence)
    text += "map " + std::to_string(a) + " " + std::to_string(b) + "\n";
  return text;
}

std::pair<CombinatorialMap, std::vector<std::pair<long, long>>> parse_with_correspondence(
    const std::string& text) {
  std::istringstream in(text);
  std::string line, graph;
  std::vector<std::pair<long, long>> corr;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.rfind("map ", 0) == 0) {
      std::istringstream ls(line.substr(4));
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra)) fail(number, "syntax error: expected 'map <v> <v'>'");
      corr.emplace_back(parse_id(a, number), parse_id(b, number));
      graph += "\n";
    } else {
      graph += line + "\n";
    }
  }
  return {parse_map(graph), corr};
}

}  // namespace curvagraph
