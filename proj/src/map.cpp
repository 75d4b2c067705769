#include "curvagraph/map.hpp"

#include "curvagraph/errors.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <unordered_map>

namespace curvagraph {

std::string FaceDegree::str() const {
  switch (kind) {
    case Kind::finite: return std::to_string(value);
    case Kind::infinite: return "inf";
    case Kind::at_least: return ">=" + std::to_string(value);
    case Kind::unknown: break;
  }
  return "?";
}

VertexId CombinatorialMap::add_vertex(long label) {
  const VertexId v = vertex_count();
  if (label < 0) label = v;
  if (by_label_.count(label)) throw InputError("duplicate vertex id " + std::to_string(label));
  first_.push_back(kNone);
  degree_.push_back(0);
  label_.push_back(label);
  frontier_.push_back(0);
  by_label_[label] = v;
  return v;
}

void CombinatorialMap::link_after(HalfEdgeId h, VertexId v, HalfEdgeId after) {
  if (first_[v] == kNone) {
    first_[v] = h;
    next_[h] = prev_[h] = h;
  } else {
    if (after == kNone) after = prev_[first_[v]];
    const HalfEdgeId n = next_[after];
    next_[after] = h;
    prev_[h] = after;
    next_[h] = n;
    prev_[n] = h;
  }
  ++degree_[v];
}

HalfEdgeId CombinatorialMap::add_edge(VertexId u, VertexId v, HalfEdgeId after_u,
                                      HalfEdgeId after_v) {
  const HalfEdgeId h = halfedge_count();
  for (int i = 0; i < 2; ++i) {
    tail_.push_back(i == 0 ? u : v);
    next_.push_back(kNone);
    prev_.push_back(kNone);
    gap_.push_back(0);
    he_label_.push_back(h + i);
  }
  link_after(h, u, after_u);
  link_after(h + 1, v, after_v);
  return h;
}

void CombinatorialMap::set_first_halfedge(VertexId v, HalfEdgeId h) {
  if (tail_[h] != v) throw InputError("half-edge does not leave vertex");
  first_[v] = h;
}

void CombinatorialMap::set_rotation(VertexId v, const std::vector<HalfEdgeId>& order) {
  if (static_cast<int>(order.size()) != degree_[v]) throw InputError("rotation size mismatch");
  for (HalfEdgeId h : order)
    if (tail_[h] != v) throw InputError("rotation contains foreign half-edge");
  const int k = static_cast<int>(order.size());
  for (int i = 0; i < k; ++i) {
    next_[order[i]] = order[(i + 1) % k];
    prev_[order[(i + 1) % k]] = order[i];
  }
  if (k > 0) first_[v] = order[0];
}

std::vector<HalfEdgeId> CombinatorialMap::rotation(VertexId v) const {
  std::vector<HalfEdgeId> out;
  const HalfEdgeId start = first_[v];
  if (start == kNone) return out;
  HalfEdgeId h = start;
  do {
    out.push_back(h);
    h = next_[h];
  } while (h != start);
  return out;
}

std::vector<VertexId> CombinatorialMap::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (HalfEdgeId h : rotation(v)) out.push_back(head(h));
  return out;
}

int CombinatorialMap::gap_count_at(VertexId v) const {
  int c = 0;
  for (HalfEdgeId h : rotation(v)) c += gap_[h];
  return c;
}

void CombinatorialMap::mark_frontier(VertexId v) {
  frontier_[v] = 1;
  for (HalfEdgeId h : rotation(v)) gap_[h] = 1;
}

std::vector<VertexId> CombinatorialMap::frontier() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_count(); ++v)
    if (is_frontier(v)) out.push_back(v);
  return out;
}

std::optional<VertexId> CombinatorialMap::find_label(long label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

HalfEdgeId CombinatorialMap::find_halfedge(VertexId u, VertexId v) const {
  for (HalfEdgeId h : rotation(u))
    if (head(h) == v) return h;
  return kNone;
}

bool CombinatorialMap::has_edge(VertexId u, VertexId v) const { return find_halfedge(u, v) != kNone; }

bool CombinatorialMap::is_simple() const {
  for (VertexId v = 0; v < vertex_count(); ++v) {
    auto nb = neighbors(v);
    for (VertexId w : nb)
      if (w == v) return false;
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
  }
  return true;
}

bool CombinatorialMap::is_connected() const {
  if (vertex_count() == 0) return true;
  const auto d = bfs_distances(*this, {0});
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

void CombinatorialMap::validate() const {
  if (vertex_count() == 0) throw InputError("no vertices");
  std::vector<int> seen(halfedge_count(), 0);
  for (VertexId v = 0; v < vertex_count(); ++v) {
    for (HalfEdgeId h : rotation(v)) {
      if (tail_[h] != v) throw InputError("rotation slot with wrong tail");
      ++seen[h];
    }
  }
  for (HalfEdgeId h = 0; h < halfedge_count(); ++h) {
    if (seen[h] != 1) throw InputError("half-edge not in exactly one rotation slot");
    if (twin(twin(h)) != h || twin(h) == h) throw InputError("twin is not an involution");
  }
  if (!is_connected()) throw InputError("map is not connected");
}

CombinatorialMap induced_submap(const CombinatorialMap& map, const std::vector<VertexId>& keep,
                                bool truncate, std::vector<VertexId>* new_to_old) {
  std::vector<VertexId> old_to_new(map.vertex_count(), kNone);
  CombinatorialMap out;
  for (VertexId v : keep) {
    if (old_to_new[v] != kNone) throw InputError("duplicate vertex in induced set");
    old_to_new[v] = out.add_vertex(map.label(v));
  }
  std::vector<HalfEdgeId> old_to_new_he(map.halfedge_count(), kNone);
  for (VertexId v : keep) {
    for (HalfEdgeId h : map.rotation(v)) {
      const VertexId w = map.head(h);
      if (old_to_new[w] == kNone || old_to_new_he[h] != kNone) continue;
      const HalfEdgeId nh = out.add_edge(old_to_new[v], old_to_new[w]);
      old_to_new_he[h] = nh;
      old_to_new_he[map.twin(h)] = out.twin(nh);
    }
  }
  for (VertexId v : keep) {
    std::vector<HalfEdgeId> order;
    std::vector<char> gaps;
    bool pending_gap = false;
    bool leading_gap = false;
    for (HalfEdgeId h : map.rotation(v)) {
      if (old_to_new_he[h] == kNone) {
        if (order.empty()) leading_gap = true;
        else pending_gap = true;
        continue;
      }
      if (!gaps.empty() && pending_gap) gaps.back() = 1;
      pending_gap = false;
      order.push_back(old_to_new_he[h]);
      gaps.push_back(map.gap_after(h) ? 1 : 0);
    }
    if (!gaps.empty() && (pending_gap || leading_gap)) gaps.back() = 1;
    const VertexId nv = old_to_new[v];
    out.set_rotation(nv, order);
    if (truncate) {
      for (std::size_t i = 0; i < order.size(); ++i)
        if (gaps[i]) out.set_gap_after(order[i], true);
      if (order.empty() && map.degree(v) > 0) out.mark_frontier(nv);
      if (map.is_frontier(v) && order.empty()) out.mark_frontier(nv);
    }
  }
  if (truncate) out.set_uniform_hint(map.uniform_hint());
  if (new_to_old) *new_to_old = keep;
  return out;
}

std::vector<VertexId> FaceTable::face_vertices(const CombinatorialMap& map, FaceId f) const {
  std::vector<VertexId> out;
  const auto& orbit = faces[f];
  for (HalfEdgeId h : orbit.walk) out.push_back(map.tail(h));
  if (!orbit.complete && !orbit.walk.empty()) out.push_back(map.head(orbit.walk.back()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FaceTable trace_faces(const CombinatorialMap& map) {
  FaceTable table;
  const int nh = map.halfedge_count();
  table.face_of.assign(nh, kNone);
  table.corners_at_vertex.assign(map.vertex_count(), {});

  auto finish = [&](std::vector<HalfEdgeId> walk, bool complete) {
    const FaceId id = table.face_count();
    FaceDegree deg;
    if (complete) {
      deg = FaceDegree::finite(static_cast<long>(walk.size()));
    } else {
      auto it = map.segment_hints().find(walk.front());
      if (it != map.segment_hints().end()) deg = it->second;
      else if (map.uniform_hint()) deg = *map.uniform_hint();
    }
    for (HalfEdgeId h : walk) table.face_of[h] = id;
    std::vector<std::pair<VertexId, int>> counts;
    const std::size_t skip = complete ? 0 : 1;
    for (std::size_t i = skip; i < walk.size(); ++i) {
      const VertexId v = map.tail(walk[i]);
      auto it = std::find_if(counts.begin(), counts.end(), [v](auto& p) { return p.first == v; });
      if (it == counts.end()) counts.emplace_back(v, 1);
      else ++it->second;
    }
    table.corners_of_face.emplace_back();
    for (auto& [v, m] : counts) {
      const int ci = static_cast<int>(table.corners.size());
      table.corners.push_back({v, id, m});
      table.corners_at_vertex[v].push_back(ci);
      table.corners_of_face.back().push_back(ci);
    }
    table.faces.push_back({id, std::move(walk), deg, complete});
  };

  for (HalfEdgeId h = 0; h < nh; ++h) {
    if (!map.gap_after(map.rot_prev(h))) continue;
    std::vector<HalfEdgeId> walk;
    HalfEdgeId cur = h;
    while (true) {
      walk.push_back(cur);
      if (map.gap_after(map.twin(cur))) break;
      cur = map.face_next(cur);
    }
    finish(std::move(walk), false);
  }
  for (HalfEdgeId h = 0; h < nh; ++h) {
    if (table.face_of[h] != kNone) continue;
    std::vector<HalfEdgeId> walk;
    HalfEdgeId cur = h;
    do {
      walk.push_back(cur);
      table.face_of[cur] = -2;
      cur = map.face_next(cur);
    } while (cur != h);
    finish(std::move(walk), true);
  }
  return table;
}

std::vector<int> bfs_distances(const CombinatorialMap& map, const std::vector<VertexId>& sources) {
  std::vector<int> dist(map.vertex_count(), -1);
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    if (s < 0 || s >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(s));
    if (dist[s] == 0) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (HalfEdgeId h : map.rotation(v)) {
      const VertexId w = map.head(h);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int faithful_radius(const CombinatorialMap& map, const std::vector<VertexId>& sources) {
  const auto dist = bfs_distances(map, sources);
  int best = INT_MAX / 4;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (dist[v] >= 0 && map.is_frontier(v)) best = std::min(best, dist[v]);
  return best;
}

int BallDecomposition::ball_size(int k) const {
  int total = 0;
  for (int i = 0; i <= k && i < static_cast<int>(spheres.size()); ++i)
    total += static_cast<int>(spheres[i].size());
  return total;
}

BallDecomposition ball(const CombinatorialMap& map, const FaceTable& faces, VertexId v0, int n) {
  if (v0 < 0 || v0 >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v0));
  if (n > faithful_radius(map, {v0}))
    throw PreconditionError("radius " + std::to_string(n) + " exceeds the faithful region");
  BallDecomposition b;
  b.root = v0;
  b.radius = n;
  b.dist = bfs_distances(map, {v0});
  b.spheres.assign(n + 1, {});
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (b.dist[v] >= 0 && b.dist[v] <= n) b.spheres[b.dist[v]].push_back(v);

  std::vector<int> lo(faces.face_count(), INT_MAX), hi(faces.face_count(), -1);
  for (const auto& f : faces.faces) {
    for (VertexId v : faces.face_vertices(map, f.id)) {
      const int d = b.dist[v] < 0 ? INT_MAX / 2 : b.dist[v];
      lo[f.id] = std::min(lo[f.id], d);
      hi[f.id] = std::max(hi[f.id], d);
    }
  }
  b.boundary_faces.assign(n + 1, {});
  for (int k = 0; k <= n; ++k)
    for (const auto& f : faces.faces)
      if (lo[f.id] <= k && (hi[f.id] > k || !f.complete)) b.boundary_faces[k].push_back(f.id);
  return b;
}

}  // namespace curvagraph
