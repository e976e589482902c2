#include "mapforge/geodesics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mapforge {

Adjacency::Adjacency(const PlanarMap& m) {
  const std::size_t V = m.vertex_count();
  offset.assign(V + 1, 0);
  target.resize(m.half_edge_count());
  std::size_t pos = 0;
  for (std::size_t v = 0; v < V; ++v) {
    offset[v] = static_cast<std::uint32_t>(pos);
    const HalfEdgeId h0 = m.first_half_edge(static_cast<VertexId>(v));
    HalfEdgeId h = h0;
    do {
      target[pos++] = m.target(h);
      h = m.next_cw(h);
    } while (h != h0);
  }
  offset[V] = static_cast<std::uint32_t>(pos);
}

std::vector<std::int32_t> bfs_distance(const Adjacency& adj, VertexId source) {
  const std::size_t V = adj.vertex_count();
  std::vector<std::int32_t> dist(V, -1);
  std::vector<VertexId> queue(V);
  std::size_t head = 0, tail = 0;
  dist[source] = 0;
  queue[tail++] = source;
  while (head < tail) {
    const VertexId u = queue[head++];
    const std::int32_t du = dist[u] + 1;
    for (std::uint32_t k = adj.offset[u]; k < adj.offset[u + 1]; ++k) {
      const VertexId x = adj.target[k];
      if (dist[x] < 0) {
        dist[x] = du;
        queue[tail++] = x;
      }
    }
  }
  return dist;
}

std::vector<std::int32_t> bfs_distance(const PlanarMap& m, VertexId source) {
  return bfs_distance(Adjacency(m), source);
}

std::vector<VertexId> geodesic_to(const Adjacency& adj, const std::vector<std::int32_t>& dist, VertexId from) {
  std::vector<VertexId> path{from};
  VertexId u = from;
  while (dist[u] > 0) {
    VertexId best = kNoVertex;
    for (std::uint32_t k = adj.offset[u]; k < adj.offset[u + 1]; ++k) {
      const VertexId x = adj.target[k];
      if (dist[x] == dist[u] - 1 && (best == kNoVertex || x < best)) best = x;
    }
    u = best;
    path.push_back(u);
  }
  return path;
}

namespace {

// First half-edge clockwise after `from` (exclusive) at its vertex that
// satisfies pred.
template <class Pred>
HalfEdgeId first_after(const PlanarMap& m, HalfEdgeId from, Pred pred) {
  HalfEdgeId g = m.next_cw(from);
  for (std::uint32_t s = 0; s < m.degree(m.vertex_of(from)); ++s, g = m.next_cw(g))
    if (g != from && pred(g)) return g;
  return kNoHalfEdge;
}

HalfEdgeId half_edge_between(const PlanarMap& m, VertexId x, VertexId y) {
  const HalfEdgeId h0 = m.first_half_edge(x);
  HalfEdgeId h = h0;
  do {
    if (m.target(h) == y) return h;
    h = m.next_cw(h);
  } while (h != h0);
  return kNoHalfEdge;
}

// Clockwise steps from `start` to `h` around their common vertex.
std::uint32_t cw_position(const PlanarMap& m, HalfEdgeId start, HalfEdgeId h) {
  std::uint32_t p = 0;
  for (HalfEdgeId g = start; g != h; g = m.next_cw(g)) ++p;
  return p;
}

template <class Pred>
OrientedPath walk_leftmost(const PlanarMap& m, VertexId A, HalfEdgeId h, Pred allowed) {
  OrientedPath p;
  p.vertices.push_back(m.vertex_of(h));
  HalfEdgeId cur = h;
  const std::size_t limit = m.vertex_count() + 1;
  for (;;) {
    p.half_edges.push_back(cur);
    const VertexId x = m.target(cur);
    p.vertices.push_back(x);
    if (x == A) break;
    if (p.vertices.size() > limit) throw std::logic_error("leftmost path does not reach A");
    cur = first_after(m, twin(cur), allowed);
    if (cur == kNoHalfEdge) throw std::logic_error("leftmost path is stuck at vertex " + std::to_string(x));
  }
  return p;
}

}  // namespace

OrientedPath leftmost_path(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B, HalfEdgeId h) {
  if (h < 0 || static_cast<std::size_t>(h) >= m.half_edge_count()) throw DomainError("leftmost_path: no such half-edge");
  if (!ori.is_out(h)) throw DomainError("leftmost_path: half-edge is not directed by the orientation");
  if (m.vertex_of(h) == B) throw DomainError("leftmost_path: edge starts at B");
  return walk_leftmost(m, A, h, [&](HalfEdgeId g) { return ori.is_out(g); });
}

OrientedPath modified_leftmost_path(const PlanarMap& m, const EdgeOrientation& ori,
                                    const std::vector<std::uint8_t>& inner_tree_edge, VertexId A, HalfEdgeId h) {
  if (h < 0 || static_cast<std::size_t>(h) >= m.half_edge_count()) throw DomainError("modified_leftmost_path: no such half-edge");
  return walk_leftmost(m, A, h, [&](HalfEdgeId g) { return ori.is_out(g) || inner_tree_edge[edge_of(g)]; });
}

std::vector<std::int32_t> leftmost_lengths(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B) {
  const std::size_t H = m.half_edge_count();
  std::vector<std::int32_t> len(H, 0);
  std::vector<std::uint8_t> state(H, 0);  // 0 new, 1 on stack, 2 done
  std::vector<HalfEdgeId> chain;
  for (std::size_t s = 0; s < H; ++s) {
    const auto h0 = static_cast<HalfEdgeId>(s);
    if (!ori.is_out(h0) || state[h0] == 2) continue;
    chain.clear();
    HalfEdgeId h = h0;
    std::int32_t base = 0;
    for (;;) {
      if (state[h] == 2) {
        base = len[h];
        break;
      }
      if (state[h] == 1) throw std::logic_error("leftmost path revisits an edge");
      state[h] = 1;
      chain.push_back(h);
      if (m.target(h) == A) {
        base = 1;  // counts the vertex A
        break;
      }
      h = first_after(m, twin(h), [&](HalfEdgeId g) { return ori.is_out(g); });
      if (h == kNoHalfEdge) throw std::logic_error("leftmost path is stuck");
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      len[*it] = ++base;
      state[*it] = 2;
    }
  }
  for (std::size_t s = 0; s < H; ++s)
    if (ori.is_out(static_cast<HalfEdgeId>(s)) && m.vertex_of(static_cast<HalfEdgeId>(s)) == B) len[s] = 0;
  return len;
}

TwoPointBound::TwoPointBound(const ClosureResult& c) : Y_(c.Y) {
  const std::size_t L = c.contour_vertex.size();
  std::vector<std::int32_t> y(L);
  first_.assign(c.map.vertex_count(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < L; ++i) {
    const VertexId mv = c.map_vertex[c.contour_vertex[i]];
    if (mv == kNoVertex) {
      y[i] = c.contour_label[i];  // a blossom's only corner
    } else {
      y[i] = c.Y[mv];
      if (first_[mv] == std::numeric_limits<std::uint32_t>::max()) first_[mv] = static_cast<std::uint32_t>(i);
    }
  }
  table_.push_back(std::move(y));
  for (std::size_t w = 1; 2 * w <= L; w *= 2) {
    const auto& prev = table_.back();
    std::vector<std::int32_t> next(L - 2 * w + 1);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
    table_.push_back(std::move(next));
  }
}

std::int32_t TwoPointBound::range_min(std::size_t lo, std::size_t hi) const {
  const std::size_t len = hi - lo + 1;
  const std::size_t k = std::bit_width(len) - 1;
  return std::min(table_[k][lo], table_[k][hi + 1 - (std::size_t{1} << k)]);
}

std::int32_t TwoPointBound::operator()(VertexId u, VertexId v) const {
  if (u == v) return 2;
  std::size_t fu = first_[u], fv = first_[v];
  if (fu == std::numeric_limits<std::uint32_t>::max() || fv == std::numeric_limits<std::uint32_t>::max())
    throw PreconditionError("two-point bound needs inner vertices");
  if (fu > fv) std::swap(fu, fv);
  const std::size_t L = table_.front().size();
  const std::int32_t inside = range_min(fu, fv);
  const std::int32_t outside = std::min(range_min(0, fu), range_min(fv, L - 1));
  return Y_[u] + Y_[v] - 2 * std::max(inside, outside) + 2;
}

namespace {

std::vector<HalfEdgeId> path_half_edges(const PlanarMap& m, const std::vector<VertexId>& Q) {
  std::vector<HalfEdgeId> hs;
  for (std::size_t s = 0; s + 1 < Q.size(); ++s) {
    const HalfEdgeId h = half_edge_between(m, Q[s], Q[s + 1]);
    if (h == kNoHalfEdge) throw DomainError("path: vertices " + std::to_string(Q[s]) + " and " + std::to_string(Q[s + 1]) + " are not adjacent");
    hs.push_back(h);
  }
  return hs;
}

void check_path(const PlanarMap& m, VertexId A, HalfEdgeId h, const std::vector<VertexId>& Q) {
  if (Q.empty() || Q.front() != m.vertex_of(h)) throw DomainError("winding: path does not start at the tail of e");
  if (Q.back() != A) throw DomainError("winding: path does not end at A");
  std::vector<VertexId> sorted(Q);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DomainError("winding: path is not simple");
}

}  // namespace

WindingDecomposition winding_number(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B,
                                    HalfEdgeId h, const std::vector<VertexId>& Q) {
  check_path(m, A, h, Q);
  path_half_edges(m, Q);
  const OrientedPath P = leftmost_path(m, ori, A, B, h);
  const std::size_t ell = P.vertices.size() - 1;
  std::vector<std::int32_t> pos(m.vertex_count(), -1);
  for (std::size_t i = 0; i <= ell; ++i) pos[P.vertices[i]] = static_cast<std::int32_t>(i);
  const VertexId root = m.root_vertex();
  auto he = [&](VertexId x, VertexId y) { return half_edge_between(m, x, y); };

  WindingDecomposition out;
  std::size_t s = 0;
  while (s + 1 < Q.size()) {
    const std::int32_t ps = pos[Q[s]];
    const std::int32_t pn = pos[Q[s + 1]];
    if (pn >= 0 && std::abs(pn - ps) == 1) {
      std::size_t t = s + 1;
      while (t + 1 < Q.size() && pos[Q[t + 1]] >= 0 && std::abs(pos[Q[t + 1]] - pos[Q[t]]) == 1 &&
             (pos[Q[t + 1]] - pos[Q[t]]) == (pn - ps))
        ++t;
      out.pieces.push_back({0, static_cast<std::size_t>(ps), static_cast<std::size_t>(pos[Q[t]]), pn < ps});
      s = t;
      continue;
    }
    std::size_t t = s + 1;
    while (pos[Q[t]] < 0) ++t;
    std::vector<VertexId> R(Q.begin() + static_cast<std::ptrdiff_t>(s), Q.begin() + static_cast<std::ptrdiff_t>(t) + 1);
    std::size_t i = static_cast<std::size_t>(pos[R.front()]), j = static_cast<std::size_t>(pos[R.back()]);
    const bool reversed = i > j;
    if (reversed) {
      std::reverse(R.begin(), R.end());
      std::swap(i, j);
    }
    const std::size_t k = R.size() - 1;
    bool leaves_right = false;
    if (i > 0) {
      const HalfEdgeId start = he(P.vertices[i], P.vertices[i - 1]);
      leaves_right = cw_position(m, start, he(P.vertices[i], P.vertices[i + 1])) < cw_position(m, start, he(R[0], R[1]));
    }
    const HalfEdgeId start_j = he(P.vertices[j], P.vertices[j - 1]);
    const HalfEdgeId chat = j < ell ? he(P.vertices[j], P.vertices[j + 1]) : he(A, root);
    const bool returns_right = cw_position(m, start_j, chat) < cw_position(m, start_j, he(R[k], R[k - 1]));
    int type;
    if (leaves_right)
      type = returns_right ? 4 : 1;
    else
      type = returns_right ? 3 : 2;
    ++(reversed ? out.count_reversed : out.count)[type];
    out.pieces.push_back({type, i, j, reversed});
    s = t;
  }
  // Walking an excursion backwards reverses the loop it closes with P(e).
  out.w = out.count[3] - out.count[1] - (out.count_reversed[3] - out.count_reversed[1]);
  return out;
}

DualTree::DualTree(const PlanarMap& m) : parent(m.face_count(), kNoHalfEdge) {
  const std::size_t F = m.face_count();
  std::vector<std::uint8_t> seen(F, 0);
  std::vector<FaceId> queue{m.root_face()};
  queue.reserve(F);
  seen[m.root_face()] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const HalfEdgeId g0 = m.face_first(queue[qi]);
    HalfEdgeId g = g0;
    do {
      const FaceId f2 = m.face_of(twin(g));
      if (!seen[f2]) {
        seen[f2] = 1;
        parent[f2] = g;
        queue.push_back(f2);
      }
      g = m.face_next(g);
    } while (g != g0);
  }
}

int winding_by_crossings(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B, HalfEdgeId h,
                         const std::vector<VertexId>& Q, const DualTree& dual) {
  check_path(m, A, h, Q);
  const OrientedPath P = leftmost_path(m, ori, A, B, h);
  // Half-edges of the closed walk Q followed by reversed P, with multiplicity.
  std::vector<HalfEdgeId> used = path_half_edges(m, Q);
  for (HalfEdgeId g : P.half_edges) used.push_back(twin(g));
  std::sort(used.begin(), used.end());
  auto count = [&](HalfEdgeId g) {
    const auto [lo, hi] = std::equal_range(used.begin(), used.end(), g);
    return static_cast<int>(hi - lo);
  };
  int w = 0;
  for (FaceId f = m.face_of(twin(h)); dual.parent[f] != kNoHalfEdge; f = m.face_of(dual.parent[f])) {
    const HalfEdgeId g = dual.parent[f];
    // Crossing from the left of g to its right.
    w += count(twin(g)) - count(g);
  }
  return w;
}

int winding_by_crossings(const PlanarMap& m, const EdgeOrientation& ori, VertexId A, VertexId B, HalfEdgeId h,
                         const std::vector<VertexId>& Q) {
  return winding_by_crossings(m, ori, A, B, h, Q, DualTree(m));
}

LabelDistanceProfile label_distance_profile(const std::vector<std::int32_t>& Y, const std::vector<std::int32_t>& distA) {
  LabelDistanceProfile p;
  double sum = 0;
  for (std::size_t u = 0; u < Y.size(); ++u) {
    const std::int32_t err = (Y[u] - 1) - distA[u];
    p.max_err = std::max(p.max_err, err);
    sum += err;
    if (err < 0 || 3 * distA[u] < Y[u]) ++p.sandwich_violations;
  }
  p.mean_err = Y.empty() ? 0.0 : sum / static_cast<double>(Y.size());
  p.max_err_scaled = static_cast<double>(p.max_err) / std::pow(static_cast<double>(Y.size()), 0.25);
  return p;
}

}  // namespace mapforge
