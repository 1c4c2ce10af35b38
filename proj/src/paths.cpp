#include "cactus/paths.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace cactus {
namespace {

struct QueueItem {
  Ticks dist;
  VertexId source;
  VertexId vertex;
  bool operator>(const QueueItem& o) const {
    return std::tie(dist, source, vertex) > std::tie(o.dist, o.source, o.vertex);
  }
};

using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

void dijkstra_into(const MetricGraph& g, std::span<const VertexId> sources, const VertexMask* allowed, Ticks limit,
                   std::vector<Ticks>& dist, std::vector<VertexId>* nearest) {
  const std::size_t n = g.vertex_count();
  dist.assign(n, kUnreachable);
  if (nearest) nearest->assign(n, kNoVertex);
  MinQueue queue;
  for (VertexId s : sources) {
    if (allowed && !allowed->contains(s)) continue;
    if (dist[s] == 0 && nearest && (*nearest)[s] <= s) continue;
    dist[s] = 0;
    if (nearest) (*nearest)[s] = s;
    queue.push({0, s, s});
  }
  while (!queue.empty()) {
    auto [d, src, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    if (nearest && (*nearest)[v] != src) continue;
    for (const auto& a : g.neighbors(v)) {
      if (allowed && !allowed->contains(a.to)) continue;
      Ticks nd = d + a.length;
      if (nd > limit) continue;
      if (nd < dist[a.to] || (nearest && nd == dist[a.to] && src < (*nearest)[a.to])) {
        dist[a.to] = nd;
        if (nearest) (*nearest)[a.to] = src;
        queue.push({nd, src, a.to});
      }
    }
  }
}

// Walk from u towards the zero-distance set of `to_target`, always taking
// the smallest-id neighbour that stays on a geodesic.
std::vector<VertexId> greedy_walk(const MetricGraph& g, VertexId u, std::span<const Ticks> to_target,
                                  const VertexMask* allowed) {
  std::vector<VertexId> path;
  if (to_target[u] == kUnreachable) return path;
  path.push_back(u);
  VertexId cur = u;
  while (to_target[cur] != 0) {
    VertexId next = kNoVertex;
    for (const auto& a : g.neighbors(cur)) {
      if (allowed && !allowed->contains(a.to)) continue;
      if (to_target[a.to] != kUnreachable && to_target[a.to] + a.length == to_target[cur]) {
        next = a.to;
        break;
      }
    }
    if (next == kNoVertex) throw std::logic_error("geodesic walk lost its way");
    path.push_back(next);
    cur = next;
  }
  return path;
}

}  // namespace

ShortestPathTree shortest_path_tree(const MetricGraph& g, std::span<const VertexId> sources,
                                    const VertexMask* allowed, Ticks limit) {
  ShortestPathTree t;
  dijkstra_into(g, sources, allowed, limit, t.dist, &t.nearest);
  return t;
}

std::vector<Ticks> distances_from(const MetricGraph& g, VertexId source, const VertexMask* allowed) {
  std::vector<Ticks> dist;
  VertexId s[1] = {source};
  dijkstra_into(g, s, allowed, kUnreachable, dist, nullptr);
  return dist;
}

std::vector<Ticks> distances_from(const MetricGraph& g, std::span<const VertexId> sources, const VertexMask* allowed,
                                  Ticks limit) {
  std::vector<Ticks> dist;
  dijkstra_into(g, sources, allowed, limit, dist, nullptr);
  return dist;
}

std::vector<Ticks> distances_from_points(const MetricGraph& g, std::span<const PointRef> sources) {
  const std::size_t n = g.vertex_count();
  std::vector<Ticks> dist(n, kUnreachable);
  MinQueue queue;
  auto seed = [&](VertexId v, Ticks d) {
    if (d < dist[v]) {
      dist[v] = d;
      queue.push({d, 0, v});
    }
  };
  for (const auto& p : sources) {
    if (!g.contains(p)) throw std::out_of_range("point not in graph");
    if (p.is_vertex()) {
      seed(p.vertex, 0);
    } else {
      const Edge& e = g.edge(p.edge);
      seed(e.u, p.offset);
      seed(e.v, e.length - p.offset);
    }
  }
  while (!queue.empty()) {
    auto [d, src, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const auto& a : g.neighbors(v)) {
      Ticks nd = d + a.length;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, 0, a.to});
      }
    }
  }
  return dist;
}

Ticks distance(const MetricGraph& g, const PointRef& u, const PointRef& v) {
  if (!g.contains(u) || !g.contains(v)) throw std::out_of_range("point not in graph");
  PointRef src[1] = {u};
  auto dist = distances_from_points(g, src);
  Ticks best;
  if (v.is_vertex()) {
    best = dist[v.vertex];
  } else {
    const Edge& e = g.edge(v.edge);
    best = std::min(dist[e.u] + v.offset, dist[e.v] + e.length - v.offset);
  }
  if (!u.is_vertex() && !v.is_vertex() && u.edge == v.edge) {
    best = std::min(best, u.offset > v.offset ? u.offset - v.offset : v.offset - u.offset);
  }
  return best;
}

Ticks distance(const MetricGraph& g, VertexId u, VertexId v) { return distances_from(g, u)[v]; }

std::vector<VertexId> shortest_path(const MetricGraph& g, VertexId u, VertexId v, const VertexMask* allowed) {
  if (allowed && (!allowed->contains(u) || !allowed->contains(v))) return {};
  auto to_v = distances_from(g, v, allowed);
  return greedy_walk(g, u, to_v, allowed);
}

std::vector<VertexId> shortest_path_to_set(const MetricGraph& g, VertexId u, std::span<const VertexId> targets,
                                           const VertexMask* allowed) {
  if (allowed && !allowed->contains(u)) return {};
  auto from_u = distances_from(g, u, allowed);
  VertexId best = kNoVertex;
  for (VertexId t : targets) {
    if (from_u[t] == kUnreachable) continue;
    if (best == kNoVertex || from_u[t] < from_u[best] || (from_u[t] == from_u[best] && t < best)) best = t;
  }
  if (best == kNoVertex) return {};
  auto to_best = distances_from(g, best, allowed);
  return greedy_walk(g, u, to_best, allowed);
}

std::vector<PointRef> shortest_path(const MetricGraph& g, const PointRef& u, const PointRef& v) {
  std::vector<PointRef> out;
  if (u == v) return {u};
  if (!u.is_vertex() && !v.is_vertex() && u.edge == v.edge &&
      distance(g, u, v) == (u.offset > v.offset ? u.offset - v.offset : v.offset - u.offset)) {
    return {u, v};
  }
  // Choose the endpoint of each edge point that realizes the distance.
  auto candidates = [&](const PointRef& p) {
    std::vector<std::pair<VertexId, Ticks>> c;
    if (p.is_vertex()) {
      c.emplace_back(p.vertex, 0);
    } else {
      const Edge& e = g.edge(p.edge);
      c.emplace_back(e.u, p.offset);
      c.emplace_back(e.v, e.length - p.offset);
    }
    return c;
  };
  Ticks total = distance(g, u, v);
  for (auto [a, da] : candidates(u)) {
    auto from_a = distances_from(g, a);
    for (auto [b, db] : candidates(v)) {
      if (da + from_a[b] + db != total) continue;
      if (!u.is_vertex()) out.push_back(u);
      for (VertexId w : shortest_path(g, a, b)) out.push_back(PointRef::at_vertex(w));
      if (!v.is_vertex()) out.push_back(v);
      return out;
    }
  }
  throw std::logic_error("no geodesic between points");
}

std::vector<VertexId> walk_geodesic(const MetricGraph& g, VertexId u, std::span<const Ticks> to_target,
                                    const VertexMask* allowed) {
  return greedy_walk(g, u, to_target, allowed);
}

bool connected_within(const MetricGraph& g, VertexId u, VertexId v, const VertexMask& allowed) {
  if (!allowed.contains(u) || !allowed.contains(v)) return false;
  if (u == v) return true;
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  std::vector<VertexId> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    VertexId w = stack.back();
    stack.pop_back();
    for (const auto& a : g.neighbors(w)) {
      if (seen[a.to] || !allowed.contains(a.to)) continue;
      if (a.to == v) return true;
      seen[a.to] = 1;
      stack.push_back(a.to);
    }
  }
  return false;
}

Ticks path_length(const MetricGraph& g, std::span<const VertexId> path) {
  Ticks total = 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    EdgeId e = g.find_edge(path[i - 1], path[i]);
    if (e == g.edge_count()) throw std::invalid_argument("path uses a non-edge");
    total += g.edge(e).length;
  }
  return total;
}

std::vector<int> component_labels(const MetricGraph& g, const VertexMask& allowed, int* count) {
  const std::size_t n = g.vertex_count();
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (!allowed.contains(s) || label[s] != -1) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (const auto& a : g.neighbors(v)) {
        if (allowed.contains(a.to) && label[a.to] == -1) {
          label[a.to] = next;
          stack.push_back(a.to);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

DistanceTable DistanceTable::compute(const MetricGraph& g) {
  DistanceTable t;
  t.n_ = g.vertex_count();
  t.data_.assign(t.n_ * t.n_, kUnreachable);
  const auto n = static_cast<std::int64_t>(t.n_);
#pragma omp parallel
  {
    std::vector<Ticks> dist;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < n; ++s) {
      VertexId src[1] = {static_cast<VertexId>(s)};
      dijkstra_into(g, src, nullptr, kUnreachable, dist, nullptr);
      std::copy(dist.begin(), dist.end(), t.data_.begin() + s * n);
    }
  }
  return t;
}

DistanceTable DistanceTable::compute_serial(const MetricGraph& g) {
  DistanceTable t;
  t.n_ = g.vertex_count();
  t.data_.reserve(t.n_ * t.n_);
  for (VertexId s = 0; s < t.n_; ++s) {
    auto row = distances_from(g, s);
    t.data_.insert(t.data_.end(), row.begin(), row.end());
  }
  return t;
}

Ticks DistanceTable::diameter() const {
  Ticks best = 0;
  for (Ticks d : data_) best = std::max(best, d);
  return best;
}

std::vector<Ticks> DistanceOracle::row(VertexId u) const {
  if (table_) {
    auto r = table_->row(u);
    return {r.begin(), r.end()};
  }
  return distances_from(g_, u);
}

Ticks DistanceOracle::operator()(VertexId u, VertexId v) const {
  if (table_) return (*table_)(u, v);
  return distance(g_, u, v);
}

Ticks diameter(const MetricGraph& g) {
  Ticks best = 0;
  const auto n = static_cast<std::int64_t>(g.vertex_count());
#pragma omp parallel for reduction(max : best) schedule(dynamic, 16)
  for (std::int64_t s = 0; s < n; ++s) {
    auto row = distances_from(g, static_cast<VertexId>(s));
    for (Ticks d : row) best = std::max(best, d);
  }
  return best;
}

}  // namespace cactus
