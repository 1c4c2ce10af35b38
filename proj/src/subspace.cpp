#include "cactus/subspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "cactus/paths.hpp"

namespace cactus {

Ticks SubSpace::induced_distance(VertexId u, VertexId v) const { return cactus::distance(*parent, u, v); }

Ticks SubSpace::path_distance(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) throw std::out_of_range("vertex not in subspace");
  return distances_from(*parent, u, &vertices)[v];
}

Ticks SubSpace::distance(VertexId u, VertexId v) const {
  return mode == MetricMode::path ? path_distance(u, v) : induced_distance(u, v);
}

ExtractedGraph extract(const SubSpace& s) {
  const MetricGraph& g = *s.parent;
  ExtractedGraph out;
  out.to_parent = s.members();
  std::vector<VertexId> local(g.vertex_count(), kNoVertex);
  for (VertexId i = 0; i < out.to_parent.size(); ++i) local[out.to_parent[i]] = i;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) edges.push_back(Edge{local[e.u], local[e.v], e.length});
  }
  out.graph = MetricGraph::from_ticks(out.to_parent.size(), std::move(edges), g.unit());
  return out;
}

SubSpace neighborhood(const MetricGraph& g, std::span<const VertexId> sources, const Rational& m) {
  if (sources.empty()) throw std::invalid_argument("neighborhood of an empty set");
  if (m <= Rational(0)) throw std::invalid_argument("neighborhood radius must be positive");
  Ticks bound = g.ceil_ticks(m);  // d < m  <=>  d < ceil(m / unit)
  auto dist = distances_from(g, sources, nullptr, bound);
  SubSpace s{&g, VertexMask(g.vertex_count()), MetricMode::path};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] < bound) s.vertices.insert(v);
  }
  return s;
}

SubSpace neighborhood(const MetricGraph& g, std::span<const PointRef> sources, const Rational& m) {
  if (sources.empty()) throw std::invalid_argument("neighborhood of an empty set");
  if (m <= Rational(0)) throw std::invalid_argument("neighborhood radius must be positive");
  Ticks bound = g.ceil_ticks(m);
  auto dist = distances_from_points(g, sources);
  SubSpace s{&g, VertexMask(g.vertex_count()), MetricMode::path};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] < bound) s.vertices.insert(v);
  }
  return s;
}

std::vector<SubSpace> components_minus(const MetricGraph& g, const SubSpace& removed) {
  VertexMask rest = removed.vertices.complement();
  int count = 0;
  auto label = component_labels(g, rest, &count);
  std::vector<SubSpace> out(static_cast<std::size_t>(count));
  for (auto& s : out) s = SubSpace{&g, VertexMask(g.vertex_count()), MetricMode::path};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (label[v] >= 0) out[static_cast<std::size_t>(label[v])].vertices.insert(v);
  }
  return out;
}

std::vector<PointRef> boundary(const MetricGraph& g, const SubSpace& y, std::span<const PointRef> basis,
                               const Rational& radius) {
  Ticks r = g.exact_ticks(radius);
  auto dist = distances_from_points(g, basis);
  for (VertexId v : y.members()) {
    if (dist[v] < r) throw std::invalid_argument("subspace meets the removed neighbourhood");
    for (const auto& a : g.neighbors(v)) {
      if (dist[a.to] >= r && !y.contains(a.to)) {
        throw std::invalid_argument("subspace is not a component of the complement");
      }
    }
  }
  std::vector<PointRef> out;
  for (VertexId v : y.members()) {
    if (dist[v] == r) out.push_back(PointRef::at_vertex(v));
  }
  for (VertexId v : y.members()) {
    for (const auto& a : g.neighbors(v)) {
      if (dist[a.to] >= r) continue;
      // Distance along the edge from the near endpoint reaches r at
      // r - dist[a.to]; that point is interior unless it lands on v.
      Ticks from_near = r - dist[a.to];
      if (from_near >= a.length) continue;
      const Edge& e = g.edge(a.edge);
      Ticks offset = (e.u == a.to) ? from_near : a.length - from_near;
      out.push_back(PointRef::on_edge(a.edge, offset));
    }
  }
  return out;
}

}  // namespace cactus
