#include "cactus/metric_graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cactus {
namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  __int128 l = static_cast<__int128>(a) / std::gcd(a, b) * b;
  if (l > std::numeric_limits<std::int64_t>::max()) throw GraphError("length unit overflow");
  return static_cast<std::int64_t>(l);
}

}  // namespace

MetricGraph::MetricGraph(std::size_t vertex_count, std::span<const WeightedEdge> edges) {
  std::int64_t denom = 1;
  for (const auto& e : edges) {
    if (e.length <= Rational(0)) {
      throw GraphError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " has non-positive length");
    }
    denom = lcm64(denom, e.length.den());
  }
  unit_ = Rational(1, denom);
  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    Rational t = e.length / unit_;
    edges_.push_back(Edge{e.u, e.v, t.num()});
  }
  build(vertex_count);
}

MetricGraph MetricGraph::from_ticks(std::size_t vertex_count, std::vector<Edge> edges, Rational unit) {
  if (unit <= Rational(0)) throw GraphError("non-positive length unit");
  MetricGraph g;
  g.unit_ = unit;
  g.edges_ = std::move(edges);
  g.build(vertex_count);
  return g;
}

void MetricGraph::build(std::size_t n) {
  if (n == 0) throw GraphError("graph has no vertices");
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges_) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " references a missing vertex");
    }
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    if (e.length <= 0) throw GraphError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " has non-positive length");
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.assign(offsets_[n], Adjacent{0, 0, 0});
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adjacency_[fill[e.u]++] = Adjacent{e.v, id, e.length};
    adjacency_[fill[e.v]++] = Adjacent{e.u, id, e.length};
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const Adjacent& a, const Adjacent& b) { return a.to < b.to; });
    for (auto it = first; it != last && it + 1 != last; ++it) {
      if (it->to == (it + 1)->to) {
        throw GraphError("parallel edges between " + std::to_string(v) + " and " + std::to_string(it->to) +
                         " (subdivide them first)");
      }
    }
  }
  if (edges_.empty()) {
    min_edge_ = max_edge_ = 0;
  } else {
    auto [lo, hi] = std::minmax_element(edges_.begin(), edges_.end(),
                                        [](const Edge& a, const Edge& b) { return a.length < b.length; });
    min_edge_ = lo->length;
    max_edge_ = hi->length;
  }
  if (!is_connected(*this)) throw GraphError("graph is not connected");
}

Ticks MetricGraph::exact_ticks(const Rational& r) const {
  Rational t = r / unit_;
  if (!t.is_integer()) throw std::invalid_argument("length " + r.str() + " is not a multiple of the unit " + unit_.str());
  return t.num();
}

Ticks MetricGraph::total_length_ticks() const {
  Ticks total = 0;
  for (const auto& e : edges_) total += e.length;
  return total;
}

EdgeId MetricGraph::find_edge(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v, [](const Adjacent& a, VertexId x) { return a.to < x; });
  if (it != nb.end() && it->to == v) return it->edge;
  return static_cast<EdgeId>(edges_.size());
}

MetricGraph MetricGraph::rescaled(std::int64_t factor) const {
  if (factor <= 0) throw std::invalid_argument("rescale factor must be positive");
  std::vector<Edge> edges = edges_;
  for (auto& e : edges) e.length *= factor;
  return from_ticks(vertex_count(), std::move(edges), unit_ / Rational(factor));
}

bool MetricGraph::contains(const PointRef& p) const {
  if (p.is_vertex()) return p.vertex < vertex_count();
  return p.edge < edges_.size() && p.offset > 0 && p.offset < edges_[p.edge].length;
}

std::vector<VertexId> VertexMask::members() const {
  std::vector<VertexId> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<VertexId>(i));
  }
  return out;
}

VertexMask VertexMask::complement() const {
  VertexMask out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (!bits_[i]) out.insert(static_cast<VertexId>(i));
  }
  return out;
}

Subdivision subdivide_with_origin(const MetricGraph& g, const Rational& granularity) {
  if (granularity <= Rational(0)) throw std::invalid_argument("granularity must be positive");
  Rational unit = gcd(g.unit(), granularity);
  std::int64_t factor = (g.unit() / unit).num();
  Ticks step = (granularity / unit).num();

  Subdivision out;
  std::vector<Edge> edges;
  out.origin.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.origin.push_back(OriginPoint{v, 0, Rational(0)});
  auto next = static_cast<VertexId>(g.vertex_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    Ticks length = e.length * factor;
    Ticks pieces = (length + step - 1) / step;
    Ticks base = length / pieces;
    Ticks extra = length % pieces;
    VertexId prev = e.u;
    Ticks at = 0;
    for (Ticks i = 0; i < pieces; ++i) {
      Ticks piece = base + (i < extra ? 1 : 0);
      at += piece;
      VertexId cur = (i + 1 == pieces) ? e.v : next++;
      if (cur != e.v) out.origin.push_back(OriginPoint{kNoVertex, id, unit * Rational(at)});
      edges.push_back(Edge{prev, cur, piece});
      prev = cur;
    }
  }
  out.graph = MetricGraph::from_ticks(next, std::move(edges), unit);
  return out;
}

MetricGraph subdivide(const MetricGraph& g, const Rational& granularity) {
  return subdivide_with_origin(g, granularity).graph;
}

Rational default_granularity(const MetricGraph& g) {
  if (g.edge_count() == 0) return g.unit();
  return g.to_length(g.min_edge_ticks()) / Rational(2);
}

bool is_connected(const MetricGraph& g) {
  std::size_t n = g.vertex_count();
  if (n == 0) return false;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const auto& a : g.neighbors(v)) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++reached;
        stack.push_back(a.to);
      }
    }
  }
  return reached == n;
}

}  // namespace cactus
