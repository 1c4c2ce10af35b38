#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cactus/rational.hpp"

namespace cactus {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Integer multiple of a graph's length unit. Every edge length, and hence
/// every shortest-path distance, is an exact number of ticks.
using Ticks = std::int64_t;

inline constexpr Ticks kUnreachable = std::numeric_limits<Ticks>::max() / 4;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Ticks length = 0;

  VertexId other(VertexId w) const { return w == u ? v : u; }
};

struct Adjacent {
  VertexId to;
  EdgeId edge;
  Ticks length;
};

/// An edge as read from a file: lengths are exact rationals.
struct WeightedEdge {
  VertexId u;
  VertexId v;
  Rational length;
};

/// A point of the geodesic space realized by a graph: a vertex, or a point
/// strictly inside an edge at `offset` ticks from the edge's `u` endpoint.
struct PointRef {
  static PointRef at_vertex(VertexId v) { return PointRef{v, 0, 0}; }
  static PointRef on_edge(EdgeId e, Ticks offset) { return PointRef{kNoVertex, e, offset}; }

  bool is_vertex() const { return vertex != kNoVertex; }

  VertexId vertex = kNoVertex;
  EdgeId edge = 0;
  Ticks offset = 0;

  friend bool operator==(const PointRef&, const PointRef&) = default;
};

/// Finite connected graph with positive edge lengths.
///
/// Immutable after construction. Adjacency lists are sorted by neighbour id,
/// which every traversal relies on for deterministic tie-breaking.
class MetricGraph {
 public:
  MetricGraph() = default;

  /// Builds from rational edge lengths; the tick unit is 1 / lcm(denominators).
  MetricGraph(std::size_t vertex_count, std::span<const WeightedEdge> edges);

  /// Builds from lengths already expressed in ticks of `unit`.
  static MetricGraph from_ticks(std::size_t vertex_count, std::vector<Edge> edges, Rational unit);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Adjacent> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Length of one tick.
  const Rational& unit() const { return unit_; }
  Rational to_length(Ticks t) const { return unit_ * Rational(t); }
  /// Smallest tick count t with t * unit >= r.
  Ticks ceil_ticks(const Rational& r) const { return (r / unit_).ceil(); }
  /// Largest tick count t with t * unit <= r.
  Ticks floor_ticks(const Rational& r) const { return (r / unit_).floor(); }
  /// Exact conversion; throws if r is not a multiple of the unit.
  Ticks exact_ticks(const Rational& r) const;

  Ticks min_edge_ticks() const { return min_edge_; }
  Ticks max_edge_ticks() const { return max_edge_; }
  Ticks total_length_ticks() const;

  /// Edge id joining u and v, or nullopt-like sentinel `edge_count()`.
  EdgeId find_edge(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return find_edge(u, v) != edge_count(); }

  /// Same graph with a finer tick unit (unit / factor).
  MetricGraph rescaled(std::int64_t factor) const;

  bool contains(const PointRef& p) const;

 private:
  void build(std::size_t vertex_count);

  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Adjacent> adjacency_;
  Rational unit_{1};
  Ticks min_edge_ = 0;
  Ticks max_edge_ = 0;
};

/// Per-vertex membership flags sized to a graph.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0), count_(value ? n : 0) {}

  bool contains(VertexId v) const { return bits_[v] != 0; }
  void insert(VertexId v) {
    if (!bits_[v]) {
      bits_[v] = 1;
      ++count_;
    }
  }
  void erase(VertexId v) {
    if (bits_[v]) {
      bits_[v] = 0;
      --count_;
    }
  }
  std::size_t size() const { return bits_.size(); }
  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::vector<VertexId> members() const;
  VertexMask complement() const;

  friend bool operator==(const VertexMask& a, const VertexMask& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

/// Splits every edge into pieces of length <= granularity. Original vertices
/// keep their ids; new vertices are appended. The result is isometric on the
/// original vertices.
MetricGraph subdivide(const MetricGraph& g, const Rational& granularity);

/// Where a vertex of a subdivided graph sits in the original graph.
struct OriginPoint {
  VertexId vertex = kNoVertex;  ///< original vertex, or kNoVertex for an edge point
  EdgeId edge = 0;
  Rational offset;  ///< length from the original edge's `u` endpoint

  bool is_vertex() const { return vertex != kNoVertex; }
};

/// subdivide() plus, for every vertex of the result, the point of `g` it
/// came from.
struct Subdivision {
  MetricGraph graph;
  std::vector<OriginPoint> origin;
};
Subdivision subdivide_with_origin(const MetricGraph& g, const Rational& granularity);

/// Default search granularity: half the shortest edge.
Rational default_granularity(const MetricGraph& g);

/// True iff every vertex is reachable from vertex 0.
bool is_connected(const MetricGraph& g);

}  // namespace cactus
