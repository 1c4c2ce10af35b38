#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cactus/metric_graph.hpp"

namespace cactus {

/// Single- or multi-source Dijkstra result.
struct ShortestPathTree {
  std::vector<Ticks> dist;        ///< kUnreachable where not reached
  std::vector<VertexId> nearest;  ///< source realizing dist (smallest id on ties)
};

/// Distances from a set of sources, optionally restricted to `allowed`
/// vertices (sources outside `allowed` are ignored) and truncated: vertices
/// farther than `limit` are left unreachable.
ShortestPathTree shortest_path_tree(const MetricGraph& g, std::span<const VertexId> sources,
                                    const VertexMask* allowed = nullptr, Ticks limit = kUnreachable);

std::vector<Ticks> distances_from(const MetricGraph& g, VertexId source, const VertexMask* allowed = nullptr);
std::vector<Ticks> distances_from(const MetricGraph& g, std::span<const VertexId> sources,
                                  const VertexMask* allowed = nullptr, Ticks limit = kUnreachable);

/// Distances from points that may lie inside edges.
std::vector<Ticks> distances_from_points(const MetricGraph& g, std::span<const PointRef> sources);

/// Exact distance between two points of the space.
Ticks distance(const MetricGraph& g, const PointRef& u, const PointRef& v);
Ticks distance(const MetricGraph& g, VertexId u, VertexId v);

/// Geodesic from u to v as a vertex sequence: among all shortest paths, the
/// lexicographically smallest vertex sequence. Empty if v is unreachable
/// inside `allowed`.
std::vector<VertexId> shortest_path(const MetricGraph& g, VertexId u, VertexId v,
                                    const VertexMask* allowed = nullptr);

/// Same tie-break, ending at whichever target is nearest to u (smallest id on ties).
std::vector<VertexId> shortest_path_to_set(const MetricGraph& g, VertexId u, std::span<const VertexId> targets,
                                           const VertexMask* allowed = nullptr);

/// Geodesic between two points, including edge-interior endpoints.
std::vector<PointRef> shortest_path(const MetricGraph& g, const PointRef& u, const PointRef& v);

/// Geodesic from u to the zero set of `to_target` (a distance row towards
/// some target set), taking the smallest-id neighbour at every step.
std::vector<VertexId> walk_geodesic(const MetricGraph& g, VertexId u, std::span<const Ticks> to_target,
                                    const VertexMask* allowed = nullptr);

Ticks path_length(const MetricGraph& g, std::span<const VertexId> path);

/// True iff u and v are joined inside `allowed` (both must be members).
bool connected_within(const MetricGraph& g, VertexId u, VertexId v, const VertexMask& allowed);

/// Connected-component labels of the subgraph induced by `allowed`
/// (label -1 outside). Labels are assigned in increasing order of each
/// component's smallest vertex.
std::vector<int> component_labels(const MetricGraph& g, const VertexMask& allowed, int* count = nullptr);

/// All-pairs distance matrix.
///
/// compute() fills rows in parallel (OpenMP, one Dijkstra per source);
/// compute_serial() is the reference implementation kept for testing.
class DistanceTable {
 public:
  DistanceTable() = default;

  static DistanceTable compute(const MetricGraph& g);
  static DistanceTable compute_serial(const MetricGraph& g);

  std::size_t size() const { return n_; }
  Ticks operator()(VertexId u, VertexId v) const { return data_[static_cast<std::size_t>(u) * n_ + v]; }
  std::span<const Ticks> row(VertexId u) const { return {data_.data() + static_cast<std::size_t>(u) * n_, n_}; }
  Ticks diameter() const;

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Ticks> data_;
};

/// Row provider that uses a full table when available and Dijkstra otherwise.
class DistanceOracle {
 public:
  explicit DistanceOracle(const MetricGraph& g, const DistanceTable* table = nullptr) : g_(g), table_(table) {}

  std::vector<Ticks> row(VertexId u) const;
  Ticks operator()(VertexId u, VertexId v) const;
  const MetricGraph& graph() const { return g_; }
  const DistanceTable* table() const { return table_; }

 private:
  const MetricGraph& g_;
  const DistanceTable* table_;
};

/// Largest vertex-to-vertex distance.
Ticks diameter(const MetricGraph& g);

}  // namespace cactus
