#pragma once

#include <span>
#include <vector>

#include "cactus/metric_graph.hpp"

namespace cactus {

enum class MetricMode { induced, path };

/// A vertex subset of a graph. In path mode distances are measured inside
/// the subgraph induced by the subset; in induced mode they are the ambient
/// distances.
struct SubSpace {
  const MetricGraph* parent = nullptr;
  VertexMask vertices;
  MetricMode mode = MetricMode::path;

  std::size_t size() const { return vertices.count(); }
  bool contains(VertexId v) const { return vertices.contains(v); }
  std::vector<VertexId> members() const { return vertices.members(); }

  /// kUnreachable between different path components.
  Ticks distance(VertexId u, VertexId v) const;
  Ticks induced_distance(VertexId u, VertexId v) const;
  Ticks path_distance(VertexId u, VertexId v) const;
};

/// A subspace copied out as a standalone graph with its path metric.
struct ExtractedGraph {
  MetricGraph graph;
  std::vector<VertexId> to_parent;  ///< local id -> parent id
};
/// Requires the subspace to be connected.
ExtractedGraph extract(const SubSpace& s);

/// Open neighbourhood {v : d(v, A) < m} on vertices.
SubSpace neighborhood(const MetricGraph& g, std::span<const VertexId> sources, const Rational& m);
SubSpace neighborhood(const MetricGraph& g, std::span<const PointRef> sources, const Rational& m);

/// Connected components of g minus S, each with the path metric. Ordered by
/// smallest vertex id.
std::vector<SubSpace> components_minus(const MetricGraph& g, const SubSpace& removed);

/// Points of Y at distance exactly R from the basis, edge-interior points
/// included. Y must be a component of g minus N_R(basis) and R must be a
/// whole number of ticks.
std::vector<PointRef> boundary(const MetricGraph& g, const SubSpace& y, std::span<const PointRef> basis,
                               const Rational& radius);

}  // namespace cactus
