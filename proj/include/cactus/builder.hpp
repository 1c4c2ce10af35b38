#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cactus/cycles.hpp"
#include "cactus/metric_graph.hpp"
#include "cactus/paths.hpp"

namespace cactus {

enum class NodeKind { point, circle };

/// A point or geodesic circle of X, hung below its parent node.
struct Node {
  int level = 0;
  NodeKind kind = NodeKind::point;
  VertexId point = 0;  ///< point nodes
  Cycle circle;        ///< circle nodes
  VertexId basepoint = 0;
  int parent = -1;
  VertexId exit_point = 0;           ///< on the parent node
  std::vector<VertexId> connector;   ///< geodesic exit_point .. basepoint
  Ticks connecting_length = 0;
  int graph = -1;                    ///< level graph this node was chosen in

  std::vector<VertexId> members() const;
};

/// A component Y of (parent region) minus N_M(parent node).
struct LevelGraph {
  int level = 0;
  VertexMask vertices;
  std::vector<VertexId> boundary;  ///< vertices of Y at distance exactly M from the parent node
  int parent_graph = -1;
  int node = -1;
  Ticks boundary_diameter = 0;
  VertexId a = 0, b = 0;           ///< diameter-realizing boundary pair (circle case)
};

/// Result of the construction, everything in terms of X = the input on a
/// tick lattice where M is exact.
struct CactusApprox {
  Subdivision space;
  Rational m, M;
  VertexId e = 0;
  std::vector<Node> nodes;
  std::vector<LevelGraph> graphs;
  MetricGraph cactus;                            ///< C, on the lattice of X
  std::vector<VertexId> h;                       ///< C vertex -> X vertex
  std::vector<int> owner;                        ///< C vertex -> node, -1 inside connectors
  std::vector<std::vector<VertexId>> node_vertices;  ///< node -> its C vertices
  std::vector<std::string> notes;                ///< forced fallbacks taken

  const MetricGraph& X() const { return space.graph; }
  int levels() const;
  /// C vertex of node i sitting over X vertex x, or kNoVertex.
  VertexId copy_of(int node, VertexId x) const;
};

class BuildError : public std::runtime_error {
 public:
  BuildError(const std::string& what, int level, int graph)
      : std::runtime_error(what), level(level), graph(graph) {}
  int level;
  int graph;
};

class CircleNotFound : public BuildError {
 public:
  using BuildError::BuildError;
};

struct BuildOptions {
  /// Fall back to the best available leaf instead of throwing
  /// CircleNotFound, and stop descending at the level cap instead of
  /// throwing; both are recorded in CactusApprox::notes.
  bool force = false;
};

struct Classification {
  bool circle = false;
  VertexId y = 0;        ///< point case: smallest-id boundary vertex
  VertexId a = 0, b = 0; ///< circle case: first diameter-realizing pair
  Ticks diameter = 0;    ///< ambient diameter of the boundary
};

/// Point case when the boundary has diameter < M/10, circle case otherwise.
Classification classify_component(const MetricGraph& X, std::span<const VertexId> boundary, const Rational& M,
                                  const DistanceTable* table = nullptr);

/// Geodesic circle S in X with a, b within 100m of S: closes the geodesics
/// from a and b to the parent node with a path inside Z, breaks the closed
/// walk into simple cycles and takes the filling leaf nearest to a and b.
/// Throws CircleNotFound when no leaf qualifies, unless `force`.
Cycle find_circle_node(const MetricGraph& X, const Node& parent, const VertexMask& Z, VertexId a, VertexId b,
                       const Rational& m, const DistanceTable* table = nullptr, bool force = false,
                       std::string* note = nullptr);

/// Builds the cactus approximation of g rooted at e. Requires M >= 40m.
CactusApprox build_cactus(const MetricGraph& g, VertexId e, const Rational& m, const Rational& M,
                          const BuildOptions& options = {});

struct LemmaCheck {
  std::string name;
  std::size_t tuples = 0;
  std::size_t failures = 0;
  std::optional<Rational> worst_margin;  ///< smallest slack seen; negative on failure
  std::string first_failure;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;

  std::size_t failures() const;
  const LemmaCheck* find(const std::string& name) const;
};

/// Evaluates the intermediate inequalities on every applicable tuple of
/// the run; existential points are instantiated as nearest points.
LemmaReport diagnose_lemmas(const CactusApprox& approx);

}  // namespace cactus
