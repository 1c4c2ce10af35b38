#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cactus/builder.hpp"
#include "cactus/metric_graph.hpp"

namespace cactus {

/// Connected, and every biconnected block is a single edge or a cycle
/// (as many edges as vertices). On failure `why` names a bad block.
bool is_cactus(const MetricGraph& g, std::string* why = nullptr);

/// E - V + (number of components).
std::size_t cycle_rank(const MetricGraph& g);

/// Reference recognizer: enumerates the cycle space from fundamental
/// cycles and rejects when two distinct simple cycles share two vertices.
/// Throws std::invalid_argument above `max_rank` independent cycles.
bool is_cactus_bruteforce(const MetricGraph& g, std::size_t max_rank = 12);

struct DistortionOptions {
  std::size_t max_pairs = 10000;  ///< full sweep up to this many pairs, else a sample of this size
  std::uint64_t seed = 1;
};

struct DistortionProfile {
  Rational lipschitz_max;       ///< max over C edges of d_X(h(u), h(v)) / length(uv)
  Rational additive_lower_gap;  ///< max(0, d_C/2 - d_X) over the swept node-vertex pairs
  Rational coarse_density;      ///< max over X vertices of d(x, h(C))
  std::size_t pairs = 0;
  std::size_t pairs_over_3M = 0;  ///< pairs with d_C/2 - d_X > 3M
  bool sampled = false;
};

/// OpenMP over pair sources.
DistortionProfile distortion_profile(const CactusApprox& a, const DistortionOptions& options = {});
/// Same computation on one thread; the reference for the parallel version.
DistortionProfile distortion_profile_serial(const CactusApprox& a, const DistortionOptions& options = {});

struct NodeTrace {
  std::vector<VertexId> geodesic;  ///< in C
  std::vector<int> nodes;          ///< node-tree path between the end anchors
  int top = -1;                    ///< node of least level on the path
  VertexId a = kNoVertex, b = kNoVertex;  ///< first and last geodesic vertices on the top node
};

/// Nodes a C-geodesic between two C vertices passes through, read off the
/// node tree; the anchors are the nodes owning the first and last node
/// vertices on the geodesic. Empty when the geodesic stays inside a connector.
NodeTrace node_trace(const CactusApprox& a, VertexId from, VertexId to);

}  // namespace cactus
