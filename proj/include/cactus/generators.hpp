#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cactus/metric_graph.hpp"

namespace cactus {

// Unit-length families. Vertex ids are documented per generator.

/// C_n: vertices 0..n-1 around the cycle.
MetricGraph cycle_graph(std::size_t n);
/// P_n with n edges: vertices 0..n.
MetricGraph path_graph(std::size_t n);
/// w x h grid; vertex (i, j) with 0 <= i < w, 0 <= j < h has id i*h + j.
MetricGraph grid_graph(std::size_t w, std::size_t h);
/// `arms` internally disjoint paths of `arm` edges between vertex 0 and vertex 1.
MetricGraph theta_graph(std::size_t arm, std::size_t arms = 3);
/// Complete `branching`-ary tree of the given depth, root 0, BFS numbering.
MetricGraph tree_graph(std::size_t depth, std::size_t branching);
/// Path 0..stick followed by a cycle of `cycle` edges through vertex `stick`.
MetricGraph lollipop_graph(std::size_t stick, std::size_t cycle);
/// Cycles of the given lengths all passing through vertex 0.
MetricGraph bouquet_graph(std::span<const std::size_t> cycle_lengths);
MetricGraph complete_graph(std::size_t n);

struct RandomCactusSpec {
  std::size_t cycle_count = 5;
  std::pair<std::size_t, std::size_t> cycle_len{40, 80};
  /// Length of the tree path leading to each new cycle (0 attaches directly).
  std::pair<std::size_t, std::size_t> tree_edges{0, 10};
  std::uint64_t seed = 1;
};
/// Grows a cactus: each step picks an existing vertex, hangs a path off it
/// and closes a new cycle at the path's end.
MetricGraph random_cactus(const RandomCactusSpec& spec);

struct PlanarDiskSpec {
  std::size_t rings = 8;
  /// Edge weights are drawn uniformly from multiples of 1/2 in this range.
  std::pair<Rational, Rational> weight{Rational(1), Rational(2)};
  std::uint64_t seed = 1;
};
/// Centre vertex 0 plus concentric rings, ring i holding 6i vertices, with
/// consecutive rings joined by a zigzag triangulation.
MetricGraph planar_disk(const PlanarDiskSpec& spec);

/// A random simple cycle of g: the fundamental cycle of a random non-tree
/// edge with respect to a randomized depth-first spanning tree. Empty when g
/// is a tree.
std::vector<VertexId> random_simple_cycle(const MetricGraph& g, std::uint64_t seed);

/// Parses a family description such as "cycle:8", "grid:60x60",
/// "random_cactus:5:40-80:0-10" (seed supplied separately).
MetricGraph generate(const std::string& family, std::uint64_t seed);

}  // namespace cactus
