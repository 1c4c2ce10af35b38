#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "cactus/metric_graph.hpp"
#include "cactus/paths.hpp"

namespace cactus {

/// Simple closed curve through graph vertices, listed in cyclic order.
struct Cycle {
  std::vector<VertexId> vertices;
  Ticks length = 0;

  std::size_t size() const { return vertices.size(); }
};

/// Validates simplicity (>= 3 distinct vertices, consecutive pairs adjacent)
/// and computes the length.
Cycle make_cycle(const MetricGraph& g, std::vector<VertexId> vertices);

/// Arc lengths from vertices[0] to each position, going forward.
std::vector<Ticks> prefix_lengths(const MetricGraph& g, const Cycle& c);

/// Position of v on c, or -1.
int position_on(const Cycle& c, VertexId v);

/// One of the two arcs of a cycle between two of its vertices.
struct Arc {
  std::vector<VertexId> vertices;  ///< from x to y along the cycle
  bool forward = true;             ///< follows the cycle's orientation
  Ticks length = 0;
  Ticks complement_length = 0;
};

/// The shorter arc from x to y; on a tie, the arc following the cycle's
/// orientation from x.
Arc short_arc(const MetricGraph& g, const Cycle& c, VertexId x, VertexId y);

struct DefectPair {
  std::size_t i = 0, j = 0;  ///< positions on the cycle, i < j
  VertexId x = 0, y = 0;
  Ticks defect = 0;  ///< cycle distance minus graph distance
};

/// Pair of cycle vertices maximizing cycle distance minus graph distance.
/// Positions are scanned in order (i, j) with i < j; the first maximum wins.
DefectPair max_defect_pair(const MetricGraph& g, const Cycle& c, const DistanceTable* table = nullptr);

/// Cycle distance equals graph distance for every pair of cycle vertices.
bool is_geodesic_circle(const MetricGraph& g, const Cycle& c, const DistanceTable* table = nullptr);

/// The same cycle in a subdivided graph, with the new vertices of each edge
/// inserted in order.
Cycle refine_cycle(const Subdivision& sub, const MetricGraph& g, const Cycle& c);

struct Chord {
  VertexId x = 0, y = 0;       ///< max-defect pair of the region that was split
  Ticks defect = 0;
  std::vector<VertexId> path;  ///< geodesic sub-path used to split, both ends on the region
};

struct Region {
  Cycle cycle;
  int parent = -1;
  int depth = 0;
  std::optional<Chord> chord;  ///< set on split regions
  int child[2] = {-1, -1};

  bool is_leaf() const { return child[0] < 0; }
};

/// Region tree: regions[0] is the input cycle; every split region has two
/// children whose union of boundaries is its boundary plus the chord.
struct Filling {
  std::vector<Region> regions;
  std::size_t splits = 0;
  int depth = 0;  ///< longest root-to-leaf chain

  std::vector<int> leaves() const;
};

/// Splits regions at max-defect geodesic chords until every leaf is a
/// geodesic circle. When the geodesic touches the region in between, the
/// sub-chord between consecutive touch points with the largest shortcut is
/// used, which keeps both children simple and strictly shorter.
Filling fill(const MetricGraph& g, const Cycle& c, const DistanceTable* table = nullptr);

/// Region tree as Graphviz, regions shaded by depth.
void write_filling_dot(std::ostream& out, const MetricGraph& g, const Filling& f);

}  // namespace cactus
