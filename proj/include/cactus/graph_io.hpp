#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cactus/metric_graph.hpp"

namespace cactus {

/// Edge-list text format:
///
///   # vertices N
///   u v length        (length as an integer, decimal, or p/q)
///
/// Other lines starting with '#' and blank lines are ignored.
MetricGraph read_edge_list(std::istream& in);
MetricGraph load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const MetricGraph& g);
void save_edge_list(const std::string& path, const MetricGraph& g);

/// Rational edge lengths of g, in edge order.
std::vector<WeightedEdge> weighted_edges(const MetricGraph& g);

/// Graphviz rendering. `vertex_color` may be empty or hold one colour name per vertex.
void write_dot(std::ostream& out, const MetricGraph& g, const std::vector<std::string>& vertex_color = {});
void save_dot(const std::string& path, const MetricGraph& g, const std::vector<std::string>& vertex_color = {});

}  // namespace cactus
