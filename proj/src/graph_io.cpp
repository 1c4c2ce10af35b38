#include "cactus/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace cactus {

MetricGraph read_edge_list(std::istream& in) {
  std::string line;
  long long declared = -1;
  std::vector<WeightedEdge> edges;
  std::size_t line_no = 0;
  VertexId max_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string key = first.substr(1);
      if (key.empty()) ls >> key;
      if (key == "vertices" && !(ls >> declared)) {
        throw GraphError("line " + std::to_string(line_no) + ": bad vertex count");
      }
      continue;
    }
    std::string v_text, len_text, extra;
    if (!(ls >> v_text >> len_text) || (ls >> extra)) {
      throw GraphError("line " + std::to_string(line_no) + ": expected 'u v length'");
    }
    try {
      auto u = std::stoul(first);
      auto v = std::stoul(v_text);
      edges.push_back(WeightedEdge{static_cast<VertexId>(u), static_cast<VertexId>(v), Rational::parse(len_text)});
      max_id = std::max({max_id, static_cast<VertexId>(u), static_cast<VertexId>(v)});
    } catch (const std::exception& e) {
      throw GraphError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::size_t n = declared >= 0 ? static_cast<std::size_t>(declared) : (edges.empty() ? 1 : max_id + 1);
  return MetricGraph(n, edges);
}

MetricGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return read_edge_list(in);
}

std::vector<WeightedEdge> weighted_edges(const MetricGraph& g) {
  std::vector<WeightedEdge> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.push_back(WeightedEdge{e.u, e.v, g.to_length(e.length)});
  return out;
}

void write_edge_list(std::ostream& out, const MetricGraph& g) {
  out << "# vertices " << g.vertex_count() << "\n";
  for (const auto& e : weighted_edges(g)) out << e.u << ' ' << e.v << ' ' << e.length << "\n";
}

void save_edge_list(const std::string& path, const MetricGraph& g) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  write_edge_list(out, g);
}

void write_dot(std::ostream& out, const MetricGraph& g, const std::vector<std::string>& vertex_color) {
  out << "graph G {\n  node [shape=point];\n";
  if (!vertex_color.empty()) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!vertex_color[v].empty()) out << "  " << v << " [color=" << vertex_color[v] << "];\n";
    }
  }
  for (const auto& e : weighted_edges(g)) out << "  " << e.u << " -- " << e.v << " [label=\"" << e.length << "\"];\n";
  out << "}\n";
}

void save_dot(const std::string& path, const MetricGraph& g, const std::vector<std::string>& vertex_color) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  write_dot(out, g, vertex_color);
}

}  // namespace cactus
