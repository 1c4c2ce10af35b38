#include "cactus/cycles.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace cactus {

Cycle make_cycle(const MetricGraph& g, std::vector<VertexId> vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  std::vector<VertexId> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("cycle repeats a vertex");
  }
  Cycle c;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    VertexId u = vertices[i], v = vertices[(i + 1) % vertices.size()];
    if (u >= g.vertex_count() || v >= g.vertex_count()) throw std::out_of_range("cycle vertex out of range");
    EdgeId e = g.find_edge(u, v);
    if (e == g.edge_count()) {
      throw std::invalid_argument("cycle step " + std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
    }
    c.length += g.edge(e).length;
  }
  c.vertices = std::move(vertices);
  return c;
}

std::vector<Ticks> prefix_lengths(const MetricGraph& g, const Cycle& c) {
  std::vector<Ticks> p(c.size(), 0);
  for (std::size_t i = 1; i < c.size(); ++i) {
    p[i] = p[i - 1] + g.edge(g.find_edge(c.vertices[i - 1], c.vertices[i])).length;
  }
  return p;
}

int position_on(const Cycle& c, VertexId v) {
  auto it = std::find(c.vertices.begin(), c.vertices.end(), v);
  return it == c.vertices.end() ? -1 : static_cast<int>(it - c.vertices.begin());
}

Arc short_arc(const MetricGraph& g, const Cycle& c, VertexId x, VertexId y) {
  int px = position_on(c, x), py = position_on(c, y);
  if (px < 0 || py < 0) throw std::invalid_argument("point is not on the cycle");
  auto pre = prefix_lengths(g, c);
  const auto n = static_cast<int>(c.size());
  Ticks fwd = pre[static_cast<std::size_t>(py)] - pre[static_cast<std::size_t>(px)];
  if (fwd < 0) fwd += c.length;
  Arc arc;
  arc.forward = fwd <= c.length - fwd;
  arc.length = arc.forward ? fwd : c.length - fwd;
  arc.complement_length = c.length - arc.length;
  int step = arc.forward ? 1 : n - 1;
  for (int p = px;; p = (p + step) % n) {
    arc.vertices.push_back(c.vertices[static_cast<std::size_t>(p)]);
    if (p == py) break;
  }
  return arc;
}

DefectPair max_defect_pair(const MetricGraph& g, const Cycle& c, const DistanceTable* table) {
  auto pre = prefix_lengths(g, c);
  DefectPair best;
  bool have = false;
  std::vector<Ticks> scratch;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::span<const Ticks> row;
    if (table) {
      row = table->row(c.vertices[i]);
    } else {
      scratch = distances_from(g, c.vertices[i]);
      row = scratch;
    }
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      Ticks arc = pre[j] - pre[i];
      Ticks on_cycle = std::min(arc, c.length - arc);
      Ticks defect = on_cycle - row[c.vertices[j]];
      if (!have || defect > best.defect) {
        best = DefectPair{i, j, c.vertices[i], c.vertices[j], defect};
        have = true;
      }
    }
  }
  return best;
}

bool is_geodesic_circle(const MetricGraph& g, const Cycle& c, const DistanceTable* table) {
  return max_defect_pair(g, c, table).defect == 0;
}

Cycle refine_cycle(const Subdivision& sub, const MetricGraph& g, const Cycle& c) {
  // New vertices of each original edge, ordered by offset from the edge's u end.
  std::vector<std::vector<VertexId>> inner(g.edge_count());
  for (VertexId v = static_cast<VertexId>(g.vertex_count()); v < sub.origin.size(); ++v) {
    inner[sub.origin[v].edge].push_back(v);
  }
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    VertexId u = c.vertices[i], v = c.vertices[(i + 1) % c.size()];
    EdgeId e = g.find_edge(u, v);
    out.push_back(u);
    const auto& mid = inner[e];
    if (g.edge(e).u == u) {
      out.insert(out.end(), mid.begin(), mid.end());
    } else {
      out.insert(out.end(), mid.rbegin(), mid.rend());
    }
  }
  return make_cycle(sub.graph, std::move(out));
}

std::vector<int> Filling::leaves() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (regions[i].is_leaf()) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

struct Split {
  Chord chord;
  Cycle child[2];
};

Split split_region(const MetricGraph& g, const Cycle& region, const DefectPair& dp, const DistanceTable* table) {
  std::vector<VertexId> geodesic;
  if (table) {
    geodesic = walk_geodesic(g, dp.x, table->row(dp.y));
  } else {
    geodesic = shortest_path(g, dp.x, dp.y);
  }
  std::vector<int> pos(g.vertex_count(), -1);
  for (std::size_t i = 0; i < region.size(); ++i) pos[region.vertices[i]] = static_cast<int>(i);
  auto pre = prefix_lengths(g, region);
  auto cycle_dist = [&](int a, int b) {
    Ticks arc = pre[static_cast<std::size_t>(std::max(a, b))] - pre[static_cast<std::size_t>(std::min(a, b))];
    return std::min(arc, region.length - arc);
  };

  // Consecutive touch points of the geodesic on the region; pick the piece
  // saving the most over the region's own distance.
  std::size_t best_s = 0, best_e = 0;
  Ticks best_gain = 0;
  std::size_t s = 0;
  Ticks run = 0;
  for (std::size_t k = 1; k < geodesic.size(); ++k) {
    run += g.edge(g.find_edge(geodesic[k - 1], geodesic[k])).length;
    if (pos[geodesic[k]] < 0) continue;
    Ticks gain = cycle_dist(pos[geodesic[s]], pos[geodesic[k]]) - run;
    if (gain > best_gain) {
      best_gain = gain;
      best_s = s;
      best_e = k;
    }
    s = k;
    run = 0;
  }
  if (best_gain <= 0) throw std::logic_error("max-defect chord yields no shortcut");

  Split out;
  out.chord.x = dp.x;
  out.chord.y = dp.y;
  out.chord.defect = dp.defect;
  out.chord.path.assign(geodesic.begin() + static_cast<std::ptrdiff_t>(best_s),
                        geodesic.begin() + static_cast<std::ptrdiff_t>(best_e) + 1);
  const auto& seg = out.chord.path;
  const auto n = static_cast<int>(region.size());
  int a = pos[seg.front()], b = pos[seg.back()];
  // child 0: region from a forward to b, back along the chord
  // child 1: region from b forward to a, then along the chord to b
  std::vector<VertexId> c0, c1;
  for (int p = a;; p = (p + 1) % n) {
    c0.push_back(region.vertices[static_cast<std::size_t>(p)]);
    if (p == b) break;
  }
  for (std::size_t k = seg.size() - 2; k >= 1; --k) c0.push_back(seg[k]);
  for (int p = b;; p = (p + 1) % n) {
    c1.push_back(region.vertices[static_cast<std::size_t>(p)]);
    if (p == a) break;
  }
  for (std::size_t k = 1; k + 1 < seg.size(); ++k) c1.push_back(seg[k]);
  out.child[0] = make_cycle(g, std::move(c0));
  out.child[1] = make_cycle(g, std::move(c1));
  return out;
}

}  // namespace

Filling fill(const MetricGraph& g, const Cycle& c, const DistanceTable* table) {
  Filling f;
  f.regions.push_back(Region{c, -1, 0, std::nullopt, {-1, -1}});
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    DefectPair dp = max_defect_pair(g, f.regions[static_cast<std::size_t>(r)].cycle, table);
    if (dp.defect == 0) continue;
    Split s = split_region(g, f.regions[static_cast<std::size_t>(r)].cycle, dp, table);
    int depth = f.regions[static_cast<std::size_t>(r)].depth + 1;
    for (int k = 0; k < 2; ++k) {
      int id = static_cast<int>(f.regions.size());
      f.regions.push_back(Region{std::move(s.child[k]), r, depth, std::nullopt, {-1, -1}});
      f.regions[static_cast<std::size_t>(r)].child[k] = id;
      queue.push_back(id);
    }
    f.regions[static_cast<std::size_t>(r)].chord = std::move(s.chord);
    f.depth = std::max(f.depth, depth);
    ++f.splits;
  }
  return f;
}

void write_filling_dot(std::ostream& out, const MetricGraph& g, const Filling& f) {
  static const char* kShades[] = {"#f7fbff", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6",
                                  "#4292c6", "#2171b5", "#08519c", "#08306b"};
  out << "digraph filling {\n  node [shape=box, style=filled];\n";
  for (std::size_t i = 0; i < f.regions.size(); ++i) {
    const Region& r = f.regions[i];
    const char* shade = kShades[std::min<std::size_t>(static_cast<std::size_t>(r.depth), 8)];
    out << "  r" << i << " [label=\"" << i << ": " << r.cycle.size() << " vertices, length "
        << g.to_length(r.cycle.length) << (r.is_leaf() ? " (geodesic)" : "") << "\", fillcolor=\"" << shade
        << "\"" << (r.depth >= 5 ? ", fontcolor=white" : "") << "];\n";
  }
  for (std::size_t i = 0; i < f.regions.size(); ++i) {
    const Region& r = f.regions[i];
    if (r.is_leaf()) continue;
    for (int k : r.child) {
      out << "  r" << i << " -> r" << k << " [label=\"" << r.chord->path.front() << "~" << r.chord->path.back()
          << "\"];\n";
    }
  }
  out << "}\n";
}

}  // namespace cactus
