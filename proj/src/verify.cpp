#include "cactus/verify.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <random>
#include <stdexcept>

#include "cactus/paths.hpp"

namespace cactus {

namespace {

/// Edge sets of the biconnected blocks; self-loops are left out.
std::vector<std::vector<EdgeId>> blocks_of(const MetricGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> edge_stack;
  std::vector<std::vector<EdgeId>> out;
  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
  };
  const EdgeId none = g.edge_count();
  int clock = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (disc[s] >= 0) continue;
    disc[s] = low[s] = clock++;
    std::vector<Frame> frames{{s, none, 0}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        const Adjacent arc = nb[f.next++];
        if (arc.edge == f.via || arc.to == f.v) continue;
        if (disc[arc.to] < 0) {
          edge_stack.push_back(arc.edge);
          disc[arc.to] = low[arc.to] = clock++;
          frames.push_back(Frame{arc.to, arc.edge, 0});
        } else if (disc[arc.to] < disc[f.v]) {
          edge_stack.push_back(arc.edge);
          low[f.v] = std::min(low[f.v], disc[arc.to]);
        }
        continue;
      }
      const VertexId v = f.v;
      const EdgeId via = f.via;
      frames.pop_back();
      if (frames.empty()) break;
      const VertexId u = frames.back().v;
      low[u] = std::min(low[u], low[v]);
      if (low[v] >= disc[u]) {
        std::vector<EdgeId> block;
        EdgeId e;
        do {
          e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e);
        } while (e != via);
        out.push_back(std::move(block));
      }
    }
  }
  return out;
}

using Bits = std::vector<std::uint64_t>;

void flip(Bits& b, std::size_t i) { b[i / 64] ^= std::uint64_t{1} << (i % 64); }
bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }

/// Vertex set of the edge set when it is one simple cycle, else empty.
std::optional<Bits> as_simple_cycle(const MetricGraph& g, const Bits& edges) {
  const std::size_t n = g.vertex_count();
  std::vector<int> degree(n, 0);
  std::vector<EdgeId> members;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!test(edges, e)) continue;
    members.push_back(e);
    ++degree[g.edge(e).u];
    ++degree[g.edge(e).v];
  }
  if (members.empty()) return std::nullopt;
  Bits vertices((n + 63) / 64, 0);
  std::size_t touched = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (degree[v] == 0) continue;
    if (degree[v] != 2) return std::nullopt;
    flip(vertices, v);
    ++touched;
  }
  // 2-regular: a single cycle iff walking from one edge covers them all.
  std::size_t seen = 1;
  VertexId start = g.edge(members.front()).u;
  VertexId at = g.edge(members.front()).v;
  EdgeId came = members.front();
  while (at != start) {
    EdgeId step = came;
    for (const Adjacent& arc : g.neighbors(at)) {
      if (arc.edge != came && test(edges, arc.edge)) {
        step = arc.edge;
        break;
      }
    }
    if (step == came) return std::nullopt;
    came = step;
    at = g.edge(step).other(at);
    ++seen;
  }
  if (seen != members.size() || touched != members.size()) return std::nullopt;
  return vertices;
}

DistortionProfile profile(const CactusApprox& a, const DistortionOptions& options, bool parallel) {
  const MetricGraph& X = a.X();
  const MetricGraph& C = a.cactus;
  DistortionProfile out;

  out.lipschitz_max = Rational(0);
  for (EdgeId id = 0; id < C.edge_count(); ++id) {
    const Edge& e = C.edge(id);
    Ticks dx = distance(X, a.h[e.u], a.h[e.v]);
    out.lipschitz_max = std::max(out.lipschitz_max, Rational(dx, e.length));
  }

  std::vector<VertexId> image(a.h.begin(), a.h.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  auto to_image = distances_from(X, image);
  out.coarse_density = X.to_length(*std::max_element(to_image.begin(), to_image.end()));

  std::vector<VertexId> nodes_c;
  for (VertexId c = 0; c < C.vertex_count(); ++c)
    if (a.owner[c] >= 0) nodes_c.push_back(c);
  const std::size_t k = nodes_c.size();
  const std::size_t all = k * (k - (k > 0 ? 1 : 0)) / 2;

  // partners[i]: indices j > i to pair with nodes_c[i].
  std::vector<std::vector<std::size_t>> partners(k);
  if (all <= options.max_pairs) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) partners[i].push_back(j);
    out.pairs = all;
  } else {
    out.sampled = true;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    for (std::size_t s = 0; s < options.max_pairs; ++s) {
      std::size_t i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      partners[std::min(i, j)].push_back(std::max(i, j));
    }
    out.pairs = options.max_pairs;
  }

  const Ticks three_M = 3 * X.exact_ticks(a.M);
  Ticks gap = 0;
  std::size_t over = 0;
  const auto sources = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(dynamic) reduction(max : gap) reduction(+ : over) if (parallel)
  for (std::int64_t si = 0; si < sources; ++si) {
    const auto i = static_cast<std::size_t>(si);
    if (partners[i].empty()) continue;
    auto dc = distances_from(C, nodes_c[i]);
    auto dx = distances_from(X, a.h[nodes_c[i]]);
    for (std::size_t j : partners[i]) {
      Ticks excess = dc[nodes_c[j]] - 2 * dx[a.h[nodes_c[j]]];  // twice d_C/2 - d_X
      gap = std::max(gap, excess);
      if (excess > 2 * three_M) ++over;
    }
  }
  out.additive_lower_gap = X.to_length(std::max<Ticks>(gap, 0)) / Rational(2);
  out.pairs_over_3M = over;
  return out;
}

}  // namespace

bool is_cactus(const MetricGraph& g, std::string* why) {
  if (!is_connected(g)) {
    if (why) *why = "not connected";
    return false;
  }
  for (const auto& block : blocks_of(g)) {
    if (block.size() == 1) continue;
    std::vector<VertexId> vs;
    for (EdgeId e : block) {
      vs.push_back(g.edge(e).u);
      vs.push_back(g.edge(e).v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.size() != block.size()) {
      if (why) {
        *why = "block with " + std::to_string(vs.size()) + " vertices and " + std::to_string(block.size()) +
               " edges at vertex " + std::to_string(vs.front());
      }
      return false;
    }
  }
  return true;
}

std::size_t cycle_rank(const MetricGraph& g) {
  int components = 0;
  component_labels(g, VertexMask(g.vertex_count(), true), &components);
  return g.edge_count() + static_cast<std::size_t>(components) - g.vertex_count();
}

bool is_cactus_bruteforce(const MetricGraph& g, std::size_t max_rank) {
  if (!is_connected(g)) return false;
  const std::size_t rank = cycle_rank(g);
  if (rank > max_rank) throw std::invalid_argument("too many independent cycles for enumeration");
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  const std::size_t words = (m + 63) / 64;

  // BFS spanning tree; each non-tree edge closes one fundamental cycle.
  std::vector<EdgeId> up(n, m);
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<int> depth(n, -1);
  std::vector<bool> tree(m, false);
  std::vector<VertexId> queue{0};
  depth[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    VertexId v = queue[qi];
    for (const Adjacent& arc : g.neighbors(v)) {
      if (depth[arc.to] >= 0) continue;
      depth[arc.to] = depth[v] + 1;
      parent[arc.to] = v;
      up[arc.to] = arc.edge;
      tree[arc.edge] = true;
      queue.push_back(arc.to);
    }
  }
  std::vector<Bits> basis;
  for (EdgeId e = 0; e < m; ++e) {
    if (tree[e]) continue;
    Bits b(words, 0);
    flip(b, e);
    VertexId x = g.edge(e).u, y = g.edge(e).v;
    while (x != y) {
      if (depth[x] < depth[y]) std::swap(x, y);
      flip(b, up[x]);
      x = parent[x];
    }
    basis.push_back(std::move(b));
  }

  std::vector<Bits> cycles;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << basis.size()); ++mask) {
    Bits sum(words, 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if ((mask >> i) & 1U)
        for (std::size_t w = 0; w < words; ++w) sum[w] ^= basis[i][w];
    if (auto vs = as_simple_cycle(g, sum)) cycles.push_back(std::move(*vs));
  }
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      int shared = 0;
      for (std::size_t w = 0; w < cycles[i].size(); ++w) shared += std::popcount(cycles[i][w] & cycles[j][w]);
      if (shared >= 2) return false;
    }
  }
  return true;
}

DistortionProfile distortion_profile(const CactusApprox& a, const DistortionOptions& options) {
  return profile(a, options, true);
}

DistortionProfile distortion_profile_serial(const CactusApprox& a, const DistortionOptions& options) {
  return profile(a, options, false);
}

NodeTrace node_trace(const CactusApprox& a, VertexId from, VertexId to) {
  NodeTrace t;
  t.geodesic = shortest_path(a.cactus, from, to);
  if (t.geodesic.empty()) throw std::invalid_argument("endpoints not joined in C");
  int first = -1, last = -1;
  for (VertexId c : t.geodesic) {
    if (a.owner[c] < 0) continue;
    if (first < 0) first = a.owner[c];
    last = a.owner[c];
  }
  if (first < 0) return t;  // inside one connector: no node on the way
  auto chain = [&](int n) {
    std::vector<int> up;
    for (; n >= 0; n = a.nodes[static_cast<std::size_t>(n)].parent) up.push_back(n);
    return up;
  };
  auto up1 = chain(first), up2 = chain(last);
  // Drop the common tail above the lowest common ancestor.
  while (up1.size() > 1 && up2.size() > 1 && up1[up1.size() - 2] == up2[up2.size() - 2]) {
    up1.pop_back();
    up2.pop_back();
  }
  t.top = up1.back();
  t.nodes = up1;
  for (auto it = up2.rbegin() + 1; it != up2.rend(); ++it) t.nodes.push_back(*it);
  const auto& on_top = a.node_vertices[static_cast<std::size_t>(t.top)];
  for (VertexId c : t.geodesic) {
    if (std::find(on_top.begin(), on_top.end(), c) == on_top.end()) continue;
    if (t.a == kNoVertex) t.a = c;
    t.b = c;
  }
  return t;
}

}  // namespace cactus
