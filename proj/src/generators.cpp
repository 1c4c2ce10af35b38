#include "cactus/generators.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cactus {
namespace {

MetricGraph unit_graph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back(Edge{u, v, 1});
  return MetricGraph::from_ticks(n, std::move(edges), Rational(1));
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  auto parts = split(s, '-');
  if (parts.size() == 1) return {std::stoul(parts[0]), std::stoul(parts[0])};
  if (parts.size() != 2) throw std::invalid_argument("bad range '" + s + "'");
  return {std::stoul(parts[0]), std::stoul(parts[1])};
}

}  // namespace

MetricGraph cycle_graph(std::size_t n) {
  require(n >= 3, "a cycle needs at least 3 vertices");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i < n; ++i) e.emplace_back(i, static_cast<VertexId>((i + 1) % n));
  return unit_graph(n, e);
}

MetricGraph path_graph(std::size_t n) {
  require(n >= 1, "a path needs at least one edge");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i < n; ++i) e.emplace_back(i, i + 1);
  return unit_graph(n + 1, e);
}

MetricGraph grid_graph(std::size_t w, std::size_t h) {
  require(w >= 1 && h >= 1 && w * h >= 2, "grid too small");
  std::vector<std::pair<VertexId, VertexId>> e;
  auto id = [h](std::size_t i, std::size_t j) { return static_cast<VertexId>(i * h + j); };
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = 0; j < h; ++j) {
      if (i + 1 < w) e.emplace_back(id(i, j), id(i + 1, j));
      if (j + 1 < h) e.emplace_back(id(i, j), id(i, j + 1));
    }
  }
  return unit_graph(w * h, e);
}

MetricGraph theta_graph(std::size_t arm, std::size_t arms) {
  require(arm >= 2 && arms >= 2, "theta arms need length >= 2");
  std::vector<std::pair<VertexId, VertexId>> e;
  VertexId next = 2;
  for (std::size_t k = 0; k < arms; ++k) {
    VertexId prev = 0;
    for (std::size_t i = 1; i < arm; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, 1);
  }
  return unit_graph(next, e);
}

MetricGraph tree_graph(std::size_t depth, std::size_t branching) {
  require(depth >= 1 && branching >= 1, "tree too small");
  std::vector<std::pair<VertexId, VertexId>> e;
  VertexId next = 1;
  std::vector<VertexId> frontier{0};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<VertexId> children;
    for (VertexId p : frontier) {
      for (std::size_t b = 0; b < branching; ++b) {
        e.emplace_back(p, next);
        children.push_back(next++);
      }
    }
    frontier = std::move(children);
  }
  return unit_graph(next, e);
}

MetricGraph lollipop_graph(std::size_t stick, std::size_t cycle) {
  require(cycle >= 3, "lollipop cycle too short");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i < stick; ++i) e.emplace_back(i, i + 1);
  auto hub = static_cast<VertexId>(stick);
  VertexId prev = hub;
  VertexId next = hub + 1;
  for (std::size_t i = 1; i < cycle; ++i) {
    e.emplace_back(prev, next);
    prev = next++;
  }
  e.emplace_back(prev, hub);
  return unit_graph(next, e);
}

MetricGraph bouquet_graph(std::span<const std::size_t> cycle_lengths) {
  std::vector<std::pair<VertexId, VertexId>> e;
  VertexId next = 1;
  for (std::size_t len : cycle_lengths) {
    require(len >= 3, "bouquet cycle too short");
    VertexId prev = 0;
    for (std::size_t i = 1; i < len; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, 0);
  }
  return unit_graph(next, e);
}

MetricGraph complete_graph(std::size_t n) {
  require(n >= 2, "complete graph too small");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return unit_graph(n, e);
}

MetricGraph random_cactus(const RandomCactusSpec& spec) {
  require(spec.cycle_count >= 1, "need at least one cycle");
  require(spec.cycle_len.first >= 3 && spec.cycle_len.first <= spec.cycle_len.second, "bad cycle length range");
  require(spec.tree_edges.first <= spec.tree_edges.second, "bad tree edge range");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> cycle_len(spec.cycle_len.first, spec.cycle_len.second);
  std::uniform_int_distribution<std::size_t> tree_len(spec.tree_edges.first, spec.tree_edges.second);
  std::vector<std::pair<VertexId, VertexId>> e;
  VertexId next = 1;
  for (std::size_t c = 0; c < spec.cycle_count; ++c) {
    VertexId anchor = 0;
    if (c > 0) anchor = std::uniform_int_distribution<VertexId>(0, next - 1)(rng);
    std::size_t stem = c == 0 ? 0 : tree_len(rng);
    for (std::size_t i = 0; i < stem; ++i) {
      e.emplace_back(anchor, next);
      anchor = next++;
    }
    std::size_t len = cycle_len(rng);
    VertexId prev = anchor;
    for (std::size_t i = 1; i < len; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, anchor);
  }
  return unit_graph(next, e);
}

MetricGraph planar_disk(const PlanarDiskSpec& spec) {
  require(spec.rings >= 1, "disk needs a ring");
  Rational lo = spec.weight.first;
  Rational hi = spec.weight.second;
  require(lo > Rational(0) && lo <= hi, "bad weight range");
  std::int64_t klo = (lo * Rational(2)).ceil();
  std::int64_t khi = (hi * Rational(2)).floor();
  require(klo <= khi, "weight range holds no multiple of 1/2");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::int64_t> weight(klo, khi);

  std::vector<Edge> edges;
  auto add = [&](VertexId u, VertexId v) { edges.push_back(Edge{u, v, weight(rng)}); };
  std::vector<VertexId> inner{0};
  VertexId next = 1;
  for (std::size_t ring = 1; ring <= spec.rings; ++ring) {
    std::size_t count = 6 * ring;
    std::vector<VertexId> outer(count);
    for (auto& v : outer) v = next++;
    for (std::size_t k = 0; k < count; ++k) add(outer[k], outer[(k + 1) % count]);
    if (ring == 1) {
      for (VertexId v : outer) add(0, v);
    } else {
      // Zip the two rings together in angular order: each step closes one
      // triangle by advancing along whichever ring is angularly behind.
      std::size_t ic = inner.size();
      std::size_t p = 0, q = 0;
      add(outer[0], inner[0]);
      while (p < count || q < ic) {
        // Compare angles (p+1)/count and (q+1)/ic.
        bool advance_outer = q == ic || (p < count && (p + 1) * ic <= (q + 1) * count);
        if (advance_outer) {
          ++p;
        } else {
          ++q;
        }
        if (p == count && q == ic) break;
        add(outer[p % count], inner[q % ic]);
      }
    }
    inner = std::move(outer);
  }
  return MetricGraph::from_ticks(next, std::move(edges), Rational(1, 2));
}

std::vector<VertexId> random_simple_cycle(const MetricGraph& g, std::uint64_t seed) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::mt19937_64 rng(seed);
  std::vector<VertexId> parent(n, kNoVertex), depth(n, 0);
  std::vector<std::uint8_t> seen(n, 0);
  VertexId root = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
  std::vector<VertexId> stack{root};
  std::vector<std::uint8_t> tree_edge(g.edge_count(), 0);
  std::vector<EdgeId> via(n, 0);
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = 1;
    if (v != root) tree_edge[via[v]] = 1;
    std::vector<Adjacent> nb(g.neighbors(v).begin(), g.neighbors(v).end());
    std::shuffle(nb.begin(), nb.end(), rng);
    for (const auto& a : nb) {
      if (seen[a.to]) continue;
      parent[a.to] = v;
      depth[a.to] = depth[v] + 1;
      via[a.to] = a.edge;
      stack.push_back(a.to);
    }
  }
  std::vector<EdgeId> others;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!tree_edge[e]) others.push_back(e);
  if (others.empty()) return {};
  const Edge& e = g.edge(others[std::uniform_int_distribution<std::size_t>(0, others.size() - 1)(rng)]);
  std::vector<VertexId> left, right;
  VertexId u = e.u, v = e.v;
  while (u != v) {
    if (depth[u] >= depth[v]) {
      left.push_back(u);
      u = parent[u];
    } else {
      right.push_back(v);
      v = parent[v];
    }
  }
  left.push_back(u);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

MetricGraph generate(const std::string& family, std::uint64_t seed) {
  auto parts = split(family, ':');
  require(!parts.empty(), "empty family");
  const std::string& name = parts[0];
  auto arg = [&](std::size_t i) -> const std::string& {
    if (i >= parts.size()) throw std::invalid_argument("family '" + name + "' needs more arguments");
    return parts[i];
  };
  auto num = [&](std::size_t i) { return static_cast<std::size_t>(std::stoul(arg(i))); };
  if (name == "cycle") return cycle_graph(num(1));
  if (name == "path") return path_graph(num(1));
  if (name == "grid") {
    auto dims = split(arg(1), 'x');
    require(dims.size() == 2, "grid expects WxH");
    return grid_graph(std::stoul(dims[0]), std::stoul(dims[1]));
  }
  if (name == "theta") return theta_graph(num(1), parts.size() > 2 ? num(2) : 3);
  if (name == "tree") return tree_graph(num(1), num(2));
  if (name == "lollipop") return lollipop_graph(num(1), num(2));
  if (name == "figure8") {
    std::size_t lens[2] = {num(1), parts.size() > 2 ? num(2) : num(1)};
    return bouquet_graph(lens);
  }
  if (name == "complete") return complete_graph(num(1));
  if (name == "random_cactus") {
    RandomCactusSpec spec;
    spec.seed = seed;
    if (parts.size() > 1) spec.cycle_count = num(1);
    if (parts.size() > 2) spec.cycle_len = parse_range(arg(2));
    if (parts.size() > 3) spec.tree_edges = parse_range(arg(3));
    return random_cactus(spec);
  }
  if (name == "planar_disk") {
    PlanarDiskSpec spec;
    spec.seed = seed;
    if (parts.size() > 1) spec.rings = num(1);
    if (parts.size() > 2) {
      auto w = split(arg(2), '-');
      require(w.size() == 2, "weights expect LO-HI");
      spec.weight = {Rational::parse(w[0]), Rational::parse(w[1])};
    }
    return planar_disk(spec);
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

}  // namespace cactus
