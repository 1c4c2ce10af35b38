#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "cactus/generators.hpp"
#include "cactus/graph_io.hpp"
#include "cactus/paths.hpp"
#include "cactus/subspace.hpp"
#include "oracles.hpp"

using namespace cactus;

namespace {

MetricGraph c8_with_chord() {
  std::vector<WeightedEdge> e;
  for (VertexId i = 0; i < 8; ++i) e.push_back({i, (i + 1) % 8, Rational(1)});
  e.push_back({0, 4, Rational(1)});
  return MetricGraph(8, e);
}

std::vector<VertexId> sorted(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("construction rejects malformed graphs") {
  std::vector<WeightedEdge> loop{{0, 0, Rational(1)}};
  CHECK_THROWS_AS(MetricGraph(1, loop), GraphError);
  std::vector<WeightedEdge> parallel{{0, 1, Rational(1)}, {1, 0, Rational(2)}};
  CHECK_THROWS_AS(MetricGraph(2, parallel), GraphError);
  std::vector<WeightedEdge> split{{0, 1, Rational(1)}, {2, 3, Rational(1)}};
  CHECK_THROWS_AS(MetricGraph(4, split), GraphError);
  std::vector<WeightedEdge> zero{{0, 1, Rational(0)}};
  CHECK_THROWS_AS(MetricGraph(2, zero), GraphError);
  std::vector<WeightedEdge> missing{{0, 5, Rational(1)}};
  CHECK_THROWS_AS(MetricGraph(2, missing), GraphError);
}

TEST_CASE("tick unit is the lcm of denominators") {
  std::vector<WeightedEdge> e{{0, 1, Rational(1, 2)}, {1, 2, Rational(2, 3)}};
  MetricGraph g(3, e);
  CHECK(g.unit() == Rational(1, 6));
  CHECK(g.edge(0).length == 3);
  CHECK(g.edge(1).length == 4);
  CHECK(g.to_length(distance(g, 0, 2)) == Rational(7, 6));
  CHECK(g.ceil_ticks(Rational(1, 4)) == 2);
  CHECK(g.floor_ticks(Rational(1, 4)) == 1);
}

TEST_CASE("distance examples") {
  CHECK(distance(cycle_graph(8), 0, 4) == 4);
  CHECK(distance(path_graph(10), 0, 10) == 10);
  auto g = c8_with_chord();
  CHECK(distance(g, 0, 4) == 1);
  CHECK(oracle::enumerate_paths(g, 0, 4) == 1);
  for (VertexId u = 0; u < 8; ++u)
    for (VertexId v = 0; v < 8; ++v) CHECK(distance(g, u, v) == oracle::enumerate_paths(g, u, v));
}

TEST_CASE("distance between edge points") {
  std::vector<WeightedEdge> e{{0, 1, Rational(4)}, {1, 2, Rational(4)}, {2, 0, Rational(4)}};
  MetricGraph g(3, e);
  auto p = PointRef::on_edge(0, 1);  // 1 from vertex 0 on edge 0-1
  auto q = PointRef::on_edge(0, 3);
  auto r = PointRef::on_edge(1, 2);  // midpoint of 1-2
  CHECK(distance(g, p, q) == 2);
  CHECK(distance(g, p, r) == 5);
  CHECK(distance(g, p, PointRef::at_vertex(2)) == 5);
  CHECK(distance(g, q, PointRef::at_vertex(2)) == 5);
  auto path = shortest_path(g, p, r);
  CHECK(path.front() == p);
  CHECK(path.back() == r);
}

TEST_CASE("shortest_path tie-break and examples") {
  auto p = shortest_path(path_graph(10), 0, 10);
  CHECK(p.size() == 11);
  for (VertexId i = 0; i <= 10; ++i) CHECK(p[i] == i);

  auto c = shortest_path(cycle_graph(8), 0, 4);
  CHECK(c == std::vector<VertexId>{0, 1, 2, 3, 4});
  auto back = shortest_path(cycle_graph(8), 4, 0);
  CHECK(back == std::vector<VertexId>{4, 3, 2, 1, 0});

  auto grid = grid_graph(5, 5);
  auto s = shortest_path(grid, 0, 24);
  CHECK(path_length(grid, s) == 8);
  CHECK(s.size() == 9);
  auto bfs = oracle::bfs(grid, 0);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(bfs[s[i]] == static_cast<Ticks>(i));
  // Monotone staircase: each step increases a coordinate.
  for (std::size_t i = 1; i < s.size(); ++i) {
    VertexId a = s[i - 1], b = s[i];
    CHECK((b == a + 1 || b == a + 5));
  }
}

TEST_CASE("shortest path restricted to a mask") {
  auto g = cycle_graph(8);
  VertexMask allowed(8, true);
  allowed.erase(1);
  auto p = shortest_path(g, 0, 2, &allowed);
  CHECK(p == std::vector<VertexId>{0, 7, 6, 5, 4, 3, 2});
  allowed.erase(5);
  CHECK(shortest_path(g, 0, 2, &allowed).empty());
}

TEST_CASE("neighborhood examples") {
  auto c8 = cycle_graph(8);
  VertexId zero[1] = {0};
  CHECK(sorted(neighborhood(c8, zero, Rational(2)).members()) == std::vector<VertexId>{0, 1, 7});
  CHECK(neighborhood(c8, zero, Rational(100)).size() == 8);

  auto grid = grid_graph(5, 5);
  VertexId centre[1] = {12};
  auto n = neighborhood(grid, centre, Rational(3, 2));
  CHECK(sorted(n.members()) == std::vector<VertexId>{7, 11, 12, 13, 17});
  // Oracle: strict inequality against the BFS table.
  auto bfs = oracle::bfs(grid, 12);
  for (VertexId v = 0; v < 25; ++v) CHECK(n.contains(v) == (bfs[v] * 2 < 3));

  CHECK_THROWS(neighborhood(c8, std::span<const VertexId>{}, Rational(1)));
}

TEST_CASE("strict inequality at integer radius") {
  auto p = path_graph(10);
  VertexId mid[1] = {5};
  CHECK(sorted(neighborhood(p, mid, Rational(1)).members()) == std::vector<VertexId>{5});
  CHECK(sorted(neighborhood(p, mid, Rational(2)).members()) == std::vector<VertexId>{4, 5, 6});
}

TEST_CASE("components_minus examples") {
  auto p = path_graph(10);
  VertexId mid[1] = {5};
  CHECK(components_minus(p, neighborhood(p, mid, Rational(1))).size() == 2);

  auto c8 = cycle_graph(8);
  VertexId zero[1] = {0};
  CHECK(components_minus(c8, neighborhood(c8, zero, Rational(1))).size() == 1);

  VertexId two[2] = {0, 4};
  auto comps = components_minus(c8, neighborhood(c8, two, Rational(1)));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].members() == std::vector<VertexId>{1, 2, 3});
  CHECK(comps[1].members() == std::vector<VertexId>{5, 6, 7});

  CHECK(components_minus(c8, neighborhood(c8, zero, Rational(10))).empty());
}

TEST_CASE("components_minus is a partition of the complement") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = oracle::random_graph(60, 20, seed);
    VertexId src[2] = {static_cast<VertexId>(seed), static_cast<VertexId>(seed * 3)};
    auto removed = neighborhood(g, src, Rational(2));
    auto comps = components_minus(g, removed);
    std::vector<int> hits(g.vertex_count(), 0);
    for (const auto& c : comps) {
      for (VertexId v : c.members()) ++hits[v];
      // internally connected
      std::vector<bool> keep(g.vertex_count());
      for (VertexId v : c.members()) keep[v] = true;
      CHECK(oracle::count_components(g, keep) == 1);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(hits[v] == (removed.contains(v) ? 0 : 1));
    std::vector<bool> rest(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) rest[v] = !removed.contains(v);
    CHECK(oracle::count_components(g, rest) == static_cast<int>(comps.size()));
  }
}

TEST_CASE("boundary examples") {
  auto c20 = cycle_graph(20);
  PointRef e[1] = {PointRef::at_vertex(0)};
  auto comps = components_minus(c20, neighborhood(c20, e, Rational(5)));
  REQUIRE(comps.size() == 1);
  auto b = boundary(c20, comps[0], e, Rational(5));
  REQUIRE(b.size() == 2);
  CHECK(b[0] == PointRef::at_vertex(5));
  CHECK(b[1] == PointRef::at_vertex(15));

  // Star with three rays of length 3; R = 2 cuts each ray in its interior.
  std::vector<WeightedEdge> star{{0, 1, Rational(3)}, {0, 2, Rational(3)}, {0, 3, Rational(3)}};
  MetricGraph s(4, star);
  PointRef c[1] = {PointRef::at_vertex(0)};
  auto rays = components_minus(s, neighborhood(s, c, Rational(2)));
  REQUIRE(rays.size() == 3);
  for (const auto& ray : rays) {
    auto pts = boundary(s, ray, c, Rational(2));
    REQUIRE(pts.size() == 1);
    CHECK(!pts[0].is_vertex());
    CHECK(distance(s, pts[0], c[0]) == 2);
  }

  auto grid = grid_graph(9, 9);
  PointRef centre[1] = {PointRef::at_vertex(40)};
  auto outer = components_minus(grid, neighborhood(grid, centre, Rational(3)));
  REQUIRE(outer.size() == 1);
  auto sphere = boundary(grid, outer[0], centre, Rational(3));
  auto bfs = oracle::bfs(grid, 40);
  std::vector<VertexId> expect, got;
  for (VertexId v = 0; v < 81; ++v)
    if (bfs[v] == 3) expect.push_back(v);
  for (const auto& p : sphere) {
    REQUIRE(p.is_vertex());
    got.push_back(p.vertex);
  }
  CHECK(sorted(got) == expect);
  CHECK(expect.size() == 12);

  SubSpace wrong{&grid, VertexMask(81), MetricMode::path};
  wrong.vertices.insert(40);
  CHECK_THROWS(boundary(grid, wrong, centre, Rational(3)));
  CHECK_THROWS(boundary(grid, outer[0], centre, Rational(1, 2)));
}

TEST_CASE("subdivide examples") {
  std::vector<WeightedEdge> one{{0, 1, Rational(1)}};
  auto s = subdivide(MetricGraph(2, one), Rational(1, 2));
  CHECK(s.vertex_count() == 3);
  CHECK(s.edge_count() == 2);

  auto c16 = subdivide(cycle_graph(4), Rational(1, 4));
  CHECK(c16.vertex_count() == 16);
  CHECK(c16.edge_count() == 16);
  for (const auto& e : c16.edges()) CHECK(c16.to_length(e.length) == Rational(1, 4));
  CHECK(c16.to_length(diameter(c16)) == Rational(2));
}

TEST_CASE("subdivide is an isometry on original vertices") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto g = oracle::random_graph(25, 10, seed);
    for (Rational gran : {Rational(1, 2), Rational(1, 3), Rational(2, 5)}) {
      auto sub = subdivide_with_origin(g, gran);
      for (const auto& e : sub.graph.edges()) CHECK(sub.graph.to_length(e.length) <= gran);
      auto d0 = oracle::floyd(g);
      auto d1 = DistanceTable::compute(sub.graph);
      for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v = 0; v < g.vertex_count(); ++v)
          CHECK(g.to_length(d0[u][v]) == sub.graph.to_length(d1(u, v)));
      for (VertexId v = g.vertex_count(); v < sub.graph.vertex_count(); ++v) {
        const auto& o = sub.origin[v];
        REQUIRE(!o.is_vertex());
        const auto& e = g.edge(o.edge);
        CHECK(sub.graph.to_length(d1(v, e.u)) <= o.offset);
      }
    }
  }
}

TEST_CASE("shortest-path metric axioms, exhaustive") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto g = oracle::random_graph(seed == 4 ? 200 : 50, 40, seed);
    auto t = DistanceTable::compute(g);
    auto f = oracle::floyd(g);
    const auto n = g.vertex_count();
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        REQUIRE(t(u, v) == f[u][v]);
        CHECK(t(u, v) == t(v, u));
        CHECK((t(u, v) == 0) == (u == v));
      }
    }
    for (VertexId u = 0; u < n; u += 3)
      for (VertexId v = 0; v < n; v += 2)
        for (VertexId w = 0; w < n; w += 5) CHECK(t(u, w) <= t(u, v) + t(v, w));
  }
}

TEST_CASE("geodesics realize the distance and are lexicographically least") {
  auto g = oracle::random_graph(40, 30, 7, 2);
  auto t = DistanceTable::compute(g);
  for (VertexId u = 0; u < 40; u += 3) {
    for (VertexId v = 0; v < 40; v += 4) {
      auto p = shortest_path(g, u, v);
      CHECK(path_length(g, p) == t(u, v));
      // lexicographic minimality: at every step the chosen neighbour is the
      // smallest one that still lies on a geodesic
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        for (const auto& a : g.neighbors(p[i])) {
          if (a.to >= p[i + 1]) break;
          CHECK(t(p[i], v) != a.length + t(a.to, v));
        }
      }
    }
  }
}

TEST_CASE("induced distance never exceeds path distance") {
  auto g = grid_graph(8, 8);
  VertexId centre[1] = {27};
  auto hole = neighborhood(g, centre, Rational(2));
  auto comps = components_minus(g, hole);
  REQUIRE(comps.size() == 1);
  SubSpace s = comps[0];
  auto members = s.members();
  for (std::size_t i = 0; i < members.size(); i += 5) {
    for (std::size_t j = 0; j < members.size(); j += 7) {
      CHECK(s.induced_distance(members[i], members[j]) <= s.path_distance(members[i], members[j]));
    }
  }
  // Around the hole the path metric is strictly longer.
  CHECK(s.path_distance(18, 36) > s.induced_distance(18, 36));

  // Path metric is infinite across components.
  auto c8 = cycle_graph(8);
  VertexId two[2] = {0, 4};
  SubSpace rest{&c8, neighborhood(c8, two, Rational(1)).vertices.complement(), MetricMode::path};
  CHECK(rest.path_distance(1, 5) == kUnreachable);
  CHECK(rest.path_distance(1, 3) == 2);
}

TEST_CASE("extract keeps the path metric") {
  auto g = grid_graph(6, 6);
  VertexId centre[1] = {14};
  auto comps = components_minus(g, neighborhood(g, centre, Rational(2)));
  REQUIRE(comps.size() == 1);
  auto ex = extract(comps[0]);
  for (VertexId i = 0; i < ex.to_parent.size(); i += 3)
    for (VertexId j = 0; j < ex.to_parent.size(); j += 2)
      CHECK(distance(ex.graph, i, j) == comps[0].path_distance(ex.to_parent[i], ex.to_parent[j]));
}

TEST_CASE("edge list round trip") {
  auto g = oracle::random_graph(30, 15, 3);
  std::stringstream buf;
  write_edge_list(buf, g);
  auto h = read_edge_list(buf);
  REQUIRE(h.vertex_count() == g.vertex_count());
  REQUIRE(h.edge_count() == g.edge_count());
  auto a = weighted_edges(g), b = weighted_edges(h);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].u == b[i].u);
    CHECK(a[i].v == b[i].v);
    CHECK(a[i].length == b[i].length);
  }
}

TEST_CASE("edge list parsing") {
  std::istringstream in("# vertices 3\n# comment\n0 1 0.5\n\n1 2 3/4\n");
  auto g = read_edge_list(in);
  CHECK(g.vertex_count() == 3);
  CHECK(g.to_length(distance(g, 0, 2)) == Rational(5, 4));
  std::istringstream bad("# vertices 3\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad), GraphError);
  std::istringstream disconnected("# vertices 4\n0 1 1\n2 3 1\n");
  CHECK_THROWS_AS(read_edge_list(disconnected), GraphError);
  std::istringstream parallel("0 1 1\n1 0 2\n");
  CHECK_THROWS_AS(read_edge_list(parallel), GraphError);
}
