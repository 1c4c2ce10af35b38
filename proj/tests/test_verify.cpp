#include <doctest.h>

#include <array>
#include <random>

#include "cactus/generators.hpp"
#include "cactus/verify.hpp"
#include "oracles.hpp"

using namespace cactus;

namespace {

MetricGraph figure_eight() {
  std::array<std::size_t, 2> lengths{5, 7};
  return bouquet_graph(lengths);
}

MetricGraph with_extra_edge(const MetricGraph& g, VertexId u, VertexId v) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.push_back(Edge{u, v, 1});
  return MetricGraph::from_ticks(g.vertex_count(), std::move(edges), g.unit());
}

/// Largest distance from a vertex of X to the image of h, by Floyd-Warshall.
Ticks density_oracle(const CactusApprox& a) {
  auto d = oracle::floyd(a.X());
  Ticks worst = 0;
  for (VertexId x = 0; x < a.X().vertex_count(); ++x) {
    Ticks best = kUnreachable;
    for (VertexId c : a.h) best = std::min(best, d[x][c]);
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("block recognizer on small examples") {
  CHECK(is_cactus(figure_eight()));
  CHECK(is_cactus(cycle_graph(300)));
  CHECK(is_cactus(path_graph(5)));
  CHECK(is_cactus(tree_graph(3, 3)));
  std::string why;
  CHECK_FALSE(is_cactus(theta_graph(4), &why));
  CHECK(why.find("block") != std::string::npos);
  CHECK_FALSE(is_cactus(complete_graph(4)));
  CHECK_FALSE(is_cactus(grid_graph(3, 3)));
  // Two triangles sharing an edge: one block of 4 vertices and 5 edges.
  auto diamond = MetricGraph::from_ticks(4, {Edge{0, 1, 1}, Edge{1, 2, 1}, Edge{2, 0, 1}, Edge{1, 3, 1}, Edge{3, 2, 1}},
                                         Rational(1));
  CHECK_FALSE(is_cactus(diamond));
  CHECK_FALSE(is_cactus_bruteforce(diamond));
  // Two triangles sharing a vertex.
  auto bowtie = MetricGraph::from_ticks(5, {Edge{0, 1, 1}, Edge{1, 2, 1}, Edge{2, 0, 1}, Edge{0, 3, 1}, Edge{3, 4, 1},
                                            Edge{4, 0, 1}},
                                        Rational(1));
  CHECK(is_cactus(bowtie));
  CHECK(is_cactus_bruteforce(bowtie));
}

TEST_CASE("cycle rank") {
  CHECK(cycle_rank(path_graph(6)) == 0);
  CHECK(cycle_rank(figure_eight()) == 2);
  CHECK(cycle_rank(complete_graph(5)) == 6);
  CHECK(cycle_rank(grid_graph(4, 4)) == 9);
  CHECK_THROWS_AS(is_cactus_bruteforce(grid_graph(5, 5)), std::invalid_argument);
}

TEST_CASE("block recognizer agrees with cycle-space enumeration") {
  std::size_t cacti = 0, others = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto g = oracle::random_graph(9 + seed % 8, seed % 6, seed);
    if (cycle_rank(g) > 12) continue;
    CAPTURE(seed);
    bool c = is_cactus(g);
    CHECK(c == is_cactus_bruteforce(g));
    (c ? cacti : others) += 1;
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomCactusSpec spec;
    spec.cycle_count = 4;
    spec.cycle_len = {3, 8};
    spec.tree_edges = {0, 3};
    spec.seed = seed;
    auto g = random_cactus(spec);
    CHECK(is_cactus(g));
    CHECK(is_cactus_bruteforce(g));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.vertex_count() - 1));
    VertexId u = pick(rng), v = pick(rng);
    if (u == v || g.has_edge(u, v)) continue;
    auto h = with_extra_edge(g, u, v);
    CAPTURE(seed);
    CHECK(is_cactus(h) == is_cactus_bruteforce(h));
    (is_cactus(h) ? cacti : others) += 1;
  }
  // Both outcomes must be exercised.
  CHECK(cacti > 5);
  CHECK(others > 5);
}

TEST_CASE("distortion of exact builds") {
  auto ring = build_cactus(cycle_graph(300), 0, Rational(1), Rational(40));
  CHECK(is_cactus(ring.cactus));
  DistortionOptions sweep;
  sweep.max_pairs = 50000;
  auto p = distortion_profile(ring, sweep);
  CHECK(p.lipschitz_max == Rational(1));
  CHECK(p.additive_lower_gap == Rational(0));
  CHECK(p.coarse_density == Rational(0));
  CHECK(p.coarse_density < ring.M);
  CHECK(p.pairs == 300 * 299 / 2);
  CHECK_FALSE(p.sampled);

  auto stick = build_cactus(lollipop_graph(100, 300), 0, Rational(1), Rational(40));
  auto q = distortion_profile(stick);
  CHECK(q.additive_lower_gap == Rational(0));
  CHECK(q.coarse_density == Rational(0));
}

TEST_CASE("coarse density and gap against brute force") {
  // Tree: rays end 20 past the last point node; siblings cost d_C = 80 vs d_X = 80.
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= 300; ++v) edges.push_back(Edge{v % 100 == 1 ? 0 : v - 1, v, 1});
  auto spider = MetricGraph::from_ticks(301, std::move(edges), Rational(1));
  auto a = build_cactus(spider, 0, Rational(1), Rational(40));
  CHECK(is_cactus(a.cactus));
  auto p = distortion_profile(a);
  CHECK(p.coarse_density == Rational(density_oracle(a)));
  CHECK(p.coarse_density == Rational(20));
  CHECK(p.additive_lower_gap == Rational(0));

  // Branching inside the first ball: two rays meet at distance 30 from the
  // root, so the two level-1 points are 20 apart in X but 80 apart in C.
  std::vector<Edge> fork;
  for (VertexId v = 1; v <= 30; ++v) fork.push_back(Edge{v - 1, v, 1});
  VertexId next = 31;
  for (int arm = 0; arm < 2; ++arm) {
    VertexId prev = 30;
    for (int k = 0; k < 30; ++k, ++next) {
      fork.push_back(Edge{prev, next, 1});
      prev = next;
    }
  }
  auto y = MetricGraph::from_ticks(next, std::move(fork), Rational(1));
  auto b = build_cactus(y, 0, Rational(1), Rational(40));
  REQUIRE(b.nodes.size() == 3);
  auto r = distortion_profile(b);
  // d_C/2 - d_X over node pairs: (80/2 - 20) = 20 for the two level-1 points.
  CHECK(r.additive_lower_gap == Rational(20));
  CHECK(r.pairs_over_3M == 0);
  CHECK(r.coarse_density == Rational(density_oracle(b)));
}

TEST_CASE("parallel and serial profiles agree; sampling is seeded") {
  RandomCactusSpec spec;
  spec.cycle_count = 5;
  spec.seed = 7;
  auto a = build_cactus(random_cactus(spec), 0, Rational(1), Rational(40));
  auto p = distortion_profile(a), s = distortion_profile_serial(a);
  CHECK(p.lipschitz_max == s.lipschitz_max);
  CHECK(p.additive_lower_gap == s.additive_lower_gap);
  CHECK(p.coarse_density == s.coarse_density);
  CHECK(p.pairs == s.pairs);
  CHECK(p.pairs_over_3M == s.pairs_over_3M);

  DistortionOptions small;
  small.max_pairs = 500;
  small.seed = 3;
  auto x = distortion_profile(a, small), y = distortion_profile_serial(a, small);
  CHECK(x.sampled);
  CHECK(x.pairs == 500);
  CHECK(x.additive_lower_gap == y.additive_lower_gap);
  CHECK(x.additive_lower_gap <= p.additive_lower_gap);
}

TEST_CASE("node traces are visited by every C-geodesic") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RandomCactusSpec spec;
    spec.cycle_count = 5;
    spec.cycle_len = {40, 50};
    spec.tree_edges = {0, 30};
    spec.seed = seed;
    auto a = build_cactus(random_cactus(spec), 0, Rational(1), Rational(40));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(a.cactus.vertex_count() - 1));
    for (int trial = 0; trial < 40; ++trial) {
      VertexId u = pick(rng), v = pick(rng);
      for (auto [from, to] : {std::pair{u, v}, std::pair{v, u}}) {
        auto t = node_trace(a, from, to);
        CAPTURE(seed);
        CAPTURE(from);
        CAPTURE(to);
        if (t.nodes.empty()) {
          CHECK(std::none_of(t.geodesic.begin(), t.geodesic.end(), [&](VertexId c) { return a.owner[c] >= 0; }));
          continue;
        }
        for (int n : t.nodes) {
          const auto& mine = a.node_vertices[static_cast<std::size_t>(n)];
          bool visited = std::any_of(t.geodesic.begin(), t.geodesic.end(), [&](VertexId c) {
            return std::find(mine.begin(), mine.end(), c) != mine.end();
          });
          CHECK(visited);
          CHECK(a.nodes[static_cast<std::size_t>(n)].level >= a.nodes[static_cast<std::size_t>(t.top)].level);
        }
      }
    }
  }
}
