#include <doctest.h>

#include <sstream>

#include "cactus/generators.hpp"
#include "cactus/graph_io.hpp"
#include "cactus/harness.hpp"
#include "cactus/report_json.hpp"
#include "cactus/paths.hpp"
#include "cactus/verify.hpp"
#include "oracles.hpp"

using namespace cactus;

namespace {

/// The ringed disk with every edge of length 1 on a unit-1 tick lattice, so
/// hop counts are the metric.
MetricGraph unit_disk(std::size_t rings) {
  PlanarDiskSpec spec;
  spec.rings = rings;
  spec.weight = {Rational(1), Rational(1)};
  auto g = planar_disk(spec);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.length = 1;
  return MetricGraph::from_ticks(g.vertex_count(), std::move(edges), Rational(1));
}

/// Unit disk with a loop of `loop` edges hanging off rim vertex `at`.
MetricGraph disk_with_finger(std::size_t rings, std::size_t loop) {
  auto g = unit_disk(rings);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const VertexId at = static_cast<VertexId>(g.vertex_count() - 1);
  VertexId prev = at, next = static_cast<VertexId>(g.vertex_count());
  for (std::size_t k = 1; k < loop; ++k, ++next) {
    edges.push_back(Edge{prev, next, 1});
    prev = next;
  }
  edges.push_back(Edge{prev, at, 1});
  return MetricGraph::from_ticks(next, std::move(edges), Rational(1));
}

std::vector<std::size_t> oracle_sizes(const MetricGraph& g, Ticks r, Ticks m) {
  auto d = oracle::bfs(g, 0);
  std::vector<bool> keep(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) keep[v] = d[v] >= r && d[v] < r + m;
  std::vector<std::size_t> sizes;
  std::vector<bool> seen(g.vertex_count(), false);
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (!keep[s] || seen[s]) continue;
    std::size_t count = 0;
    std::vector<VertexId> st{s};
    seen[s] = true;
    while (!st.empty()) {
      VertexId v = st.back();
      st.pop_back();
      ++count;
      for (const auto& a : g.neighbors(v))
        if (keep[a.to] && !seen[a.to]) {
          seen[a.to] = true;
          st.push_back(a.to);
        }
    }
    sizes.push_back(count);
  }
  return sizes;
}

std::vector<std::size_t> sizes_of(const Annulus& a) {
  std::vector<std::size_t> out;
  for (const auto& c : a.components) out.push_back(c.graph.vertex_count());
  return out;
}

AnnulusSpec spec_of(Rational r, Rational m, std::optional<Rational> gran = std::nullopt) {
  AnnulusSpec s;
  s.r = r;
  s.m = m;
  s.granularity = gran;
  return s;
}

}  // namespace

TEST_CASE("annulus of a unit disk is one ring") {
  auto g = unit_disk(6);
  // Every vertex of ring i sits at distance i from the centre.
  auto a = annulus_components(g, spec_of(Rational(2), Rational(1)));
  REQUIRE(a.components.size() == 1);
  const auto& ring = a.components.front().graph;
  CHECK(ring.vertex_count() == 12);
  CHECK(ring.edge_count() == 12);
  CHECK(is_cactus(ring));
  CHECK(diameter(ring) == 6);
}

TEST_CASE("annulus components match a BFS count") {
  for (std::size_t rings : {4, 7, 10}) {
    auto g = unit_disk(rings);
    for (int r = 1; r <= static_cast<int>(rings); ++r) {
      for (int m : {1, 2, 3}) {
        CAPTURE(rings);
        CAPTURE(r);
        CAPTURE(m);
        auto a = annulus_components(g, spec_of(Rational(r), Rational(m), Rational(1)));
        auto got = sizes_of(a), want = oracle_sizes(g, r, m);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("empty and degenerate annuli") {
  auto g = unit_disk(5);
  CHECK(annulus_components(g, spec_of(Rational(6), Rational(2))).components.empty());
  CHECK(annulus_components(g, spec_of(Rational(100), Rational(1))).components.empty());
  CHECK_THROWS_AS(annulus_components(g, spec_of(Rational(0), Rational(1))), std::invalid_argument);
  CHECK_THROWS_AS(annulus_components(g, spec_of(Rational(1), Rational(0))), std::invalid_argument);
  AnnulusSpec far = spec_of(Rational(1), Rational(1));
  far.e = static_cast<VertexId>(g.vertex_count());
  CHECK_THROWS_AS(annulus_components(g, far), std::out_of_range);

  // The centre alone: one single-point component, vacuously (sharp, m').
  auto star = MetricGraph::from_ticks(2, {Edge{0, 1, 1}}, Rational(1));
  std::vector<Rational> sweep{Rational(1), Rational(2)};
  auto rep = annulus_experiment(star, spec_of(Rational(1), Rational(1)), sweep);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].vertices == 1);
  CHECK(rep.rows[0].least_m == Rational(1));
  CHECK_FALSE(rep.rows[0].theta_found);
}

TEST_CASE("a pinched finger splits the annulus") {
  auto g = disk_with_finger(3, 40);
  // Beyond the rim the loop meets the annulus in two arcs.
  auto a = annulus_components(g, spec_of(Rational(10), Rational(4), Rational(1)));
  CHECK(a.components.size() >= 2);
  CHECK(sizes_of(a).size() == oracle_sizes(g, 10, 4).size());
  for (const auto& c : a.components) CHECK(c.graph.vertex_count() == 4);
  // Inside the disk the same spec reaches one ring and no finger.
  CHECK(annulus_components(g, spec_of(Rational(2), Rational(1), Rational(1))).components.size() == 1);
}

TEST_CASE("annulus experiment on a ringed disk") {
  PlanarDiskSpec disk;
  disk.rings = 6;
  disk.seed = 4;
  auto g = planar_disk(disk);
  std::vector<Rational> sweep;
  for (int k : {1, 2, 3, 5, 8}) sweep.push_back(Rational(k));
  ExperimentOptions opts;
  opts.seed = 9;
  auto rep = annulus_experiment(g, spec_of(Rational(3), Rational(2)), sweep, opts);
  CHECK_FALSE(rep.rows.empty());
  for (const auto& row : rep.rows) {
    CAPTURE(row.component);
    REQUIRE(row.least_m.has_value());
    CHECK(row.verdict != Verdict::violated);
    CHECK_FALSE(row.theta_found);
  }
  // Deterministic for a fixed seed, and the sweep comes back sorted.
  std::vector<Rational> shuffled{Rational(8), Rational(1), Rational(5), Rational(3), Rational(2)};
  auto again = annulus_experiment(g, spec_of(Rational(3), Rational(2)), shuffled, opts);
  CHECK(again.sweep == rep.sweep);
  REQUIRE(again.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(again.rows[i].vertices == rep.rows[i].vertices);
    CHECK(again.rows[i].least_m == rep.rows[i].least_m);
    CHECK(again.rows[i].theta_pairs == rep.rows[i].theta_pairs);
  }
}

TEST_CASE("a sweep that never holds is reported, not failed") {
  // A 5x5 grid component violates (sharp, 1/2): the sweep {1/2} is exhausted.
  auto grid = grid_graph(5, 5);
  std::vector<Edge> edges(grid.edges().begin(), grid.edges().end());
  edges.push_back(Edge{0, 25, 1});
  auto g = MetricGraph::from_ticks(26, std::move(edges), Rational(1));
  std::vector<Rational> sweep{Rational(1, 2)};
  AnnulusSpec spec = spec_of(Rational(1), Rational(20));
  spec.e = 25;
  auto rep = annulus_experiment(g, spec, sweep);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].vertices == 25);
  CHECK_FALSE(rep.rows[0].least_m.has_value());
}

TEST_CASE("generators are deterministic and random cacti are cacti") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto a = generate("random_cactus:5:40-60:0-10", seed), b = generate("random_cactus:5:40-60:0-10", seed);
    std::ostringstream sa, sb;
    write_edge_list(sa, a);
    write_edge_list(sb, b);
    CHECK(sa.str() == sb.str());
    CHECK(is_cactus(a));
    auto d1 = generate("planar_disk:5", seed), d2 = generate("planar_disk:5", seed);
    std::ostringstream s1, s2;
    write_edge_list(s1, d1);
    write_edge_list(s2, d2);
    CHECK(s1.str() == s2.str());
    CHECK(d1.vertex_count() == 1 + 6 * (1 + 2 + 3 + 4 + 5));
  }
  CHECK_THROWS(generate("no_such_family", 1));
}

TEST_CASE("edge lists round-trip") {
  auto g = generate("planar_disk:4:1/2-3", 11);
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  auto h = read_edge_list(in);
  REQUIRE(h.vertex_count() == g.vertex_count());
  REQUIRE(h.edge_count() == g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    CHECK(h.edge(e).u == g.edge(e).u);
    CHECK(h.edge(e).v == g.edge(e).v);
    CHECK(h.to_length(h.edge(e).length) == g.to_length(g.edge(e).length));
  }
}

TEST_CASE("json records") {
  auto g = generate("planar_disk:3:1/2-2", 5);
  auto back = graph_from_json(graph_json(g));
  CHECK(back.unit() == g.unit());
  REQUIRE(back.edge_count() == g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) CHECK(back.edge(e).length == g.edge(e).length);
  CHECK_THROWS_AS(graph_from_json(Json{{"vertices", 2}}), std::invalid_argument);

  auto j = envelope("gen", Json{{"seed", 5}});
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j.begin().key() == "schema_version");
  CHECK(j["seed"] == 5);

  SharpOptions opts;
  opts.granularity = Rational(1);
  auto grid = check_sharp(grid_graph(12, 12), Rational(1), opts);
  auto s = sharp_json(grid);
  CHECK(s["verdict"] == "violated");
  CHECK(s["violation"]["x_origin"].contains("vertex"));
  CHECK(Rational::parse(s["violation"]["distance"].get<std::string>()) >= Rational(10));
}

TEST_CASE("cactus records round-trip") {
  RandomCactusSpec spec;
  spec.seed = 3;
  auto g = random_cactus(spec);
  auto a = build_cactus(g, 0, Rational(1), Rational(40));
  auto text = cactus_json(a).dump();
  auto b = cactus_from_json(Json::parse(text), g);
  CHECK(cactus_json(b).dump() == text);
  auto p = distortion_profile(a), q = distortion_profile(b);
  CHECK(p.additive_lower_gap == q.additive_lower_gap);
  CHECK(p.coarse_density == q.coarse_density);
  CHECK(diagnose_lemmas(b).failures() == diagnose_lemmas(a).failures());
  CHECK_THROWS_AS(cactus_from_json(Json::parse(text), cycle_graph(30)), std::invalid_argument);
}
