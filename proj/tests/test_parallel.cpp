#include <doctest.h>

#include <omp.h>

#include "cactus/generators.hpp"
#include "cactus/paths.hpp"
#include "cactus/separation.hpp"
#include "cactus/verify.hpp"
#include "oracles.hpp"

using namespace cactus;

namespace {

// One core in CI still runs several OpenMP threads, so scheduling differs
// from the serial loop.
struct Threads {
  int saved = omp_get_max_threads();
  explicit Threads(int n) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
};

bool same_report(const SharpReport& a, const SharpReport& b) {
  if (a.verdict != b.verdict || a.violation != b.violation || a.pairs_checked != b.pairs_checked ||
      a.eligible_pairs != b.eligible_pairs || a.witnesses.size() != b.witnesses.size())
    return false;
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    const auto &x = a.witnesses[i], &y = b.witnesses[i];
    if (x.x != y.x || x.y != y.y || x.a != y.a || x.b != y.b) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("distance tables: parallel equals serial equals Floyd") {
  Threads t(4);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto g = oracle::random_graph(40 + seed * 7, seed * 3, seed);
    auto p = DistanceTable::compute(g), s = DistanceTable::compute_serial(g);
    CHECK(p == s);
    auto f = oracle::floyd(g);
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      for (VertexId v = 0; v < g.vertex_count(); ++v) REQUIRE(p(u, v) == f[u][v]);
    CHECK(diameter(g) == s.diameter());
  }
}

TEST_CASE("check_sharp: parallel equals serial") {
  Threads t(4);
  SharpOptions opts;
  opts.granularity = Rational(1);
  opts.witness_cap = 50;
  for (const auto& g : {grid_graph(10, 10), cycle_graph(60), theta_graph(20)}) {
    for (const Rational& m : {Rational(1), Rational(2)}) {
      auto p = check_sharp(g, m, opts), s = check_sharp_serial(g, m, opts);
      CHECK(same_report(p, s));
    }
  }
  RandomCactusSpec spec;
  spec.seed = 4;
  spec.cycle_count = 10;
  auto big = random_cactus(spec);
  REQUIRE(big.vertex_count() > kFullSweepLimit);
  SharpOptions sampled = opts;
  sampled.sample = 800;
  sampled.seed = 2;
  auto p = check_sharp(big, Rational(1), sampled), s = check_sharp_serial(big, Rational(1), sampled);
  CHECK(p.verdict == Verdict::sampled);
  CHECK(same_report(p, s));
}

TEST_CASE("distortion: parallel equals serial under several thread counts") {
  RandomCactusSpec spec;
  spec.cycle_count = 6;
  spec.seed = 12;
  auto a = build_cactus(random_cactus(spec), 0, Rational(1), Rational(40));
  auto s = distortion_profile_serial(a);
  for (int n : {1, 2, 5}) {
    Threads t(n);
    auto p = distortion_profile(a);
    CHECK(p.additive_lower_gap == s.additive_lower_gap);
    CHECK(p.pairs_over_3M == s.pairs_over_3M);
    CHECK(p.coarse_density == s.coarse_density);
    CHECK(p.lipschitz_max == s.lipschitz_max);
  }
}
