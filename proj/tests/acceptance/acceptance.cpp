// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "cactus/builder.hpp"
#include "cactus/cycles.hpp"
#include "cactus/fat_theta.hpp"
#include "cactus/generators.hpp"
#include "cactus/harness.hpp"
#include "cactus/separation.hpp"
#include "cactus/verify.hpp"

using namespace cactus;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& ex) {
    o = {false, std::string("exception: ") + ex.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = s <= budget_s;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2fs of %.0fs%s)\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s, budget_s,
              in_time ? "" : ", over budget");
  std::fflush(stdout);
}

MetricGraph random_cactus_at(std::uint64_t seed, std::size_t cycles, std::pair<std::size_t, std::size_t> len,
                             std::pair<std::size_t, std::size_t> tree) {
  RandomCactusSpec spec;
  spec.cycle_count = cycles;
  spec.cycle_len = len;
  spec.tree_edges = tree;
  spec.seed = seed;
  return random_cactus(spec);
}

MetricGraph spider(std::size_t rays, std::size_t length) {
  std::vector<Edge> edges;
  VertexId next = 1;
  for (std::size_t r = 0; r < rays; ++r) {
    VertexId prev = 0;
    for (std::size_t k = 0; k < length; ++k, ++next) {
      edges.push_back(Edge{prev, next, 1});
      prev = next;
    }
  }
  return MetricGraph::from_ticks(next, std::move(edges), Rational(1));
}

/// Complete ternary tree of depth 3 with every edge of length 30.
MetricGraph long_tree() {
  auto t = tree_graph(3, 3);
  std::vector<Edge> edges(t.edges().begin(), t.edges().end());
  for (auto& e : edges) e.length = 30;
  return MetricGraph::from_ticks(t.vertex_count(), std::move(edges), Rational(1));
}

struct Build {
  std::string name;
  CactusApprox approx;
};

// Criterion 5 inputs; M = 1000 would need diameters far above these graphs', so M = 40.
std::vector<Build> criterion5_builds() {
  std::vector<std::pair<std::string, MetricGraph>> inputs;
  inputs.emplace_back("spider(3,100)", spider(3, 100));
  inputs.emplace_back("ternary tree, edges 30", long_tree());
  inputs.emplace_back("C_300", cycle_graph(300));
  std::array<std::size_t, 2> eight{300, 300};
  inputs.emplace_back("figure-eight 300+300", bouquet_graph(eight));
  inputs.emplace_back("lollipop(100,300)", lollipop_graph(100, 300));
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    inputs.emplace_back("random cactus " + std::to_string(seed), random_cactus_at(seed, 5, {40, 80}, {0, 10}));
  std::vector<Build> out;
  for (auto& [name, g] : inputs) out.push_back(Build{name, build_cactus(g, 0, Rational(1), Rational(40))});
  return out;
}

}  // namespace

int main() {
  std::printf("acceptance: exact rational arithmetic throughout; tolerances are zero unless stated\n");

  run(1, "cactus => (sharp, 1) on 20 random cacti, full sweep", 60, [] {
    std::size_t holds = 0, pairs = 0, largest = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto g = random_cactus_at(seed, 4, {40, 60}, {0, 10});
      largest = std::max(largest, g.vertex_count());
      auto r = check_sharp(g, Rational(1));  // granularity 1/2, sample 0: full sweep
      holds += r.verdict == Verdict::holds;
      pairs += r.pairs_checked;
    }
    std::ostringstream s;
    s << holds << "/20 hold, " << pairs << " pairs at distance >= 10, largest input " << largest << " vertices";
    return Outcome{holds == 20 && largest <= 300, s.str()};
  });

  SharpOptions unit;
  unit.granularity = Rational(1);
  std::optional<std::pair<VertexId, VertexId>> grid_pair;
  const MetricGraph grid = grid_graph(60, 60);

  run(2, "grid 60x60 violates (sharp, 2)", 120, [&] {
    auto r = check_sharp(grid, Rational(2), unit);
    if (r.verdict != Verdict::violated || !r.violation) return Outcome{false, "no violation reported"};
    grid_pair = r.violation;
    auto [x, y] = *r.violation;
    const auto& h = r.space->graph;
    SeparatorStats stats;
    bool none = !find_separator(h, x, y, Rational(2), nullptr, &stats);
    bool far = distance(h, x, y) >= 20;
    std::ostringstream s;
    s << "pair (" << x << ", " << y << "), d = " << distance(h, x, y) << ", separator search: "
      << (none ? "none" : "found") << " (" << stats.a_candidates << " centres, " << stats.a_pruned << " pruned"
      << (stats.three_path_certificate ? ", three-path certificate)" : ")");
    return Outcome{none && far, s.str()};
  });

  run(3, "violation pair => fat theta at M = m/1000", 60, [&] {
    if (!grid_pair) return Outcome{false, "criterion 2 produced no pair"};
    auto v = violation_to_theta(grid, grid_pair->first, grid_pair->second, Rational(2));
    auto c = check_fat_theta(grid, v.witness);
    std::ostringstream s;
    s << "case " << v.case_fired << ", M = " << v.witness.M.str() << ", middle gap " << c.middle_gap.str()
      << ", end gap " << c.end_gap.str();
    return Outcome{v.witness.M == Rational(2, 1000) && c.ok() && verify_fat_theta(grid, v.witness), s.str()};
  });

  run(4, "fillings of 50 random simple cycles", 60, [] {
    std::vector<MetricGraph> graphs{grid_graph(9, 7), planar_disk({5, {Rational(1), Rational(3)}, 4}),
                                    oracle::random_graph(60, 40, 5), theta_graph(6, 4), complete_graph(6)};
    std::size_t cycles = 0, leaves = 0, bad = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const auto& g = graphs[gi];
      auto table = DistanceTable::compute(g);
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto c = make_cycle(g, random_simple_cycle(g, seed * 97 + gi));
        auto f = fill(g, c, &table);
        ++cycles;
        if (f.depth > c.length) ++bad;  // every child is at least one tick shorter
        for (int l : f.leaves()) {
          ++leaves;
          if (!is_geodesic_circle(g, f.regions[static_cast<std::size_t>(l)].cycle)) ++bad;
        }
      }
    }
    std::ostringstream s;
    s << cycles << " cycles, " << leaves << " leaves, " << bad << " failures";
    return Outcome{cycles == 50 && bad == 0, s.str()};
  });

  std::vector<Build> builds;
  run(5, "builder end-to-end (m = 1, M = 40)", 300, [&] {
    builds = criterion5_builds();
    std::size_t ok = 0;
    std::string first_bad;
    for (const auto& b : builds) {
      auto p = distortion_profile(b.approx, DistortionOptions{1'000'000, 1});
      bool good = is_cactus(b.approx.cactus) && p.lipschitz_max <= Rational(1) && p.coarse_density < b.approx.M &&
                  b.approx.notes.empty();
      ok += good;
      if (!good && first_bad.empty()) first_bad = b.name;
    }
    std::ostringstream s;
    s << ok << "/" << builds.size() << " builds are cacti with h 1-Lipschitz and density < M";
    if (!first_bad.empty()) s << "; first failure: " << first_bad;
    return Outcome{ok == builds.size() && builds.size() == 15, s.str()};
  });

  run(6, "additive gap <= 10M on every swept pair", 120, [&] {
    if (builds.empty()) return Outcome{false, "criterion 5 produced no builds"};
    Rational worst(0);
    std::size_t pairs = 0, over = 0;
    bool sampled = false;
    std::string worst_name;
    for (const auto& b : builds) {
      auto p = distortion_profile(b.approx, DistortionOptions{1'000'000, 1});
      pairs += p.pairs;
      over += p.pairs_over_3M;
      sampled = sampled || p.sampled;
      if (p.additive_lower_gap > worst) {
        worst = p.additive_lower_gap;
        worst_name = b.name;
      }
    }
    std::ostringstream s;
    s << pairs << " pairs (full sweeps), worst gap " << worst.str() << " (" << (worst_name.empty() ? "-" : worst_name)
      << ") against 10M = 400, pairs over 3M: " << over;
    return Outcome{!sampled && worst <= Rational(400), s.str()};
  });

  run(7, "lemma audit over the criterion-5 builds", 120, [&] {
    if (builds.empty()) return Outcome{false, "criterion 5 produced no builds"};
    std::size_t tuples = 0, failed = 0;
    std::string first;
    for (const auto& b : builds) {
      auto r = diagnose_lemmas(b.approx);
      for (const auto& c : r.checks) {
        tuples += c.tuples;
        failed += c.failures;
        if (c.failures && first.empty()) first = b.name + ": " + c.name + " " + c.first_failure;
      }
    }
    std::ostringstream s;
    s << tuples << " tuples, " << failed << " failures";
    if (!first.empty()) s << "; first: " << first;
    return Outcome{failed == 0 && tuples > 0, s.str()};
  });

  run(8, "annulus components of 5 ringed disks (15 rings, r = 30, m = 5)", 300, [] {
    std::vector<Rational> sweep;
    for (int k : {1, 2, 3, 5, 8, 12, 20, 30, 50}) sweep.push_back(Rational(5 * k));
    std::size_t components = 0, attained = 0, thetas = 0;
    Rational worst(0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      PlanarDiskSpec disk;
      disk.rings = 15;
      disk.weight = {Rational(2), Rational(4)};
      disk.seed = seed;
      AnnulusSpec spec;
      spec.r = Rational(30);
      spec.m = Rational(5);
      ExperimentOptions opts;
      opts.seed = seed;
      auto rep = annulus_experiment(planar_disk(disk), spec, sweep, opts);
      for (const auto& row : rep.rows) {
        ++components;
        if (row.least_m && *row.least_m <= Rational(250)) {
          ++attained;
          worst = std::max(worst, *row.least_m);
        }
        thetas += row.theta_found;
      }
    }
    std::ostringstream s;
    s << attained << "/" << components << " components attain (sharp, m') with m' <= 50m, worst m' = " << worst.str()
      << ", fat thetas found: " << thetas;
    return Outcome{components > 0 && attained == components && thetas == 0, s.str()};
  });

  run(9, "is_cactus agrees with cycle-space enumeration", 60, [] {
    std::vector<MetricGraph> corpus{cycle_graph(12), path_graph(9), tree_graph(3, 3), theta_graph(5),
                                    theta_graph(3, 5), lollipop_graph(4, 9), complete_graph(4), complete_graph(5),
                                    grid_graph(3, 3), grid_graph(4, 4), grid_graph(2, 8)};
    std::array<std::size_t, 3> three{5, 6, 7};
    corpus.push_back(bouquet_graph(three));
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      corpus.push_back(random_cactus_at(seed, 2 + seed % 8, {3, 10}, {0, 4}));
      corpus.push_back(oracle::random_graph(8 + seed % 10, seed % 7, seed));
    }
    std::size_t checked = 0, cacti = 0, disagree = 0;
    for (const auto& g : corpus) {
      if (cycle_rank(g) > 12) continue;
      ++checked;
      bool c = is_cactus(g);
      cacti += c;
      disagree += c != is_cactus_bruteforce(g);
    }
    std::ostringstream s;
    s << checked << " graphs (" << cacti << " cacti), " << disagree << " disagreements";
    return Outcome{disagree == 0 && cacti > 0 && cacti < checked, s.str()};
  });

  std::printf("acceptance: %d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
