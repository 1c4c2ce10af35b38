#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cactus/metric_graph.hpp"
#include "cactus/paths.hpp"

namespace cactus {

/// x and y lie in distinct components of the graph minus N_m({a, b}).
/// All four are vertices of the graph the search ran on.
struct SeparatorWitness {
  VertexId x = 0, y = 0, a = 0, b = 0;
  Rational m;
  int component_x = -1;
  int component_y = -1;
};

struct SeparatorStats {
  std::size_t a_candidates = 0;
  std::size_t a_pruned = 0;
  std::size_t b_tests = 0;
  bool three_path_certificate = false;  ///< absence proved by three far-apart x-y paths
};

/// Separator search at the vertices of `g` (subdivide first for a finer
/// point set). One of a, b must come within m of the geodesic from x to y,
/// so a ranges over N_m(geodesic); for each a, b must come within m of every
/// x-y path that avoids N_m(a).
class SeparatorSearch {
 public:
  /// `table` is optional; without it distance rows are computed on demand.
  SeparatorSearch(const MetricGraph& g, const Rational& m, const DistanceTable* table = nullptr);

  /// Requires d(x, y) >= 10m.
  std::optional<SeparatorWitness> find(VertexId x, VertexId y, SeparatorStats* stats = nullptr) const;

  /// Component labels of the graph minus N_m({a, b}) (-1 inside the balls).
  std::vector<int> labels_without(VertexId a, VertexId b) const;
  /// d(v, c) >= 4m for the eligibility test of centres, in ticks.
  Ticks four_m_ticks() const { return four_m_; }

  const MetricGraph& graph() const { return g_; }
  const Rational& m() const { return m_; }

 private:
  std::optional<SeparatorWitness> find_with_rows(VertexId x, VertexId y, std::span<const Ticks> dx,
                                                 std::span<const Ticks> dy, SeparatorStats* stats) const;
  VertexMask open_ball(VertexId c, Ticks bound) const;
  SeparatorWitness make_witness(VertexId x, VertexId y, VertexId a, VertexId b) const;

  const MetricGraph& g_;
  Rational m_;
  const DistanceTable* table_;
  Ticks m_bound_;     // d < m
  Ticks two_m_;       // d < 2m
  Ticks three_m_;     // d > 3m  <=>  d > three_m_
  Ticks four_m_;      // d >= 4m
  Ticks ten_m_;       // d >= 10m
};

std::optional<SeparatorWitness> find_separator(const MetricGraph& g, VertexId x, VertexId y, const Rational& m,
                                               const DistanceTable* table = nullptr, SeparatorStats* stats = nullptr);

/// Independent re-check of a witness through neighborhood() and
/// components_minus().
bool validate_witness(const MetricGraph& g, const SeparatorWitness& w);

enum class Verdict { holds, violated, sampled };
const char* to_string(Verdict v);

struct SharpOptions {
  std::optional<Rational> granularity;  ///< default: half the shortest edge
  std::size_t sample = 0;               ///< pair budget for sampled mode (0 = always full sweep)
  std::uint64_t seed = 1;
  std::size_t witness_cap = 1000;
};

/// Full sweeps are used up to this many (subdivided) vertices; above it a
/// positive `sample` switches to stratified sampling.
inline constexpr std::size_t kFullSweepLimit = 400;

struct SharpReport {
  Rational m;
  Rational granularity;
  Verdict verdict = Verdict::holds;
  std::size_t eligible_pairs = 0;  ///< pairs at distance >= 10m (full mode) or sampled pairs
  std::size_t pairs_checked = 0;
  std::optional<std::pair<VertexId, VertexId>> violation;
  std::vector<SeparatorWitness> witnesses;  ///< in pair order, capped
  std::shared_ptr<const Subdivision> space;  ///< the graph whose vertices the pairs refer to
};

/// Decides (sharp, m) over all vertex pairs of the subdivided graph. Pairs are
/// ordered lexicographically (x < y); the reported violation is the first
/// failing pair in that order. Pairs are evaluated in parallel.
SharpReport check_sharp(const MetricGraph& g, const Rational& m, const SharpOptions& options = {});
/// Sequential reference implementation; same report.
SharpReport check_sharp_serial(const MetricGraph& g, const Rational& m, const SharpOptions& options = {});

struct BottleneckReport {
  Rational k;
  Rational granularity;
  bool quasi_tree_ok = true;
  bool vacuous = false;  ///< no pair at distance >= 100k
  std::size_t pairs_checked = 0;
  std::optional<std::pair<VertexId, VertexId>> violation;
  std::shared_ptr<const Subdivision> space;
};

/// Single-ball separation: every pair at distance >= 100k is split by the
/// removal of a closed ball B_c(k) with d(c, x), d(c, y) >= 2k.
BottleneckReport check_bottleneck(const MetricGraph& g, const Rational& k, std::optional<Rational> granularity = {});

}  // namespace cactus
