#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cactus/fat_theta.hpp"
#include "cactus/metric_graph.hpp"
#include "cactus/separation.hpp"

namespace cactus {

struct AnnulusSpec {
  VertexId e = 0;
  Rational r, m;
  std::optional<Rational> granularity;  ///< default: the disk's tick unit
};

/// One component of A(r, r+m) with its path metric.
struct AnnulusComponent {
  MetricGraph graph;
  std::vector<VertexId> to_space;  ///< local id -> vertex of the subdivided disk
};

struct Annulus {
  Subdivision space;
  std::vector<AnnulusComponent> components;  ///< ordered by smallest vertex
};

/// Vertices x of the subdivided disk with r <= d(e, x) < r + m, split into
/// components of the induced subgraph. Empty when nothing lies in range.
Annulus annulus_components(const MetricGraph& disk, const AnnulusSpec& spec);

struct ExperimentOptions {
  std::size_t sharp_sample = 2000;  ///< pair budget once a component exceeds the full-sweep size
  std::uint64_t seed = 1;
  ThetaSearchOptions theta;
};

struct AnnulusRow {
  std::size_t component = 0;
  std::size_t vertices = 0;
  std::optional<Rational> least_m;  ///< least sweep value where (sharp, m') holds; empty: exceeds sweep
  Verdict verdict = Verdict::holds; ///< verdict at least_m (sampled when the sweep sampled pairs)
  bool theta_found = false;         ///< m-fat theta found by the budgeted search
  std::size_t theta_pairs = 0;
  bool theta_budget_exhausted = false;
};

struct AnnulusReport {
  AnnulusSpec spec;
  std::vector<Rational> sweep;
  std::uint64_t seed = 1;
  std::vector<AnnulusRow> rows;
};

/// Per component: the least m' of the sweep for which check_sharp does not
/// report a violation, and search_fat_theta at M = m.
AnnulusReport annulus_experiment(const MetricGraph& disk, const AnnulusSpec& spec, std::span<const Rational> sweep,
                                 const ExperimentOptions& options = {});

}  // namespace cactus
