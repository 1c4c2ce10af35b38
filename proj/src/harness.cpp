#include "cactus/harness.hpp"

#include <algorithm>
#include <stdexcept>

#include "cactus/paths.hpp"
#include "cactus/subspace.hpp"

namespace cactus {

Annulus annulus_components(const MetricGraph& disk, const AnnulusSpec& spec) {
  if (spec.r <= Rational(0) || spec.m <= Rational(0)) throw std::invalid_argument("annulus needs r > 0 and m > 0");
  if (spec.e >= disk.vertex_count()) throw std::out_of_range("base point out of range");
  Annulus out;
  out.space = subdivide_with_origin(disk, spec.granularity.value_or(disk.unit()));
  const MetricGraph& X = out.space.graph;
  auto d = distances_from(X, spec.e);
  const Ticks lo = X.ceil_ticks(spec.r);             // r <= d
  const Ticks hi = X.ceil_ticks(spec.r + spec.m);    // d < r + m
  VertexMask ring(X.vertex_count());
  for (VertexId v = 0; v < X.vertex_count(); ++v)
    if (d[v] >= lo && d[v] < hi) ring.insert(v);
  int count = 0;
  auto labels = component_labels(X, ring, &count);
  for (int c = 0; c < count; ++c) {
    SubSpace s{&X, VertexMask(X.vertex_count()), MetricMode::path};
    for (VertexId v = 0; v < X.vertex_count(); ++v)
      if (labels[v] == c) s.vertices.insert(v);
    ExtractedGraph ex = extract(s);
    out.components.push_back(AnnulusComponent{std::move(ex.graph), std::move(ex.to_parent)});
  }
  return out;
}

AnnulusReport annulus_experiment(const MetricGraph& disk, const AnnulusSpec& spec, std::span<const Rational> sweep,
                                 const ExperimentOptions& options) {
  AnnulusReport report;
  report.spec = spec;
  report.sweep.assign(sweep.begin(), sweep.end());
  std::sort(report.sweep.begin(), report.sweep.end());
  report.seed = options.seed;
  Annulus a = annulus_components(disk, spec);
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const MetricGraph& g = a.components[i].graph;
    AnnulusRow row;
    row.component = i;
    row.vertices = g.vertex_count();
    SharpOptions sharp;
    sharp.granularity = g.to_length(g.max_edge_ticks());  // already on the annulus lattice
    sharp.sample = options.sharp_sample;
    sharp.seed = options.seed;
    sharp.witness_cap = 0;
    if (g.edge_count() == 0) {
      // A single point: every pair condition is vacuous.
      if (!report.sweep.empty()) row.least_m = report.sweep.front();
      report.rows.push_back(row);
      continue;
    }
    for (const Rational& mp : report.sweep) {
      SharpReport r = check_sharp(g, mp, sharp);
      if (r.verdict != Verdict::violated) {
        row.least_m = mp;
        row.verdict = r.verdict;
        break;
      }
    }
    auto found = search_fat_theta(g, spec.m, options.theta);
    row.theta_found = found.witness.has_value();
    row.theta_pairs = found.pairs_tried;
    row.theta_budget_exhausted = found.budget_exhausted;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace cactus
