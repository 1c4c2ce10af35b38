#include "cactus/separation.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "cactus/subspace.hpp"

namespace cactus {
namespace {

// Tables above this many vertices would not fit comfortably in memory.
constexpr std::size_t kTableLimit = 4096;

Ticks gap(Ticks a, Ticks b) { return a > b ? a - b : b - a; }

// Vertices ordered by how balanced they sit between x and y, then by id.
void order_by_balance(std::vector<VertexId>& vs, std::span<const Ticks> dx, std::span<const Ticks> dy) {
  std::sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) {
    Ticks ga = gap(dx[a], dy[a]), gb = gap(dx[b], dy[b]);
    return ga != gb ? ga < gb : a < b;
  });
}

struct Prepared {
  std::shared_ptr<Subdivision> space;
  std::unique_ptr<DistanceTable> table;
  Rational granularity;
};

Prepared prepare(const MetricGraph& g, std::optional<Rational> granularity, bool parallel) {
  Prepared p;
  p.granularity = granularity.value_or(default_granularity(g));
  p.space = std::make_shared<Subdivision>(subdivide_with_origin(g, p.granularity));
  if (p.space->graph.vertex_count() <= kTableLimit) {
    p.table = std::make_unique<DistanceTable>(parallel ? DistanceTable::compute(p.space->graph)
                                                       : DistanceTable::compute_serial(p.space->graph));
  }
  return p;
}

std::span<const Ticks> row_of(const Prepared& p, VertexId x, std::vector<Ticks>& scratch) {
  if (p.table) return p.table->row(x);
  scratch = distances_from(p.space->graph, x);
  return scratch;
}

// Stratified by distance decile over [10m, diameter], reservoir-sampled per
// stratum, returned in lexicographic order.
std::vector<std::pair<VertexId, VertexId>> sample_pairs(const Prepared& p, Ticks ten_m, std::size_t budget,
                                                        std::uint64_t seed) {
  const MetricGraph& h = p.space->graph;
  const auto n = static_cast<VertexId>(h.vertex_count());
  Ticks diam = p.table ? p.table->diameter() : diameter(h);
  if (diam < ten_m) return {};
  constexpr int kStrata = 10;
  std::size_t per = (budget + kStrata - 1) / kStrata;
  std::vector<std::vector<std::pair<VertexId, VertexId>>> reservoir(kStrata);
  std::vector<std::size_t> seen(kStrata, 0);
  std::mt19937_64 rng(seed);
  std::vector<Ticks> scratch;
  for (VertexId x = 0; x < n; ++x) {
    auto dx = row_of(p, x, scratch);
    for (VertexId y = x + 1; y < n; ++y) {
      if (dx[y] < ten_m) continue;
      auto s = static_cast<int>((dx[y] - ten_m) * kStrata / (diam - ten_m + 1));
      auto& r = reservoir[s];
      std::size_t i = seen[s]++;
      if (r.size() < per) {
        r.emplace_back(x, y);
      } else {
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, i)(rng);
        if (j < per) r[j] = {x, y};
      }
    }
  }
  std::vector<std::pair<VertexId, VertexId>> out;
  for (auto& r : reservoir) out.insert(out.end(), r.begin(), r.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct PairOutcome {
  std::size_t checked = 0;
  std::vector<SeparatorWitness> witnesses;
};

SharpReport run_sharp(const MetricGraph& g, const Rational& m, const SharpOptions& options, bool parallel) {
  if (m <= Rational(0)) throw std::invalid_argument("m must be positive");
  Prepared p = prepare(g, options.granularity, parallel);
  const MetricGraph& h = p.space->graph;
  SeparatorSearch search(h, m, p.table.get());
  const Ticks ten_m = h.ceil_ticks(m * Rational(10));
  const auto n = static_cast<VertexId>(h.vertex_count());

  SharpReport report;
  report.m = m;
  report.granularity = p.granularity;
  report.space = p.space;

  const bool sampled = n > kFullSweepLimit && options.sample > 0;
  std::vector<std::pair<VertexId, VertexId>> list;
  if (sampled) list = sample_pairs(p, ten_m, options.sample, options.seed);

  // Work is split into rows (full mode: one row per x; sampled mode: one row
  // per listed pair). The first failure is the smallest pair index, which is
  // the same whatever order rows finish in.
  const std::size_t rows = sampled ? list.size() : n;
  constexpr std::uint64_t kNone = ~std::uint64_t{0};
  std::atomic<std::uint64_t> first_fail{kNone};
  std::vector<PairOutcome> outcome(rows);
  const std::size_t cap = options.witness_cap;

  auto run_row = [&](std::size_t r) {
    std::vector<Ticks> scratch, scratch_y;
    // Separators found earlier in this row often split later pairs too;
    // re-testing one costs two distance lookups and a label comparison.
    struct Known {
      VertexId a, b;
      std::vector<int> label;
    };
    std::vector<Known> known;
    auto reuse = [&](VertexId x, VertexId y) -> std::optional<SeparatorWitness> {
      if (known.empty()) return std::nullopt;
      auto dy = row_of(p, y, scratch_y);
      for (std::size_t i = known.size(); i-- > 0;) {
        const Known& k = known[i];
        if (dy[k.a] < search.four_m_ticks() || dy[k.b] < search.four_m_ticks()) continue;
        if (k.label[y] < 0 || k.label[y] == k.label[x]) continue;
        return SeparatorWitness{x, y, k.a, k.b, m, k.label[x], k.label[y]};
      }
      return std::nullopt;
    };
    auto try_pair = [&](VertexId x, VertexId y, std::uint64_t idx) {
      if (idx > first_fail.load(std::memory_order_relaxed)) return false;
      auto w = reuse(x, y);
      if (!w) {
        w = search.find(x, y);
        if (w && !sampled) {
          if (known.size() >= 16) known.erase(known.begin());
          known.push_back(Known{w->a, w->b, search.labels_without(w->a, w->b)});
        }
      }
      ++outcome[r].checked;
      if (!w) {
        std::uint64_t cur = first_fail.load();
        while (idx < cur && !first_fail.compare_exchange_weak(cur, idx)) {
        }
        return false;
      }
      if (outcome[r].witnesses.size() < cap) outcome[r].witnesses.push_back(*w);
      return true;
    };
    if (sampled) {
      try_pair(list[r].first, list[r].second, r);
      return;
    }
    auto x = static_cast<VertexId>(r);
    auto dx = row_of(p, x, scratch);
    std::vector<Ticks> copy(dx.begin(), dx.end());
    for (VertexId y = x + 1; y < n; ++y) {
      if (copy[y] < ten_m) continue;
      if (!try_pair(x, y, static_cast<std::uint64_t>(x) * n + y)) return;
    }
  };

  if (parallel) {
    const auto total = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < total; ++r) run_row(static_cast<std::size_t>(r));
  } else {
    for (std::size_t r = 0; r < rows; ++r) {
      run_row(r);
      if (first_fail.load() != kNone) break;
    }
  }

  const std::uint64_t fail = first_fail.load();
  std::size_t last_row = rows;
  if (fail != kNone) {
    VertexId fx = sampled ? list[fail].first : static_cast<VertexId>(fail / n);
    VertexId fy = sampled ? list[fail].second : static_cast<VertexId>(fail % n);
    report.violation = std::make_pair(fx, fy);
    last_row = sampled ? fail + 1 : fx + 1;
  }
  for (std::size_t r = 0; r < last_row; ++r) {
    report.pairs_checked += outcome[r].checked;
    for (auto& w : outcome[r].witnesses) {
      if (report.witnesses.size() >= cap) break;
      report.witnesses.push_back(w);
    }
  }
  if (sampled) {
    report.eligible_pairs = list.size();
  } else if (p.table) {
    for (VertexId x = 0; x < n; ++x) {
      auto dx = p.table->row(x);
      for (VertexId y = x + 1; y < n; ++y) report.eligible_pairs += dx[y] >= ten_m ? 1 : 0;
    }
  } else {
    report.eligible_pairs = report.pairs_checked;
  }
  report.verdict = report.violation ? Verdict::violated : (sampled ? Verdict::sampled : Verdict::holds);
  return report;
}

}  // namespace

SeparatorSearch::SeparatorSearch(const MetricGraph& g, const Rational& m, const DistanceTable* table)
    : g_(g), m_(m), table_(table) {
  if (m <= Rational(0)) throw std::invalid_argument("m must be positive");
  m_bound_ = g.ceil_ticks(m);
  two_m_ = g.ceil_ticks(m * Rational(2));
  three_m_ = g.floor_ticks(m * Rational(3));
  four_m_ = g.ceil_ticks(m * Rational(4));
  ten_m_ = g.ceil_ticks(m * Rational(10));
}

VertexMask SeparatorSearch::open_ball(VertexId c, Ticks bound) const {
  VertexMask ball(g_.vertex_count());
  if (table_) {
    auto row = table_->row(c);
    for (VertexId v = 0; v < row.size(); ++v)
      if (row[v] < bound) ball.insert(v);
    return ball;
  }
  VertexId src[1] = {c};
  auto d = distances_from(g_, src, nullptr, bound - 1);
  for (VertexId v = 0; v < d.size(); ++v)
    if (d[v] < bound) ball.insert(v);
  return ball;
}

std::vector<int> SeparatorSearch::labels_without(VertexId a, VertexId b) const {
  VertexMask rest(g_.vertex_count(), true);
  for (VertexId c : {a, b}) {
    VertexMask ball = open_ball(c, m_bound_);
    for (VertexId v : ball.members()) rest.erase(v);
  }
  return component_labels(g_, rest);
}

SeparatorWitness SeparatorSearch::make_witness(VertexId x, VertexId y, VertexId a, VertexId b) const {
  auto label = labels_without(a, b);
  return SeparatorWitness{x, y, a, b, m_, label[x], label[y]};
}

std::optional<SeparatorWitness> SeparatorSearch::find(VertexId x, VertexId y, SeparatorStats* stats) const {
  if (table_) return find_with_rows(x, y, table_->row(x), table_->row(y), stats);
  auto dx = distances_from(g_, x);
  auto dy = distances_from(g_, y);
  return find_with_rows(x, y, dx, dy, stats);
}

std::optional<SeparatorWitness> SeparatorSearch::find_with_rows(VertexId x, VertexId y, std::span<const Ticks> dx,
                                                                std::span<const Ticks> dy,
                                                                SeparatorStats* stats) const {
  if (dx[y] < ten_m_) throw std::invalid_argument("find_separator needs d(x, y) >= 10m");
  const auto n = static_cast<VertexId>(g_.vertex_count());
  auto eligible = [&](VertexId v) { return dx[v] >= four_m_ && dy[v] >= four_m_; };
  // A ball N_m(c) with c eligible only reaches vertices in the core.
  auto core = [&](VertexId v) { return dx[v] > three_m_ && dy[v] > three_m_; };

  // Removes from `allowed` every core vertex within < 2m of the core part of `path`.
  auto block_near = [&](std::span<const VertexId> path, VertexMask& allowed) {
    std::vector<VertexId> src;
    for (VertexId v : path)
      if (core(v)) src.push_back(v);
    if (src.empty()) return;
    auto d = distances_from(g_, src, nullptr, two_m_ - 1);
    for (VertexId v = 0; v < n; ++v)
      if (d[v] < two_m_ && core(v)) allowed.erase(v);
  };
  auto path_in = [&](const VertexMask& allowed) {
    auto to_y = distances_from(g_, y, &allowed);
    return walk_geodesic(g_, x, to_y, &allowed);
  };

  auto gamma = walk_geodesic(g_, x, dy);

  // Three x-y paths with pairwise >= 2m apart cores: each ball meets at most
  // one of them, so no pair of balls meets all three.
  {
    VertexMask allowed(n, true);
    block_near(gamma, allowed);
    auto p2 = path_in(allowed);
    if (!p2.empty()) {
      block_near(p2, allowed);
      if (!path_in(allowed).empty()) {
        if (stats) stats->three_path_certificate = true;
        return std::nullopt;
      }
    }
  }

  std::vector<VertexId> first;
  {
    auto d = distances_from(g_, gamma, nullptr, m_bound_ - 1);
    for (VertexId v = 0; v < n; ++v)
      if (d[v] < m_bound_ && eligible(v)) first.push_back(v);
  }
  order_by_balance(first, dx, dy);

  for (VertexId a : first) {
    if (stats) ++stats->a_candidates;
    VertexMask rest = open_ball(a, m_bound_).complement();
    if (!connected_within(g_, x, y, rest)) return make_witness(x, y, a, a);
    auto p1 = path_in(rest);
    // A second surviving path far from p1 cannot be met by a single ball
    // that also meets p1.
    VertexMask far = rest;
    block_near(p1, far);
    if (connected_within(g_, x, y, far)) {
      if (stats) ++stats->a_pruned;
      continue;
    }
    std::vector<VertexId> second;
    auto d = distances_from(g_, p1, nullptr, m_bound_ - 1);
    for (VertexId v = 0; v < n; ++v)
      if (v != a && d[v] < m_bound_ && eligible(v)) second.push_back(v);
    order_by_balance(second, dx, dy);
    for (VertexId b : second) {
      if (stats) ++stats->b_tests;
      VertexMask both = rest;
      for (VertexId v : open_ball(b, m_bound_).members()) both.erase(v);
      if (!connected_within(g_, x, y, both)) return make_witness(x, y, a, b);
    }
  }
  return std::nullopt;
}

std::optional<SeparatorWitness> find_separator(const MetricGraph& g, VertexId x, VertexId y, const Rational& m,
                                               const DistanceTable* table, SeparatorStats* stats) {
  return SeparatorSearch(g, m, table).find(x, y, stats);
}

bool validate_witness(const MetricGraph& g, const SeparatorWitness& w) {
  const Rational& m = w.m;
  auto len = [&](VertexId u, VertexId v) { return g.to_length(distance(g, u, v)); };
  if (len(w.x, w.y) < m * Rational(10)) return false;
  for (VertexId c : {w.a, w.b}) {
    if (len(w.x, c) < m * Rational(4) || len(w.y, c) < m * Rational(4)) return false;
  }
  VertexId centres[2] = {w.a, w.b};
  auto comps = components_minus(g, neighborhood(g, centres, m));
  int cx = -1, cy = -1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].contains(w.x)) cx = static_cast<int>(i);
    if (comps[i].contains(w.y)) cy = static_cast<int>(i);
  }
  return cx >= 0 && cy >= 0 && cx != cy;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    case Verdict::sampled:
      return "sampled";
  }
  return "?";
}

SharpReport check_sharp(const MetricGraph& g, const Rational& m, const SharpOptions& options) {
  return run_sharp(g, m, options, true);
}

SharpReport check_sharp_serial(const MetricGraph& g, const Rational& m, const SharpOptions& options) {
  return run_sharp(g, m, options, false);
}

BottleneckReport check_bottleneck(const MetricGraph& g, const Rational& k, std::optional<Rational> granularity) {
  if (k <= Rational(0)) throw std::invalid_argument("k must be positive");
  Prepared p = prepare(g, granularity, true);
  const MetricGraph& h = p.space->graph;
  const auto n = static_cast<VertexId>(h.vertex_count());
  const Ticks radius = h.floor_ticks(k);  // closed ball: d <= k
  const Ticks two_k = h.ceil_ticks(k * Rational(2));
  const Ticks hundred_k = h.ceil_ticks(k * Rational(100));

  BottleneckReport report;
  report.k = k;
  report.granularity = p.granularity;
  report.space = p.space;

  std::unordered_map<VertexId, std::vector<int>> labels;
  auto splits = [&](VertexId c, VertexId x, VertexId y) {
    auto it = labels.find(c);
    if (it == labels.end()) {
      if (labels.size() > 4096) labels.clear();
      VertexMask rest(n, true);
      std::vector<Ticks> scratch;
      auto dc = row_of(p, c, scratch);
      for (VertexId v = 0; v < n; ++v)
        if (dc[v] <= radius) rest.erase(v);
      it = labels.emplace(c, component_labels(h, rest)).first;
    }
    const auto& l = it->second;
    return l[x] >= 0 && l[y] >= 0 && l[x] != l[y];
  };

  std::vector<Ticks> sx, sy;
  {
    // diameter <= 2 ecc(0): settles the vacuous case without a full sweep
    auto d0 = row_of(p, 0, sx);
    if (2 * *std::max_element(d0.begin(), d0.end()) < hundred_k) {
      report.vacuous = true;
      return report;
    }
  }
  bool any = false;
  for (VertexId x = 0; x < n && !report.violation; ++x) {
    std::vector<Ticks> dx;
    {
      auto row = row_of(p, x, sx);
      dx.assign(row.begin(), row.end());
    }
    std::vector<VertexId> recent;  // centres that split earlier pairs of this row
    for (VertexId y = x + 1; y < n; ++y) {
      if (dx[y] < hundred_k) continue;
      any = true;
      ++report.pairs_checked;
      auto dy = row_of(p, y, sy);
      auto try_centre = [&](VertexId c) {
        if (dx[c] < two_k || dy[c] < two_k || !splits(c, x, y)) return false;
        if (std::find(recent.begin(), recent.end(), c) == recent.end()) {
          if (recent.size() >= 8) recent.erase(recent.begin());
          recent.push_back(c);
        }
        return true;
      };
      bool done = false;
      for (std::size_t i = recent.size(); i-- > 0 && !done;) done = try_centre(recent[i]);
      if (done) continue;
      // Midpoint of the geodesic next: walk from x until half way.
      VertexId cur = x, prev = x;
      while (dx[cur] * 2 < dx[y]) {
        prev = cur;
        for (const auto& a : h.neighbors(cur)) {
          if (dy[a.to] + a.length == dy[cur]) {
            cur = a.to;
            break;
          }
        }
      }
      if (try_centre(cur) || try_centre(prev)) continue;
      auto walk = walk_geodesic(h, x, dy);
      std::vector<VertexId> centres;
      auto near = distances_from(h, walk, nullptr, radius);
      for (VertexId c = 0; c < n; ++c)
        if (near[c] <= radius && dx[c] >= two_k && dy[c] >= two_k) centres.push_back(c);
      order_by_balance(centres, dx, dy);
      for (VertexId c : centres) {
        if (try_centre(c)) {
          done = true;
          break;
        }
      }
      if (!done) {
        report.quasi_tree_ok = false;
        report.violation = std::make_pair(x, y);
        break;
      }
    }
  }
  report.vacuous = !any;
  return report;
}

}  // namespace cactus
