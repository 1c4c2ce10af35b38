#include "cactus/fat_theta.hpp"

#include <algorithm>

#include "cactus/separation.hpp"

namespace cactus {

namespace {

void check_walk(const MetricGraph& g, const std::vector<VertexId>& arc, VertexId a, VertexId b) {
  if (arc.empty() || arc.front() != a || arc.back() != b) {
    throw std::invalid_argument("theta arc does not run from a to b");
  }
  for (std::size_t k = 0; k < arc.size(); ++k) {
    if (arc[k] >= g.vertex_count()) throw std::out_of_range("theta arc vertex out of range");
    if (k > 0 && !g.has_edge(arc[k - 1], arc[k])) {
      throw std::invalid_argument("theta arc step " + std::to_string(arc[k - 1]) + "-" + std::to_string(arc[k]) +
                                  " is not an edge");
    }
  }
}

Ticks min_over(std::span<const Ticks> dist, std::span<const VertexId> targets) {
  Ticks best = kUnreachable;
  for (VertexId v : targets) best = std::min(best, dist[v]);
  return best;
}

VertexMask mask_of(std::size_t n, std::span<const VertexId> vs) {
  VertexMask m(n);
  for (VertexId v : vs) m.insert(v);
  return m;
}

// Vertices at distance < bound ticks from the sources.
VertexMask open_ball(const MetricGraph& g, std::span<const VertexId> sources, Ticks bound) {
  VertexMask m(g.vertex_count());
  if (bound <= 0) return m;
  auto d = distances_from(g, sources, nullptr, bound - 1);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (d[v] < bound) m.insert(v);
  return m;
}

std::vector<Ticks> arc_prefix(const MetricGraph& g, std::span<const VertexId> path) {
  std::vector<Ticks> p(path.size(), 0);
  for (std::size_t k = 1; k < path.size(); ++k) {
    p[k] = p[k - 1] + g.edge(g.find_edge(path[k - 1], path[k])).length;
  }
  return p;
}

// Appends src to dst, dropping src's first vertex (shared with dst's last).
void append_tail(std::vector<VertexId>& dst, std::span<const VertexId> src) {
  if (!src.empty()) dst.insert(dst.end(), src.begin() + 1, src.end());
}

std::vector<VertexId> reversed(std::vector<VertexId> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

// gamma from index i to index j, in either direction.
std::vector<VertexId> gamma_piece(const std::vector<VertexId>& gamma, std::size_t i, std::size_t j) {
  std::vector<VertexId> out;
  if (i <= j) {
    out.assign(gamma.begin() + static_cast<std::ptrdiff_t>(i), gamma.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  } else {
    for (std::size_t k = i + 1; k-- > j;) out.push_back(gamma[k]);
  }
  return out;
}

std::size_t index_in(const std::vector<VertexId>& path, VertexId v, std::size_t from = 0, std::size_t to = SIZE_MAX) {
  to = std::min(to, path.size());
  for (std::size_t k = from; k < to; ++k)
    if (path[k] == v) return k;
  return SIZE_MAX;
}

// The open middle: arc positions within `half` ticks of position s.
ArcSplit split_around(const MetricGraph& g, const std::vector<VertexId>& arc, std::size_t s, Ticks half) {
  auto p = arc_prefix(g, arc);
  std::size_t lo = s, hi = s;
  while (lo > 1 && p[s] - p[lo - 1] <= half) --lo;
  while (hi + 2 < arc.size() && p[hi + 1] - p[s] <= half) ++hi;
  return ArcSplit{lo - 1, hi + 1};
}

}  // namespace

bool ThetaCurve::embedded() const {
  if (a == b) return false;
  std::vector<VertexId> inner;
  for (const auto& arc : arcs) {
    if (arc.size() < 2) return false;
    std::vector<VertexId> s = arc;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    inner.insert(inner.end(), arc.begin() + 1, arc.end() - 1);
  }
  std::sort(inner.begin(), inner.end());
  return std::adjacent_find(inner.begin(), inner.end()) == inner.end();
}

FatThetaCheck check_fat_theta(const MetricGraph& g, const FatThetaWitness& w) {
  if (w.M <= Rational(0)) throw std::invalid_argument("fatness M must be positive");
  const auto n = g.vertex_count();
  std::array<std::vector<VertexId>, 3> mid;
  std::vector<VertexId> alphas, betas;
  for (int i = 0; i < 3; ++i) {
    const auto& arc = w.theta.arcs[static_cast<std::size_t>(i)];
    const ArcSplit& s = w.split[static_cast<std::size_t>(i)];
    check_walk(g, arc, w.theta.a, w.theta.b);
    if (s.alpha_end >= s.beta_begin || s.beta_begin >= arc.size()) {
      throw std::invalid_argument("theta split indices out of order");
    }
    alphas.insert(alphas.end(), arc.begin(), arc.begin() + static_cast<std::ptrdiff_t>(s.alpha_end) + 1);
    betas.insert(betas.end(), arc.begin() + static_cast<std::ptrdiff_t>(s.beta_begin), arc.end());
    mid[static_cast<std::size_t>(i)].assign(arc.begin() + static_cast<std::ptrdiff_t>(s.alpha_end) + 1,
                                            arc.begin() + static_cast<std::ptrdiff_t>(s.beta_begin));
  }

  FatThetaCheck c;
  c.middles_nonempty = std::all_of(mid.begin(), mid.end(), [](const auto& p) { return !p.empty(); });

  VertexMask ends = mask_of(n, alphas);
  for (VertexId v : betas) ends.insert(v);
  c.middles_clear = std::none_of(mid.begin(), mid.end(), [&](const auto& p) {
    return std::any_of(p.begin(), p.end(), [&](VertexId v) { return ends.contains(v); });
  });

  Ticks mg = kUnreachable;
  if (c.middles_nonempty) {
    for (std::size_t i = 0; i < 2; ++i) {
      auto d = distances_from(g, mid[i]);
      for (std::size_t j = i + 1; j < 3; ++j) mg = std::min(mg, min_over(d, mid[j]));
    }
  } else {
    mg = 0;
  }
  Ticks eg = min_over(distances_from(g, alphas), betas);
  c.middle_gap = g.to_length(mg);
  c.end_gap = g.to_length(eg);
  c.middles_apart = c.middles_nonempty && mg >= g.ceil_ticks(w.M);
  c.ends_apart = eg >= g.ceil_ticks(w.M * Rational(2));
  return c;
}

bool verify_fat_theta(const MetricGraph& g, const FatThetaWitness& w) { return check_fat_theta(g, w).ok(); }

Rational achieved_fatness(const MetricGraph& g, const FatThetaWitness& w) {
  FatThetaWitness probe = w;
  probe.M = Rational(1);
  FatThetaCheck c = check_fat_theta(g, probe);
  if (!c.middles_nonempty || !c.middles_clear) return Rational(0);
  return std::min(c.middle_gap, c.end_gap / Rational(2));
}

ThetaSearchResult search_fat_theta(const MetricGraph& g, const Rational& M, const ThetaSearchOptions& options) {
  if (M <= Rational(0)) throw std::invalid_argument("fatness M must be positive");
  ThetaSearchResult result;
  const auto n = g.vertex_count();
  std::vector<VertexId> branch;
  for (VertexId v = 0; v < n; ++v)
    if (g.degree(v) >= 3) branch.push_back(v);

  const Ticks three_m = g.ceil_ticks(M * Rational(3));
  const Ticks m_bound = g.ceil_ticks(M);  // d < M  <=>  d < m_bound
  constexpr std::size_t kPartnersPerBranch = 4;

  for (VertexId a : branch) {
    auto da = distances_from(g, a);
    std::vector<VertexId> partners;
    for (VertexId b : branch)
      if (b != a && da[b] != kUnreachable && da[b] >= three_m) partners.push_back(b);
    std::stable_sort(partners.begin(), partners.end(), [&](VertexId u, VertexId v) { return da[u] > da[v]; });
    if (partners.size() > kPartnersPerBranch) partners.resize(kPartnersPerBranch);

    for (VertexId b : partners) {
      if (result.pairs_tried == options.budget) {
        result.budget_exhausted = true;
        return result;
      }
      ++result.pairs_tried;
      auto db = distances_from(g, b);
      Rational dab = g.to_length(da[b]);
      Rational widest = (dab - M * Rational(2)) / Rational(2);
      std::vector<Ticks> radii;
      for (const Rational& rho : {M, M * Rational(2), M * Rational(4), widest}) {
        if (rho <= widest) radii.push_back(g.floor_ticks(rho));
      }
      std::sort(radii.begin(), radii.end());
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

      for (Ticks rho : radii) {
        auto in_balls = [&](VertexId v) { return da[v] <= rho || db[v] <= rho; };
        VertexMask allowed(n, true);
        std::array<std::vector<VertexId>, 3> paths;
        bool ok = true;
        for (std::size_t k = 0; k < 3 && ok; ++k) {
          paths[k] = shortest_path(g, a, b, &allowed);
          if (paths[k].empty()) {
            ok = false;
            break;
          }
          std::vector<VertexId> middle;
          for (std::size_t i = 1; i + 1 < paths[k].size(); ++i) {
            allowed.erase(paths[k][i]);
            if (!in_balls(paths[k][i])) middle.push_back(paths[k][i]);
          }
          if (!middle.empty()) {
            auto near = distances_from(g, middle, nullptr, m_bound - 1);
            for (VertexId v = 0; v < n; ++v)
              if (near[v] < m_bound && !in_balls(v)) allowed.erase(v);
          }
          allowed.insert(a);
          allowed.insert(b);
        }
        if (!ok) continue;

        FatThetaWitness w{ThetaCurve{a, b, paths}, M, {}};
        for (std::size_t k = 0; k < 3; ++k) {
          const auto& p = paths[k];
          std::size_t ae = 0;
          while (ae + 1 < p.size() && da[p[ae + 1]] <= rho) ++ae;
          std::size_t bb = p.size() - 1;
          while (bb > 0 && db[p[bb - 1]] <= rho) --bb;
          if (ae >= bb) {
            ok = false;
            break;
          }
          w.split[k] = ArcSplit{ae, bb};
        }
        if (ok && verify_fat_theta(g, w)) {
          result.witness = std::move(w);
          return result;
        }
      }
    }
  }
  return result;
}

Bridge find_bridge(const MetricGraph& g, VertexId x, VertexId y, const Rational& m, const VertexMask& forbidden,
                   std::optional<std::size_t> split) {
  if (m <= Rational(0)) throw std::invalid_argument("m must be positive");
  Bridge br;
  br.gamma = shortest_path(g, x, y);
  if (br.gamma.empty()) throw std::invalid_argument("x and y are not connected");
  std::size_t c = 0;
  if (split) {
    c = *split;
    if (c + 1 >= br.gamma.size()) throw std::invalid_argument("split must leave both parts of gamma nonempty");
  } else {
    auto p = arc_prefix(g, br.gamma);
    while (2 * p[c] < p.back()) ++c;
    c = std::min(c, br.gamma.size() - 2);
  }
  if (forbidden.contains(x) || forbidden.contains(y)) throw NoAvoidingPath("x or y is forbidden");
  VertexMask allowed = forbidden.complement();
  auto alpha = shortest_path(g, x, y, &allowed);
  if (alpha.empty()) throw NoAvoidingPath("forbidden set separates x from y");

  const std::span<const VertexId> g1(br.gamma.data(), c + 1);
  const std::span<const VertexId> g2(br.gamma.data() + c + 1, br.gamma.size() - c - 1);
  const Ticks r = g.floor_ticks(m / Rational(10));
  auto d1 = distances_from(g, g1, nullptr, r);
  auto d2 = distances_from(g, g2, nullptr, r);
  std::size_t t1 = 0;
  for (std::size_t t = 0; t < alpha.size(); ++t)
    if (d1[alpha[t]] <= r) t1 = t;
  std::size_t t2 = t1 + 1;
  while (t2 < alpha.size() && d2[alpha[t2]] > r) ++t2;
  if (t2 >= alpha.size()) throw std::logic_error("avoiding path never reaches the far half of gamma");

  br.D.assign(alpha.begin() + static_cast<std::ptrdiff_t>(t1), alpha.begin() + static_cast<std::ptrdiff_t>(t2) + 1);
  br.L = shortest_path_to_set(g, br.D.front(), g1);
  br.R = shortest_path_to_set(g, br.D.back(), g2);
  br.l2_index = index_in(br.gamma, br.L.back(), 0, c + 1);
  br.r2_index = index_in(br.gamma, br.R.back(), c + 1);
  return br;
}

bool validate_bridge(const MetricGraph& g, const Bridge& b, const Rational& m, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (b.gamma.size() < 2 || b.D.empty() || b.L.empty() || b.R.empty()) return fail("empty piece");
  if (b.l2_index >= b.r2_index || b.r2_index >= b.gamma.size()) return fail("l2 must precede r2 on gamma");
  try {
    if (path_length(g, b.gamma) != distance(g, b.gamma.front(), b.gamma.back())) return fail("gamma is not a geodesic");
    path_length(g, b.D);
  } catch (const std::exception&) {
    return fail("piece is not a walk");
  }
  if (b.L.front() != b.l1() || b.L.back() != b.l2()) return fail("L does not join l1 to l2");
  if (b.R.front() != b.r1() || b.R.back() != b.r2()) return fail("R does not join r1 to r2");
  const Ticks r = g.floor_ticks(m / Rational(10));
  auto dg = distances_from(g, b.gamma);
  for (const auto* piece : {&b.L, &b.R}) {
    Ticks len;
    try {
      len = path_length(g, *piece);
    } catch (const std::exception&) {
      return fail("connector is not a walk");
    }
    if (len > r) return fail("connector longer than floor(m/10)");
    if (len != dg[piece->front()]) return fail("connector is not a shortest path to gamma");
  }
  for (std::size_t k = 1; k + 1 < b.D.size(); ++k)
    if (dg[b.D[k]] < r) return fail("D comes within floor(m/10) of gamma");
  if (distance(g, b.l2(), b.r2()) < g.ceil_ticks(m)) return fail("d(l2, r2) < m");
  return true;
}

FatThetaWitness case1_theta(const MetricGraph& g, const Bridge& b, std::size_t t, const Rational& M) {
  if (t >= b.D.size()) throw std::out_of_range("bridge index out of range");
  VertexId z1 = b.D[t];
  auto geo = shortest_path_to_set(g, z1, b.gamma);
  std::size_t z2i = index_in(b.gamma, geo.back());

  FatThetaWitness w;
  w.M = M;
  w.theta.a = z1;
  w.theta.b = geo.back();

  // z1 back along D to l1, across L, along gamma to z2
  auto& A = w.theta.arcs[0];
  for (std::size_t k = t + 1; k-- > 0;) A.push_back(b.D[k]);
  append_tail(A, b.L);
  append_tail(A, gamma_piece(b.gamma, b.l2_index, z2i));
  w.split[0] = ArcSplit{t, t + b.L.size() - 1};

  w.theta.arcs[1] = geo;
  w.split[1] = ArcSplit{0, geo.size() - 1};

  auto& C = w.theta.arcs[2];
  C.assign(b.D.begin() + static_cast<std::ptrdiff_t>(t), b.D.end());
  append_tail(C, b.R);
  append_tail(C, gamma_piece(b.gamma, b.r2_index, z2i));
  std::size_t r1i = b.D.size() - 1 - t;
  w.split[2] = ArcSplit{r1i, r1i + b.R.size() - 1};
  return w;
}

namespace {

// Replaces stretches of D that return within m/100 of themselves by
// geodesics, while D stays m/100 away from gamma. Returns the step count.
std::size_t straighten(const MetricGraph& g, Bridge& br, const Rational& m, std::span<const Ticks> to_gamma) {
  const Ticks far_from_ends = g.ceil_ticks(m / Rational(3));
  const Ticks close = g.floor_ticks(m / Rational(100));
  const Ticks keep_away = g.ceil_ticks(m / Rational(100));
  auto dl1 = distances_from(g, br.l1());
  auto dr1 = distances_from(g, br.r1());
  const Ticks guard = path_length(g, br.D);
  std::size_t steps = 0;
  for (;;) {
    bool near_gamma = false;
    for (std::size_t k = 1; k + 1 < br.D.size(); ++k) near_gamma |= to_gamma[br.D[k]] < keep_away;
    if (near_gamma) break;
    auto p = arc_prefix(g, br.D);
    std::size_t lo = 0, hi = 0;
    bool found = false;
    for (std::size_t t = 0; t < br.D.size() && !found; ++t) {
      VertexId v = br.D[t];
      if (dl1[v] < far_from_ends || dr1[v] < far_from_ends) continue;
      VertexId src[] = {v};
      auto near = distances_from(g, src, nullptr, close);
      for (std::size_t s = 0; s < br.D.size(); ++s) {
        Ticks along = p[s] > p[t] ? p[s] - p[t] : p[t] - p[s];
        if (near[br.D[s]] <= close && along > close) {
          lo = std::min(s, t);
          hi = std::max(s, t);
          found = true;
          break;
        }
      }
    }
    if (!found) break;
    auto geo = shortest_path(g, br.D[lo], br.D[hi]);
    std::vector<VertexId> next(br.D.begin(), br.D.begin() + static_cast<std::ptrdiff_t>(lo));
    next.insert(next.end(), geo.begin(), geo.end());
    next.insert(next.end(), br.D.begin() + static_cast<std::ptrdiff_t>(hi) + 1, br.D.end());
    br.D = std::move(next);
    if (++steps > static_cast<std::size_t>(guard)) throw std::logic_error("straightening did not terminate");
  }
  return steps;
}

// Candidate indices in [lo, hi] whose arc position is at least `edge` from
// both ends, nearest to the middle first.
std::vector<std::size_t> centred_indices(const std::vector<Ticks>& p, std::size_t lo, std::size_t hi,
                                         std::span<const Ticks> from_lo, std::span<const Ticks> from_hi,
                                         const std::vector<VertexId>& path, Ticks edge) {
  std::vector<std::size_t> out;
  for (std::size_t k = lo + 1; k < hi; ++k)
    if (from_lo[path[k]] >= edge && from_hi[path[k]] >= edge) out.push_back(k);
  Ticks twice_mid = p[lo] + p[hi];
  std::stable_sort(out.begin(), out.end(), [&](std::size_t u, std::size_t v) {
    Ticks du = 2 * p[u] > twice_mid ? 2 * p[u] - twice_mid : twice_mid - 2 * p[u];
    Ticks dv = 2 * p[v] > twice_mid ? 2 * p[v] - twice_mid : twice_mid - 2 * p[v];
    return du < dv;
  });
  return out;
}

FatThetaWitness case2_theta(const MetricGraph& g, const Bridge& br, const Rational& m, VertexId x, VertexId y,
                            VertexId& z1_out, VertexId& z2_out) {
  const auto& gamma = br.gamma;
  std::vector<VertexId> eta(gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(br.l2_index) + 1);
  append_tail(eta, reversed(br.L));
  const std::size_t d_offset = eta.size() - 1;
  append_tail(eta, br.D);
  append_tail(eta, br.R);
  eta.insert(eta.end(), gamma.begin() + static_cast<std::ptrdiff_t>(br.r2_index) + 1, gamma.end());

  const Ticks third = g.ceil_ticks(m / Rational(3));
  const Ticks m_bound = g.ceil_ticks(m);
  auto dl1 = distances_from(g, br.l1());
  auto dr1 = distances_from(g, br.r1());
  auto dl2 = distances_from(g, br.l2());
  auto dr2 = distances_from(g, br.r2());
  auto z1s = centred_indices(arc_prefix(g, br.D), 0, br.D.size() - 1, dl1, dr1, br.D, third);
  auto z2s = centred_indices(arc_prefix(g, gamma), br.l2_index, br.r2_index, dl2, dr2, gamma, third);
  if (z1s.empty() || z2s.empty()) throw std::logic_error("bridge too short to place z1 and z2");

  constexpr std::size_t kTries = 64;
  std::vector<VertexId> beta;
  std::size_t k1 = 0, j2 = 0, tries = 0;
  for (std::size_t k : z1s) {
    for (std::size_t j : z2s) {
      if (tries++ == kTries) break;
      VertexId zs[] = {br.D[k], gamma[j]};
      VertexMask allowed = open_ball(g, zs, m_bound).complement();
      if (!allowed.contains(x) || !allowed.contains(y)) continue;
      beta = shortest_path(g, x, y, &allowed);
      if (!beta.empty()) {
        k1 = k;
        j2 = j;
        break;
      }
    }
    if (!beta.empty() || tries > kTries) break;
  }
  if (beta.empty()) throw std::logic_error("no path avoids N_m(z1) and N_m(z2)");
  const std::size_t s1 = d_offset + k1, s2 = j2;
  z1_out = eta[s1];
  z2_out = gamma[s2];

  std::vector<VertexId> h1(eta.begin(), eta.begin() + static_cast<std::ptrdiff_t>(s1));
  h1.insert(h1.end(), gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(s2));
  std::vector<VertexId> h2(eta.begin() + static_cast<std::ptrdiff_t>(s1) + 1, eta.end());
  h2.insert(h2.end(), gamma.begin() + static_cast<std::ptrdiff_t>(s2) + 1, gamma.end());
  const Ticks touch = g.floor_ticks(m / Rational(1000));
  auto t1 = distances_from(g, h1, nullptr, touch);
  auto t2 = distances_from(g, h2, nullptr, touch);
  std::size_t u1 = 0;
  for (std::size_t t = 0; t < beta.size(); ++t)
    if (t1[beta[t]] <= touch) u1 = t;
  std::size_t u2 = u1 + 1;
  while (u2 < beta.size() && t2[beta[u2]] > touch) ++u2;
  if (u2 >= beta.size()) throw std::logic_error("third path never reaches the far half");

  // beta3: inside H1 from x to b1; beta4: inside H2 from b2 to y
  auto beta1 = shortest_path_to_set(g, beta[u1], h1);
  auto beta2 = shortest_path_to_set(g, beta[u2], h2);
  std::vector<VertexId> arc3;
  if (std::size_t i = index_in(gamma, beta1.back(), 0, s2); i != SIZE_MAX) {
    arc3 = gamma_piece(gamma, 0, i);
  } else {
    arc3 = gamma_piece(eta, 0, index_in(eta, beta1.back(), 0, s1));
  }
  append_tail(arc3, reversed(beta1));
  const std::size_t alpha_end = arc3.size() - 1;
  arc3.insert(arc3.end(), beta.begin() + static_cast<std::ptrdiff_t>(u1) + 1,
              beta.begin() + static_cast<std::ptrdiff_t>(u2) + 1);
  const std::size_t beta_begin = arc3.size() - 1;
  append_tail(arc3, beta2);
  if (std::size_t i = index_in(gamma, beta2.back(), s2 + 1); i != SIZE_MAX) {
    append_tail(arc3, gamma_piece(gamma, i, gamma.size() - 1));
  } else {
    append_tail(arc3, gamma_piece(eta, index_in(eta, beta2.back(), s1 + 1), eta.size() - 1));
  }

  FatThetaWitness w;
  w.M = m / Rational(1000);
  w.theta.a = x;
  w.theta.b = y;
  const Ticks half = g.floor_ticks(m / Rational(200));
  w.split[0] = split_around(g, eta, s1, half);
  w.split[1] = split_around(g, gamma, s2, half);
  w.split[2] = ArcSplit{alpha_end, beta_begin};
  w.theta.arcs = {std::move(eta), gamma, std::move(arc3)};
  return w;
}

}  // namespace

ViolationTheta violation_to_theta(const MetricGraph& g, VertexId x, VertexId y, const Rational& m) {
  if (m <= Rational(0)) throw std::invalid_argument("m must be positive");
  if (distance(g, x, y) < g.ceil_ticks(m * Rational(10))) throw PreconditionError("d(x, y) < 10m");
  if (find_separator(g, x, y, m)) throw PreconditionError("the pair is separated: (sharp, m) holds for it");

  ViolationTheta out;
  auto gamma = shortest_path(g, x, y);
  auto dx = distances_from(g, x);
  auto dy = distances_from(g, y);
  const Ticks four_m = g.ceil_ticks(m * Rational(4));
  const Ticks m_bound = g.ceil_ticks(m);

  // Split points at least 4m from both ends: the midpoint first, then a
  // spread of others.
  std::vector<std::size_t> eligible;
  for (std::size_t i = 1; i + 1 < gamma.size(); ++i)
    if (dx[gamma[i]] >= four_m && dy[gamma[i]] >= four_m) eligible.push_back(i);
  if (eligible.empty()) throw std::logic_error("no point of gamma is 4m from both ends");
  auto p = arc_prefix(g, gamma);
  std::size_t mid = 0;
  while (2 * p[mid] < p.back()) ++mid;
  std::vector<std::size_t> centres{mid};
  constexpr std::size_t kSpread = 8;
  for (std::size_t k = 0; k < kSpread; ++k) {
    std::size_t c = eligible[k * (eligible.size() - 1) / std::max<std::size_t>(kSpread - 1, 1)];
    if (std::find(centres.begin(), centres.end(), c) == centres.end()) centres.push_back(c);
  }

  Ticks best_width = -1;
  for (std::size_t c : centres) {
    VertexId src[] = {gamma[c]};
    Bridge br;
    try {
      br = find_bridge(g, x, y, m, open_ball(g, src, m_bound), c);
    } catch (const NoAvoidingPath&) {
      throw std::logic_error("a single ball separates the pair, yet no separator was found");
    }
    ++out.bridges_tried;
    Ticks width = distance(g, br.l2(), br.r2());
    if (width > best_width) {
      best_width = width;
      out.bridge = std::move(br);
    }
  }

  auto to_gamma = distances_from(g, gamma);
  out.straighten_steps = straighten(g, out.bridge, m, to_gamma);

  const Ticks case1 = g.ceil_ticks(m / Rational(50));
  const auto& D = out.bridge.D;
  for (std::size_t t = 1; t + 1 < D.size(); ++t) {
    if (to_gamma[D[t]] < case1) {
      out.case_fired = 1;
      out.witness = case1_theta(g, out.bridge, t, m / Rational(1000));
      out.z1 = out.witness.theta.a;
      out.z2 = out.witness.theta.b;
      return out;
    }
  }
  out.case_fired = 2;
  out.witness = case2_theta(g, out.bridge, m, x, y, out.z1, out.z2);
  return out;
}

}  // namespace cactus
