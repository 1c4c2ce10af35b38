#include "cactus/builder.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

namespace cactus {

namespace {

constexpr std::size_t kTableLimit = 4096;

std::vector<VertexId> concat(std::vector<VertexId> a, std::span<const VertexId> b) {
  for (VertexId v : b) {
    if (!a.empty() && a.back() == v) continue;
    a.push_back(v);
  }
  return a;
}

std::vector<VertexId> reversed(std::vector<VertexId> p) {
  std::reverse(p.begin(), p.end());
  return p;
}

Ticks min_over(std::span<const Ticks> row, std::span<const VertexId> set) {
  Ticks best = kUnreachable;
  for (VertexId v : set) best = std::min(best, row[v]);
  return best;
}

/// Simple cycles of a closed walk by loop erasure; back-and-forth steps
/// (loops on fewer than 3 vertices) are dropped.
std::vector<Cycle> simple_cycles(const MetricGraph& g, const std::vector<VertexId>& walk) {
  std::vector<Cycle> out;
  if (walk.empty()) return out;
  std::vector<int> pos(g.vertex_count(), -1);
  std::vector<VertexId> stack;
  auto visit = [&](VertexId v) {
    if (!stack.empty() && stack.back() == v) return;
    if (pos[v] < 0) {
      pos[v] = static_cast<int>(stack.size());
      stack.push_back(v);
      return;
    }
    auto from = static_cast<std::size_t>(pos[v]);
    if (stack.size() - from >= 3) {
      out.push_back(make_cycle(g, std::vector<VertexId>(stack.begin() + static_cast<std::ptrdiff_t>(from), stack.end())));
    }
    for (std::size_t k = from + 1; k < stack.size(); ++k) pos[stack[k]] = -1;
    stack.resize(from + 1);
  };
  for (VertexId v : walk) visit(v);
  visit(walk.front());
  return out;
}

bool same_vertices(const Cycle& c, const Node& node) {
  if (node.kind != NodeKind::circle || node.circle.size() != c.size()) return false;
  auto x = c.vertices, y = node.circle.vertices;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

/// Finest lattice of g's unit on which M is a whole number of ticks.
Rational lattice_for(const MetricGraph& g, const Rational& M) {
  Rational q = M / g.unit();
  return g.unit() / Rational(q.den());
}

}  // namespace

std::vector<VertexId> Node::members() const {
  if (kind == NodeKind::point) return {point};
  return circle.vertices;
}

int CactusApprox::levels() const {
  int top = 0;
  for (const Node& n : nodes) top = std::max(top, n.level);
  return top;
}

VertexId CactusApprox::copy_of(int node, VertexId x) const {
  for (VertexId c : node_vertices[static_cast<std::size_t>(node)])
    if (h[c] == x) return c;
  return kNoVertex;
}

Classification classify_component(const MetricGraph& X, std::span<const VertexId> boundary, const Rational& M,
                                  const DistanceTable* table) {
  if (boundary.empty()) throw std::invalid_argument("empty boundary");
  Classification c;
  c.y = *std::min_element(boundary.begin(), boundary.end());
  c.a = c.b = boundary.front();
  std::vector<Ticks> scratch;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    std::span<const Ticks> row;
    if (table) {
      row = table->row(boundary[i]);
    } else {
      scratch = distances_from(X, boundary[i]);
      row = scratch;
    }
    for (std::size_t j = i + 1; j < boundary.size(); ++j) {
      if (row[boundary[j]] > c.diameter) {
        c.diameter = row[boundary[j]];
        c.a = boundary[i];
        c.b = boundary[j];
      }
    }
  }
  c.circle = c.diameter >= X.ceil_ticks(M / Rational(10));
  return c;
}

Cycle find_circle_node(const MetricGraph& X, const Node& parent, const VertexMask& Z, VertexId a, VertexId b,
                       const Rational& m, const DistanceTable* table, bool force, std::string* note) {
  const auto P = parent.members();
  auto alpha1 = shortest_path_to_set(X, a, P);
  auto beta1 = shortest_path_to_set(X, b, P);
  auto gamma1 = shortest_path(X, a, b, &Z);
  if (alpha1.empty() || beta1.empty()) throw CircleNotFound("parent node unreachable", -1, -1);
  if (gamma1.empty()) throw CircleNotFound("a and b are not joined inside the component", -1, -1);

  Ticks near = X.floor_ticks(Rational(100) * m);
  auto to_beta = distances_from(X, beta1);
  // a1 is where alpha1 crosses into N_100m(beta1); when a starts inside
  // (M/10 < 100m at desk scale) the walk closes through the parent instead.
  std::size_t t = alpha1.size();
  for (std::size_t k = 0; to_beta[a] > near && k < alpha1.size(); ++k) {
    if (to_beta[alpha1[k]] <= near) {
      t = k;
      break;
    }
  }
  std::vector<VertexId> alpha, beta, gamma2;
  if (t < alpha1.size()) {
    alpha.assign(alpha1.begin(), alpha1.begin() + static_cast<std::ptrdiff_t>(t) + 1);
    gamma2 = shortest_path_to_set(X, alpha1[t], beta1);
    auto it = std::find(beta1.begin(), beta1.end(), gamma2.back());
    beta.assign(beta1.begin(), it + 1);
  } else {
    alpha = alpha1;
    beta = beta1;
    gamma2 = parent.kind == NodeKind::point ? std::vector<VertexId>{alpha.back()}
                                            : short_arc(X, parent.circle, alpha.back(), beta.back()).vertices;
  }
  auto walk = concat(concat(concat(alpha, gamma2), reversed(beta)), reversed(gamma1));
  if (walk.size() > 1 && walk.back() == walk.front()) walk.pop_back();

  std::vector<Ticks> from_a_scratch, from_b_scratch;
  std::span<const Ticks> da, db;
  if (table) {
    da = table->row(a);
    db = table->row(b);
  } else {
    from_a_scratch = distances_from(X, a);
    from_b_scratch = distances_from(X, b);
    da = from_a_scratch;
    db = from_b_scratch;
  }
  const Ticks within = X.ceil_ticks(Rational(100) * m);  // d < 100m
  std::optional<Cycle> best, fallback;
  Ticks best_sum = 0, fallback_worst = 0;
  for (const Cycle& c : simple_cycles(X, walk)) {
    Filling f = fill(X, c, table);
    for (int leaf : f.leaves()) {
      const Cycle& s = f.regions[static_cast<std::size_t>(leaf)].cycle;
      Ticks ra = min_over(da, s.vertices), rb = min_over(db, s.vertices);
      if (ra < within && rb < within) {
        if (!best || ra + rb < best_sum || (ra + rb == best_sum && s.length > best->length)) {
          best = s;
          best_sum = ra + rb;
        }
      } else if (!same_vertices(s, parent) && (!fallback || std::max(ra, rb) < fallback_worst)) {
        fallback = s;
        fallback_worst = std::max(ra, rb);
      }
    }
  }
  if (best) return *best;
  if (force && fallback) {
    if (note) {
      *note = "no leaf within 100m of both " + std::to_string(a) + " and " + std::to_string(b) +
              "; took a leaf at distance " + X.to_length(fallback_worst).str();
    }
    return *fallback;
  }
  throw CircleNotFound("no geodesic circle within 100m of both " + std::to_string(a) + " and " + std::to_string(b),
                       -1, -1);
}

CactusApprox build_cactus(const MetricGraph& g, VertexId e, const Rational& m, const Rational& M,
                          const BuildOptions& options) {
  if (m <= Rational(0)) throw std::invalid_argument("m must be positive");
  if (M < Rational(40) * m) throw std::invalid_argument("M must be at least 40m");
  if (e >= g.vertex_count()) throw std::out_of_range("root out of range");
  if (!is_connected(g)) throw std::invalid_argument("graph is not connected");

  CactusApprox out;
  out.m = m;
  out.M = M;
  out.e = e;
  out.space = subdivide_with_origin(g, lattice_for(g, M));
  const MetricGraph& X = out.space.graph;
  const std::size_t n = X.vertex_count();
  std::optional<DistanceTable> table;
  if (n <= kTableLimit) table = DistanceTable::compute(X);
  const DistanceTable* tp = table ? &*table : nullptr;

  const Ticks Mt = X.exact_ticks(M);
  const Ticks diam = tp ? tp->diameter() : diameter(X);
  const int level_cap = static_cast<int>((diam * 10 + 8 * Mt - 1) / (8 * Mt)) + 1;

  Node root;
  root.point = root.basepoint = root.exit_point = e;
  root.connector = {e};
  root.graph = 0;
  out.nodes.push_back(root);
  LevelGraph top;
  top.vertices = VertexMask(n, true);
  top.boundary = {e};
  top.node = 0;
  top.a = top.b = e;
  out.graphs.push_back(std::move(top));

  for (std::size_t gi = 0; gi < out.graphs.size(); ++gi) {
    const int ni = out.graphs[gi].node;
    const Node parent = out.nodes[static_cast<std::size_t>(ni)];
    const auto P = parent.members();
    const auto tree = shortest_path_tree(X, P);
    VertexMask rest(n);
    for (VertexId v : out.graphs[gi].vertices.members())
      if (tree.dist[v] >= Mt) rest.insert(v);
    int count = 0;
    auto labels = component_labels(X, rest, &count);
    std::vector<std::vector<VertexId>> comps(static_cast<std::size_t>(count));
    for (VertexId v = 0; v < n; ++v)
      if (labels[v] >= 0) comps[static_cast<std::size_t>(labels[v])].push_back(v);

    for (auto& comp : comps) {
      LevelGraph child;
      child.level = out.graphs[gi].level + 1;
      child.parent_graph = static_cast<int>(gi);
      child.vertices = VertexMask(n);
      for (VertexId v : comp) {
        child.vertices.insert(v);
        if (tree.dist[v] == Mt) child.boundary.push_back(v);
      }
      const int cgi = static_cast<int>(out.graphs.size());
      if (child.level > level_cap) {
        if (!options.force) throw BuildError("level cap exceeded", child.level, cgi);
        out.notes.push_back("level " + std::to_string(child.level) + ": cap reached, component left without a node");
        continue;
      }
      if (child.boundary.empty()) throw BuildError("component without boundary points", child.level, cgi);
      if (child.vertices == out.graphs[gi].vertices) throw BuildError("no progress", child.level, cgi);

      Classification cl = classify_component(X, child.boundary, M, tp);
      child.boundary_diameter = cl.diameter;
      child.a = cl.a;
      child.b = cl.b;

      Node node;
      node.level = child.level;
      node.parent = ni;
      node.graph = cgi;
      if (!cl.circle) {
        node.kind = NodeKind::point;
        node.point = node.basepoint = cl.y;
      } else {
        node.kind = NodeKind::circle;
        std::string note;
        try {
          node.circle = find_circle_node(X, parent, child.vertices, cl.a, cl.b, m, tp, options.force, &note);
        } catch (const CircleNotFound& ex) {
          throw CircleNotFound(ex.what(), child.level, cgi);
        }
        if (!note.empty()) out.notes.push_back("level " + std::to_string(child.level) + ": " + note);
        if (same_vertices(node.circle, parent)) throw BuildError("circle node repeats its parent", child.level, cgi);
        node.basepoint = node.circle.vertices.front();
        for (VertexId v : node.circle.vertices)
          if (tree.dist[v] < tree.dist[node.basepoint] || (tree.dist[v] == tree.dist[node.basepoint] && v < node.basepoint))
            node.basepoint = v;
      }
      node.connector = reversed(shortest_path_to_set(X, node.basepoint, P));
      node.exit_point = node.connector.front();
      node.connecting_length = path_length(X, node.connector);
      child.node = static_cast<int>(out.nodes.size());
      out.nodes.push_back(std::move(node));
      out.graphs.push_back(std::move(child));
    }
  }

  // C: fresh copies of every node and connector, glued at exit points.
  std::vector<Edge> edges;
  auto fresh = [&](VertexId x, int own) {
    out.h.push_back(x);
    out.owner.push_back(own);
    return static_cast<VertexId>(out.h.size() - 1);
  };
  auto link = [&](VertexId cu, VertexId cv) {
    edges.push_back(Edge{cu, cv, X.edge(X.find_edge(out.h[cu], out.h[cv])).length});
  };
  out.node_vertices.resize(out.nodes.size());
  out.node_vertices[0] = {fresh(e, 0)};
  for (std::size_t i = 1; i < out.nodes.size(); ++i) {
    const Node& node = out.nodes[i];
    const int own = static_cast<int>(i);
    VertexId exit_c = out.copy_of(node.parent, node.exit_point);
    VertexId prev = exit_c;
    for (std::size_t k = 1; k + 1 < node.connector.size(); ++k) {
      VertexId c = fresh(node.connector[k], -1);
      link(prev, c);
      prev = c;
    }
    const bool glued = node.connector.size() == 1;
    auto& mine = out.node_vertices[i];
    if (node.kind == NodeKind::point) {
      mine.push_back(glued ? exit_c : fresh(node.point, own));
    } else {
      for (VertexId v : node.circle.vertices) mine.push_back(glued && v == node.basepoint ? exit_c : fresh(v, own));
      for (std::size_t k = 0; k < mine.size(); ++k) link(mine[k], mine[(k + 1) % mine.size()]);
    }
    if (!glued) link(prev, out.copy_of(own, node.basepoint));
  }
  out.cactus = MetricGraph::from_ticks(out.h.size(), std::move(edges), X.unit());
  return out;
}

namespace {

class Diagnoser {
 public:
  explicit Diagnoser(const CactusApprox& a) : a_(a), X_(a.X()) {
    if (X_.vertex_count() <= kTableLimit) table_ = DistanceTable::compute(X_);
  }

  const MetricGraph& X() const { return X_; }
  Rational len(Ticks t) const { return X_.to_length(t); }

  std::span<const Ticks> row(VertexId v) {
    if (table_) return table_->row(v);
    auto it = rows_.find(v);
    if (it == rows_.end()) it = rows_.emplace(v, distances_from(X_, v)).first;
    return it->second;
  }

  /// Distances from every X vertex to node i.
  const std::vector<Ticks>& to_node(int i) {
    auto it = node_rows_.find(i);
    if (it == node_rows_.end()) {
      auto members = a_.nodes[static_cast<std::size_t>(i)].members();
      it = node_rows_.emplace(i, distances_from(X_, members)).first;
    }
    return it->second;
  }

  std::span<const Ticks> c_row(VertexId c) {
    auto it = c_rows_.find(c);
    if (it == c_rows_.end()) it = c_rows_.emplace(c, distances_from(a_.cactus, c)).first;
    return it->second;
  }

  /// Arc distance between two vertices of circle node i.
  Ticks arc(int i, VertexId x, VertexId y) {
    const Cycle& c = a_.nodes[static_cast<std::size_t>(i)].circle;
    auto it = prefix_.find(i);
    if (it == prefix_.end()) it = prefix_.emplace(i, prefix_lengths(X_, c)).first;
    Ticks fwd = it->second[static_cast<std::size_t>(position_on(c, x))] -
                it->second[static_cast<std::size_t>(position_on(c, y))];
    if (fwd < 0) fwd = -fwd;
    return std::min(fwd, c.length - fwd);
  }

  /// Smallest-id vertex of node i nearest to x.
  VertexId nearest_on(int i, VertexId x) {
    auto r = row(x);
    VertexId best = kNoVertex;
    for (VertexId v : a_.nodes[static_cast<std::size_t>(i)].members())
      if (best == kNoVertex || r[v] < r[best] || (r[v] == r[best] && v < best)) best = v;
    return best;
  }

  Ticks diam(std::span<const VertexId> set) {
    Ticks d = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      auto r = row(set[i]);
      for (std::size_t j = i + 1; j < set.size(); ++j) d = std::max(d, r[set[j]]);
    }
    return d;
  }

 private:
  const CactusApprox& a_;
  const MetricGraph& X_;
  std::optional<DistanceTable> table_;
  std::map<VertexId, std::vector<Ticks>> rows_;
  std::map<int, std::vector<Ticks>> node_rows_;
  std::map<VertexId, std::vector<Ticks>> c_rows_;
  std::map<int, std::vector<Ticks>> prefix_;
};

void record(LemmaCheck& c, const Rational& margin, bool strict, const std::function<std::string()>& what) {
  ++c.tuples;
  if (!c.worst_margin || margin < *c.worst_margin) c.worst_margin = margin;
  bool fail = strict ? margin <= Rational(0) : margin < Rational(0);
  if (fail) {
    if (c.failures == 0) c.first_failure = what() + " (margin " + margin.str() + ")";
    ++c.failures;
  }
}

std::string tag(VertexId v) { return std::to_string(v); }

}  // namespace

std::size_t LemmaReport::failures() const {
  std::size_t total = 0;
  for (const auto& c : checks) total += c.failures;
  return total;
}

const LemmaCheck* LemmaReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

LemmaReport diagnose_lemmas(const CactusApprox& a) {
  Diagnoser D(a);
  const Rational m = a.m, M = a.M;
  const Rational tenth = M / Rational(10);
  const Rational reach = tenth + Rational(100) * m;
  LemmaReport report;
  auto check = [&](const char* name) -> LemmaCheck& {
    report.checks.push_back(LemmaCheck{name, 0, 0, std::nullopt, {}});
    return report.checks.back();
  };

  std::vector<int> circles, points;
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    (a.nodes[i].kind == NodeKind::circle ? circles : points).push_back(static_cast<int>(i));
  auto node = [&](int i) -> const Node& { return a.nodes[static_cast<std::size_t>(i)]; };

  {
    LemmaCheck& c = check("geodcirc");
    for (int s : circles) {
      for (int p : points) {
        VertexId e = node(p).point;
        auto r = D.row(e);
        VertexId q = D.nearest_on(s, e);
        for (VertexId x : node(s).circle.vertices) {
          Rational margin = D.len(r[x]) - (D.len(r[q] + D.arc(s, x, q)) - Rational(100) * m);
          record(c, margin, false, [&] { return "circle node " + tag(s) + ", e=" + tag(e) + ", x=" + tag(x); });
        }
      }
    }
  }

  {
    LemmaCheck& close_pairs = check("circles-close");
    LemmaCheck& two = check("2circles");
    for (int i : circles) {
      for (int j : circles) {
        if (i == j) continue;
        const Cycle &S1 = node(i).circle, &S2 = node(j).circle;
        if (D.len(S1.length) < tenth || D.len(S2.length) < tenth) continue;
        const auto& to2 = D.to_node(j);
        Ticks far = 0;
        VertexId e = kNoVertex;
        for (VertexId v : S1.vertices) {
          far = std::max(far, to2[v]);
          if (e == kNoVertex || to2[v] < to2[e] || (to2[v] == to2[e] && v < e)) e = v;
        }
        if (D.len(far) < M / Rational(100)) continue;

        std::vector<VertexId> T;
        for (VertexId v : S1.vertices)
          if (D.len(to2[v]) <= Rational(10) * m) T.push_back(v);
        for (std::size_t u = 0; u < T.size(); ++u) {
          auto r = D.row(T[u]);
          for (std::size_t w = u + 1; w < T.size(); ++w) {
            record(close_pairs, Rational(30) * m - D.len(r[T[w]]), false, [&] {
              return "circles " + tag(i) + "," + tag(j) + ": a=" + tag(T[u]) + ", b=" + tag(T[w]);
            });
          }
        }

        VertexId p = D.nearest_on(j, e);
        Ticks R = D.row(e)[p];
        for (VertexId x : S1.vertices) {
          auto r = D.row(x);
          Ticks xe = D.arc(i, x, e);
          for (VertexId y : S2.vertices) {
            Rational margin = D.len(r[y]) - (D.len(R + xe + D.arc(j, p, y)) - Rational(1000) * m);
            record(two, margin, false,
                   [&] { return "circles " + tag(i) + "," + tag(j) + ": x=" + tag(x) + ", y=" + tag(y); });
          }
        }
      }
    }
  }

  {
    LemmaCheck& c = check("close");
    const Ticks cut = D.X().ceil_ticks(tenth);
    for (std::size_t gi = 1; gi < a.graphs.size(); ++gi) {
      const LevelGraph& Y = a.graphs[gi];
      if (Y.boundary_diameter < cut) continue;
      auto ra = D.row(Y.a), rb = D.row(Y.b);
      for (VertexId v : Y.boundary) {
        record(c, tenth - D.len(std::min(ra[v], rb[v])), false,
               [&] { return "graph " + std::to_string(gi) + ", c=" + tag(v); });
      }
    }
  }

  {
    LemmaCheck& below_point = check("contained");
    LemmaCheck& below_circle = check("contained2-2");
    for (int s : circles) {
      const Node& S = node(s);
      const int own = S.graph;
      const int pg = a.graphs[static_cast<std::size_t>(own)].parent_graph;
      const bool parent_circle = node(S.parent).kind == NodeKind::circle;
      LemmaCheck& c = parent_circle ? below_circle : below_point;
      const Rational bound = parent_circle ? Rational(2000) * m : Rational(100) * m;
      for (std::size_t gi = 1; gi < a.graphs.size(); ++gi) {
        const LevelGraph& Y = a.graphs[gi];
        if (Y.parent_graph != pg) continue;
        std::vector<VertexId> inside;
        for (VertexId v : S.circle.vertices)
          if (Y.vertices.contains(v)) inside.push_back(v);
        if (static_cast<int>(gi) == own) {
          record(c, D.len(D.diam(inside)) - M / Rational(20), false,
                 [&] { return "circle node " + tag(s) + " inside its own graph"; });
        } else if (!inside.empty()) {
          record(c, bound - D.len(D.diam(inside)), false,
                 [&] { return "circle node " + tag(s) + " inside sibling graph " + std::to_string(gi); });
        }
      }
    }
  }

  {
    LemmaCheck& c = check("bigpart");
    // S is the child circle, S' its parent circle; s is the child's point nearest to S'.
    for (int child : circles) {
      const Node& S = node(child);
      if (node(S.parent).kind != NodeKind::circle) continue;
      const auto& to_parent = D.to_node(S.parent);
      VertexId s = S.basepoint;
      Ticks far = 0;
      for (VertexId q : S.circle.vertices) far = std::max(far, D.arc(child, s, q));
      for (VertexId q : S.circle.vertices) {
        if (D.arc(child, s, q) != far) continue;
        record(c, D.len(to_parent[q]) - M, true,
               [&] { return "circle node " + tag(child) + ": antipode " + tag(q) + " within M of the parent"; });
      }
      record(c, M - D.len(to_parent[s]), true,
             [&] { return "circle node " + tag(child) + ": s=" + tag(s) + " not within M of the parent"; });
    }
  }

  {
    LemmaCheck& c = check("dist-bd");
    for (std::size_t gi = 1; gi < a.graphs.size(); ++gi) {
      const LevelGraph& Y2 = a.graphs[gi];
      const LevelGraph& Y1 = a.graphs[static_cast<std::size_t>(Y2.parent_graph)];
      auto d1 = distances_from(D.X(), Y1.boundary);
      record(c, D.len(min_over(d1, Y2.boundary)) - Rational(8) * M / Rational(10), false,
             [&] { return "graph " + std::to_string(gi); });
    }
  }

  {
    LemmaCheck& c = check("2-levels2");
    for (std::size_t i = 1; i < a.nodes.size(); ++i) {
      const Node& S = a.nodes[i];
      std::vector<VertexId> outside;
      for (VertexId v : S.members())
        if (!a.graphs[static_cast<std::size_t>(S.graph)].vertices.contains(v)) outside.push_back(v);
      record(c, Rational(3) * M - D.len(D.diam(outside)), false, [&] { return "node " + std::to_string(i); });
    }
  }

  {
    LemmaCheck& c = check("cactus-bd.2");
    for (std::size_t gi = 1; gi < a.graphs.size(); ++gi) {
      const LevelGraph& Yl = a.graphs[gi];
      const LevelGraph& Yk = a.graphs[static_cast<std::size_t>(Yl.parent_graph)];
      for (VertexId x : Yk.boundary) {
        VertexId xp = D.nearest_on(Yk.node, x);
        if (D.len(D.row(x)[xp]) > reach) continue;
        auto rc = D.c_row(a.copy_of(Yk.node, xp));
        auto rx = D.row(x);
        for (VertexId y : Yl.boundary) {
          VertexId yp = D.nearest_on(Yl.node, y);
          if (D.len(D.row(y)[yp]) > reach) continue;
          Ticks dc = rc[a.copy_of(Yl.node, yp)];
          Ticks d = rx[y];
          Rational margin = std::min(D.len(2 * d - dc), D.len(dc) - D.len(d) / Rational(2));
          record(c, margin, false, [&] { return "graph " + std::to_string(gi) + ": x=" + tag(x) + ", y=" + tag(y); });
        }
      }
    }
  }

  {
    LemmaCheck& c = check("basepoint2");
    std::vector<std::vector<int>> children(a.graphs.size());
    for (std::size_t gi = 1; gi < a.graphs.size(); ++gi)
      children[static_cast<std::size_t>(a.graphs[gi].parent_graph)].push_back(static_cast<int>(gi));
    for (const auto& kids : children) {
      for (std::size_t u = 0; u < kids.size(); ++u) {
        for (std::size_t w = u + 1; w < kids.size(); ++w) {
          const LevelGraph& Y = a.graphs[static_cast<std::size_t>(kids[u])];
          const LevelGraph& Z = a.graphs[static_cast<std::size_t>(kids[w])];
          for (VertexId y : Y.boundary) {
            VertexId x = D.nearest_on(Y.node, y);
            if (D.len(D.row(y)[x]) > reach) continue;
            auto rc = D.c_row(a.copy_of(Y.node, x));
            auto ry = D.row(y);
            for (VertexId z : Z.boundary) {
              VertexId xp = D.nearest_on(Z.node, z);
              if (D.len(D.row(z)[xp]) > reach) continue;
              Rational margin = D.len(ry[z]) + Rational(5) * M - D.len(rc[a.copy_of(Z.node, xp)]);
              record(c, margin, false, [&] {
                return "graphs " + std::to_string(kids[u]) + "," + std::to_string(kids[w]) + ": y=" + tag(y) +
                       ", z=" + tag(z);
              });
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace cactus
