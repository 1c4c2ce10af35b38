#include "cactus/report_json.hpp"

#include <stdexcept>

namespace cactus {

namespace {

std::string len(const MetricGraph& g, Ticks t) { return g.to_length(t).str(); }

Rational rat(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a rational string");
  return Rational::parse(j.get<std::string>());
}

Json optional_rational(const std::optional<Rational>& r) { return r ? Json(r->str()) : Json(nullptr); }

std::vector<VertexId> ids(const Json& j) { return j.get<std::vector<VertexId>>(); }

Json node_json(const CactusApprox& a, const Node& n) {
  Json j;
  j["level"] = n.level;
  j["kind"] = n.kind == NodeKind::point ? "point" : "circle";
  if (n.kind == NodeKind::point) {
    j["point"] = n.point;
  } else {
    j["circle"] = n.circle.vertices;
    j["circle_length"] = len(a.X(), n.circle.length);
  }
  j["basepoint"] = n.basepoint;
  j["parent"] = n.parent;
  j["exit_point"] = n.exit_point;
  j["connector"] = n.connector;
  j["connecting_length"] = len(a.X(), n.connecting_length);
  j["graph"] = n.graph;
  return j;
}

}  // namespace

Json envelope(const std::string& command, const Json& body) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

Json graph_json(const MetricGraph& g) {
  Json j;
  j["unit"] = g.unit().str();
  j["vertices"] = g.vertex_count();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.length}));
  j["edges"] = std::move(edges);  // [u, v, ticks]
  return j;
}

MetricGraph graph_from_json(const Json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back(Edge{e.at(0).get<VertexId>(), e.at(1).get<VertexId>(), e.at(2).get<Ticks>()});
    return MetricGraph::from_ticks(j.at("vertices").get<std::size_t>(), std::move(edges), rat(j.at("unit")));
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("bad graph record: ") + ex.what());
  }
}

Json origin_json(const OriginPoint& p) {
  if (p.is_vertex()) return Json{{"vertex", p.vertex}};
  return Json{{"edge", p.edge}, {"offset", p.offset.str()}};
}

Json sharp_json(const SharpReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["m"] = r.m.str();
  j["granularity"] = r.granularity.str();
  j["eligible_pairs"] = r.eligible_pairs;
  j["pairs_checked"] = r.pairs_checked;
  if (r.violation) {
    auto [x, y] = *r.violation;
    Json v{{"x", x}, {"y", y}};
    if (r.space) {
      v["x_origin"] = origin_json(r.space->origin[x]);
      v["y_origin"] = origin_json(r.space->origin[y]);
      v["distance"] = len(r.space->graph, distance(r.space->graph, x, y));
    }
    j["violation"] = std::move(v);
  } else {
    j["violation"] = nullptr;
  }
  Json ws = Json::array();
  for (const auto& w : r.witnesses)
    ws.push_back(Json{{"x", w.x}, {"y", w.y}, {"a", w.a}, {"b", w.b}, {"component_x", w.component_x},
                      {"component_y", w.component_y}});
  j["witnesses"] = std::move(ws);
  return j;
}

Json witness_json(const MetricGraph& g, const FatThetaWitness& w) {
  Json j;
  j["M"] = w.M.str();
  j["a"] = w.theta.a;
  j["b"] = w.theta.b;
  Json arcs = Json::array();
  for (std::size_t i = 0; i < 3; ++i)
    arcs.push_back(Json{{"vertices", w.theta.arcs[i]},
                        {"alpha_end", w.split[i].alpha_end},
                        {"beta_begin", w.split[i].beta_begin}});
  j["arcs"] = std::move(arcs);
  FatThetaCheck c = check_fat_theta(g, w);
  j["check"] = Json{{"middles_nonempty", c.middles_nonempty}, {"middles_apart", c.middles_apart},
                    {"middles_clear", c.middles_clear}, {"ends_apart", c.ends_apart},
                    {"middle_gap", c.middle_gap.str()}, {"end_gap", c.end_gap.str()}, {"ok", c.ok()}};
  return j;
}

Json theta_search_json(const MetricGraph& g, const ThetaSearchResult& r) {
  Json j;
  j["found"] = r.witness.has_value();
  j["pairs_tried"] = r.pairs_tried;
  j["budget_exhausted"] = r.budget_exhausted;
  j["witness"] = r.witness ? witness_json(g, *r.witness) : Json(nullptr);
  return j;
}

Json violation_theta_json(const MetricGraph& g, const ViolationTheta& v) {
  Json j;
  j["case"] = v.case_fired;
  j["z1"] = v.z1;
  j["z2"] = v.z2;
  j["straighten_steps"] = v.straighten_steps;
  j["bridges_tried"] = v.bridges_tried;
  j["bridge"] = Json{{"gamma", v.bridge.gamma}, {"L", v.bridge.L}, {"D", v.bridge.D}, {"R", v.bridge.R}};
  j["witness"] = witness_json(g, v.witness);
  return j;
}

Json filling_json(const MetricGraph& g, const Filling& f) {
  Json j;
  j["splits"] = f.splits;
  j["depth"] = f.depth;
  j["leaves"] = f.leaves();
  Json regions = Json::array();
  for (const Region& r : f.regions) {
    Json x{{"parent", r.parent}, {"depth", r.depth}, {"length", len(g, r.cycle.length)}, {"cycle", r.cycle.vertices}};
    if (r.chord) {
      x["chord"] = Json{{"x", r.chord->x}, {"y", r.chord->y}, {"defect", len(g, r.chord->defect)}, {"path", r.chord->path}};
      x["children"] = Json::array({r.child[0], r.child[1]});
    }
    regions.push_back(std::move(x));
  }
  j["regions"] = std::move(regions);
  return j;
}

Json lemma_json(const LemmaReport& r) {
  Json j;
  j["failures"] = r.failures();
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"tuples", c.tuples}, {"failures", c.failures},
                          {"worst_margin", optional_rational(c.worst_margin)}, {"first_failure", c.first_failure}});
  j["checks"] = std::move(checks);
  return j;
}

Json distortion_json(const DistortionProfile& p) {
  return Json{{"lipschitz_max", p.lipschitz_max.str()}, {"additive_lower_gap", p.additive_lower_gap.str()},
              {"coarse_density", p.coarse_density.str()}, {"pairs", p.pairs},
              {"pairs_over_3M", p.pairs_over_3M}, {"sampled", p.sampled}};
}

Json annulus_json(const AnnulusReport& r) {
  Json j;
  j["e"] = r.spec.e;
  j["r"] = r.spec.r.str();
  j["m"] = r.spec.m.str();
  j["granularity"] = optional_rational(r.spec.granularity);
  j["seed"] = r.seed;
  Json sweep = Json::array();
  for (const auto& s : r.sweep) sweep.push_back(s.str());
  j["sweep"] = std::move(sweep);
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"component", row.component}, {"vertices", row.vertices},
                        {"least_m", row.least_m ? Json(row.least_m->str()) : Json("exceeds sweep")},
                        {"verdict", row.least_m ? Json(to_string(row.verdict)) : Json(nullptr)},
                        {"theta_found", row.theta_found}, {"theta_pairs", row.theta_pairs},
                        {"theta_budget_exhausted", row.theta_budget_exhausted}});
  j["components"] = std::move(rows);
  return j;
}

Json cactus_json(const CactusApprox& a) {
  Json j;
  j["e"] = a.e;
  j["m"] = a.m.str();
  j["M"] = a.M.str();
  j["lattice"] = a.X().unit().str();
  j["x_vertices"] = a.X().vertex_count();
  j["levels"] = a.levels();
  Json nodes = Json::array();
  for (const Node& n : a.nodes) nodes.push_back(node_json(a, n));
  j["nodes"] = std::move(nodes);
  Json graphs = Json::array();
  for (const LevelGraph& y : a.graphs)
    graphs.push_back(Json{{"level", y.level}, {"vertices", y.vertices.members()}, {"boundary", y.boundary},
                          {"parent_graph", y.parent_graph}, {"node", y.node},
                          {"boundary_diameter", len(a.X(), y.boundary_diameter)}, {"a", y.a}, {"b", y.b}});
  j["graphs"] = std::move(graphs);
  j["cactus"] = graph_json(a.cactus);
  j["h"] = a.h;
  j["owner"] = a.owner;
  j["node_vertices"] = a.node_vertices;
  j["notes"] = a.notes;
  return j;
}

CactusApprox cactus_from_json(const Json& j, const MetricGraph& g) {
  try {
    CactusApprox a;
    a.e = j.at("e").get<VertexId>();
    a.m = rat(j.at("m"));
    a.M = rat(j.at("M"));
    a.space = subdivide_with_origin(g, rat(j.at("lattice")));
    const MetricGraph& X = a.X();
    if (X.vertex_count() != j.at("x_vertices").get<std::size_t>())
      throw std::invalid_argument("cactus record does not match the input graph");
    auto ticks = [&](const Json& v) { return X.exact_ticks(rat(v)); };
    for (const auto& x : j.at("nodes")) {
      Node n;
      n.level = x.at("level").get<int>();
      n.kind = x.at("kind").get<std::string>() == "point" ? NodeKind::point : NodeKind::circle;
      if (n.kind == NodeKind::point) {
        n.point = x.at("point").get<VertexId>();
      } else {
        n.circle = make_cycle(X, ids(x.at("circle")));
      }
      n.basepoint = x.at("basepoint").get<VertexId>();
      n.parent = x.at("parent").get<int>();
      n.exit_point = x.at("exit_point").get<VertexId>();
      n.connector = ids(x.at("connector"));
      n.connecting_length = ticks(x.at("connecting_length"));
      n.graph = x.at("graph").get<int>();
      a.nodes.push_back(std::move(n));
    }
    for (const auto& x : j.at("graphs")) {
      LevelGraph y;
      y.level = x.at("level").get<int>();
      y.vertices = VertexMask(X.vertex_count());
      for (VertexId v : ids(x.at("vertices"))) {
        if (v >= X.vertex_count()) throw std::invalid_argument("level graph vertex out of range");
        y.vertices.insert(v);
      }
      y.boundary = ids(x.at("boundary"));
      y.parent_graph = x.at("parent_graph").get<int>();
      y.node = x.at("node").get<int>();
      y.boundary_diameter = ticks(x.at("boundary_diameter"));
      y.a = x.at("a").get<VertexId>();
      y.b = x.at("b").get<VertexId>();
      a.graphs.push_back(std::move(y));
    }
    a.cactus = graph_from_json(j.at("cactus"));
    a.h = ids(j.at("h"));
    a.owner = j.at("owner").get<std::vector<int>>();
    a.node_vertices = j.at("node_vertices").get<std::vector<std::vector<VertexId>>>();
    a.notes = j.at("notes").get<std::vector<std::string>>();
    const std::size_t c = a.cactus.vertex_count();
    if (a.h.size() != c || a.owner.size() != c || a.node_vertices.size() != a.nodes.size())
      throw std::invalid_argument("cactus record has inconsistent sizes");
    for (VertexId x : a.h)
      if (x >= X.vertex_count()) throw std::invalid_argument("h maps outside X");
    return a;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("bad cactus record: ") + ex.what());
  }
}

}  // namespace cactus
