// Command-line front end. Every command prints one JSON document to stdout
// (and to --report FILE when given). Exit codes: 0 holds / succeeded,
// 1 violation / absence, 2 usage or diagnostic error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cactus/builder.hpp"
#include "cactus/cycles.hpp"
#include "cactus/fat_theta.hpp"
#include "cactus/generators.hpp"
#include "cactus/graph_io.hpp"
#include "cactus/harness.hpp"
#include "cactus/report_json.hpp"
#include "cactus/separation.hpp"
#include "cactus/verify.hpp"

using namespace cactus;

namespace {

constexpr int kHolds = 0, kFails = 1, kError = 2;

struct Common {
  std::uint64_t seed = 1;
  std::string granularity;
  std::string report;
  std::string dot;
};

Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad rational for ") + what + ": '" + text + "'");
  }
}

std::optional<Rational> optional_rational(const std::string& text, const char* what) {
  if (text.empty()) return std::nullopt;
  return parse_rational(text, what);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(path + ": " + ex.what());
  }
}

int emit(const Common& c, const std::string& command, const Json& body, int code) {
  std::string text = envelope(command, body).dump(2) + "\n";
  std::cout << text;
  if (!c.report.empty()) write_text(c.report, text);
  return code;
}

std::vector<std::string> palette_colors(const std::vector<int>& cls) {
  static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
  std::vector<std::string> out(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i)
    if (cls[i] >= 0) out[i] = palette[static_cast<std::size_t>(cls[i]) % std::size(palette)];
  return out;
}

std::vector<VertexId> parse_ids(const std::string& text) {
  std::vector<VertexId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<VertexId>(std::stoul(item)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad vertex id '" + item + "'");
    }
  }
  return out;
}

void add_common(CLI::App* sub, Common& c, bool graph_out) {
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--granularity", c.granularity, "tick granularity (rational)");
  sub->add_option("--report", c.report, "also write the JSON report here");
  if (graph_out) sub->add_option("--dot", c.dot, "Graphviz output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cactus approximation toolkit"};
  app.require_subcommand(1);
  Common c;

  // gen
  std::string family, gen_out;
  auto* gen = app.add_subcommand("gen", "generate a graph family");
  gen->add_option("--family", family, "e.g. cycle:300, grid:60x60, random_cactus:5:40-80:0-10, planar_disk:15:2-4")
      ->required();
  gen->add_option("--out", gen_out, "edge-list output (default: embedded in the report)");
  add_common(gen, c, true);

  // check-sharp
  std::string graph_path, m_text, M_text;
  std::size_t sample = 0, witness_cap = 1000;
  auto* sharp = app.add_subcommand("check-sharp", "decide the two-point separation condition");
  sharp->add_option("--graph", graph_path)->required();
  sharp->add_option("--m", m_text)->required();
  sharp->add_option("--sample", sample, "pair budget above the full-sweep size (0: always full)");
  sharp->add_option("--witness-cap", witness_cap)->capture_default_str();
  add_common(sharp, c, false);

  // find-theta
  std::size_t budget = 200;
  std::vector<VertexId> pair;
  auto* theta = app.add_subcommand("find-theta", "search for an M-fat theta");
  theta->add_option("--graph", graph_path)->required();
  theta->add_option("--M", M_text, "fatness for the budgeted search");
  theta->add_option("--budget", budget)->capture_default_str();
  theta->add_option("--pair", pair, "x y: build the theta from a pair violating (sharp, m)")->expected(2);
  theta->add_option("--m", m_text, "separation scale for --pair");
  add_common(theta, c, true);

  // build-cactus
  VertexId root = 0;
  std::string cactus_out, trace_out;
  bool force = false;
  auto* build = app.add_subcommand("build-cactus", "construct the cactus approximation");
  build->add_option("--graph", graph_path)->required();
  build->add_option("--e", root, "base vertex")->capture_default_str();
  build->add_option("--m", m_text)->required();
  build->add_option("--M", M_text)->required();
  build->add_option("--out", cactus_out, "cactus.json");
  build->add_option("--trace", trace_out, "level graphs and lemma audit");
  build->add_flag("--force", force, "fall back instead of failing when no circle qualifies");
  add_common(build, c, true);

  // verify-cactus
  auto* verify = app.add_subcommand("verify-cactus", "is the graph a cactus");
  verify->add_option("--graph", graph_path)->required();
  add_common(verify, c, false);

  // distortion
  std::string cactus_in;
  std::size_t max_pairs = 10000;
  auto* dist = app.add_subcommand("distortion", "distortion profile of a built cactus");
  dist->add_option("--graph", graph_path)->required();
  dist->add_option("--cactus", cactus_in)->required();
  dist->add_option("--max-pairs", max_pairs)->capture_default_str();
  add_common(dist, c, false);

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "lemma audit of a built cactus");
  diag->add_option("--graph", graph_path)->required();
  diag->add_option("--cactus", cactus_in)->required();
  add_common(diag, c, false);

  // annulus
  std::string r_text;
  std::vector<std::string> sweep_text{"1", "2", "3", "5", "8", "12", "20", "30", "50"};
  std::size_t annulus_sample = 2000;
  auto* ann = app.add_subcommand("annulus", "annulus components of a disk and their separation scale");
  ann->add_option("--graph", graph_path)->required();
  ann->add_option("--e", root)->capture_default_str();
  ann->add_option("--r", r_text)->required();
  ann->add_option("--m", m_text)->required();
  ann->add_option("--sweep", sweep_text, "multiples of m to try")->delimiter(',')->capture_default_str();
  ann->add_option("--sample", annulus_sample)->capture_default_str();
  ann->add_option("--budget", budget)->capture_default_str();
  add_common(ann, c, true);

  // fill
  std::string cycle_text;
  auto* fillc = app.add_subcommand("fill", "fill a simple cycle with geodesic circles");
  fillc->add_option("--graph", graph_path)->required();
  fillc->add_option("--cycle", cycle_text, "comma-separated vertices (default: a random simple cycle)");
  add_common(fillc, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    auto granularity = optional_rational(c.granularity, "--granularity");

    if (*gen) {
      MetricGraph g = generate(family, c.seed);
      if (granularity) g = subdivide(g, *granularity);
      Json body{{"family", family}, {"seed", c.seed}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()},
                {"cycle_rank", cycle_rank(g)}};
      if (gen_out.empty()) {
        body["graph"] = graph_json(g);
      } else {
        save_edge_list(gen_out, g);
        body["out"] = gen_out;
      }
      if (!c.dot.empty()) save_dot(c.dot, g);
      return emit(c, "gen", body, kHolds);
    }

    const MetricGraph g = load_edge_list(graph_path);

    if (*sharp) {
      SharpOptions o;
      o.granularity = granularity;
      o.sample = sample;
      o.seed = c.seed;
      o.witness_cap = witness_cap;
      auto r = check_sharp(g, parse_rational(m_text, "--m"), o);
      Json body = sharp_json(r);
      body["graph"] = graph_path;
      body["seed"] = c.seed;
      return emit(c, "check-sharp", body, r.verdict == Verdict::violated ? kFails : kHolds);
    }

    if (*theta) {
      std::optional<FatThetaWitness> w;
      Json body{{"graph", graph_path}};
      if (!pair.empty()) {
        if (m_text.empty()) throw std::invalid_argument("--pair needs --m");
        try {
          auto v = violation_to_theta(g, pair[0], pair[1], parse_rational(m_text, "--m"));
          body["from_violation"] = violation_theta_json(g, v);
          body["found"] = true;
          w = v.witness;
        } catch (const PreconditionError& ex) {
          body["found"] = false;
          body["precondition"] = ex.what();
          emit(c, "find-theta", body, kError);
          return kError;
        }
      } else {
        if (M_text.empty()) throw std::invalid_argument("find-theta needs --M or --pair");
        ThetaSearchOptions o;
        o.budget = budget;
        auto r = search_fat_theta(g, parse_rational(M_text, "--M"), o);
        body["search"] = theta_search_json(g, r);
        body["found"] = r.witness.has_value();
        w = r.witness;
      }
      if (w && !c.dot.empty()) {
        std::vector<int> cls(g.vertex_count(), -1);
        for (int i = 0; i < 3; ++i)
          for (VertexId v : w->theta.arcs[static_cast<std::size_t>(i)]) cls[v] = i;
        save_dot(c.dot, g, palette_colors(cls));
      }
      return emit(c, "find-theta", body, w ? kHolds : kFails);
    }

    if (*build) {
      BuildOptions o;
      o.force = force;
      Json body{{"graph", graph_path}, {"e", root}, {"m", m_text}, {"M", M_text}};
      CactusApprox a;
      try {
        a = build_cactus(g, root, parse_rational(m_text, "--m"), parse_rational(M_text, "--M"), o);
      } catch (const BuildError& ex) {
        body["built"] = false;
        body["error"] = Json{{"what", ex.what()}, {"level", ex.level}, {"graph", ex.graph}};
        return emit(c, "build-cactus", body, kFails);
      }
      Json record = cactus_json(a);
      if (!cactus_out.empty()) write_text(cactus_out, envelope("cactus", record).dump() + "\n");
      if (!trace_out.empty()) {
        Json trace{{"graphs", record["graphs"]}, {"lemmas", lemma_json(diagnose_lemmas(a))}};
        write_text(trace_out, envelope("trace", trace).dump() + "\n");
      }
      if (!c.dot.empty()) {
        std::vector<int> cls(a.cactus.vertex_count(), -1);
        for (VertexId v = 0; v < a.cactus.vertex_count(); ++v)
          if (a.owner[v] >= 0) cls[v] = a.nodes[static_cast<std::size_t>(a.owner[v])].kind == NodeKind::circle ? 0 : 1;
        save_dot(c.dot, a.cactus, palette_colors(cls));
      }
      std::size_t circles = 0;
      for (const auto& n : a.nodes) circles += n.kind == NodeKind::circle;
      body["built"] = true;
      body["nodes"] = a.nodes.size();
      body["circle_nodes"] = circles;
      body["levels"] = a.levels();
      body["cactus_vertices"] = a.cactus.vertex_count();
      body["is_cactus"] = is_cactus(a.cactus);
      body["notes"] = a.notes;
      if (cactus_out.empty()) body["cactus"] = record;
      return emit(c, "build-cactus", body, kHolds);
    }

    if (*verify) {
      std::string why;
      bool ok = is_cactus(g, &why);
      Json body{{"graph", graph_path}, {"is_cactus", ok}, {"cycle_rank", cycle_rank(g)}};
      if (!ok) body["reason"] = why;
      if (cycle_rank(g) <= 12) body["bruteforce_agrees"] = is_cactus_bruteforce(g) == ok;
      return emit(c, "verify-cactus", body, ok ? kHolds : kFails);
    }

    if (*dist || *diag) {
      CactusApprox a = cactus_from_json(read_json(cactus_in), g);
      if (*diag) {
        auto r = diagnose_lemmas(a);
        return emit(c, "diagnose", lemma_json(r), r.failures() == 0 ? kHolds : kFails);
      }
      DistortionOptions o;
      o.max_pairs = max_pairs;
      o.seed = c.seed;
      auto p = distortion_profile(a, o);
      Json body = distortion_json(p);
      body["M"] = a.M.str();
      bool ok = p.lipschitz_max <= Rational(1) && p.coarse_density < a.M && p.additive_lower_gap <= Rational(10) * a.M;
      body["within_band"] = ok;
      return emit(c, "distortion", body, ok ? kHolds : kFails);
    }

    if (*ann) {
      AnnulusSpec s;
      s.e = root;
      s.r = parse_rational(r_text, "--r");
      s.m = parse_rational(m_text, "--m");
      s.granularity = granularity;
      std::vector<Rational> sweep;
      for (const auto& k : sweep_text) sweep.push_back(s.m * parse_rational(k, "--sweep"));
      ExperimentOptions o;
      o.sharp_sample = annulus_sample;
      o.seed = c.seed;
      o.theta.budget = budget;
      auto rep = annulus_experiment(g, s, sweep, o);
      bool ok = true;
      for (const auto& row : rep.rows) ok = ok && row.least_m && !row.theta_found;
      if (!c.dot.empty()) {
        Annulus a = annulus_components(g, s);
        std::vector<int> cls(a.space.graph.vertex_count(), -1);
        for (std::size_t i = 0; i < a.components.size(); ++i)
          for (VertexId v : a.components[i].to_space) cls[v] = static_cast<int>(i);
        save_dot(c.dot, a.space.graph, palette_colors(cls));
      }
      Json body = annulus_json(rep);
      body["graph"] = graph_path;
      return emit(c, "annulus", body, ok ? kHolds : kFails);
    }

    if (*fillc) {
      std::vector<VertexId> vs = cycle_text.empty() ? random_simple_cycle(g, c.seed) : parse_ids(cycle_text);
      if (vs.empty()) throw std::invalid_argument("graph has no cycle");
      Cycle cyc = make_cycle(g, vs);
      Filling f = fill(g, cyc);
      bool ok = true;
      for (int leaf : f.leaves()) ok = ok && is_geodesic_circle(g, f.regions[static_cast<std::size_t>(leaf)].cycle);
      if (!c.dot.empty()) {
        std::ofstream out(c.dot);
        write_filling_dot(out, g, f);
      }
      Json body = filling_json(g, f);
      body["leaves_geodesic"] = ok;
      return emit(c, "fill", body, ok ? kHolds : kFails);
    }
  } catch (const std::exception& ex) {
    std::cerr << envelope("error", Json{{"error", ex.what()}}).dump() << "\n";
    return kError;
  }
  return kError;
}
