// treescale command line.  All inputs and outputs are JSON; JSON arguments
// may be given inline or as @path.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "treescale/harness.hpp"

using namespace treescale;

namespace {

json load(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw parse_error("cannot open " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
  }
  return parse_json_text(arg);
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("TREESCALE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw parse_error(std::string("TREESCALE_SEED is not an unsigned integer: ") + s);
    }
  }
  return 1;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct TreeOpt {
  std::string text = R"({"qE":2,"qO":2})";
  TreeParams get() const { return params_from_json(load(text)); }
};

void add_tree(CLI::App* app, TreeOpt& t) { app->add_option("--tree", t.text, "tree parameters {\"qE\":n,\"qO\":n}"); }

OracleBudget budget_from(const std::string& text) {
  CampaignConfig c = config_from_json({{"oracleBudget", load(text)}});
  return c.budget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact scale, classification and semigroup computations on trees"};
  app.require_subcommand(1);
  int exit_code = 0;

  // classify
  TreeOpt c_tree;
  std::string c_aut;
  auto* classify_cmd = app.add_subcommand("classify", "elliptic / inversion / hyperbolic type of an automorphism");
  add_tree(classify_cmd, c_tree);
  classify_cmd->add_option("--aut", c_aut, "automorphism JSON")->required();
  classify_cmd->callback([&] {
    Automorphism g = automorphism_from_json(load(c_aut), c_tree.get());
    json out = to_json(classify(g));
    out["translationLength"] = translation_length(g);
    emit(out);
  });

  // scale
  TreeOpt s_tree;
  std::string s_aut, s_center, s_segment, s_budget = "{}";
  bool s_oracle = false;
  int s_radius = 1;
  auto* scale_cmd = app.add_subcommand("scale", "scale of an automorphism, optionally against the coset-index oracle");
  add_tree(scale_cmd, s_tree);
  scale_cmd->add_option("--aut", s_aut, "automorphism JSON")->required();
  scale_cmd->add_flag("--oracle", s_oracle, "also compute the brute-force index");
  scale_cmd->add_option("--center", s_center, "ball center (default: an axis vertex)");
  scale_cmd->add_option("--radius", s_radius, "ball radius");
  scale_cmd->add_option("--segment", s_segment, "fixator of the segment [a, b] given as [a, b] instead of a ball");
  scale_cmd->add_option("--budget", s_budget, "oracle budget {maxQ, maxRadius, maxDisplacement}");
  scale_cmd->callback([&] {
    TreeParams p = s_tree.get();
    Automorphism g = automorphism_from_json(load(s_aut), p);
    BigInt s = scale(g);
    json out = {{"scale", to_decimal(s)}, {"modular", to_decimal(modular(g))}};
    if (s_oracle) {
      BigInt idx;
      if (!s_segment.empty()) {
        json seg = load(s_segment);
        SubtreeFixatorSpec V = segment_fixator(g.tree(), vertex_from_json(seg.at(0)), vertex_from_json(seg.at(1)));
        idx = scale_bruteforce_index(g, V, budget_from(s_budget));
        out["V"] = {{"segment", seg}};
      } else {
        Vertex c = s_center.empty() ? motion(g).point : vertex_from_json(load(s_center));
        idx = scale_bruteforce_index(g, BallFixatorSpec{c, s_radius}, budget_from(s_budget));
        out["V"] = {{"center", to_json(c)}, {"radius", s_radius}};
      }
      out["oracle"] = to_decimal(idx);
      out["match"] = idx == s;
    }
    emit(out);
  });

  // minimizing-check
  TreeOpt m_tree;
  std::string m_aut, m_center, m_budget = "{}";
  int m_radius = 1;
  auto* min_cmd = app.add_subcommand("minimizing-check", "is the ball fixator V minimizing for g");
  add_tree(min_cmd, m_tree);
  min_cmd->add_option("--aut", m_aut, "automorphism JSON")->required();
  min_cmd->add_option("--center", m_center, "ball center")->required();
  min_cmd->add_option("--radius", m_radius, "ball radius");
  min_cmd->add_option("--budget", m_budget, "oracle budget");
  min_cmd->callback([&] {
    Automorphism g = automorphism_from_json(load(m_aut), m_tree.get());
    BallFixatorSpec V{vertex_from_json(load(m_center)), m_radius};
    BigInt idx = scale_bruteforce_index(g, V, budget_from(m_budget)), s = scale(g);
    emit({{"scale", to_decimal(s)}, {"oracle", to_decimal(idx)}, {"minimizing", idx == s}});
  });

  // membership
  TreeOpt mb_tree;
  std::string mb_spec, mb_aut;
  auto* mem_cmd = app.add_subcommand("membership", "does a maximal semigroup contain g");
  add_tree(mem_cmd, mb_tree);
  mem_cmd->add_option("--spec", mb_spec, "semigroup JSON")->required();
  mem_cmd->add_option("--aut", mb_aut, "automorphism JSON")->required();
  mem_cmd->callback([&] {
    TreeParams p = mb_tree.get();
    Tree t(p);
    SemigroupSpec spec = spec_from_json(load(mb_spec), t);
    Automorphism g = automorphism_from_json(load(mb_aut), p);
    emit({{"spec", to_json(spec)}, {"contains", contains(spec, g)},
          {"inverse", {{"spec", to_json(invert_spec(t, spec))}, {"containsInverse", contains(invert_spec(t, spec), invert(g))}}}});
  });

  // classify-family
  std::string f_in;
  bool f_all = false;
  auto* fam_cmd = app.add_subcommand("classify-family", "containing maximal semigroup of a finite family");
  fam_cmd->add_option("--in", f_in, "family file {tree, family:[...], windowRadius}")->required();
  fam_cmd->add_flag("--all", f_all, "list every container found");
  fam_cmd->callback([&] {
    json in = load("@" + f_in);
    TreeParams p = params_from_json(detail::field(in, "tree"));
    std::vector<Automorphism> fam;
    for (const auto& x : detail::field(in, "family")) fam.push_back(automorphism_from_json(x, p));
    int w = in.value("windowRadius", 8);
    FamilyClassification fc = classify_family(fam, w);
    json out = {{"multiplicativity", to_json(fc.report)}, {"windowRadius", fc.window_radius}};
    if (fc.spec) out["spec"] = to_json(*fc.spec);
    else exit_code = 1;
    if (fc.common_min_vertex) out["commonMinVertex"] = to_json(*fc.common_min_vertex);
    if (f_all) {
      json all = json::array();
      for (const auto& s : all_containers(fam, w)) all.push_back(to_json(s));
      out["containers"] = all;
    }
    emit(out);
  });

  // basis
  TreeOpt b_tree;
  std::string b_vertex, b_labels, b_end;
  auto* basis_cmd = app.add_subcommand("basis", "neighborhood-basis predicate for (v, I) and an end");
  add_tree(basis_cmd, b_tree);
  basis_cmd->add_option("--vertex", b_vertex, "vertex")->required();
  basis_cmd->add_option("--labels", b_labels, "in-edge label set I")->required();
  basis_cmd->add_option("--end", b_end, "end {prefix, period}")->required();
  basis_cmd->callback([&] {
    Tree t(b_tree.get());
    Vertex v = vertex_from_json(load(b_vertex));
    DirectedVertex dv = make_directed_vertex(t, v, load(b_labels).get<std::vector<Label>>());
    End w = end_from_json(load(b_end));
    auto wit = intersection_hyperbolic_witness(t, dv, EndPlus{w});
    json out = {{"contains", u_basis_contains(t, v, dv.labels, w)},
                {"departureLabel", t.departure_label(v, w)},
                {"complement", complement_labels(t, v, dv.labels)}};
    out["witness"] = wit ? to_json(*wit) : json(nullptr);
    emit(out);
  });

  // hnn
  auto* hnn_cmd = app.add_subcommand("hnn", "the shift semidirect product and its tree realization");
  hnn_cmd->require_subcommand(1);
  std::string h_elem, h_vertex;
  auto* hnn_scale_cmd = hnn_cmd->add_subcommand("scale", "scale and maximal semigroup of (h, n)");
  hnn_scale_cmd->add_option("--elem", h_elem, "element {coeffs, n, q}")->required();
  hnn_scale_cmd->callback([&] {
    HnnElement x = hnn_from_json(load(h_elem));
    Automorphism g = hnn_to_tree(x);
    emit({{"element", to_json(x)},
          {"scale", to_decimal(hnn_scale(x))},
          {"treeScale", to_decimal(relative_scale(g, spine_plus()))},
          {"membership", to_string(hnn_maximal_membership(x))},
          {"treeType", to_json(classify(g))}});
  });
  auto* hnn_act_cmd = hnn_cmd->add_subcommand("act", "image of a vertex under the tree realization");
  hnn_act_cmd->add_option("--elem", h_elem, "element")->required();
  hnn_act_cmd->add_option("--vertex", h_vertex, "vertex")->required();
  hnn_act_cmd->callback([&] {
    HnnElement x = hnn_from_json(load(h_elem));
    Automorphism g = hnn_to_tree(x);
    Vertex v = vertex_from_json(load(h_vertex)), gv = g(v);
    auto coords = [&](const Vertex& u) {
      auto h = horocyclic_coords(g.tree(), u);
      json d = json::object();
      for (auto [i, c] : h.digits) d[std::to_string(i)] = c;
      return json{{"level", h.level}, {"digits", d}};
    };
    emit({{"vertex", to_json(v)}, {"image", to_json(gv)}, {"from", coords(v)}, {"to", coords(gv)}});
  });
  int hs_q = 2;
  long hs_max = 4, hs_window = 5;
  auto* hnn_sweep_cmd = hnn_cmd->add_subcommand("sweep", "closed-form scale against the coset count for each n");
  hnn_sweep_cmd->add_option("--q", hs_q, "coefficient modulus");
  hnn_sweep_cmd->add_option("--max-n", hs_max, "sweep n in [-max, max]");
  hnn_sweep_cmd->add_option("--window", hs_window, "enumeration window");
  hnn_sweep_cmd->callback([&] {
    json rows = json::array();
    for (long n = -hs_max; n <= hs_max; ++n) {
      BigInt f = hnn_scale({{}, n, hs_q}), c = hnn_index_by_cosets(n, hs_q, hs_window);
      rows.push_back({{"n", n}, {"scale", to_decimal(f)}, {"cosets", to_decimal(c)}, {"match", f == c}});
      if (f != c) exit_code = 1;
    }
    emit({{"q", hs_q}, {"rows", rows}});
  });

  // campaign
  std::string cp_id, cp_config, cp_replay;
  TreeOpt cp_tree;
  long cp_trials = 0;
  std::uint64_t cp_seed = 0;
  bool cp_time = false, cp_list = false;
  auto* camp_cmd = app.add_subcommand("campaign", "run a randomized verification campaign");
  camp_cmd->add_option("id", cp_id, "campaign id");
  camp_cmd->add_option("--config", cp_config, "config file");
  add_tree(camp_cmd, cp_tree);
  camp_cmd->add_option("--trials", cp_trials, "number of trials");
  camp_cmd->add_option("--seed", cp_seed, "seed (default $TREESCALE_SEED or 1)");
  camp_cmd->add_option("--replay", cp_replay, "re-check one serialized input");
  camp_cmd->add_flag("--wall-time", cp_time, "include wall time in the report");
  camp_cmd->add_flag("--list", cp_list, "list campaign ids");
  camp_cmd->callback([&] {
    if (cp_list) {
      json ids = json::array();
      for (const auto& c : campaigns()) ids.push_back({{"id", c.id}, {"target", c.target}});
      emit(ids);
      return;
    }
    CampaignConfig cfg = cp_config.empty() ? CampaignConfig{} : config_from_json(load("@" + cp_config));
    if (cp_config.empty() || !load("@" + cp_config).contains("seed")) cfg.seed = default_seed();
    if (!cp_id.empty()) cfg.id = cp_id;
    if (cfg.id.empty()) throw parse_error("campaign id required");
    if (camp_cmd->count("--tree")) cfg.tree = cp_tree.get();
    if (cp_trials) cfg.trials = cp_trials;
    if (camp_cmd->count("--seed")) cfg.seed = cp_seed;
    if (cp_time) cfg.wall_time = true;
    if (!cp_replay.empty()) {
      json input = load(cp_replay);
      TrialResult r = replay(find_campaign(cfg.id), input, cfg);
      static const char* names[] = {"pass", "fail", "inconclusive"};
      emit({{"campaignId", cfg.id}, {"outcome", names[static_cast<int>(r.outcome)]}, {"detail", r.detail}});
      if (r.outcome == Outcome::fail) exit_code = 1;
      return;
    }
    json rep = run_campaign(cfg);
    emit(rep);
    if (rep["failCount"].get<long>() > 0) exit_code = 1;
  });

  // export-dot
  TreeOpt d_tree;
  int d_depth = 3;
  std::vector<std::string> d_auts;
  auto* dot_cmd = app.add_subcommand("export-dot", "DOT drawing of a ball with axes and minimal sets");
  add_tree(dot_cmd, d_tree);
  dot_cmd->add_option("--depth", d_depth, "ball depth (<= 8)");
  dot_cmd->add_option("--aut", d_auts, "automorphisms whose minimal sets are drawn");
  dot_cmd->callback([&] {
    TreeParams p = d_tree.get();
    static const char* colors[] = {"red", "blue", "green", "orange", "purple"};
    std::vector<DotOverlay> overlays;
    for (std::size_t i = 0; i < d_auts.size(); ++i)
      overlays.push_back(min_set_overlay(automorphism_from_json(load(d_auts[i]), p), d_depth, colors[i % 5]));
    std::cout << export_dot(Tree(p), d_depth, overlays);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const oracle_budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
