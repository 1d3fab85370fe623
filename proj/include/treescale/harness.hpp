#pragma once

// Deterministic randomized campaigns, reports and DOT export.
//
// A campaign is a pair generate(cfg, rng) -> input JSON and
// check(input, cfg) -> outcome.  Every failure carries its input, and
// replaying the input reproduces the failure without the generator.

#include <chrono>
#include <functional>
#include <sstream>

#include "treescale/json_io.hpp"
#include "treescale/sampling.hpp"

namespace treescale {

enum class Outcome { pass, fail, inconclusive };

struct TrialResult {
  Outcome outcome = Outcome::pass;
  std::string detail;
};

struct CampaignConfig {
  std::string id;
  TreeParams tree{2, 2, 1};
  long trials = 100;
  std::uint64_t seed = 1;
  int window_radius = 8;
  OracleBudget budget{};
  bool wall_time = false;
};

struct Campaign {
  std::string id;
  std::string target;
  std::function<json(const CampaignConfig&, Rng&)> generate;
  std::function<TrialResult(const json&, const CampaignConfig&)> check;
};

namespace campaign_detail {

inline TrialResult pass() { return {Outcome::pass, ""}; }
inline TrialResult fail(std::string why) { return {Outcome::fail, std::move(why)}; }

inline json with_tree(const CampaignConfig& c, json j) {
  j["tree"] = to_json(c.tree);
  return j;
}

inline TreeParams tree_of(const json& in) { return params_from_json(detail::field(in, "tree")); }
inline Automorphism aut(const json& in, const char* key) { return automorphism_from_json(detail::field(in, key), tree_of(in)); }

inline std::vector<Automorphism> auts(const json& in, const char* key) {
  std::vector<Automorphism> out;
  for (const auto& x : detail::field(in, key)) out.push_back(automorphism_from_json(x, tree_of(in)));
  return out;
}

inline json auts_json(const std::vector<Automorphism>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

inline Geodesic oriented_axis(const Automorphism& g) { return Geodesic(repelling_end(g), attracting_end(g)); }

inline std::string str(const BigInt& x) { return to_decimal(x); }

// --- product length laws --------------------------------------------------

inline Geodesic random_line(Sampler& s) {
  End a = s.end();
  return Geodesic(a, s.end_other_than(a));
}

inline Automorphism along(Sampler& s, const Geodesic& L, bool forward) {
  long st = s.step(4);
  return forward ? build_translation(s.params(), L.minus(), L.plus(), st)
                 : build_translation(s.params(), L.plus(), L.minus(), st);
}

inline std::vector<Label> labels_except(const Tree& t, const Vertex& v, std::initializer_list<Label> ex) {
  std::vector<Label> out;
  for (Label l : t.labels(v))
    if (std::find(ex.begin(), ex.end(), l) == ex.end()) out.push_back(l);
  return out;
}

inline json gen_disjoint(const CampaignConfig& c, Rng& rng) {
  Sampler s(c.tree, rng);
  const Tree& t = s.tree();
  Geodesic L1 = random_line(s);
  long i = rng.uniform(-3, 3);
  Vertex p = L1.at(i);
  Label back1 = t.label_toward(p, L1.at(i - 1)), back2 = t.label_toward(p, L1.at(i + 1));
  long dmin = t.q_at(p) >= 3 ? 0 : 1;
  long d = rng.uniform(dmin, 3);
  Vertex cur = p;
  std::vector<Label> avoid{back1, back2};
  for (long k = 0; k < d; ++k) {
    std::vector<Label> opts;
    for (Label l : t.labels(cur))
      if (std::find(avoid.begin(), avoid.end(), l) == avoid.end()) opts.push_back(l);
    Vertex next = t.neighbor(cur, rng.pick(opts));
    avoid = {t.label_toward(next, cur)};
    cur = next;
  }
  std::vector<Label> opts;
  for (Label l : t.labels(cur))
    if (std::find(avoid.begin(), avoid.end(), l) == avoid.end()) opts.push_back(l);
  opts = s.permutation(opts);
  Geodesic L2(s.end_through(cur, opts[0]), s.end_through(cur, opts[1]));
  return with_tree(c, {{"t1", to_json(along(s, L1, rng.coin()))},
                       {"t2", to_json(along(s, L2, rng.coin()))},
                       {"bridge", d}});
}

inline json gen_overlap(const CampaignConfig& c, Rng& rng, bool same) {
  Sampler s(c.tree, rng);
  const Tree& t = s.tree();
  Geodesic L1 = random_line(s);
  long i = rng.uniform(-3, 3);
  long k = rng.uniform(1, 4);
  Vertex a = L1.at(i), b = L1.at(i + k);
  Label la = rng.pick(labels_except(t, a, {t.label_toward(a, L1.at(i - 1)), t.label_toward(a, L1.at(i + 1))}));
  Label lb = rng.pick(labels_except(t, b, {t.label_toward(b, L1.at(i + k - 1)), t.label_toward(b, L1.at(i + k + 1))}));
  Geodesic L2(s.end_through(a, la), s.end_through(b, lb));
  bool fwd = rng.coin();
  return with_tree(c, {{"t1", to_json(along(s, L1, fwd))},
                       {"t2", to_json(along(s, L2, same ? fwd : !fwd))},
                       {"overlap", k}});
}

inline TrialResult check_lengths(const json& in, int expect_kind) {
  Automorphism t1 = aut(in, "t1"), t2 = aut(in, "t2");
  const Tree& t = t1.tree();
  long l1 = translation_length(t1), l2 = translation_length(t2);
  if (l1 == 0 || l2 == 0) return fail("input translations are not hyperbolic");
  AxisRelation r = relate(t, oriented_axis(t1), oriented_axis(t2));
  Automorphism prod = compose(t2, t1);
  long l = translation_length(prod);
  std::ostringstream why;
  if (expect_kind == 0) {
    long d = in.at("bridge").get<long>();
    if (r.share_edge || r.bridge != d) return fail("axes do not realize the requested bridge");
    if (l != l1 + l2 + 2 * d) {
      why << "l(t2 t1) = " << l << ", expected " << l1 << " + " << l2 << " + 2*" << d;
      return fail(why.str());
    }
    return pass();
  }
  int want = expect_kind == 1 ? +1 : -1;
  if (!r.share_edge || r.direction != want) return fail("axes do not realize the requested overlap");
  if (expect_kind == 1) {
    if (l != l1 + l2) {
      why << "l(t2 t1) = " << l << ", expected " << l1 + l2;
      return fail(why.str());
    }
    // the shared segment lies on the axis of the product
    Geodesic A = oriented_axis(t1);
    Geodesic B = oriented_axis(t2);
    long p = A.project(B.minus()), q = A.project(B.plus());
    for (long k = std::min(p, q); k <= std::max(p, q); ++k) {
      Vertex w = A.at(k);
      if (static_cast<long>(t.distance(w, prod(w))) != l) return fail("overlap vertex " + w.str() + " is off the product axis");
    }
    return pass();
  }
  if (l > l1 + l2 - 2) {
    why << "l(t2 t1) = " << l << " exceeds " << l1 << " + " << l2 << " - 2";
    return fail(why.str());
  }
  return pass();
}

// --- classification -------------------------------------------------------

inline TrialResult check_axis_detect(const json& in, const CampaignConfig&) {
  Automorphism g = aut(in, "g");
  const Tree& t = g.tree();
  Motion m = motion(g);  // certificate failures throw
  Vertex r = Vertex::root();
  long d1 = static_cast<long>(t.distance(r, g(r)));
  long d2 = static_cast<long>(t.distance(r, g(g(r))));
  if (!m.hyperbolic() && d2 > d1) return fail("non-hyperbolic verdict with D2 > D1");
  Segment path = t.path_between(r, g(g(r)));
  bool oracle = false;
  for (std::size_t i = 0; i + 1 < path.size() && !oracle; ++i)
    for (OrientedEdge e : {OrientedEdge{path[i], path[i + 1]}, OrientedEdge{path[i + 1], path[i]}}) {
      OrientedEdge ge = g(e);
      if (ge != e && t.coherent(e, ge)) oracle = true;
    }
  if (oracle != m.hyperbolic())
    return fail(std::string("rule says ") + (m.hyperbolic() ? "hyperbolic" : "not hyperbolic") +
                ", coherence oracle disagrees");
  if (m.hyperbolic()) {
    Segment w = axis_window(g, 1);
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (!translates_along(g, {w[i], w[i + 1]}) || translates_along(g, {w[i + 1], w[i]}))
        return fail("translates_along disagrees on the axis edge at " + w[i].str());
  }
  return pass();
}

// --- semigroup families ---------------------------------------------------

inline int spec_kind_for(const CampaignConfig& c, long k) {
  int kind = static_cast<int>(k % 5);
  if (kind == 1 && !c.tree.homogeneous()) kind = 0;
  return kind;
}

inline TrialResult check_minset(const json& in, const CampaignConfig&) {
  Automorphism g = aut(in, "g"), h = aut(in, "h");
  const Tree& t = g.tree();
  SemigroupSpec spec = spec_from_json(in.at("spec"), t);
  if (!contains(spec, g) || !contains(spec, h)) return fail("sampled elements are not members");
  std::vector<Automorphism> pair{g, h};
  if (!pairwise_multiplicative(pair).verdict) return fail("members of one semigroup are not multiplicative");
  int R = static_cast<int>(std::get<DirectedVertex>(spec).vertex.depth()) + 1;
  MinSet a = min_set_in_ball(g, R), b = min_set_in_ball(h, R);
  std::set<Vertex> sa(a.vertices.begin(), a.vertices.end());
  for (const auto& v : b.vertices)
    if (sa.count(v)) return pass();
  return fail("minimal sets are disjoint within radius " + std::to_string(R));
}

inline json gen_elliptic_structure(const CampaignConfig& c, Rng& rng) {
  Sampler s(c.tree, rng);
  const Tree& t = s.tree();
  std::vector<Automorphism> gens;
  long kind = rng.uniform(0, 2);
  if (kind == 1 && !c.tree.homogeneous()) kind = 0;
  if (kind == 0) {
    Vertex v = s.vertex(3);
    for (int i = 0; i < 3; ++i) gens.push_back(s.elliptic_at(v));
  } else if (kind == 1) {
    Vertex a = s.vertex(3);
    Vertex b = t.neighbor(a, static_cast<Label>(rng.uniform(0, t.q_at(a))));
    gens.push_back(Automorphism::inversion(c.tree, {a, b}));
    for (int i = 0; i < 2; ++i) gens.push_back(s.elliptic_preserving(a, {t.label_toward(a, b)}));
  } else {
    End w = s.end();
    Automorphism car = s.end_carrier(w);
    for (int i = 0; i < 3; ++i) {
      long shift = c.tree.homogeneous() ? rng.uniform(0, 4) : 2 * rng.uniform(0, 2);
      gens.push_back(conjugate(car, s.plus_elliptic(shift)));
    }
  }
  std::vector<Automorphism> fam = gens;
  for (const auto& a : gens)
    for (const auto& b : gens) fam.push_back(compose(a, b));
  return with_tree(c, {{"family", auts_json(fam)}});
}

inline TrialResult check_elliptic_structure(const json& in, const CampaignConfig& c) {
  std::vector<Automorphism> fam = auts(in, "family");
  for (const auto& g : fam)
    if (motion(g).hyperbolic()) return fail("elliptic sample produced a hyperbolic product");
  FamilyClassification fc = classify_family(fam, c.window_radius);
  if (!fc.spec) return fail("elliptic family rejected as non-multiplicative");
  if (std::holds_alternative<DirectedVertex>(*fc.spec)) return fail("elliptic family classified as directed vertex");
  return pass();
}

// --- scale laws -----------------------------------------------------------

inline TrialResult check_power(const json& in, const CampaignConfig& c) {
  Automorphism g = aut(in, "g");
  BigInt s = scale(g);
  BigInt sn = 1;
  for (long n = 1; n <= 4; ++n) {
    sn *= s;
    if (scale(power(g, n)) != sn) return fail("scale(g^" + std::to_string(n) + ") != scale(g)^" + std::to_string(n));
  }
  Motion m = motion(g);
  if (!m.hyperbolic()) return pass();
  SubtreeFixatorSpec V = segment_fixator(g.tree(), m.point, g(m.point));
  sn = 1;
  for (long n = 1; n <= 3; ++n) {
    sn *= s;
    if (n * m.length > c.budget.max_displacement) break;
    if (scale_bruteforce_index(power(g, n), V, c.budget) != sn)
      return fail("oracle index of g^" + std::to_string(n) + " on the axis segment differs from scale(g)^n");
  }
  return pass();
}

// Hyperbolic x with axis segment sigma = [a, x a] and sampled elements of the
// fixator V of sigma.
struct DoubleCosetSetup {
  Automorphism x;
  Segment sigma;
};

inline DoubleCosetSetup double_coset_setup(Sampler& s) {
  Automorphism x = conjugate(s.elliptic_at(s.vertex(2)), s.translation(4));
  Motion m = motion(x);
  return {x, s.tree().path_between(m.point, x(m.point))};
}

inline Automorphism segment_fixator_element(Sampler& s, const Automorphism& x, const Segment& sigma) {
  Geodesic L = oriented_axis(x);
  long s0 = carrier_spine_index(s.params(), sigma.front());
  Automorphism car = Automorphism::axis_map(s.params(), spine(), L, L.project(sigma.front()) - s0);
  PortraitRep pr = s.portrait(3, s0 + static_cast<long>(sigma.size()));
  return conjugate(car, Automorphism::primitive(s.params(), std::move(pr)));
}

inline std::vector<Automorphism> double_coset_word(Sampler& s, const DoubleCosetSetup& d, long n) {
  std::vector<Automorphism> vs;
  for (long i = 0; i <= n; ++i) vs.push_back(segment_fixator_element(s, d.x, d.sigma));
  return vs;
}

inline Automorphism assemble(const Automorphism& x, const std::vector<Automorphism>& vs) {
  Automorphism y = vs.front();
  for (std::size_t i = 1; i < vs.size(); ++i) y = compose(compose(y, x), vs[i]);
  return y;
}

inline TrialResult check_fixes(const std::vector<Automorphism>& vs, const Segment& sigma) {
  for (const auto& v : vs)
    for (const auto& w : sigma)
      if (v(w) != w) return fail("sampled element of V moves " + w.str());
  return pass();
}

inline Segment segment_from_json(const json& j) {
  Segment s;
  for (const auto& v : j) s.push_back(vertex_from_json(v));
  return s;
}

inline TrialResult check_double_coset(const json& in, const CampaignConfig& c) {
  Automorphism x = aut(in, "x");
  Segment sigma = segment_from_json(in.at("segment"));
  std::vector<Automorphism> vs = auts(in, "v");
  if (auto r = check_fixes(vs, sigma); r.outcome != Outcome::pass) return r;
  if (!is_minimizing(SubtreeFixatorSpec{sigma}, x, c.budget)) return fail("segment fixator is not minimizing for x");
  long n = static_cast<long>(vs.size()) - 1;
  BigInt want = 1;
  for (long i = 0; i < n; ++i) want *= scale(x);
  BigInt got = scale(assemble(x, vs));
  if (got != want) return fail("scale(y) = " + str(got) + ", expected " + str(want));
  return pass();
}

inline TrialResult check_generated(const json& in, const CampaignConfig& c) {
  Automorphism x = aut(in, "x");
  Segment sigma = segment_from_json(in.at("segment"));
  std::vector<Automorphism> vy = auts(in, "vy"), vz = auts(in, "vz");
  if (auto r = check_fixes(vy, sigma); r.outcome != Outcome::pass) return r;
  if (auto r = check_fixes(vz, sigma); r.outcome != Outcome::pass) return r;
  if (!is_minimizing(SubtreeFixatorSpec{sigma}, x, c.budget)) return fail("segment fixator is not minimizing for x");
  Automorphism y = assemble(x, vy), z = assemble(x, vz);
  BigInt lhs = scale(compose(y, z)), rhs = scale(y) * scale(z);
  if (lhs != rhs) return fail("scale(yz) = " + str(lhs) + ", scale(y)scale(z) = " + str(rhs));
  return pass();
}

// --- HNN ------------------------------------------------------------------

inline HnnElement random_hnn(Rng& rng, int q) {
  HnnElement x;
  x.q = q;
  x.n = rng.uniform(-4, 4);
  long k = rng.uniform(0, 3);
  for (long i = 0; i < k; ++i) x.coeffs[rng.uniform(-4, 4)] = static_cast<int>(rng.uniform(1, q - 1));
  return hnn_normalize(x);
}

inline TrialResult check_hnn(const json& in, const CampaignConfig&) {
  HnnElement a = hnn_from_json(in.at("a")), b = hnn_from_json(in.at("b"));
  HnnElement ab = hnn_multiply(a, b);
  BigInt lhs = hnn_scale(ab), rhs = hnn_scale(a) * hnn_scale(b);
  bool mixed = (a.n > 0 && b.n < 0) || (a.n < 0 && b.n > 0);
  if (mixed && !(lhs < rhs)) return fail("mixed-sign pair without strict decrease");
  if (!mixed && lhs != rhs) return fail("same-sign pair not multiplicative");
  const End w = spine_plus();
  Automorphism ra = hnn_to_tree(a), rb = hnn_to_tree(b), rab = hnn_to_tree(ab);
  for (const auto& v : ra.tree().ball(Vertex::root(), 3))
    if (ra(rb(v)) != rab(v)) return fail("tree realization is not multiplicative at " + v.str());
  if (relative_scale(ra, w) != hnn_scale(a)) return fail("tree scale disagrees with hnn_scale");
  bool plus = contains(EndPlus{w}, ra), minus = contains(EndMinus{w}, ra);
  HnnMembership mem = hnn_maximal_membership(a);
  bool want_plus = mem != HnnMembership::SMinus, want_minus = mem != HnnMembership::SPlus;
  if (plus != want_plus || minus != want_minus) return fail("tree image membership disagrees with the sign of n");
  if (a.n == 0 && motion(ra).hyperbolic()) return fail("image of H is not elliptic");
  return pass();
}

// --- topology basis -------------------------------------------------------

inline TrialResult check_basis(const json& in, const CampaignConfig&) {
  TreeParams p = tree_of(in);
  Tree t(p);
  Vertex v = vertex_from_json(in.at("vertex"));
  std::vector<Label> I = in.at("labels").get<std::vector<Label>>();
  End w = end_from_json(in.at("end"));
  bool u = u_basis_contains(t, v, I, w);
  DirectedVertex dv = make_directed_vertex(t, v, I);
  auto wit = intersection_hyperbolic_witness(t, dv, EndPlus{w});
  if (u != wit.has_value()) return fail("basis predicate and witness construction disagree");
  if (wit && !motion(*wit).hyperbolic()) return fail("witness is not hyperbolic");
  for (Label extra : complement_labels(t, v, dv.labels)) {
    std::vector<Label> bigger = dv.labels;
    bigger.push_back(extra);
    if (bigger.size() >= static_cast<std::size_t>(t.valency(v))) break;
    if (u_basis_contains(t, v, bigger, w) && !u) return fail("basis membership is not monotone");
  }
  return pass();
}

}  // namespace campaign_detail

inline const std::vector<Campaign>& campaigns() {
  using namespace campaign_detail;
  static const std::vector<Campaign> all = [] {
    std::vector<Campaign> c;
    c.push_back({"LENGTH_ADD_DISJOINT", "translation length of a product of translations with disjoint axes",
                 gen_disjoint, [](const json& in, const CampaignConfig&) { return check_lengths(in, 0); }});
    c.push_back({"LENGTH_ADD_COHERENT", "translation length when axes overlap with equal orientation",
                 [](const CampaignConfig& cfg, Rng& r) { return gen_overlap(cfg, r, true); },
                 [](const json& in, const CampaignConfig&) { return check_lengths(in, 1); }});
    c.push_back({"LENGTH_SUB_INCOHERENT", "translation length when axes overlap with opposite orientation",
                 [](const CampaignConfig& cfg, Rng& r) { return gen_overlap(cfg, r, false); },
                 [](const json& in, const CampaignConfig&) { return check_lengths(in, -1); }});
    c.push_back({"AXIS_DETECT", "displacement rule versus coherent displaced edges",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   return with_tree(cfg, {{"g", to_json(s.composite(4))}});
                 },
                 check_axis_detect});
    c.push_back({"MINSET_INTERSECT", "minimal sets of multiplicative pairs intersect",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   DirectedVertex dv = s.directed_vertex(s.vertex(3));
                   return with_tree(cfg, {{"spec", to_json(SemigroupSpec(dv))},
                                          {"g", to_json(s.member(dv))},
                                          {"h", to_json(s.member(dv))}});
                 },
                 check_minset});
    c.push_back({"ELLIPTIC_STRUCTURE", "elliptic semigroups fix a vertex, invert an edge or fix an end",
                 gen_elliptic_structure, check_elliptic_structure});
    c.push_back({"POWER_LAW", "scale of powers", [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   return with_tree(cfg, {{"g", to_json(s.composite(3))}});
                 },
                 check_power});
    c.push_back({"DOUBLE_COSET", "scale on powers of a double coset of a minimizing subgroup",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   DoubleCosetSetup d = double_coset_setup(s);
                   long n = r.uniform(1, 3);
                   return with_tree(cfg, {{"x", to_json(d.x)},
                                          {"segment", to_json(d.sigma)},
                                          {"v", auts_json(double_coset_word(s, d, n))}});
                 },
                 check_double_coset});
    c.push_back({"GENERATED_SEMIGROUP", "multiplicativity on the semigroup generated by x and V",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   DoubleCosetSetup d = double_coset_setup(s);
                   return with_tree(cfg, {{"x", to_json(d.x)},
                                          {"segment", to_json(d.sigma)},
                                          {"vy", auts_json(double_coset_word(s, d, r.uniform(0, 3)))},
                                          {"vz", auts_json(double_coset_word(s, d, r.uniform(0, 3)))}});
                 },
                 check_generated});
    c.push_back({"INVOLUTION", "membership under inversion of elements and semigroups",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   SemigroupSpec sp = s.spec(spec_kind_for(cfg, r.uniform(0, 4)));
                   long mode = r.uniform(0, 3);
                   Automorphism g = mode < 2 ? s.member(sp)
                                    : mode == 2 ? invert(s.member(invert_spec(s.tree(), sp)))
                                                : s.composite(3);
                   return with_tree(cfg, {{"spec", to_json(sp)}, {"g", to_json(g)}});
                 },
                 [](const json& in, const CampaignConfig&) {
                   Automorphism g = aut(in, "g");
                   SemigroupSpec sp = spec_from_json(in.at("spec"), g.tree());
                   if (contains(sp, g) != contains(invert_spec(g.tree(), sp), invert(g)))
                     return fail("membership is not preserved by the involution");
                   return pass();
                 }});
    c.push_back({"SEMIGROUP_CLOSURE", "closure and multiplicativity of each maximal type",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   SemigroupSpec sp = s.spec(spec_kind_for(cfg, r.uniform(0, 4)));
                   return with_tree(cfg, {{"spec", to_json(sp)}, {"g", to_json(s.member(sp))}, {"h", to_json(s.member(sp))}});
                 },
                 [](const json& in, const CampaignConfig&) {
                   Automorphism g = aut(in, "g"), h = aut(in, "h");
                   SemigroupSpec sp = spec_from_json(in.at("spec"), g.tree());
                   if (!contains(sp, g) || !contains(sp, h)) return fail("sampled elements are not members");
                   Automorphism gh = compose(g, h);
                   if (!contains(sp, gh)) return fail("product left the semigroup");
                   if (scale(gh) != scale(g) * scale(h)) return fail("scale is not multiplicative on members");
                   return pass();
                 }});
    c.push_back({"DISTINCT_I", "distinct label sets give distinct semigroups",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   Vertex v = s.vertex(3);
                   DirectedVertex a = s.directed_vertex(v), b = s.directed_vertex(v);
                   while (b.labels == a.labels) b = s.directed_vertex(v);
                   return with_tree(cfg, {{"vertex", to_json(v)}, {"I", a.labels}, {"J", b.labels}});
                 },
                 [](const json& in, const CampaignConfig&) {
                   TreeParams p = tree_of(in);
                   Tree t(p);
                   Vertex v = vertex_from_json(in.at("vertex"));
                   DirectedVertex A = make_directed_vertex(t, v, in.at("I").get<std::vector<Label>>());
                   DirectedVertex B = make_directed_vertex(t, v, in.at("J").get<std::vector<Label>>());
                   if (A.labels == B.labels) return fail("label sets coincide");
                   // a label in exactly one of the sets enters; leave outside that set
                   Label in_lab = -1;
                   const DirectedVertex* home = &A;
                   for (Label l : t.labels(v)) {
                     bool ia = detail::in_labels(A.labels, l), ib = detail::in_labels(B.labels, l);
                     if (ia != ib) {
                       in_lab = l;
                       home = ia ? &A : &B;
                       break;
                     }
                   }
                   Label out = detail::first_label_not_in(t, v, home->labels);
                   Automorphism g = build_translation(p, t.end_through(v, in_lab), t.end_through(v, out), 2);
                   if (contains(A, g) == contains(B, g)) return fail("constructed element does not separate I and J");
                   return pass();
                 }});
    c.push_back({"SCALE_FORMULA_VS_ORACLE", "segment product formula for the scale versus coset counting",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   return with_tree(cfg, {{"g", to_json(conjugate(s.elliptic_at(s.vertex(2)), s.translation(4)))}});
                 },
                 [](const json& in, const CampaignConfig& cfg) {
                   Automorphism g = aut(in, "g");
                   Motion m = motion(g);
                   if (!m.hyperbolic()) return fail("sample is not hyperbolic");
                   const Tree& t = g.tree();
                   Segment seg = t.path_between(m.point, g(m.point));
                   BigInt idx;
                   auto two = std::find_if(seg.begin(), seg.end(), [&](const Vertex& v) { return t.q_at(v) == 2; });
                   if (two != seg.end()) idx = scale_bruteforce_index(g, BallFixatorSpec{*two, 1}, cfg.budget);
                   else idx = scale_bruteforce_index(g, SubtreeFixatorSpec{seg}, cfg.budget);
                   if (idx != scale(g)) return fail("oracle index " + str(idx) + " != scale " + str(scale(g)));
                   return pass();
                 }});
    c.push_back({"HNN_DICHOTOMY", "multiplicativity dichotomy in the shift semidirect product",
                 [](const CampaignConfig& cfg, Rng& r) {
                   int q = static_cast<int>(r.uniform(2, 3));
                   return with_tree(cfg, {{"a", to_json(random_hnn(r, q))}, {"b", to_json(random_hnn(r, q))}});
                 },
                 check_hnn});
    c.push_back({"BASIS_TOPOLOGY", "neighborhood basis predicate versus intersection witnesses",
                 [](const CampaignConfig& cfg, Rng& r) {
                   Sampler s(cfg.tree, r);
                   Vertex v = s.vertex(3);
                   DirectedVertex dv = s.directed_vertex(v);
                   End w = r.coin() ? s.end() : s.end_through(v, static_cast<Label>(r.uniform(0, s.tree().q_at(v))));
                   return with_tree(cfg, {{"vertex", to_json(v)}, {"labels", dv.labels}, {"end", to_json(w)}});
                 },
                 check_basis});
    return c;
  }();
  return all;
}

inline const Campaign& find_campaign(const std::string& id) {
  for (const auto& c : campaigns())
    if (c.id == id) return c;
  throw parse_error("unknown campaign '" + id + "'");
}

/// Runs the check on one input, mapping budget and window exhaustion to
/// inconclusive and every other library error to a failure.
inline TrialResult replay(const Campaign& c, const json& input, const CampaignConfig& cfg) {
  try {
    return c.check(input, cfg);
  } catch (const oracle_budget_error& e) {
    return {Outcome::inconclusive, e.what()};
  } catch (const inconclusive_error& e) {
    return {Outcome::inconclusive, e.what()};
  } catch (const error& e) {
    return {Outcome::fail, std::string("error: ") + e.what()};
  } catch (const json::exception& e) {
    return {Outcome::fail, std::string("malformed input: ") + e.what()};
  }
}

inline json run_campaign(const CampaignConfig& cfg) {
  const Campaign& c = find_campaign(cfg.id);
  if (cfg.trials < 1) throw representation_error("trials must be >= 1");
  cfg.tree.validate();
  auto start = std::chrono::steady_clock::now();
  long passed = 0, failed = 0, inconclusive = 0;
  json failures = json::array(), inconclusives = json::array();
  for (long i = 0; i < cfg.trials; ++i) {
    Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    json input;
    TrialResult r;
    try {
      input = c.generate(cfg, rng);
      r = replay(c, input, cfg);
    } catch (const error& e) {
      r = {Outcome::fail, std::string("generator error: ") + e.what()};
    }
    switch (r.outcome) {
      case Outcome::pass: ++passed; break;
      case Outcome::fail:
        ++failed;
        failures.push_back({{"trial", i}, {"input", input}, {"detail", r.detail}});
        break;
      case Outcome::inconclusive:
        ++inconclusive;
        inconclusives.push_back({{"trial", i}, {"input", input}, {"detail", r.detail}});
        break;
    }
  }
  json rep = {{"campaignId", c.id},
              {"target", c.target},
              {"tree", to_json(cfg.tree)},
              {"seed", std::to_string(cfg.seed)},
              {"trials", cfg.trials},
              {"passCount", passed},
              {"failCount", failed},
              {"inconclusiveCount", inconclusive},
              {"failures", failures},
              {"inconclusive", inconclusives}};
  if (cfg.wall_time) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    rep["wallTimeMs"] = ms.count();
  }
  return rep;
}

inline CampaignConfig config_from_json(const json& j) {
  CampaignConfig c;
  if (j.contains("campaign")) c.id = j.at("campaign").get<std::string>();
  if (j.contains("tree")) c.tree = params_from_json(j.at("tree"));
  if (j.contains("trials")) c.trials = j.at("trials").get<long>();
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    c.seed = s.is_string() ? std::stoull(s.get<std::string>()) : s.get<std::uint64_t>();
  }
  if (j.contains("windowRadius")) c.window_radius = j.at("windowRadius").get<int>();
  if (j.contains("oracleBudget")) {
    const json& b = j.at("oracleBudget");
    c.budget.max_q = b.value("maxQ", c.budget.max_q);
    c.budget.max_radius = b.value("maxRadius", c.budget.max_radius);
    c.budget.max_displacement = b.value("maxDisplacement", c.budget.max_displacement);
  }
  if (j.contains("wallTime")) c.wall_time = j.at("wallTime").get<bool>();
  return c;
}

// ---------------------------------------------------------------------------
// DOT export

struct DotOverlay {
  std::string color = "red";
  std::vector<Vertex> vertices;
  std::vector<OrientedEdge> edges;
};

inline std::string dot_name(const Vertex& v) {
  std::string s = "v";
  for (Label l : v.address()) s += "_" + std::to_string(l);
  return s;
}

/// DOT digraph of the ball of radius `depth` about the root, edges pointing
/// away from the root, overlays drawn in their colors.  Output is a pure
/// function of the arguments.
inline std::string export_dot(const Tree& t, int depth, const std::vector<DotOverlay>& overlays = {}) {
  if (depth < 0 || depth > 8) throw oracle_budget_error("DOT export depth must be in [0, 8]");
  std::vector<Vertex> ball = t.ball(Vertex::root(), depth);
  std::map<Vertex, std::string> vcolor;
  std::map<std::pair<Vertex, Vertex>, std::string> ecolor;
  for (const auto& o : overlays) {
    for (const auto& v : o.vertices)
      if (static_cast<int>(v.depth()) <= depth) vcolor[v] = o.color;
    for (const auto& e : o.edges) {
      if (static_cast<int>(std::max(e.origin.depth(), e.terminus.depth())) > depth) continue;
      auto key = e.origin.depth() < e.terminus.depth() ? std::pair{e.origin, e.terminus} : std::pair{e.terminus, e.origin};
      ecolor[key] = o.color;
    }
  }
  std::ostringstream os;
  os << "digraph T {\n  node [shape=circle, fontsize=8];\n";
  os << "  // qE=" << t.params().qE << " qO=" << t.params().qO << " depth=" << depth << "\n";
  for (const auto& v : ball) {
    os << "  " << dot_name(v) << " [label=\"" << v.str() << "\"";
    if (auto it = vcolor.find(v); it != vcolor.end()) os << ", style=filled, fillcolor=" << it->second;
    os << "];\n";
  }
  for (const auto& v : ball) {
    if (v.is_root()) continue;
    os << "  " << dot_name(v.parent()) << " -> " << dot_name(v);
    if (auto it = ecolor.find({v.parent(), v}); it != ecolor.end()) os << " [color=" << it->second << ", penwidth=3]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

/// Axis of a hyperbolic automorphism (or fixed vertices of an elliptic one)
/// restricted to the ball of radius `depth`.
inline DotOverlay min_set_overlay(const Automorphism& g, int depth, std::string color = "red") {
  DotOverlay o;
  o.color = std::move(color);
  MinSet ms = min_set_in_ball(g, depth);
  if (ms.inverted_edge) {
    o.edges.push_back(*ms.inverted_edge);
    return o;
  }
  o.vertices = ms.vertices;
  std::set<Vertex> in(ms.vertices.begin(), ms.vertices.end());
  for (const auto& v : ms.vertices)
    if (!v.is_root() && in.count(v.parent())) o.edges.push_back({v.parent(), v});
  return o;
}

}  // namespace treescale
