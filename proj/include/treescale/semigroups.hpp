#pragma once

// The maximal scale-multiplicative semigroup types and family classification.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treescale/scale.hpp"

namespace treescale {

struct VertexFixator {
  Vertex vertex;
  friend bool operator==(const VertexFixator&, const VertexFixator&) = default;
};
struct EdgeMidpointFixator {
  OrientedEdge edge;
  friend bool operator==(const EdgeMidpointFixator&, const EdgeMidpointFixator&) = default;
};
/// Elliptics fixing v and stabilizing I; hyperbolics entering v through an
/// edge labelled in I and leaving through a label outside I.
struct DirectedVertex {
  Vertex vertex;
  std::vector<Label> labels;  // sorted neighbor labels at vertex
  friend bool operator==(const DirectedVertex&, const DirectedVertex&) = default;
};
struct EndPlus {
  End end;
  friend bool operator==(const EndPlus&, const EndPlus&) = default;
};
struct EndMinus {
  End end;
  friend bool operator==(const EndMinus&, const EndMinus&) = default;
};

using SemigroupSpec = std::variant<VertexFixator, EdgeMidpointFixator, DirectedVertex, EndPlus, EndMinus>;

inline std::string spec_kind(const SemigroupSpec& s) {
  static const char* names[] = {"vertexFixator", "edgeMidpointFixator", "directedVertex", "endPlus", "endMinus"};
  return names[s.index()];
}

/// Neighbor labels at v not in I.
inline std::vector<Label> complement_labels(const Tree& t, const Vertex& v, const std::vector<Label>& I) {
  std::vector<Label> out;
  for (Label l : t.labels(v))
    if (!std::binary_search(I.begin(), I.end(), l)) out.push_back(l);
  return out;
}

inline DirectedVertex make_directed_vertex(const Tree& t, Vertex v, std::vector<Label> I) {
  t.check(v);
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  if (I.empty()) throw representation_error("directed vertex label set must be nonempty");
  if (I.size() >= static_cast<std::size_t>(t.valency(v)))
    throw representation_error("directed vertex label set must be a proper subset");
  for (Label l : I)
    if (!t.has_label(v, l)) throw address_error("label " + std::to_string(l) + " does not exist at " + v.str());
  return {std::move(v), std::move(I)};
}

inline void validate(const Tree& t, const SemigroupSpec& s) {
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, VertexFixator>) {
          t.check(x.vertex);
        } else if constexpr (std::is_same_v<X, EdgeMidpointFixator>) {
          if (!t.homogeneous()) throw representation_error("edge midpoint fixators need qE == qO");
          t.check(x.edge);
        } else if constexpr (std::is_same_v<X, DirectedVertex>) {
          make_directed_vertex(t, x.vertex, x.labels);
        } else {
          t.check(x.end);
        }
      },
      s);
}

namespace detail {

inline Label step_label(const Tree& t, const Vertex& from, const Vertex& to) {
  return t.label_toward(from, t.path_between(from, to)[1]);
}

inline bool in_labels(const std::vector<Label>& I, Label l) { return std::binary_search(I.begin(), I.end(), l); }

// Does the hyperbolic g (with motion m) have w as attracting (sign > 0) or
// repelling (sign < 0) end?
inline bool end_of_axis(const Automorphism& g, const Motion& m, const End& w, int sign) {
  if (g(w) != w) return false;
  const Tree& t = g.tree();
  Vertex toward = sign > 0 ? g(m.point) : invert(g)(m.point);
  return t.departure_label(m.point, w) == step_label(t, m.point, toward);
}

}  // namespace detail

inline bool contains(const SemigroupSpec& spec, const Automorphism& g) {
  const Tree& t = g.tree();
  validate(t, spec);
  const Motion m = motion(g);
  return std::visit(
      [&](const auto& x) -> bool {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, VertexFixator>) {
          return g(x.vertex) == x.vertex;
        } else if constexpr (std::is_same_v<X, EdgeMidpointFixator>) {
          OrientedEdge ge = g(x.edge);
          return ge == x.edge || ge == x.edge.reversed();
        } else if constexpr (std::is_same_v<X, DirectedVertex>) {
          const Vertex& v = x.vertex;
          if (m.kind == Motion::Kind::inversion) return false;
          if (m.kind == Motion::Kind::elliptic) {
            if (g(v) != v) return false;
            for (Label l : x.labels)
              if (!detail::in_labels(x.labels, t.label_toward(v, g(t.neighbor(v, l))))) return false;
            return true;
          }
          Vertex gv = g(v);
          if (static_cast<long>(t.distance(v, gv)) != m.length) return false;
          Label arriving = detail::step_label(t, v, invert(g)(v));
          Label departing = detail::step_label(t, v, gv);
          return detail::in_labels(x.labels, arriving) && !detail::in_labels(x.labels, departing);
        } else {
          constexpr int sign = std::is_same_v<X, EndPlus> ? 1 : -1;
          if (m.kind == Motion::Kind::inversion) return false;
          if (m.kind == Motion::Kind::elliptic) return g(x.end) == x.end;
          return detail::end_of_axis(g, m, x.end, sign);
        }
      },
      spec);
}

/// Inverse semigroup: the plus and minus end types swap and I becomes its
/// complement.
inline SemigroupSpec invert_spec(const Tree& t, const SemigroupSpec& spec) {
  validate(t, spec);
  return std::visit(
      [&](const auto& x) -> SemigroupSpec {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, EndPlus>) {
          return EndMinus{x.end};
        } else if constexpr (std::is_same_v<X, EndMinus>) {
          return EndPlus{x.end};
        } else if constexpr (std::is_same_v<X, DirectedVertex>) {
          return DirectedVertex{x.vertex, complement_labels(t, x.vertex, x.labels)};
        } else {
          return x;
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Multiplicativity

struct Violation {
  std::size_t i = 0, j = 0;  // product members[i] * members[j]
  BigInt product_scale;
  BigInt scale_product;
  char sign = '<';  // relation of s(g_i g_j) to s(g_i) s(g_j)
};

struct MultiplicativityReport {
  bool verdict = true;
  std::vector<Violation> violations;
};

inline MultiplicativityReport pairwise_multiplicative(std::span<const Automorphism> S) {
  MultiplicativityReport rep;
  std::vector<BigInt> s;
  s.reserve(S.size());
  for (const auto& g : S) s.push_back(scale(g));
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < S.size(); ++j) {
      BigInt lhs = scale(compose(S[i], S[j]));
      BigInt rhs = s[i] * s[j];
      if (lhs != rhs) rep.violations.push_back({i, j, lhs, rhs, lhs < rhs ? '<' : '>'});
    }
  rep.verdict = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Family classification

struct FamilyClassification {
  std::optional<SemigroupSpec> spec;  // empty when rejected
  MultiplicativityReport report;
  std::optional<Vertex> common_min_vertex;
  int window_radius = 0;
};

namespace detail {

// Projection of x onto min(g): the midpoint of [x, g x] for elliptics, the
// axis point at distance (d(x, g x) - l) / 2 for hyperbolics.
inline Vertex project_to_min(const Automorphism& g, const Motion& m, const Vertex& x) {
  const Tree& t = g.tree();
  Vertex gx = g(x);
  long d = static_cast<long>(t.distance(x, gx));
  Segment path = t.path_between(x, gx);
  return path[static_cast<std::size_t>((d - m.length) / 2)];
}

inline bool in_all_min(std::span<const Automorphism> S, std::span<const Motion> M, const Vertex& w) {
  for (std::size_t i = 0; i < S.size(); ++i)
    if (static_cast<long>(S[i].tree().distance(w, S[i](w))) != M[i].length) return false;
  return true;
}

// Nearest point to the root of the intersection of the minimal sets.  In a
// tree one pass of successive projections lands in a nonempty intersection of
// subtrees; the nearest point then lies on the path back to the root.
inline std::optional<Vertex> common_min_vertex(std::span<const Automorphism> S, std::span<const Motion> M) {
  if (S.empty()) return Vertex::root();
  const Tree& t = S[0].tree();
  Vertex x = Vertex::root();
  for (std::size_t i = 0; i < S.size(); ++i) x = project_to_min(S[i], M[i], x);
  if (!in_all_min(S, M, x)) return std::nullopt;
  Segment back = t.path_between(x, Vertex::root());
  Vertex best = x;
  for (std::size_t i = 1; i < back.size() && in_all_min(S, M, back[i]); ++i) best = back[i];
  return best;
}

// Arriving labels of hyperbolic members at v, closed under the local actions
// of elliptic members.
inline std::vector<Label> arriving_closure(std::span<const Automorphism> S, std::span<const Motion> M,
                                           const Vertex& v) {
  const Tree& t = S[0].tree();
  std::vector<Label> I;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (M[i].hyperbolic()) I.push_back(step_label(t, v, invert(S[i])(v)));
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < S.size(); ++i) {
      if (M[i].hyperbolic()) continue;
      for (std::size_t k = 0; k < I.size(); ++k) {
        Label img = t.label_toward(v, S[i](t.neighbor(v, I[k])));
        if (!in_labels(I, img)) {
          I.insert(std::upper_bound(I.begin(), I.end(), img), img);
          grew = true;
        }
      }
    }
  }
  return I;
}

inline std::vector<End> axis_ends(std::span<const Automorphism> S, std::span<const Motion> M) {
  std::vector<End> ends;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (M[i].hyperbolic()) {
      ends.push_back(attracting_end(S[i]));
      ends.push_back(repelling_end(S[i]));
    }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  return ends;
}

inline bool contains_all(const SemigroupSpec& s, std::span<const Automorphism> S) {
  return std::all_of(S.begin(), S.end(), [&](const Automorphism& g) { return contains(s, g); });
}

}  // namespace detail

/// Classifies a finite family into a containing maximal type, following the
/// decision order: rejection, inversion, common fixed vertex, common minimal
/// vertex within the window, common axis end.
inline FamilyClassification classify_family(std::span<const Automorphism> S, int window_radius) {
  FamilyClassification out;
  out.window_radius = window_radius;
  out.report = pairwise_multiplicative(S);
  if (!out.report.verdict) return out;
  if (S.empty()) throw representation_error("cannot classify an empty family");
  const Tree& t = S[0].tree();
  for (const auto& g : S) require_same_tree(S[0], g);

  std::vector<Motion> M;
  for (const auto& g : S) M.push_back(motion(g));
  const auto finish = [&](SemigroupSpec spec) {
    if (!detail::contains_all(spec, S))
      throw internal_consistency_error("classified container " + spec_kind(spec) + " misses a family member");
    out.spec = std::move(spec);
    return out;
  };

  for (std::size_t i = 0; i < S.size(); ++i)
    if (M[i].kind == Motion::Kind::inversion) return finish(EdgeMidpointFixator{M[i].edge});

  out.common_min_vertex = detail::common_min_vertex(S, M);
  const bool all_elliptic = std::none_of(M.begin(), M.end(), [](const Motion& m) { return m.hyperbolic(); });
  if (all_elliptic) {
    if (!out.common_min_vertex) throw inconclusive_error("elliptic family without a common fixed vertex", window_radius);
    return finish(VertexFixator{*out.common_min_vertex});
  }
  if (out.common_min_vertex && static_cast<int>(out.common_min_vertex->depth()) <= window_radius) {
    const Vertex& v = *out.common_min_vertex;
    std::vector<Label> I = detail::arriving_closure(S, M, v);
    if (I.size() >= static_cast<std::size_t>(t.valency(v)))
      throw internal_consistency_error("arriving labels at " + v.str() + " exhaust the vertex");
    return finish(DirectedVertex{v, std::move(I)});
  }

  for (const End& w : detail::axis_ends(S, M)) {
    if (detail::contains_all(EndPlus{w}, S)) return finish(EndPlus{w});
    if (detail::contains_all(EndMinus{w}, S)) return finish(EndMinus{w});
  }
  throw inconclusive_error("no container found within window radius " + std::to_string(window_radius),
                           window_radius);
}

/// Every candidate container found for the family, each verified by contains().
inline std::vector<SemigroupSpec> all_containers(std::span<const Automorphism> S, int window_radius) {
  std::vector<SemigroupSpec> out;
  if (S.empty() || !pairwise_multiplicative(S).verdict) return out;
  const Tree& t = S[0].tree();
  std::vector<Motion> M;
  for (const auto& g : S) M.push_back(motion(g));
  std::vector<SemigroupSpec> cand;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (M[i].kind == Motion::Kind::inversion) cand.push_back(EdgeMidpointFixator{M[i].edge});
  if (auto v = detail::common_min_vertex(S, M); v && static_cast<int>(v->depth()) <= window_radius &&
                                               cand.empty()) {
    cand.push_back(VertexFixator{*v});
    std::vector<Label> I = detail::arriving_closure(S, M, *v);
    if (!I.empty() && I.size() < static_cast<std::size_t>(t.valency(*v))) cand.push_back(DirectedVertex{*v, I});
  }
  for (const End& w : detail::axis_ends(S, M)) {
    cand.push_back(EndPlus{w});
    cand.push_back(EndMinus{w});
  }
  for (auto& c : cand)
    if (detail::contains_all(c, S)) out.push_back(std::move(c));
  return out;
}

// ---------------------------------------------------------------------------
// Intersections and the neighborhood basis

/// Does U_(v,I) meet the end semigroup of w in a hyperbolic?  Exactly when the
/// ray [v, w) leaves through a label outside I.
inline bool u_basis_contains(const Tree& t, const Vertex& v, const std::vector<Label>& I, const End& w) {
  DirectedVertex dv = make_directed_vertex(t, v, I);
  t.check(w);
  return !detail::in_labels(dv.labels, t.departure_label(v, w));
}

namespace detail {

inline Label first_label_not_in(const Tree& t, const Vertex& v, const std::vector<Label>& I) {
  for (Label l : t.labels(v))
    if (!in_labels(I, l)) return l;
  throw representation_error("label set covers every neighbor of " + v.str());
}

inline Label other_label(Label avoid) { return avoid == 0 ? 1 : 0; }

inline std::optional<Automorphism> directed_pair_witness(const Tree& t, const DirectedVertex& a,
                                                         const DirectedVertex& b) {
  const TreeParams& p = t.params();
  if (a.vertex == b.vertex) {
    std::optional<Label> in, out;
    for (Label l : t.labels(a.vertex)) {
      bool ia = in_labels(a.labels, l), ib = in_labels(b.labels, l);
      if (ia && ib && !in) in = l;
      if (!ia && !ib && !out) out = l;
    }
    if (!in || !out) return std::nullopt;
    return build_translation(p, t.end_through(a.vertex, *in), t.end_through(a.vertex, *out), 2);
  }
  // Translation passing a then b.
  Label leave_a = step_label(t, a.vertex, b.vertex);
  Label enter_b = step_label(t, b.vertex, a.vertex);
  if (in_labels(a.labels, leave_a) || !in_labels(b.labels, enter_b)) return std::nullopt;
  Label in = a.labels.front();
  Label out = first_label_not_in(t, b.vertex, b.labels);
  return build_translation(p, t.end_through(a.vertex, in), t.end_through(b.vertex, out), 2);
}

}  // namespace detail

/// A hyperbolic automorphism lying in both semigroups, or none when the
/// intersection provably has no hyperbolics.
inline std::optional<Automorphism> intersection_hyperbolic_witness(const Tree& t, const SemigroupSpec& a,
                                                                   const SemigroupSpec& b) {
  validate(t, a);
  validate(t, b);
  const TreeParams& p = t.params();
  const auto is_fixator = [](const SemigroupSpec& s) {
    return std::holds_alternative<VertexFixator>(s) || std::holds_alternative<EdgeMidpointFixator>(s);
  };
  if (is_fixator(a) || is_fixator(b)) return std::nullopt;

  const auto far_end = [&](const End& w) {
    Label l = detail::other_label(t.departure_label(Vertex::root(), w));
    return t.end_through(Vertex::root(), l);
  };
  const auto end_end = [&](const End& w, int sw, const End& u, int su) -> std::optional<Automorphism> {
    if (sw != su) {
      if (w == u) return std::nullopt;
      // attracting end is the plus one
      const End& plus = sw > 0 ? w : u;
      const End& minus = sw > 0 ? u : w;
      return build_translation(p, minus, plus, 2);
    }
    if (w != u) return std::nullopt;
    return sw > 0 ? build_translation(p, far_end(w), w, 2) : build_translation(p, w, far_end(w), 2);
  };
  const auto directed_end = [&](const DirectedVertex& d, const End& w, int sw) -> std::optional<Automorphism> {
    Label l = t.departure_label(d.vertex, w);
    if (sw > 0) {
      if (detail::in_labels(d.labels, l)) return std::nullopt;
      return build_translation(p, t.end_through(d.vertex, d.labels.front()), w, 2);
    }
    if (!detail::in_labels(d.labels, l)) return std::nullopt;
    return build_translation(p, w, t.end_through(d.vertex, detail::first_label_not_in(t, d.vertex, d.labels)), 2);
  };
  const auto end_of = [](const SemigroupSpec& s, int& sign) -> const End* {
    if (auto* x = std::get_if<EndPlus>(&s)) return sign = 1, &x->end;
    if (auto* x = std::get_if<EndMinus>(&s)) return sign = -1, &x->end;
    return nullptr;
  };

  int sa = 0, sb = 0;
  const End* ea = end_of(a, sa);
  const End* eb = end_of(b, sb);
  const auto* da = std::get_if<DirectedVertex>(&a);
  const auto* db = std::get_if<DirectedVertex>(&b);
  std::optional<Automorphism> w;
  if (ea && eb) w = end_end(*ea, sa, *eb, sb);
  else if (da && eb) w = directed_end(*da, *eb, sb);
  else if (ea && db) w = directed_end(*db, *ea, sa);
  else {
    w = detail::directed_pair_witness(t, *da, *db);
    if (!w) w = detail::directed_pair_witness(t, *db, *da);
  }
  if (w && !(contains(a, *w) && contains(b, *w)))
    throw internal_consistency_error("constructed intersection witness fails membership");
  return w;
}

}  // namespace treescale
