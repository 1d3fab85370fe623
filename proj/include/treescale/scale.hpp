#pragma once

// Scale function: closed form from the translation length, and an exact
// coset-index oracle for ball fixators.

#include <functional>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "treescale/automorphism.hpp"

namespace treescale {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct BallFixatorSpec {
  Vertex center;
  int radius = 1;
};

struct OracleBudget {
  int max_q = 3;
  int max_radius = 3;
  long max_displacement = 4;
};

/// Product of q(v) over the half-open segment ]w, g w] of the axis.
inline BigInt scale(const Automorphism& g) {
  Motion m = motion(g);
  if (!m.hyperbolic()) return 1;
  const Tree& t = g.tree();
  Segment seg = t.path_between(m.point, g(m.point));
  BigInt s = 1;
  for (std::size_t i = 1; i < seg.size(); ++i) s *= t.q_at(seg[i]);
  return s;
}

/// Scale of g relative to the stabilizer of the end w: the translation
/// factor when w is attracting, 1 otherwise.  Requires g(w) == w.
inline BigInt relative_scale(const Automorphism& g, const End& w) {
  if (g(w) != w) throw representation_error("relative scale needs an automorphism fixing " + w.str());
  Motion m = motion(g);
  if (!m.hyperbolic()) return 1;
  if (attracting_end(g) == w) return scale(g);
  return 1;
}

inline BigRational modular(const Automorphism& g) { return BigRational(scale(g), scale(invert(g))); }

namespace detail {

inline BigInt falling_factorial(long n, long k) {
  BigInt r = 1;
  for (long i = 0; i < k; ++i) r *= (n - i);
  return r;
}

}  // namespace detail

/// Fixator of a finite subtree, given by its vertex set.
struct SubtreeFixatorSpec {
  std::vector<Vertex> vertices;
};

/// Vertices of the geodesic segment [a, b].
inline SubtreeFixatorSpec segment_fixator(const Tree& t, const Vertex& a, const Vertex& b) {
  return {t.path_between(a, b)};
}

namespace detail {

// Counts the distinct restrictions to B of automorphisms fixing S = g.B
// pointwise.  Such a map is determined on B by its action on the convex hull
// of B u S, which hangs off S as a rooted forest; every hull vertex may be
// sent to any sibling position not already taken.
inline BigInt fixator_index(const Tree& t, const std::vector<Vertex>& B, const std::set<Vertex>& S) {
  const Vertex& anchor = *S.begin();
  std::map<Vertex, std::set<Vertex>> children;
  for (const Vertex& x : B) {
    if (S.count(x)) continue;
    Segment path = t.path_between(x, anchor);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      children[path[i + 1]].insert(path[i]);
      if (S.count(path[i + 1])) break;
    }
  }

  std::function<BigInt(const Vertex&)> rooted = [&](const Vertex& y) -> BigInt {
    auto it = children.find(y);
    if (it == children.end()) return 1;
    BigInt r = falling_factorial(t.q_at(y), static_cast<long>(it->second.size()));
    for (const Vertex& c : it->second) r *= rooted(c);
    return r;
  };

  BigInt index = 1;
  for (const auto& [u, kids] : children) {
    if (!S.count(u)) continue;
    long out = t.valency(u);
    for (Label l : t.labels(u))
      if (S.count(t.neighbor(u, l))) --out;
    index *= falling_factorial(out, static_cast<long>(kids.size()));
    for (const Vertex& c : kids) index *= rooted(c);
  }
  return index;
}

inline void check_q_budget(const Tree& t, const OracleBudget& budget) {
  if (t.params().qE > budget.max_q || t.params().qO > budget.max_q)
    throw oracle_budget_error("index oracle budget exceeded: branching above " + std::to_string(budget.max_q));
}

}  // namespace detail

/// [gVg^-1 : gVg^-1 n V] for V the fixator of B(center, radius).
inline BigInt scale_bruteforce_index(const Automorphism& g, const BallFixatorSpec& V,
                                     const OracleBudget& budget = {}) {
  const Tree& t = g.tree();
  t.check(V.center);
  if (V.radius < 0) throw representation_error("ball radius must be >= 0");
  detail::check_q_budget(t, budget);
  const long disp = static_cast<long>(t.distance(V.center, g(V.center)));
  if (V.radius > budget.max_radius || disp > budget.max_displacement)
    throw oracle_budget_error("index oracle budget exceeded: radius " + std::to_string(V.radius) + " (max " +
                              std::to_string(budget.max_radius) + "), displacement " + std::to_string(disp) +
                              " (max " + std::to_string(budget.max_displacement) + ")");
  std::vector<Vertex> B = t.ball(V.center, V.radius);
  std::vector<Vertex> gB = t.ball(g(V.center), V.radius);
  return detail::fixator_index(t, B, std::set<Vertex>(gB.begin(), gB.end()));
}

/// [gVg^-1 : gVg^-1 n V] for V the fixator of a finite subtree.  The budget
/// caps the subtree at (max_q + 1)^max_radius vertices and the displacement of
/// its first vertex.
inline BigInt scale_bruteforce_index(const Automorphism& g, const SubtreeFixatorSpec& V,
                                     const OracleBudget& budget = {}) {
  const Tree& t = g.tree();
  if (V.vertices.empty()) throw representation_error("subtree fixator needs at least one vertex");
  for (const Vertex& v : V.vertices) t.check(v);
  detail::check_q_budget(t, budget);
  std::size_t cap = 1;
  for (int i = 0; i < budget.max_radius; ++i) cap *= static_cast<std::size_t>(budget.max_q + 1);
  const long disp = static_cast<long>(t.distance(V.vertices.front(), g(V.vertices.front())));
  if (V.vertices.size() > cap || disp > budget.max_displacement)
    throw oracle_budget_error("index oracle budget exceeded for a subtree of " + std::to_string(V.vertices.size()) +
                              " vertices at displacement " + std::to_string(disp));
  std::set<Vertex> B(V.vertices.begin(), V.vertices.end());
  for (const Vertex& a : B)
    for (const Vertex& b : B)
      for (const Vertex& x : t.path_between(a, b))
        if (!B.count(x)) throw representation_error("fixator vertex set is not a subtree");
  std::set<Vertex> S;
  for (const Vertex& v : B) S.insert(g(v));
  return detail::fixator_index(t, std::vector<Vertex>(B.begin(), B.end()), S);
}

inline bool is_minimizing(const BallFixatorSpec& V, const Automorphism& g, const OracleBudget& budget = {}) {
  return scale_bruteforce_index(g, V, budget) == scale(g);
}
inline bool is_minimizing(const SubtreeFixatorSpec& V, const Automorphism& g, const OracleBudget& budget = {}) {
  return scale_bruteforce_index(g, V, budget) == scale(g);
}

}  // namespace treescale
