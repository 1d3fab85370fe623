#pragma once

// Seeded random generation of tree objects, automorphisms and semigroup
// members.  Only std::mt19937_64 output is used (no distributions), so the
// streams are identical on every platform.

#include <cstdint>
#include <random>

#include "treescale/semigroups.hpp"

namespace treescale {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` in a campaign seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng_() % span);
  }
  bool coin() { return eng_() & 1; }
  /// True with probability num/den.
  bool chance(long num, long den) { return uniform(0, den - 1) < num; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs.at(static_cast<std::size_t>(uniform(0, static_cast<long>(xs.size()) - 1)));
  }
  template <class T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[static_cast<std::size_t>(uniform(0, static_cast<long>(i) - 1))]);
  }

private:
  std::mt19937_64 eng_;
};

class Sampler {
public:
  Sampler(TreeParams p, Rng& rng) : p_(p), t_(p), rng_(rng) {}

  const Tree& tree() const noexcept { return t_; }
  const TreeParams& params() const noexcept { return p_; }
  Rng& rng() noexcept { return rng_; }

  Label child_label(std::size_t depth) { return static_cast<Label>(rng_.uniform(t_.min_letter(depth), t_.max_letter(depth))); }

  Vertex vertex(int max_depth) {
    long d = rng_.uniform(0, max_depth);
    Word w;
    for (long i = 0; i < d; ++i) w.push_back(child_label(w.size()));
    return Vertex(std::move(w));
  }

  /// Random descending continuation of the address w into a periodic end.
  End finish_end(Word w) {
    long extra = rng_.uniform(0, 3);
    for (long i = 0; i < extra; ++i) w.push_back(child_label(w.size()));
    for (;;) {
      long len = rng_.uniform(1, 3);
      Word per;
      for (long i = 0; i < len; ++i) per.push_back(child_label(std::max<std::size_t>(w.size() + per.size(), 1)));
      End e(w, per);
      if (t_.valid(e)) return e;
    }
  }

  End end() { return finish_end({}); }

  /// Random end whose ray from v leaves through label l.
  End end_through(const Vertex& v, Label l) {
    Vertex prev = v;
    Vertex cur = t_.neighbor(v, l);
    // Keep climbing for a while, then turn down.
    while (cur.depth() < prev.depth() && !cur.is_root() && rng_.coin()) {
      prev = cur;
      cur = cur.parent();
    }
    if (cur.depth() > prev.depth()) return finish_end(cur.address());
    std::vector<Label> downs;
    for (Label x : t_.labels(cur))
      if ((cur.is_root() || x != 0) && x != t_.label_toward(cur, prev)) downs.push_back(x);
    return finish_end(cur.child(rng_.pick(downs)).address());
  }

  End end_other_than(const End& avoid) {
    for (;;) {
      End e = end();
      if (e != avoid) return e;
    }
  }

  std::vector<Label> permutation(std::vector<Label> xs) {
    rng_.shuffle(xs);
    return xs;
  }

  /// Random root portrait of depth <= max_depth.  At the spine vertices [1^i]
  /// with i < fix_spine_up_to label 1 stays fixed; with trivial_root the root
  /// gets no entry.
  PortraitRep portrait(int max_depth, long fix_spine_up_to = -1, bool trivial_root = false) {
    PortraitRep r;
    r.depth = static_cast<int>(rng_.uniform(1, max_depth));
    std::vector<Vertex> todo{Vertex::root()};
    while (!todo.empty()) {
      Vertex u = todo.back();
      todo.pop_back();
      if (static_cast<int>(u.depth()) >= r.depth) continue;
      for (Label x = u.is_root() ? 0 : 1; x <= t_.q_at(u); ++x)
        if (u.depth() + 1 < static_cast<std::size_t>(r.depth) && rng_.chance(1, 2)) todo.push_back(u.child(x));
      if (u.is_root() && trivial_root) continue;
      if (!rng_.chance(2, 3)) continue;
      bool on_spine = std::all_of(u.address().begin(), u.address().end(), [](Label x) { return x == 1; }) &&
                      static_cast<long>(u.depth()) < fix_spine_up_to;
      std::vector<Label> movable;
      for (Label x = u.is_root() ? 0 : 1; x <= t_.q_at(u); ++x)
        if (!(on_spine && x == 1)) movable.push_back(x);
      std::vector<Label> img = permutation(movable);
      Word perm(static_cast<std::size_t>(t_.q_at(u) + 1));
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = 0; i < movable.size(); ++i) perm[static_cast<std::size_t>(movable[i])] = img[i];
      r.perms.emplace(u, std::move(perm));
    }
    return r;
  }

  /// Automorphism fixing v whose action on the neighbors of v swaps a and b.
  Automorphism transposition_at(const Vertex& v, Label a, Label b) {
    Geodesic src(t_.end_through(v, a), t_.end_through(v, b));
    Geodesic dst(t_.end_through(v, b), t_.end_through(v, a));
    return Automorphism::axis_map(p_, src, dst, dst.project(v) - src.project(v));
  }

  /// Automorphism fixing v acting on its neighbor labels by sigma.
  Automorphism local_permutation(const Vertex& v, const std::vector<Label>& sigma) {
    Automorphism out = Automorphism::identity(p_);
    std::vector<Label> cur(sigma.size());
    std::iota(cur.begin(), cur.end(), 0);
    // Selection sort by transpositions: out maps label x to cur[x].
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (cur[i] == sigma[i]) continue;
      std::size_t j = i + 1;
      while (cur[j] != sigma[i]) ++j;
      out = compose(transposition_at(v, cur[i], cur[j]), out);
      std::swap(cur[i], cur[j]);
    }
    return out;
  }

  /// Rigid automorphism sending the spine vertex s_{s0} to v (s0 = 0, or the
  /// parity of v in a biregular tree).
  Automorphism mover(const Vertex& v) {
    Label l = v.is_root() ? 0 : 1;
    return carrier(p_, v, t_.neighbor(v, l));
  }

  /// Elliptic fixing v, acting on the neighbors of v trivially.
  Automorphism deep_elliptic_at(const Vertex& v, int depth = 3) {
    long s0 = carrier_spine_index(p_, v);
    PortraitRep pr = portrait(depth, s0 == 0 ? -1 : 1, s0 == 0);
    if (s0 == 1) pr.perms.erase(Vertex{1});
    Automorphism c = mover(v);
    return conjugate(c, Automorphism::primitive(p_, std::move(pr)));
  }

  /// Random elliptic fixing v.
  Automorphism elliptic_at(const Vertex& v) {
    std::vector<Label> sigma = permutation(t_.labels(v));
    return compose(local_permutation(v, sigma), deep_elliptic_at(v));
  }

  /// Random elliptic fixing v and stabilizing the label set I.
  Automorphism elliptic_preserving(const Vertex& v, const std::vector<Label>& I) {
    std::vector<Label> out = complement_labels(t_, v, I);
    std::vector<Label> pi = permutation(I), po = permutation(out);
    std::vector<Label> sigma(static_cast<std::size_t>(t_.valency(v)));
    for (std::size_t i = 0; i < I.size(); ++i) sigma[static_cast<std::size_t>(I[i])] = pi[i];
    for (std::size_t i = 0; i < out.size(); ++i) sigma[static_cast<std::size_t>(out[i])] = po[i];
    return compose(local_permutation(v, sigma), deep_elliptic_at(v));
  }

  long step(long max_len) {
    if (p_.homogeneous()) return rng_.uniform(1, max_len);
    return 2 * rng_.uniform(1, std::max<long>(1, max_len / 2));
  }

  Automorphism translation(long max_len = 4) {
    End a = end();
    End b = end_other_than(a);
    return build_translation(p_, a, b, step(max_len));
  }

  /// Hyperbolic whose axis passes v, entering through label a and leaving through b.
  Automorphism translation_through(const Vertex& v, Label a, Label b, long max_len = 4) {
    return build_translation(p_, end_through(v, a), end_through(v, b), step(max_len));
  }

  /// Random eventually rigid automorphism as a short word of primitives.
  Automorphism composite(int max_factors = 4) {
    long n = rng_.uniform(1, max_factors);
    Automorphism g = Automorphism::identity(p_);
    for (long i = 0; i < n; ++i) {
      Automorphism f = Automorphism::identity(p_);
      switch (rng_.uniform(0, 5)) {
        case 0: f = Automorphism::primitive(p_, portrait(3)); break;
        case 1: {
          long m = step(3) * (rng_.coin() ? 1 : -1);
          f = Automorphism::spine_shift(p_, m);
          break;
        }
        case 2:
          if (p_.homogeneous()) {
            Vertex a = vertex(3);
            Label l = static_cast<Label>(rng_.uniform(0, t_.q_at(a)));
            f = Automorphism::inversion(p_, {a, t_.neighbor(a, l)});
          } else {
            f = elliptic_at(vertex(3));
          }
          break;
        case 3: f = translation(); break;
        case 4: f = elliptic_at(vertex(3)); break;
        default: f = conjugate(elliptic_at(vertex(2)), translation()); break;
      }
      g = compose(g, f);
    }
    return g;
  }

  // --- members of the maximal types ----------------------------------------

  SemigroupSpec spec(int kind) {
    switch (kind) {
      case 0: return VertexFixator{vertex(3)};
      case 1: {
        Vertex a = vertex(3);
        Label l = static_cast<Label>(rng_.uniform(0, t_.q_at(a)));
        return EdgeMidpointFixator{{a, t_.neighbor(a, l)}};
      }
      case 2: return directed_vertex(vertex(3));
      case 3: return EndPlus{end()};
      default: return EndMinus{end()};
    }
  }

  DirectedVertex directed_vertex(const Vertex& v) {
    std::vector<Label> all = permutation(t_.labels(v));
    long k = rng_.uniform(1, static_cast<long>(all.size()) - 1);
    return make_directed_vertex(t_, v, std::vector<Label>(all.begin(), all.begin() + k));
  }

  /// Automorphism carrying the spine onto a geodesic with plus end w.
  Automorphism end_carrier(const End& w) { return carrier(p_, end_other_than(w), w); }

  /// Elliptic fixing a ray into the plus end of the spine, supported beyond s_shift.
  Automorphism plus_elliptic(long shift = 0) {
    Automorphism pe = Automorphism::primitive(p_, portrait(3, 3));
    if (shift == 0) return pe;
    Automorphism s = Automorphism::spine_shift(p_, shift);
    return conjugate(s, pe);
  }

  Automorphism member(const SemigroupSpec& s) {
    return std::visit([&](const auto& x) { return member_of(x); }, s);
  }

private:
  Automorphism member_of(const VertexFixator& x) { return elliptic_at(x.vertex); }
  Automorphism member_of(const EdgeMidpointFixator& x) {
    Label l = t_.label_toward(x.edge.origin, x.edge.terminus);
    Automorphism e = elliptic_preserving(x.edge.origin, {l});
    if (rng_.coin()) return compose(Automorphism::inversion(p_, x.edge), e);
    return e;
  }
  Automorphism member_of(const DirectedVertex& x) {
    Automorphism e = elliptic_preserving(x.vertex, x.labels);
    if (rng_.chance(1, 3)) return e;
    Label a = rng_.pick(x.labels);
    Label b = rng_.pick(complement_labels(t_, x.vertex, x.labels));
    Automorphism h = translation_through(x.vertex, a, b);
    return rng_.coin() ? compose(e, h) : h;
  }
  Automorphism member_of(const EndPlus& x) { return end_member(x.end, +1); }
  Automorphism member_of(const EndMinus& x) { return end_member(x.end, -1); }

  Automorphism end_member(const End& w, int sign) {
    Automorphism c = end_carrier(w);
    long shift = p_.homogeneous() ? rng_.uniform(-2, 2) : 2 * rng_.uniform(-1, 1);
    Automorphism inner = plus_elliptic(shift);
    if (!rng_.chance(1, 3)) inner = compose(Automorphism::spine_shift(p_, sign * step(4)), inner);
    return conjugate(c, inner);
  }

  TreeParams p_;
  Tree t_;
  Rng& rng_;
};

}  // namespace treescale
