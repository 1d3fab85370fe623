#pragma once

// Eventually rigid tree automorphisms.
//
// An Automorphism is a word of primitive factors, applied right to left.
// There are two evaluation kernels:
//
//  * root portraits: local label permutations at every vertex above a
//    support depth, identity relabeling below it;
//  * geodesic maps: a bi-infinite geodesic is carried onto another by a
//    shift (or reflection) of its integer indexing, and everything off the
//    geodesic follows the rigid-extension rule: at every vertex the labels
//    other than the one pointing back are matched in increasing order.
//
// Spine shifts, edge inversions and translations along arbitrary
// eventually periodic geodesics are all geodesic maps.  Because both kernels
// act by identity relabeling deep inside descending cones, images of
// vertices and of eventually periodic ends are exactly computable.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "treescale/tree.hpp"

namespace treescale {

struct PortraitRep {
  int depth = 0;
  /// perms[u][x] is the image label of x at u.  Absent vertices act trivially.
  std::map<Vertex, Word> perms;
  friend bool operator==(const PortraitRep&, const PortraitRep&) = default;
};

struct SpineShiftRep {
  long m = 0;
  friend bool operator==(const SpineShiftRep&, const SpineShiftRep&) = default;
};

struct InversionRep {
  OrientedEdge edge;
  friend bool operator==(const InversionRep&, const InversionRep&) = default;
};

struct AxisMapRep {
  End source_minus, source_plus;
  End target_minus, target_plus;
  long shift = 0;
  bool reflect = false;
  friend bool operator==(const AxisMapRep&, const AxisMapRep&) = default;
};

/// Horocyclic action (h, n) of the shift semidirect product on the tree with
/// qE == qO == q, relative to the end (1)^inf.  coeffs maps positions to
/// nonzero residues mod q.
struct HorocyclicRep {
  std::map<long, int> coeffs;
  long n = 0;
  friend bool operator==(const HorocyclicRep&, const HorocyclicRep&) = default;
};

using Primitive = std::variant<PortraitRep, SpineShiftRep, InversionRep, AxisMapRep, HorocyclicRep>;

namespace detail {

// Position of label y among labels(u) \ {removed...} (removed sorted ascending).
inline int rank_without(Label y, Label r1) { return y > r1 ? y - 1 : y; }
inline Label unrank_without(int pos, Label r1) { return pos >= r1 ? pos + 1 : pos; }
inline int rank_without(Label y, Label r1, Label r2) {
  if (r1 > r2) std::swap(r1, r2);
  return y - (y > r1 ? 1 : 0) - (y > r2 ? 1 : 0);
}
inline Label unrank_without(int pos, Label r1, Label r2) {
  if (r1 > r2) std::swap(r1, r2);
  Label y = pos;
  if (y >= r1) ++y;
  if (y >= r2) ++y;
  return y;
}

/// Applies the rigid-extension rule to one step: the walk moved from prev to
/// cur and continues to next; the image walk moved from prev_img to cur_img.
inline Vertex extend_step(const Tree& t, const Vertex& prev, const Vertex& cur, const Vertex& next,
                          const Vertex& prev_img, const Vertex& cur_img) {
  Label back = t.label_toward(cur, prev);
  Label step = t.label_toward(cur, next);
  Label back_img = t.label_toward(cur_img, prev_img);
  return t.neighbor(cur_img, unrank_without(rank_without(step, back), back_img));
}

class PortraitKernel {
public:
  PortraitKernel(const Tree& t, PortraitRep rep) : rep_(std::move(rep)) {
    if (rep_.depth < 0) throw representation_error("portrait depth must be >= 0");
    for (const auto& [u, perm] : rep_.perms) {
      t.check(u);
      if (static_cast<int>(u.depth()) >= rep_.depth)
        throw representation_error("portrait entry at " + u.str() + " lies below the support depth");
      if (static_cast<int>(perm.size()) != t.q_at(u) + 1)
        throw representation_error("portrait entry at " + u.str() + " has the wrong size");
      std::vector<bool> seen(perm.size(), false);
      for (Label x : perm) {
        if (x < 0 || x >= static_cast<Label>(perm.size()) || seen[static_cast<std::size_t>(x)])
          throw representation_error("portrait entry at " + u.str() + " is not a permutation");
        seen[static_cast<std::size_t>(x)] = true;
      }
      if (!u.is_root() && perm[0] != 0)
        throw representation_error("portrait entry at " + u.str() + " moves the parent edge");
    }
  }

  const PortraitRep& rep() const noexcept { return rep_; }

  Vertex apply(const Vertex& v) const {
    Word out = v.address();
    std::size_t n = std::min<std::size_t>(v.depth(), static_cast<std::size_t>(rep_.depth));
    for (std::size_t i = 0; i < n; ++i) {
      auto it = rep_.perms.find(v.prefix(i));
      if (it != rep_.perms.end()) out[i] = it->second[static_cast<std::size_t>(v[i])];
    }
    return Vertex(std::move(out));
  }

  Vertex apply_inverse(const Vertex& v) const {
    // Walk the image address, reconstructing the source prefix as we go.
    Word src;
    std::size_t n = std::min<std::size_t>(v.depth(), static_cast<std::size_t>(rep_.depth));
    for (std::size_t i = 0; i < n; ++i) {
      auto it = rep_.perms.find(Vertex(src));
      Label y = v[i];
      if (it != rep_.perms.end()) {
        const Word& p = it->second;
        y = static_cast<Label>(std::find(p.begin(), p.end(), v[i]) - p.begin());
      }
      src.push_back(y);
    }
    for (std::size_t i = n; i < v.depth(); ++i) src.push_back(v[i]);
    return Vertex(std::move(src));
  }

  End apply(const End& e) const {
    std::size_t d = static_cast<std::size_t>(rep_.depth);
    Vertex img = apply(e.vertex_at(d));
    auto [p, q] = e.tail(d);
    Word prefix = img.address();
    prefix.insert(prefix.end(), p.begin(), p.end());
    return End(std::move(prefix), std::move(q));
  }

  PortraitRep inverse_rep() const {
    PortraitRep inv;
    inv.depth = rep_.depth;
    for (const auto& [u, perm] : rep_.perms) {
      Word pinv(perm.size());
      for (std::size_t x = 0; x < perm.size(); ++x) pinv[static_cast<std::size_t>(perm[x])] = static_cast<Label>(x);
      inv.perms.emplace(apply(u), std::move(pinv));
    }
    return inv;
  }

private:
  PortraitRep rep_;
};

class AxisKernel {
public:
  AxisKernel(const Tree& t, const AxisMapRep& rep)
      : src_(rep.source_minus, rep.source_plus),
        dst_(rep.target_minus, rep.target_plus),
        shift_(rep.shift),
        reflect_(rep.reflect) {
    t.check(rep.source_minus);
    t.check(rep.source_plus);
    t.check(rep.target_minus);
    t.check(rep.target_plus);
    if (!t.homogeneous() && src_.at(0).parity() != dst_.at(map_index(0)).parity())
      throw representation_error("geodesic map does not preserve the bipartition");
  }

  long map_index(long k) const noexcept { return reflect_ ? shift_ - k : shift_ + k; }

  Vertex apply(const Tree& t, const Vertex& v) const {
    long k = src_.project(v);
    long j = map_index(k);
    Vertex a = src_.at(k);
    Vertex a_img = dst_.at(j);
    if (v == a) return a_img;
    Segment path = t.path_between(a, v);
    Vertex cur_img = first_step(t, k, j, a, path[1], a_img);
    Vertex prev_img = a_img;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      Vertex next_img = extend_step(t, path[i - 1], path[i], path[i + 1], prev_img, cur_img);
      prev_img = std::move(cur_img);
      cur_img = std::move(next_img);
    }
    return cur_img;
  }

  End apply(const Tree& t, const End& e) const {
    if (e == src_.plus()) return reflect_ ? dst_.minus() : dst_.plus();
    if (e == src_.minus()) return reflect_ ? dst_.plus() : dst_.minus();
    long k = src_.project(e);
    long j = map_index(k);
    Vertex a = src_.at(k);
    Vertex a_img = dst_.at(j);
    RayWalker ray(a, e);
    Vertex prev = a;
    Vertex cur = ray.advance();
    Vertex prev_img = a_img;
    Vertex cur_img = first_step(t, k, j, a, cur, a_img);
    for (;;) {
      if (cur.depth() > prev.depth() && cur_img.depth() > prev_img.depth()) {
        auto [p, q] = e.tail(cur.depth());
        Word prefix = cur_img.address();
        prefix.insert(prefix.end(), p.begin(), p.end());
        return End(std::move(prefix), std::move(q));
      }
      Vertex next = ray.advance();
      Vertex next_img = extend_step(t, prev, cur, next, prev_img, cur_img);
      prev = std::move(cur);
      cur = std::move(next);
      prev_img = std::move(cur_img);
      cur_img = std::move(next_img);
    }
  }

  const Geodesic& source() const noexcept { return src_; }
  const Geodesic& target() const noexcept { return dst_; }

private:
  // First step off the line: off-line labels are matched in increasing order.
  Vertex first_step(const Tree& t, long k, long j, const Vertex& a, const Vertex& next,
                    const Vertex& a_img) const {
    Label x = t.label_toward(a, next);
    Label s1 = t.label_toward(a, src_.at(k - 1));
    Label s2 = t.label_toward(a, src_.at(k + 1));
    Label d1 = t.label_toward(a_img, dst_.at(j - 1));
    Label d2 = t.label_toward(a_img, dst_.at(j + 1));
    return t.neighbor(a_img, unrank_without(rank_without(x, s1, s2), d1, d2));
  }

  Geodesic src_;
  Geodesic dst_;
  long shift_;
  bool reflect_;
};


// Horocyclic coordinates relative to the plus end of the spine.  A vertex v
// has level k (the spine index at s_k, decreasing by one per step away from
// the plus end) and digits: the step from level j+1 down to level j carries
// the digit at position -(j+1), namely label - 1.  Only positions < -k occur.
struct HoroPoint {
  long level = 0;
  std::map<long, int> digits;  // nonzero only
};

class HorocyclicKernel {
public:
  HorocyclicKernel(const Tree& t, HorocyclicRep rep) : rep_(std::move(rep)), q_(t.params().qE) {
    if (!t.homogeneous()) throw representation_error("horocyclic action needs qE == qO");
    std::map<long, int> clean;
    for (auto [i, c] : rep_.coeffs) {
      int r = ((c % q_) + q_) % q_;
      if (r) clean[i] = r;
    }
    rep_.coeffs = std::move(clean);
  }

  const HorocyclicRep& rep() const noexcept { return rep_; }

  static HoroPoint coords(const Tree& t, const Vertex& v) {
    const Geodesic sp = spine();
    long k0 = sp.project(v);
    Segment path = t.path_between(sp.at(k0), v);
    HoroPoint out;
    out.level = k0 - static_cast<long>(path.size() - 1);
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      int c = t.label_toward(path[s], path[s + 1]) - 1;
      if (c) out.digits[static_cast<long>(s) - k0] = c;
    }
    return out;
  }

  static Vertex vertex(const HoroPoint& p) {
    auto it = p.digits.begin();
    while (it != p.digits.end() && it->second == 0) ++it;
    if (it == p.digits.end() || it->first >= -p.level) return spine().at(p.level);
    const long m = it->first;
    Vertex w = spine().at(-m);
    for (long i = m; i < -p.level; ++i) {
      auto d = p.digits.find(i);
      w = w.child((d == p.digits.end() ? 0 : d->second) + 1);
    }
    return w;
  }

  /// (h, n).(k, x) = (k + n, h + x(. + n)).
  HoroPoint act(const HoroPoint& p) const {
    HoroPoint out;
    out.level = p.level + rep_.n;
    const long bound = -out.level;
    for (auto [i, c] : p.digits)
      if (i - rep_.n < bound) out.digits[i - rep_.n] = c;
    for (auto [i, c] : rep_.coeffs) {
      if (i >= bound) continue;
      int r = (out.digits[i] + c) % q_;
      if (r) out.digits[i] = r;
      else out.digits.erase(i);
    }
    return out;
  }

  Vertex apply(const Tree& t, const Vertex& v) const { return vertex(act(coords(t, v))); }

  End apply(const Tree& t, const End& e) const {
    if (e == spine_plus()) return e;
    const long top = rep_.coeffs.empty() ? 0 : rep_.coeffs.rbegin()->first;
    const long need = std::min<long>(0, -top) - 1;  // level of the image must stay below this
    for (std::size_t d = e.prefix().size();; ++d) {
      Vertex v = e.vertex_at(d);
      if (lcp(v, spine_plus()) == d) continue;
      HoroPoint p = coords(t, v);
      if (p.level + rep_.n > need) continue;
      Vertex img = vertex(act(p));
      auto [pre, per] = e.tail(d);
      Word prefix = img.address();
      prefix.insert(prefix.end(), pre.begin(), pre.end());
      return End(std::move(prefix), std::move(per));
    }
  }

  HorocyclicRep inverse_rep() const {
    HorocyclicRep inv;
    inv.n = -rep_.n;
    for (auto [i, c] : rep_.coeffs) inv.coeffs[i + rep_.n] = (q_ - c) % q_;
    return inv;
  }

private:
  HorocyclicRep rep_;
  int q_;
};

}  // namespace detail

/// One primitive factor together with its compiled evaluation kernel.
class Factor {
public:
  Factor(const Tree& t, Primitive rep) : rep_(std::move(rep)) {
    std::visit([&](const auto& r) { compile(t, r); }, rep_);
  }

  const Primitive& rep() const noexcept { return rep_; }

  Vertex apply(const Tree& t, const Vertex& v) const {
    if (portrait_) return portrait_->apply(v);
    if (horo_) return horo_->apply(t, v);
    return axis_->apply(t, v);
  }
  End apply(const Tree& t, const End& e) const {
    if (portrait_) return portrait_->apply(e);
    if (horo_) return horo_->apply(t, e);
    return axis_->apply(t, e);
  }

  Primitive inverse_rep() const {
    return std::visit(
        [&](const auto& r) -> Primitive {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, PortraitRep>) {
            return portrait_->inverse_rep();
          } else if constexpr (std::is_same_v<R, SpineShiftRep>) {
            return SpineShiftRep{-r.m};
          } else if constexpr (std::is_same_v<R, InversionRep>) {
            return r;
          } else if constexpr (std::is_same_v<R, HorocyclicRep>) {
            return horo_->inverse_rep();
          } else {
            return AxisMapRep{r.target_minus, r.target_plus, r.source_minus, r.source_plus,
                              r.reflect ? r.shift : -r.shift, r.reflect};
          }
        },
        rep_);
  }

  /// Inversion primitives realized as reflections of this geodesic.
  static Geodesic line_through(const Tree& t, const OrientedEdge& e) {
    Label la = 0;
    if (la == t.label_toward(e.origin, e.terminus)) ++la;
    Label lb = 0;
    if (lb == t.label_toward(e.terminus, e.origin)) ++lb;
    return Geodesic(t.end_through(e.origin, la), t.end_through(e.terminus, lb));
  }

private:
  void compile(const Tree& t, const PortraitRep& r) { portrait_.emplace(t, r); }
  void compile(const Tree& t, const SpineShiftRep& r) {
    if (r.m == 0) throw representation_error("spine shift amount must be nonzero");
    if (!t.homogeneous() && r.m % 2 != 0)
      throw representation_error("odd spine shift in a biregular tree");
    axis_.emplace(t, AxisMapRep{spine_minus(), spine_plus(), spine_minus(), spine_plus(), r.m, false});
  }
  void compile(const Tree& t, const InversionRep& r) {
    if (!t.homogeneous()) throw representation_error("edge inversions require qE == qO");
    t.check(r.edge);
    Geodesic line = line_through(t, r.edge);
    long i = line.project(r.edge.origin);
    if (line.at(i + 1) != r.edge.terminus)
      throw internal_consistency_error("inversion line does not traverse the edge");
    axis_.emplace(t, AxisMapRep{line.minus(), line.plus(), line.minus(), line.plus(), 2 * i + 1, true});
  }
  void compile(const Tree& t, const AxisMapRep& r) { axis_.emplace(t, r); }
  void compile(const Tree& t, const HorocyclicRep& r) {
    horo_.emplace(t, r);
    rep_ = horo_->rep();
  }

  Primitive rep_;
  std::optional<detail::PortraitKernel> portrait_;
  std::optional<detail::AxisKernel> axis_;
  std::optional<detail::HorocyclicKernel> horo_;
};

using FactorPtr = std::shared_ptr<const Factor>;

/// An eventually rigid automorphism: the word factors()[0] o ... o factors()[n-1].
class Automorphism {
public:
  explicit Automorphism(TreeParams p = {}) : tree_(p) {}
  Automorphism(TreeParams p, std::vector<FactorPtr> word) : tree_(p), word_(std::move(word)) {}

  static Automorphism identity(TreeParams p) { return Automorphism(p); }
  static Automorphism primitive(TreeParams p, Primitive rep) {
    Tree t(p);
    return Automorphism(p, {std::make_shared<const Factor>(t, std::move(rep))});
  }
  static Automorphism portrait(TreeParams p, int depth, std::map<Vertex, Word> perms) {
    return primitive(p, PortraitRep{depth, std::move(perms)});
  }
  static Automorphism spine_shift(TreeParams p, long m) { return primitive(p, SpineShiftRep{m}); }
  static Automorphism inversion(TreeParams p, OrientedEdge e) { return primitive(p, InversionRep{std::move(e)}); }
  static Automorphism axis_map(TreeParams p, const Geodesic& src, const Geodesic& dst, long shift,
                               bool reflect = false) {
    return primitive(p, AxisMapRep{src.minus(), src.plus(), dst.minus(), dst.plus(), shift, reflect});
  }

  const Tree& tree() const noexcept { return tree_; }
  const TreeParams& params() const noexcept { return tree_.params(); }
  std::span<const FactorPtr> factors() const noexcept { return word_; }
  bool is_identity_word() const noexcept { return word_.empty(); }

  Vertex operator()(const Vertex& v) const {
    tree_.check(v);
    Vertex x = v;
    for (auto it = word_.rbegin(); it != word_.rend(); ++it) x = (*it)->apply(tree_, x);
    return x;
  }
  End operator()(const End& e) const {
    tree_.check(e);
    End x = e;
    for (auto it = word_.rbegin(); it != word_.rend(); ++it) x = (*it)->apply(tree_, x);
    return x;
  }
  OrientedEdge operator()(const OrientedEdge& e) const { return {(*this)(e.origin), (*this)(e.terminus)}; }

private:
  Tree tree_;
  std::vector<FactorPtr> word_;
};

inline void require_same_tree(const Automorphism& g, const Automorphism& h) {
  if (!(g.params() == h.params())) throw representation_error("automorphisms act on different trees");
}

/// g o h (apply h first).  Adjacent mutually inverse spine shifts cancel.
inline Automorphism compose(const Automorphism& g, const Automorphism& h) {
  require_same_tree(g, h);
  std::vector<FactorPtr> word(g.factors().begin(), g.factors().end());
  for (const auto& f : h.factors()) {
    if (!word.empty()) {
      const auto* a = std::get_if<SpineShiftRep>(&word.back()->rep());
      const auto* b = std::get_if<SpineShiftRep>(&f->rep());
      if (a && b) {
        long m = a->m + b->m;
        word.pop_back();
        if (m != 0) word.push_back(std::make_shared<const Factor>(g.tree(), SpineShiftRep{m}));
        continue;
      }
    }
    word.push_back(f);
  }
  return Automorphism(g.params(), std::move(word));
}

inline Automorphism invert(const Automorphism& g) {
  std::vector<FactorPtr> word;
  word.reserve(g.factors().size());
  for (auto it = g.factors().rbegin(); it != g.factors().rend(); ++it)
    word.push_back(std::make_shared<const Factor>(g.tree(), (*it)->inverse_rep()));
  return Automorphism(g.params(), std::move(word));
}

inline Automorphism power(const Automorphism& g, long n) {
  Automorphism base = n < 0 ? invert(g) : g;
  Automorphism out = Automorphism::identity(g.params());
  for (long i = 0; i < std::abs(n); ++i) out = compose(out, base);
  return out;
}

/// u g u^-1
inline Automorphism conjugate(const Automorphism& u, const Automorphism& g) {
  return compose(compose(u, g), invert(u));
}

inline Automorphism operator*(const Automorphism& g, const Automorphism& h) { return compose(g, h); }

// ---------------------------------------------------------------------------
// Classification

struct Elliptic {
  Vertex fixed;
};
struct EdgeInversion {
  OrientedEdge edge;
};
struct Hyperbolic {
  long length = 0;
  Vertex anchor;
  End attracting;
  End repelling;
};
using AutType = std::variant<Elliptic, EdgeInversion, Hyperbolic>;

/// Classification without end data: the D2-versus-D1 rule.
struct Motion {
  enum class Kind { elliptic, inversion, hyperbolic };
  Kind kind = Kind::elliptic;
  long length = 0;
  Vertex point;       // fixed vertex, or axis anchor
  OrientedEdge edge;  // inverted edge
  bool hyperbolic() const noexcept { return kind == Kind::hyperbolic; }
};

inline Motion motion(const Automorphism& g) {
  const Tree& t = g.tree();
  Vertex v = Vertex::root();
  Vertex gv = g(v);
  long d1 = static_cast<long>(t.distance(v, gv));
  if (d1 == 0) return {Motion::Kind::elliptic, 0, v, {}};
  long d2 = static_cast<long>(t.distance(v, g(gv)));
  Segment path = t.path_between(v, gv);
  if (d2 > d1) {
    long len = d2 - d1;
    if ((d1 - len) % 2 != 0) throw internal_consistency_error("hyperbolic displacement parity mismatch");
    return {Motion::Kind::hyperbolic, len, path[static_cast<std::size_t>((d1 - len) / 2)], {}};
  }
  if (d1 % 2 == 0) {
    const Vertex& mid = path[static_cast<std::size_t>(d1 / 2)];
    if (g(mid) != mid)
      throw internal_consistency_error("elliptic certificate failed: midpoint " + mid.str() + " is moved");
    return {Motion::Kind::elliptic, 0, mid, {}};
  }
  OrientedEdge e{path[static_cast<std::size_t>((d1 - 1) / 2)], path[static_cast<std::size_t>((d1 + 1) / 2)]};
  if (g(e.origin) != e.terminus || g(e.terminus) != e.origin)
    throw internal_consistency_error("inversion certificate failed on edge " + e.origin.str() + "-" +
                                     e.terminus.str());
  return {Motion::Kind::inversion, 0, e.origin, e};
}

inline long translation_length(const Automorphism& g) { return motion(g).length; }
inline bool is_hyperbolic(const Automorphism& g) { return motion(g).hyperbolic(); }

namespace detail {

// The attracting end is the unique end fixed by g whose root ray contains
// g^n(anchor) for n >= 1.  Candidates are read off the address of g^n(anchor)
// and certified exactly by the end action.
inline End attracting_end(const Automorphism& g, const Vertex& anchor) {
  const Tree& t = g.tree();
  Vertex x = anchor;
  const Vertex ahead = g(anchor);
  const Label forward = t.label_toward(anchor, t.path_between(anchor, ahead)[1]);
  std::size_t target = 16;
  while (target <= (1u << 14)) {
    while (x.depth() < target) x = g(x);
    const Word& w = x.address();
    const std::size_t n = w.size();
    for (std::size_t p = 1; 2 * p <= n; ++p) {
      std::size_t s = n - p;
      while (s > 0 && w[s - 1] == w[s - 1 + p]) --s;
      if (n - s < 2 * p) continue;
      End cand(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s)),
               Word(w.begin() + static_cast<std::ptrdiff_t>(s), w.begin() + static_cast<std::ptrdiff_t>(s + p)));
      if (!t.valid(cand) || t.departure_label(anchor, cand) != forward) continue;
      if (g(cand) == cand) return cand;
    }
    target *= 2;
  }
  throw internal_consistency_error("attracting end not found within the search window");
}

}  // namespace detail

inline AutType classify(const Automorphism& g) {
  Motion m = motion(g);
  switch (m.kind) {
    case Motion::Kind::elliptic:
      return Elliptic{m.point};
    case Motion::Kind::inversion:
      return EdgeInversion{m.edge};
    case Motion::Kind::hyperbolic:
      break;
  }
  Hyperbolic h;
  h.length = m.length;
  h.anchor = m.point;
  h.attracting = detail::attracting_end(g, m.point);
  h.repelling = detail::attracting_end(invert(g), m.point);
  if (h.attracting == h.repelling) throw internal_consistency_error("attracting and repelling ends coincide");
  return h;
}

inline End attracting_end(const Automorphism& g) {
  Motion m = motion(g);
  if (!m.hyperbolic()) throw not_hyperbolic_error("attracting end of a non-hyperbolic automorphism");
  return detail::attracting_end(g, m.point);
}
inline End repelling_end(const Automorphism& g) { return attracting_end(invert(g)); }

/// Vertices of the axis from g^-n(anchor) to g^n(anchor).
inline Segment axis_window(const Automorphism& g, long n) {
  Motion m = motion(g);
  if (!m.hyperbolic()) throw not_hyperbolic_error("axis_window needs a hyperbolic automorphism");
  if (n < 1) throw representation_error("axis window size must be >= 1");
  Vertex from = power(g, -n)(m.point);
  Vertex to = power(g, n)(m.point);
  return g.tree().path_between(from, to);
}

/// Does the hyperbolic g translate along the oriented edge e?
inline bool translates_along(const Automorphism& g, const OrientedEdge& e) {
  if (!is_hyperbolic(g)) throw not_hyperbolic_error("translates_along needs a hyperbolic automorphism");
  const Tree& t = g.tree();
  t.check(e);
  OrientedEdge ge = g(e);
  if (ge == e || !t.coherent(e, ge)) return false;
  return t.distance(e.origin, ge.terminus) == t.distance(e.terminus, ge.origin) + 2;
}

struct MinSet {
  std::vector<Vertex> vertices;
  std::optional<OrientedEdge> inverted_edge;
};

/// Vertices w with |w| <= R and d(w, g w) = l(g); an inversion reports its edge.
inline MinSet min_set_in_ball(const Automorphism& g, int radius) {
  if (radius < 0) throw representation_error("radius must be >= 0");
  Motion m = motion(g);
  MinSet out;
  if (m.kind == Motion::Kind::inversion) {
    out.inverted_edge = m.edge;
    return out;
  }
  const Tree& t = g.tree();
  for (const Vertex& w : t.ball(Vertex::root(), radius))
    if (static_cast<long>(t.distance(w, g(w))) == m.length) out.vertices.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Constructors realizing existence statements

/// Hyperbolic automorphism with repelling end `from`, attracting end `to`
/// and translation length `step`.  It coincides with the conjugate of the
/// spine shift by carrier(from, to).
inline Automorphism build_translation(TreeParams p, const End& from, const End& to, long step) {
  Tree t(p);
  t.check(from);
  t.check(to);
  if (from == to) throw degenerate_axis_error("translation axis needs two distinct ends");
  if (step < 1) throw representation_error("translation step must be >= 1");
  if (!t.homogeneous() && step % 2 != 0) throw representation_error("odd translation length in a biregular tree");
  Geodesic line(from, to);
  return Automorphism::axis_map(p, line, line, step);
}

/// Rigid automorphism carrying the spine onto the geodesic (from, to), minus
/// end to `from`.
inline Automorphism carrier(TreeParams p, const End& from, const End& to) {
  Tree t(p);
  Geodesic line(from, to);
  long shift = (!t.homogeneous() && line.at(0).parity() != 0) ? 1 : 0;
  return Automorphism::axis_map(p, spine(), line, shift);
}

/// Rigid automorphism carrying the spine edge (s_i, s_{i+1}) onto (a, b),
/// where i = 0, or i = parity(a) in a biregular tree.
inline Automorphism carrier(TreeParams p, const Vertex& a, const Vertex& b) {
  Tree t(p);
  t.check(OrientedEdge{a, b});
  Geodesic line = Factor::line_through(t, OrientedEdge{a, b});
  long i = line.project(a);
  long s0 = t.homogeneous() ? 0 : a.parity();
  return Automorphism::axis_map(p, spine(), line, i - s0);
}

/// Spine index carried onto the first vertex by carrier(p, a, b).
inline long carrier_spine_index(TreeParams p, const Vertex& a) {
  return p.homogeneous() ? 0 : a.parity();
}

/// Standard spine vertex s_k: s_0 = root, s_k = [1^k], s_{-k} = [0,1^(k-1)].
inline Vertex spine_vertex(long k) { return spine().at(k); }

}  // namespace treescale
