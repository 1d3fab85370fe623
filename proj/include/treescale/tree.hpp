#pragma once

// Exact model of the semi-homogeneous (biregular) tree.
//
// Vertices are addressed by their label path from a distinguished root.  The
// root has neighbors labelled 0..qE; every other vertex of parity P has its
// parent on label 0 and its children on labels 1..q_P.  Addresses are thus
// automatically backtrack-free and the graph metric is an lcp computation.
//
// Ends are eventually periodic infinite addresses, stored in canonical form
// (primitive period, shortest prefix) so that equality of ends is equality
// of representations.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "treescale/errors.hpp"

namespace treescale {

using Label = int;
using Word = std::vector<Label>;

struct TreeParams {
  int qE = 2;
  int qO = 2;
  int k = 1;

  constexpr int q(int parity) const noexcept { return parity == 0 ? qE : qO; }
  constexpr bool homogeneous() const noexcept { return qE == qO; }

  void validate() const {
    if (qE < 2 || qO < 2)
      throw representation_error("tree branching numbers must be >= 2 (valency >= 3)");
    if (k != 1)
      throw representation_error("edge subdivision parameter k must be 1");
  }

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

class Vertex {
public:
  Vertex() = default;
  explicit Vertex(Word address) : address_(std::move(address)) {}
  Vertex(std::initializer_list<Label> labels) : address_(labels) {}

  static Vertex root() { return Vertex{}; }

  const Word& address() const noexcept { return address_; }
  std::size_t depth() const noexcept { return address_.size(); }
  int parity() const noexcept { return static_cast<int>(address_.size() % 2); }
  bool is_root() const noexcept { return address_.empty(); }
  Label operator[](std::size_t i) const { return address_[i]; }
  Label last() const { return address_.back(); }

  Vertex parent() const {
    Word w(address_.begin(), address_.end() - 1);
    return Vertex(std::move(w));
  }
  Vertex child(Label l) const {
    Word w = address_;
    w.push_back(l);
    return Vertex(std::move(w));
  }
  Vertex prefix(std::size_t n) const {
    return Vertex(Word(address_.begin(), address_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < address_.size(); ++i) os << (i ? "," : "") << address_[i];
    os << ']';
    return os.str();
  }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  // Shortlex: shallower vertices first, then lexicographic.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.depth() <=> b.depth(); c != 0) return c;
    return a.address_ <=> b.address_;
  }

private:
  Word address_;
};

inline std::ostream& operator<<(std::ostream& os, const Vertex& v) { return os << v.str(); }

struct OrientedEdge {
  Vertex origin;
  Vertex terminus;

  OrientedEdge reversed() const { return {terminus, origin}; }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
  friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

using Segment = std::vector<Vertex>;

/// Eventually periodic end: prefix . period . period . ...
class End {
public:
  End() : period_{1} {}
  End(Word prefix, Word period) : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) throw address_error("end period must be nonempty");
    canonicalize();
  }

  const Word& prefix() const noexcept { return prefix_; }
  const Word& period() const noexcept { return period_; }

  Label letter(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }

  /// Word from position t on, as (prefix, period).
  std::pair<Word, Word> tail(std::size_t t) const {
    if (t <= prefix_.size()) return {Word(prefix_.begin() + static_cast<std::ptrdiff_t>(t), prefix_.end()), period_};
    std::size_t r = (t - prefix_.size()) % period_.size();
    Word q(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
    q.insert(q.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
    return {Word{}, q};
  }

  /// Vertex on the root ray at depth n.
  Vertex vertex_at(std::size_t n) const {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = letter(i);
    return Vertex(std::move(w));
  }

  std::string str() const {
    std::ostringstream os;
    os << Vertex(prefix_).str() << '(' << Vertex(period_).str() << ")^inf";
    return os.str();
  }

  friend bool operator==(const End&, const End&) = default;
  friend auto operator<=>(const End&, const End&) = default;

private:
  void canonicalize() {
    const std::size_t p = period_.size();
    for (std::size_t d = 1; d <= p; ++d) {
      if (p % d) continue;
      bool ok = true;
      for (std::size_t i = d; i < p && ok; ++i) ok = period_[i] == period_[i - d];
      if (ok) {
        period_.resize(d);
        break;
      }
    }
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
      prefix_.pop_back();
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
  }

  Word prefix_;
  Word period_;
};

inline std::ostream& operator<<(std::ostream& os, const End& e) { return os << e.str(); }

inline std::size_t lcp(const Vertex& a, const Vertex& b) {
  std::size_t n = std::min(a.depth(), b.depth()), i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

inline std::size_t lcp(const Vertex& v, const End& e) {
  std::size_t i = 0;
  while (i < v.depth() && v[i] == e.letter(i)) ++i;
  return i;
}

/// Longest common prefix of two ends; nullopt when the ends coincide.
inline std::optional<std::size_t> lcp(const End& a, const End& b) {
  if (a == b) return std::nullopt;
  std::size_t bound = std::max(a.prefix().size(), b.prefix().size()) +
                      std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i <= bound; ++i)
    if (a.letter(i) != b.letter(i)) return i;
  throw internal_consistency_error("distinct canonical ends agree beyond the periodicity bound");
}

/// Lazily emits the geodesic ray from a vertex into an end.
class RayWalker {
public:
  RayWalker(const Vertex& start, const End& end)
      : end_(end), current_(start), meet_(lcp(start, end)), ascending_(start.depth() > meet_) {}

  const Vertex& current() const noexcept { return current_; }
  const End& end() const noexcept { return end_; }

  /// True if the step after the current vertex goes to a child; once true it
  /// stays true.
  bool next_step_descends() const noexcept { return !ascending_; }

  /// Advances one step along the ray and returns the new vertex.
  const Vertex& advance() {
    if (ascending_) {
      current_ = current_.parent();
      if (current_.depth() == meet_) ascending_ = false;
    } else {
      current_ = current_.child(end_.letter(current_.depth()));
    }
    return current_;
  }

private:
  End end_;
  Vertex current_;
  std::size_t meet_;
  bool ascending_;
};

class Tree {
public:
  Tree() = default;
  explicit Tree(TreeParams p) : p_(p) { p_.validate(); }
  Tree(int qE, int qO) : Tree(TreeParams{qE, qO, 1}) {}

  const TreeParams& params() const noexcept { return p_; }
  int q(int parity) const noexcept { return p_.q(parity); }
  int q_at(const Vertex& v) const noexcept { return p_.q(v.parity()); }
  int valency(const Vertex& v) const noexcept { return q_at(v) + 1; }
  bool homogeneous() const noexcept { return p_.homogeneous(); }

  /// Largest label usable as the i-th letter of an address.
  int max_letter(std::size_t position) const noexcept { return p_.q(static_cast<int>(position % 2)); }
  int min_letter(std::size_t position) const noexcept { return position == 0 ? 0 : 1; }

  bool valid(const Vertex& v) const noexcept {
    for (std::size_t i = 0; i < v.depth(); ++i)
      if (v[i] < min_letter(i) || v[i] > max_letter(i)) return false;
    return true;
  }
  void check(const Vertex& v) const {
    if (!valid(v)) throw address_error("invalid vertex address " + v.str());
  }
  bool valid(const End& e) const noexcept {
    std::size_t n = e.prefix().size() + 2 * e.period().size();
    for (std::size_t i = 0; i < n; ++i)
      if (e.letter(i) < min_letter(i) || e.letter(i) > max_letter(i)) return false;
    return true;
  }
  void check(const End& e) const {
    if (!valid(e)) throw address_error("invalid end " + e.str());
  }
  void check(const OrientedEdge& e) const {
    check(e.origin);
    check(e.terminus);
    if (distance(e.origin, e.terminus) != 1)
      throw address_error("edge endpoints " + e.origin.str() + ", " + e.terminus.str() + " are not adjacent");
  }

  /// Neighbor labels at v, ascending.
  std::vector<Label> labels(const Vertex& v) const {
    std::vector<Label> out(static_cast<std::size_t>(q_at(v) + 1));
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  bool has_label(const Vertex& v, Label l) const noexcept { return l >= 0 && l <= q_at(v); }

  Vertex neighbor(const Vertex& v, Label l) const {
    if (!has_label(v, l)) throw address_error("label " + std::to_string(l) + " does not exist at " + v.str());
    if (!v.is_root() && l == 0) return v.parent();
    return v.child(l);
  }

  /// Label at v of the edge toward the adjacent vertex w.
  Label label_toward(const Vertex& v, const Vertex& w) const {
    if (w.depth() + 1 == v.depth() && lcp(v, w) == w.depth()) return 0;
    if (w.depth() == v.depth() + 1 && lcp(v, w) == v.depth()) return w.last();
    throw address_error(v.str() + " and " + w.str() + " are not adjacent");
  }

  std::size_t distance(const Vertex& u, const Vertex& v) const {
    check(u);
    check(v);
    return u.depth() + v.depth() - 2 * lcp(u, v);
  }

  Segment path_between(const Vertex& u, const Vertex& v) const {
    std::size_t m = lcp(u, v);
    Segment out;
    out.reserve(u.depth() + v.depth() - 2 * m + 1);
    for (std::size_t d = u.depth(); d > m; --d) out.push_back(u.prefix(d));
    for (std::size_t d = m; d <= v.depth(); ++d) out.push_back(v.prefix(d));
    return out;
  }

  /// Coherent oriented edges: equal origin and terminus distances; a reverse
  /// pair is declared incoherent.
  bool coherent(const OrientedEdge& e, const OrientedEdge& f) const {
    if (f == e.reversed()) return false;
    return distance(e.origin, f.origin) == distance(e.terminus, f.terminus);
  }

  RayWalker ray(const Vertex& v, const End& e) const { return RayWalker(v, e); }

  /// Label at v of the first edge of the ray [v, e).
  Label departure_label(const Vertex& v, const End& e) const {
    return lcp(v, e) < v.depth() ? 0 : e.letter(v.depth());
  }

  /// Vertices within `radius` of `center`, in shortlex order.
  std::vector<Vertex> ball(const Vertex& center, int radius) const {
    std::vector<Vertex> out{center};
    std::vector<std::pair<Vertex, Label>> frontier{{center, -1}};
    for (int r = 0; r < radius; ++r) {
      std::vector<std::pair<Vertex, Label>> next;
      for (const auto& [u, back] : frontier)
        for (Label l : labels(u)) {
          if (l == back) continue;
          Vertex w = neighbor(u, l);
          next.emplace_back(w, label_toward(w, u));
          out.push_back(w);
        }
      frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// A canonical end whose ray from v leaves through label l.
  End end_through(const Vertex& v, Label l) const {
    Vertex w = neighbor(v, l);
    if (w.depth() > v.depth()) return End(w.address(), Word{1});
    // Stepped to the parent: continue through the smallest other child.
    Label avoid = v.last();
    Label c = w.is_root() ? 0 : 1;
    if (c == avoid) ++c;
    return End(w.child(c).address(), Word{1});
  }

private:
  TreeParams p_{};
};

/// A bi-infinite geodesic between two distinct ends, indexed by the integers
/// with index 0 at the projection of the root and indices increasing toward
/// the plus end.
class Geodesic {
public:
  Geodesic(const End& minus, const End& plus) : minus_(minus), plus_(plus) {
    auto m = lcp(minus, plus);
    if (!m) throw degenerate_axis_error("geodesic requires two distinct ends, got " + minus.str() + " twice");
    branch_ = *m;
  }

  const End& minus() const noexcept { return minus_; }
  const End& plus() const noexcept { return plus_; }
  Vertex origin() const { return plus_.vertex_at(branch_); }

  Vertex at(long k) const {
    if (k >= 0) return plus_.vertex_at(branch_ + static_cast<std::size_t>(k));
    return minus_.vertex_at(branch_ + static_cast<std::size_t>(-k));
  }

  /// Index of the projection of v onto the line.
  long project(const Vertex& v) const {
    std::size_t a = lcp(v, plus_), b = lcp(v, minus_);
    if (a > branch_) return static_cast<long>(a - branch_);
    if (b > branch_) return -static_cast<long>(b - branch_);
    return 0;
  }

  /// Index of the projection of an end that is not one of the line's ends.
  long project(const End& e) const {
    auto a = lcp(e, plus_), b = lcp(e, minus_);
    if (!a || !b) throw degenerate_axis_error("cannot project an end of the line onto it");
    if (*a > branch_) return static_cast<long>(*a - branch_);
    if (*b > branch_) return -static_cast<long>(*b - branch_);
    return 0;
  }

  bool contains(const Vertex& v) const { return at(project(v)) == v; }

  friend bool operator==(const Geodesic& a, const Geodesic& b) {
    return a.minus_ == b.minus_ && a.plus_ == b.plus_;
  }

private:
  End minus_;
  End plus_;
  std::size_t branch_ = 0;
};

/// How two oriented geodesics sit relative to each other.
struct AxisRelation {
  bool share_edge = false;
  long overlap_edges = 0;  // -1 when the overlap is a ray
  int direction = 0;       // +1 same orientation on the overlap, -1 opposite
  long bridge = 0;         // distance between the lines when no edge is shared
};

inline AxisRelation relate(const Tree& t, const Geodesic& a, const Geodesic& b) {
  AxisRelation r;
  if (b.minus() == a.minus() || b.plus() == a.plus()) return {true, -1, +1, 0};
  if (b.minus() == a.plus() || b.plus() == a.minus()) return {true, -1, -1, 0};
  long p = a.project(b.minus()), q = a.project(b.plus());
  if (p != q) {
    r.share_edge = true;
    r.overlap_edges = q > p ? q - p : p - q;
    r.direction = q > p ? +1 : -1;
    return r;
  }
  Vertex x = a.at(p);
  r.bridge = static_cast<long>(t.distance(x, b.at(b.project(x))));
  return r;
}

/// The standard spine through the root: minus end [0](1)^inf, plus end (1)^inf.
inline End spine_minus() { return End(Word{0}, Word{1}); }
inline End spine_plus() { return End(Word{}, Word{1}); }
inline Geodesic spine() { return Geodesic(spine_minus(), spine_plus()); }

}  // namespace treescale
