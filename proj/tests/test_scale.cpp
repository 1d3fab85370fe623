#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "support.hpp"

using namespace treescale;

namespace {

const TreeParams kT3{2, 2, 1};

// Exhaustive index oracle at a ball fixator: every automorphism of the
// finite ball B(gc, R) rooted at gc that fixes B(gc, r) pointwise is listed
// explicitly, and distinct restrictions to B(c, r) are counted.  These
// automorphisms are exactly the restrictions of tree automorphisms fixing
// g B(c, r).
BigInt exhaustive_index(const Automorphism& g, const Vertex& c, int r) {
  const TreeParams& p = g.params();
  oracle::ExplicitBall ball(p.qE, p.qO, 9);
  Word x = g(c).address();
  std::vector<int> dist_x = ball.bfs(x), dist_c = ball.bfs(c.address());
  int R = dist_x[ball.index.at(c.address())] + r;
  if (static_cast<int>(x.size()) + R > 9) throw std::logic_error("oracle ball too small");

  // children of u in the tree rooted at x
  auto kids = [&](int u) {
    std::vector<int> out;
    for (int v : ball.adj[u])
      if (dist_x[v] == dist_x[u] + 1) out.push_back(v);
    return out;
  };
  std::vector<int> in_b;
  for (std::size_t i = 0; i < ball.nodes.size(); ++i)
    if (dist_c[i] >= 0 && dist_c[i] <= r) in_b.push_back(static_cast<int>(i));

  std::set<std::vector<int>> restrictions;
  std::map<int, int> image;
  // expand the partial map breadth-first over a queue of mapped vertices
  std::function<void(std::vector<int>)> expand = [&](std::vector<int> frontier) {
    if (frontier.empty()) {
      std::vector<int> rb;
      for (int v : in_b) rb.push_back(image.at(v));
      restrictions.insert(rb);
      return;
    }
    int u = frontier.back();
    frontier.pop_back();
    if (dist_x[u] == R) return expand(frontier);
    std::vector<int> src = kids(u), dst = kids(image.at(u));
    std::vector<int> perm(src.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (dist_x[u] < r && !std::is_sorted(perm.begin(), perm.end())) continue;  // fix B(x, r)
      std::vector<int> next = frontier;
      for (std::size_t i = 0; i < src.size(); ++i) {
        image[src[i]] = dst[perm[i]];
        next.push_back(src[i]);
      }
      expand(next);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int v : src) image.erase(v);
  };
  int xi = ball.index.at(x);
  image[xi] = xi;
  expand({xi});
  return restrictions.size();
}

TEST(Scale, Examples) {
  EXPECT_EQ(scale(Automorphism::spine_shift(kT3, 1)), 2);
  EXPECT_EQ(scale(Automorphism::spine_shift({2, 3, 1}, 2)), 6);
  EXPECT_EQ(scale(Automorphism::spine_shift({2, 3, 1}, -4)), 36);
  EXPECT_EQ(scale(Automorphism::portrait(kT3, 2, {{Vertex::root(), Word{1, 2, 0}}})), 1);
  EXPECT_EQ(scale(Automorphism::inversion(kT3, {Vertex::root(), Vertex({1})})), 1);
}

TEST(Scale, SegmentProductMatchesClosedForm) {
  for (TreeParams p : {TreeParams{2, 2, 1}, TreeParams{3, 3, 1}, TreeParams{2, 3, 1}, TreeParams{3, 5, 1}}) {
    Rng rng(31);
    Sampler s(p, rng);
    for (int i = 0; i < 100; ++i) {
      Automorphism g = s.composite(4);
      long l = translation_length(g);
      BigInt want = 1;
      if (p.homogeneous()) {
        for (long k = 0; k < l; ++k) want *= p.qE;
      } else {
        for (long k = 0; k < l / 2; ++k) want *= p.qE * p.qO;
      }
      ASSERT_EQ(scale(g), want);
    }
  }
}

TEST(Oracle, Examples) {
  OracleBudget b;
  EXPECT_EQ(scale_bruteforce_index(Automorphism::identity(kT3), BallFixatorSpec{Vertex({1, 2}), 2}, b), 1);
  EXPECT_EQ(scale_bruteforce_index(Automorphism::spine_shift(kT3, 1), BallFixatorSpec{Vertex::root(), 1}, b), 2);
  Automorphism rot = Automorphism::portrait(kT3, 2, {{Vertex::root(), Word{1, 2, 0}}, {Vertex({1}), Word{0, 2, 1}}});
  for (int r = 0; r <= 3; ++r) EXPECT_EQ(scale_bruteforce_index(rot, BallFixatorSpec{Vertex::root(), r}, b), 1);
}

TEST(Oracle, BudgetIsEnforced) {
  OracleBudget b;
  Automorphism g = Automorphism::spine_shift(kT3, 1);
  EXPECT_THROW(scale_bruteforce_index(g, BallFixatorSpec{Vertex::root(), 4}, b), oracle_budget_error);
  EXPECT_THROW(scale_bruteforce_index(Automorphism::spine_shift(kT3, 5), BallFixatorSpec{Vertex::root(), 1}, b),
               oracle_budget_error);
  EXPECT_THROW(scale_bruteforce_index(Automorphism::spine_shift({4, 4, 1}, 1), BallFixatorSpec{Vertex::root(), 1}, b),
               oracle_budget_error);
}

TEST(Oracle, AgreesWithExhaustiveEnumeration) {
  for (TreeParams p : {TreeParams{2, 2, 1}, TreeParams{2, 3, 1}}) {
    Rng rng(32);
    Sampler s(p, rng);
    int checked = 0;
    while (checked < 40) {
      Automorphism g = s.composite(3);
      Vertex c = s.vertex(2);
      long d = static_cast<long>(g.tree().distance(c, g(c)));
      if (d > 2 || g(c).depth() > 4) continue;
      ++checked;
      ASSERT_EQ(scale_bruteforce_index(g, BallFixatorSpec{c, 1}, OracleBudget{}), exhaustive_index(g, c, 1));
    }
  }
  EXPECT_EQ(exhaustive_index(Automorphism::spine_shift(kT3, 1), Vertex::root(), 1), 2);
}

TEST(Minimizing, Examples) {
  Automorphism g = Automorphism::spine_shift(kT3, 1);
  EXPECT_TRUE(is_minimizing(BallFixatorSpec{Vertex::root(), 1}, g));
  EXPECT_TRUE(is_minimizing(BallFixatorSpec{Vertex({1, 1}), 1}, g));
  BigInt off = scale_bruteforce_index(g, BallFixatorSpec{Vertex({2}), 1}, {});
  EXPECT_GT(off, scale(g));
  EXPECT_FALSE(is_minimizing(BallFixatorSpec{Vertex({2}), 1}, g));
  Automorphism rot = Automorphism::portrait(kT3, 1, {{Vertex::root(), Word{1, 0, 2}}});
  EXPECT_TRUE(is_minimizing(BallFixatorSpec{Vertex::root(), 2}, rot));
}

TEST(Minimizing, SegmentFixatorOnTheAxis) {
  for (TreeParams p : {TreeParams{2, 2, 1}, TreeParams{3, 3, 1}, TreeParams{2, 3, 1}}) {
    Rng rng(33);
    Sampler s(p, rng);
    for (int i = 0; i < 60; ++i) {
      Automorphism g = s.translation(4);
      Motion m = motion(g);
      SubtreeFixatorSpec V = segment_fixator(g.tree(), m.point, g(m.point));
      ASSERT_TRUE(is_minimizing(V, g, OracleBudget{3, 4, 4}));
    }
  }
}

TEST(Spectral, PowersOnAMinimizingSegment) {
  Rng rng(34);
  Sampler s(kT3, rng);
  for (int i = 0; i < 30; ++i) {
    Automorphism g = conjugate(s.elliptic_at(s.vertex(2)), Automorphism::spine_shift(kT3, 1));
    Motion m = motion(g);
    SubtreeFixatorSpec V = segment_fixator(g.tree(), m.point, g(m.point));
    for (long n = 1; n <= 3; ++n) ASSERT_EQ(scale_bruteforce_index(power(g, n), V, {}), BigInt(1) << n);
  }
}

TEST(PowerLaw, ScaleOfPowers) {
  for (TreeParams p : {TreeParams{2, 2, 1}, TreeParams{3, 3, 1}, TreeParams{2, 3, 1}}) {
    Rng rng(35);
    Sampler s(p, rng);
    for (int i = 0; i < 200; ++i) {
      Automorphism g = s.composite(4);
      BigInt sg = scale(g), acc = 1;
      for (long n = 1; n <= 4; ++n) {
        acc *= sg;
        ASSERT_EQ(scale(power(g, n)), acc);
      }
    }
  }
}

TEST(Modular, TrivialOnFullAutomorphismGroup) {
  EXPECT_EQ(modular(Automorphism::identity(kT3)), 1);
  for (TreeParams p : {TreeParams{2, 2, 1}, TreeParams{2, 3, 1}}) {
    Rng rng(36);
    Sampler s(p, rng);
    for (int i = 0; i < 500; ++i) {
      Automorphism g = s.composite(3), h = s.composite(3);
      ASSERT_EQ(modular(compose(g, h)), modular(g) * modular(h));
      if (is_hyperbolic(g)) {
        ASSERT_EQ(modular(g), 1);
      }
    }
  }
}

TEST(Normalizer, EllipticIndexOneExactlyWhenBallIsPreserved) {
  Rng rng(37);
  Sampler s(kT3, rng);
  const Tree& t = s.tree();
  BallFixatorSpec V{Vertex({1}), 1};
  std::vector<Vertex> B = t.ball(V.center, V.radius);
  for (int i = 0; i < 200; ++i) {
    Automorphism h = s.elliptic_at(s.vertex(2));
    std::vector<Vertex> hB;
    for (const auto& v : B) hB.push_back(h(v));
    std::sort(hB.begin(), hB.end());
    ASSERT_EQ(scale_bruteforce_index(h, V, OracleBudget{3, 3, 8}) == 1, hB == B);
  }
}

}  // namespace
