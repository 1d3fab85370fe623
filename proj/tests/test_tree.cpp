#include <gtest/gtest.h>

#include "support.hpp"

using namespace treescale;

namespace {

const TreeParams kTrees[] = {{2, 2, 1}, {3, 3, 1}, {2, 3, 1}};

TEST(TreeParams, RejectsSmallBranchingAndSubdivision) {
  EXPECT_THROW(Tree(TreeParams{1, 2, 1}), representation_error);
  EXPECT_THROW(Tree(TreeParams{2, 2, 2}), representation_error);
  EXPECT_NO_THROW(Tree(TreeParams{2, 3, 1}));
}

TEST(Vertex, AddressValidity) {
  Tree t({2, 3, 1});
  EXPECT_TRUE(t.valid(Vertex({2, 3})));
  EXPECT_FALSE(t.valid(Vertex({3})));     // root has labels 0..qE
  EXPECT_FALSE(t.valid(Vertex({1, 0})));  // 0 is the parent edge
  EXPECT_FALSE(t.valid(Vertex({1, 3, 3})));
  EXPECT_THROW(t.check(Vertex({1, 0})), address_error);
  EXPECT_EQ(t.valency(Vertex({1})), 4);
  EXPECT_EQ(t.valency(Vertex({1, 1})), 3);
}

TEST(Distance, Examples) {
  Tree t({2, 2, 1});
  EXPECT_EQ(t.distance(Vertex::root(), Vertex::root()), 0u);
  EXPECT_EQ(t.distance(Vertex({1, 1}), Vertex({1, 2})), 2u);
  EXPECT_THROW(t.distance(Vertex({1, 0}), Vertex::root()), address_error);
}

TEST(Distance, AgreesWithBreadthFirstSearch) {
  for (const auto& p : kTrees) {
    Tree t(p);
    oracle::ExplicitBall ball(p.qE, p.qO, 6);
    ASSERT_EQ(ball.nodes.size(), t.ball(Vertex::root(), 6).size());
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
      const Word& a = rng.pick(ball.nodes);
      const Word& b = rng.pick(ball.nodes);
      ASSERT_EQ(static_cast<int>(t.distance(Vertex(a), Vertex(b))), ball.distance(a, b));
    }
  }
}

TEST(PathBetween, Examples) {
  Tree t({2, 2, 1});
  EXPECT_EQ(t.path_between(Vertex::root(), Vertex::root()), Segment{Vertex::root()});
  EXPECT_EQ(t.path_between(Vertex({1}), Vertex({2})), (Segment{Vertex({1}), Vertex::root(), Vertex({2})}));
}

TEST(PathBetween, IsAGeodesic) {
  for (const auto& p : kTrees) {
    Tree t(p);
    Rng rng(5);
    Sampler s(p, rng);
    for (int i = 0; i < 300; ++i) {
      Vertex a = s.vertex(6), b = s.vertex(6);
      Segment path = t.path_between(a, b);
      ASSERT_EQ(path.size(), t.distance(a, b) + 1);
      ASSERT_EQ(path.front(), a);
      ASSERT_EQ(path.back(), b);
      std::set<Vertex> seen(path.begin(), path.end());
      ASSERT_EQ(seen.size(), path.size());
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        ASSERT_EQ(t.distance(path[k], path[k + 1]), 1u);
        if (!t.homogeneous()) {
          ASSERT_NE(path[k].parity(), path[k + 1].parity());
        }
      }
    }
  }
}

TEST(Distance, MetricAxioms) {
  for (const auto& p : kTrees) {
    Tree t(p);
    Rng rng(6);
    Sampler s(p, rng);
    for (int i = 0; i < 300; ++i) {
      Vertex a = s.vertex(6), b = s.vertex(6), c = s.vertex(6);
      ASSERT_EQ(t.distance(a, b), t.distance(b, a));
      ASSERT_EQ(t.distance(a, b) == 0, a == b);
      ASSERT_LE(t.distance(a, c), t.distance(a, b) + t.distance(b, c));
      // equality exactly when b lies on [a, c]
      Segment ac = t.path_between(a, c);
      bool on = std::find(ac.begin(), ac.end(), b) != ac.end();
      ASSERT_EQ(on, t.distance(a, c) == t.distance(a, b) + t.distance(b, c));
    }
  }
}

TEST(Coherence, Examples) {
  Tree t({2, 2, 1});
  Vertex a({2}), b = Vertex::root(), c({1});
  EXPECT_TRUE(t.coherent({a, b}, {b, c}));
  EXPECT_FALSE(t.coherent({a, b}, {c, b}));
  EXPECT_FALSE(t.coherent({a, b}, {b, a}));
}

TEST(Coherence, TransitiveAlongAGeodesic) {
  Tree t({2, 3, 1});
  Rng rng(8);
  Sampler s(t.params(), rng);
  for (int i = 0; i < 200; ++i) {
    Segment path = t.path_between(s.vertex(6), s.vertex(6));
    if (path.size() < 4) continue;
    std::vector<OrientedEdge> es;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) es.push_back({path[k], path[k + 1]});
    for (std::size_t x = 0; x < es.size(); ++x)
      for (std::size_t y = x + 1; y < es.size(); ++y)
        for (std::size_t z = y + 1; z < es.size(); ++z) {
          ASSERT_TRUE(t.coherent(es[x], es[y]) && t.coherent(es[y], es[z]));
          ASSERT_TRUE(t.coherent(es[x], es[z]));
        }
  }
}

TEST(End, CanonicalFormIsIdempotentAndComplete) {
  End a(Word{1, 1}, Word{1, 1});
  EXPECT_EQ(a.prefix(), Word{});
  EXPECT_EQ(a.period(), Word{1});
  End b(Word{0, 2}, Word{1, 2, 1, 2});
  End c(Word{0, 2, 1}, Word{2, 1});
  EXPECT_EQ(b, c);
  EXPECT_EQ(End(b.prefix(), b.period()), b);
  EXPECT_NE(End(Word{0}, Word{1}), End(Word{}, Word{1}));
}

TEST(End, LettersAndVertices) {
  End e(Word{2}, Word{1, 2});
  EXPECT_EQ(e.letter(0), 2);
  EXPECT_EQ(e.letter(1), 1);
  EXPECT_EQ(e.letter(4), 2);
  EXPECT_EQ(e.vertex_at(3), Vertex({2, 1, 2}));
}

TEST(Ray, Examples) {
  Tree t({2, 2, 1});
  End w(Word{}, Word{1});
  auto r = t.ray(Vertex::root(), w);
  EXPECT_EQ(r.current(), Vertex::root());
  r.advance();
  EXPECT_EQ(r.current(), Vertex({1}));
  r.advance();
  EXPECT_EQ(r.current(), Vertex({1, 1}));

  auto r2 = t.ray(Vertex({2}), w);
  std::vector<Vertex> got;
  for (int i = 0; i < 4; ++i, r2.advance()) got.push_back(r2.current());
  EXPECT_EQ(got, (std::vector<Vertex>{Vertex({2}), Vertex::root(), Vertex({1}), Vertex({1, 1})}));
}

TEST(Ray, DepartureLabelAgreesWithBreadthFirstSearch) {
  // The departure edge of [v, w) is the neighbor of v nearest to a deep
  // vertex of w, measured in an explicit ball.
  for (const auto& p : kTrees) {
    Tree t(p);
    oracle::ExplicitBall ball(p.qE, p.qO, 9);
    Rng rng(13);
    Sampler s(p, rng);
    for (int i = 0; i < 200; ++i) {
      Vertex v = s.vertex(4);
      End w = s.end();
      if (w.prefix().size() > 4) continue;
      Word deep = w.vertex_at(9).address();
      auto d = ball.bfs(deep);
      Label best = -1;
      int bestd = 1 << 30;
      for (Label l : t.labels(v)) {
        int dl = d[ball.index.at(t.neighbor(v, l).address())];
        if (dl < bestd) bestd = dl, best = l;
      }
      ASSERT_EQ(t.departure_label(v, w), best) << v.str() << " " << w.str();
    }
  }
}

TEST(Ball, SizeMatchesBranching) {
  Tree t({2, 3, 1});
  // 1 + 3 + 3*3 + 3*3*2
  EXPECT_EQ(t.ball(Vertex::root(), 3).size(), 1u + 3 + 9 + 18);
  auto b = t.ball(Vertex({1, 1}), 2);
  for (const auto& v : b) EXPECT_LE(t.distance(v, Vertex({1, 1})), 2u);
  EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
}

TEST(Geodesic, SpineIndexing) {
  Geodesic s = spine();
  EXPECT_EQ(s.at(0), Vertex::root());
  EXPECT_EQ(s.at(2), Vertex({1, 1}));
  EXPECT_EQ(s.at(-1), Vertex({0}));
  EXPECT_EQ(s.at(-3), Vertex({0, 1, 1}));
  EXPECT_EQ(s.project(Vertex({2, 1})), 0);
  EXPECT_EQ(s.project(Vertex({1, 2})), 1);
  EXPECT_TRUE(s.contains(Vertex({0, 1})));
  EXPECT_FALSE(s.contains(Vertex({0, 2})));
}

TEST(Geodesic, RelateDisjointAndOverlapping) {
  Tree t({2, 2, 1});
  Geodesic s = spine();
  // leaves the spine at [1] through label 2 and branches at [1,2]
  Geodesic far(End(Word{1, 2, 1}, Word{1}), End(Word{1, 2, 2}, Word{1}));
  AxisRelation r = relate(t, s, far);
  EXPECT_FALSE(r.share_edge);
  EXPECT_EQ(r.bridge, 1);

  Geodesic cross(End(Word{0, 2}, Word{1}), End(Word{1, 1, 2}, Word{1}));
  r = relate(t, s, cross);
  EXPECT_TRUE(r.share_edge);
  EXPECT_EQ(r.overlap_edges, 3);
  EXPECT_EQ(r.direction, +1);

  Geodesic back(cross.plus(), cross.minus());
  EXPECT_EQ(relate(t, s, back).direction, -1);
}

}  // namespace
