#include <cat0sq/ball.hpp>
#include <cat0sq/generators.hpp>
#include <cat0sq/link.hpp>
#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "fixtures.hpp"

using namespace cat0sq;

namespace {

// Breadth-first search on the integer lattice.
std::set<std::pair<int, int>> lattice_ball(int r) {
  std::set<std::pair<int, int>> seen{{0, 0}};
  std::deque<std::pair<std::pair<int, int>, int>> queue{{{0, 0}, 0}};
  while (!queue.empty()) {
    auto [p, d] = queue.front();
    queue.pop_front();
    if (d == r) continue;
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      std::pair<int, int> q{p.first + dx, p.second + dy};
      if (seen.insert(q).second) queue.push_back({q, d + 1});
    }
  }
  return seen;
}

void expect_link_isomorphisms(const DevelopedBall& b) {
  const auto& x = b.complex();
  for (int v = 0; v < x.vertex_count(); ++v) {
    if (b.is_boundary_vertex(v)) continue;
    const auto up = link(x, v);
    const auto down = link(b.base(), b.covering().vertex(v));
    ASSERT_EQ(up.node_count(), down.node_count());
    ASSERT_EQ(up.arc_count(), down.arc_count());
    for (int i = 0; i < up.arc_count(); ++i) {
      const int na = down.node_of(b.covering().edge(up.edge_of(up.arc(i).a)));
      const int nb = down.node_of(b.covering().edge(up.edge_of(up.arc(i).b)));
      EXPECT_GE(down.arc_between(na, nb), 0);
    }
    const auto g = girth(up);
    EXPECT_TRUE(!g || *g >= 4);
  }
}

}  // namespace

TEST(Develop, TorusVertexCountsMatchLatticeBfs) {
  for (int r = 1; r <= 6; ++r) {
    const auto b = fixtures::grid_ball(r);
    const auto oracle = lattice_ball(r);
    EXPECT_EQ(b.vertex_count_within(r), static_cast<int>(oracle.size())) << "radius " << r;
    EXPECT_EQ(b.vertex_count_within(r), 2 * r * r + 2 * r + 1);
    const auto coords = fixtures::grid_coords(b);
    std::set<std::pair<int, int>> within;
    for (int v = 0; v < b.complex().vertex_count(); ++v) {
      if (b.depth(v) <= r) within.insert(coords[v]);
    }
    EXPECT_EQ(within, oracle);
  }
}

TEST(Develop, RadiusTwoHasThirteenVertices) {
  EXPECT_EQ(fixtures::grid_ball(2).vertex_count_within(2), 13);
}

TEST(Develop, SingleSquareIsItself) {
  auto s = fixtures::build(gen::single_square());
  for (int r = 1; r <= 4; ++r) {
    const auto b = develop(s, s->vertex("a"), r);
    EXPECT_EQ(b.complex().square_count(), 1);
    EXPECT_EQ(b.complex().vertex_count(), 4);
    EXPECT_TRUE(b.covering().is_isomorphism());
  }
}

TEST(Develop, WedgeRadiusOne) {
  auto w = fixtures::build(gen::wedge_of_tori(3));
  const auto b = develop(w, w->vertex("w"), 1);
  const int oracle = static_cast<int>(w->corners_at(w->vertex("w")).size());
  EXPECT_EQ(oracle, 8);
  EXPECT_EQ(b.complex().square_count(), oracle);
  const auto l = link(b.complex(), b.center());
  const auto r = simple_cycles(l, 8);
  ASSERT_EQ(r.cycles.size(), 2u);
  EXPECT_EQ(r.cycles[0].size(), 4u);
  EXPECT_EQ(r.cycles[1].size(), 4u);
}

TEST(Develop, BallsAreSimplyConnectedAndLocallyIsomorphic) {
  std::vector<DevelopedBall> balls;
  auto w = fixtures::build(gen::wedge_of_tori(3));
  balls.push_back(develop(w, w->vertex("w"), 4));
  balls.push_back(develop(w, w->vertex("a1_1"), 3));
  balls.push_back(fixtures::grid_ball(5));
  auto k = fixtures::build(gen::tripod_product());
  balls.push_back(develop(k, k->vertex("cc"), 3));
  for (const auto& b : balls) {
    EXPECT_EQ(b.complex().euler_characteristic(), 1);
    EXPECT_TRUE(b.covering().is_total());
    expect_link_isomorphisms(b);
  }
}

TEST(Develop, NonNpcRejected) {
  auto c = fixtures::build(gen::cube_corner());
  try {
    develop(c, c->vertex("c"), 2);
    FAIL();
  } catch (const CurvatureError& e) {
    EXPECT_EQ(e.vertex(), "c");
    EXPECT_EQ(e.loop().size(), 3u);
  }
  EXPECT_THROW(develop(c, c->vertex("a"), 0), DomainError);
}

TEST(Develop, RadiusEmbeddingCommutesWithCovering) {
  auto w = fixtures::build(gen::wedge_of_tori(3));
  for (int r = 1; r <= 3; ++r) {
    const auto small = develop(w, w->vertex("w"), r);
    const auto big = develop(w, w->vertex("w"), r + 1);
    const auto f = lift_map(small, big, small.center(), big.center());
    EXPECT_TRUE(f.is_total());
    EXPECT_EQ(compose(big.covering(), f), small.covering());
  }
}

TEST(Develop, DeckTransformationPreservesCovering) {
  const auto b = fixtures::grid_ball(5);
  const auto coords = fixtures::grid_coords(b);
  const int far = fixtures::vertex_at(coords, 3, 0);
  const auto deck = lift_map(b, b, b.center(), far);
  for (int v = 0; v < b.complex().vertex_count(); ++v) {
    const int w = deck.vertex(v);
    if (w < 0) continue;
    EXPECT_EQ(b.covering().vertex(w), b.covering().vertex(v));
    EXPECT_EQ(coords[w].first, coords[v].first + 3);
    EXPECT_EQ(coords[w].second, coords[v].second);
  }
}

TEST(Ball, TextRoundTrip) {
  auto w = fixtures::build(gen::wedge_of_tori(3));
  const auto b = develop(w, w->vertex("w"), 2);
  const auto text = to_text(b);
  const auto c = parse_ball(text);
  EXPECT_EQ(c.complex(), b.complex());
  EXPECT_EQ(c.base(), b.base());
  EXPECT_EQ(c.center(), b.center());
  EXPECT_EQ(c.radius(), b.radius());
  for (int v = 0; v < b.complex().vertex_count(); ++v) {
    EXPECT_EQ(c.depth(v), b.depth(v));
    EXPECT_EQ(c.is_boundary_vertex(v), b.is_boundary_vertex(v));
    EXPECT_EQ(c.covering().vertex(v), b.covering().vertex(v));
  }
  EXPECT_EQ(to_text(c), text);
}

TEST(Ball, AsBallRequiresSimplyConnected) {
  EXPECT_THROW(as_ball(fixtures::build(gen::torus(3)), 0), DomainError);
  const auto f = fixtures::fake_ball(3);
  EXPECT_EQ(f.complex().square_count(), 45);
  EXPECT_FALSE(f.is_boundary_vertex(0));
}

TEST(Ball, InteriorMargin) {
  const auto b = fixtures::grid_ball(4);
  EXPECT_EQ(b.interior_margin(b.center()), 3);
}
