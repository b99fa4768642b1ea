#include <cat0sq/generators.hpp>
#include <cat0sq/link.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"

using namespace cat0sq;

namespace {

// Exhaustive enumeration over node subsets and orderings; independent of the backtracking code.
std::map<int, int> brute_force_cycle_counts(const LinkGraph& l, int max_len) {
  const int n = l.node_count();
  std::set<std::vector<int>> seen;
  std::vector<int> path;
  std::function<void(int)> extend = [&](int u) {
    for (int w = 0; w < n; ++w) {
      if (l.arc_between(u, w) < 0) continue;
      if (w == path.front() && path.size() >= 3) seen.insert(canonical_cycle(path));
      if (std::find(path.begin(), path.end(), w) != path.end() || static_cast<int>(path.size()) >= max_len) continue;
      path.push_back(w);
      extend(w);
      path.pop_back();
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    extend(s);
  }
  std::map<int, int> counts;
  for (const auto& c : seen) ++counts[static_cast<int>(c.size())];
  return counts;
}

std::map<int, int> counts_of(const LoopReport& r) {
  std::map<int, int> counts;
  for (const auto& c : r.cycles) ++counts[static_cast<int>(c.size())];
  return counts;
}

}  // namespace

TEST(Link, GridInteriorVertexIsFourCycle) {
  const auto x = SquareComplex::from_raw(gen::grid(5));
  const auto l = link(x, "p2_2");
  EXPECT_EQ(l.node_count(), 4);
  EXPECT_EQ(l.arc_count(), 4);
  const auto r = simple_cycles(l, 6);
  ASSERT_EQ(r.cycles.size(), 1u);
  EXPECT_EQ(r.cycles[0].size(), 4u);
  EXPECT_EQ(r.girth, 4);
}

TEST(Link, FakePlaneConeIsFiveCycle) {
  const auto x = SquareComplex::from_raw(gen::fake_plane(3));
  const auto l = link(x, "o");
  EXPECT_EQ(l.node_count(), 5);
  EXPECT_EQ(l.arc_count(), 5);
  const auto r = simple_cycles(l, 8);
  ASSERT_EQ(r.cycles.size(), 1u);
  EXPECT_EQ(r.cycles[0].size(), 5u);
}

TEST(Link, SquareCornerIsPath) {
  const auto x = SquareComplex::from_raw(gen::single_square());
  const auto l = link(x, "a");
  EXPECT_EQ(l.node_count(), 2);
  EXPECT_EQ(l.arc_count(), 1);
  EXPECT_FALSE(girth(l).has_value());
  EXPECT_TRUE(simple_cycles(l, 5).cycles.empty());
}

TEST(Link, UnknownVertex) {
  const auto x = SquareComplex::from_raw(gen::single_square());
  EXPECT_THROW(link(x, "zz"), DomainError);
  EXPECT_THROW(simple_cycles(link(x, "a"), 2), DomainError);
}

TEST(Link, CubeCornerIsThreeCycle) {
  const auto x = SquareComplex::from_raw(gen::cube_corner());
  const auto r = simple_cycles(link(x, "c"), 6);
  ASSERT_EQ(r.cycles.size(), 1u);
  EXPECT_EQ(r.cycles[0].size(), 3u);
}

TEST(Link, CompleteBipartiteCounts) {
  const auto x = SquareComplex::from_raw(gen::tripod_product());
  const auto l = link(x, "cc");
  EXPECT_EQ(l.node_count(), 6);
  EXPECT_EQ(l.arc_count(), 9);
  const auto r = simple_cycles(l, 8);
  EXPECT_EQ(r.girth, 4);
  const auto oracle = brute_force_cycle_counts(l, 8);
  EXPECT_EQ(oracle.at(4), 9);
  EXPECT_EQ(oracle.at(6), 6);
  EXPECT_EQ(counts_of(r), oracle);
}

TEST(Link, CyclesAreCanonicalAndSorted) {
  const auto x = SquareComplex::from_raw(gen::tripod_product());
  const auto r = simple_cycles(link(x, "cc"), 8);
  for (std::size_t i = 0; i < r.cycles.size(); ++i) {
    EXPECT_EQ(canonical_cycle(r.cycles[i]), r.cycles[i]);
    EXPECT_GE(static_cast<int>(r.cycles[i].size()), *r.girth);
    EXPECT_EQ(std::set<int>(r.cycles[i].begin(), r.cycles[i].end()).size(), r.cycles[i].size());
    if (i > 0) {
      const auto& a = r.cycles[i - 1];
      const auto& b = r.cycles[i];
      EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
    }
  }
}

TEST(Link, DegreesMatchCornerDoubleCounting) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto x = SquareComplex::from_raw(gen::random_complex(seed, 20));
    for (int v = 0; v < x.vertex_count(); ++v) {
      const auto l = link(x, v);
      int corner_count = 0;
      for (int n = 0; n < l.node_count(); ++n) {
        int sides = 0;
        for (const auto& s : x.sides_of(l.edge_of(n))) sides += x.corner_index(s.square, v) >= 0;
        EXPECT_EQ(l.degree(n), sides);
        corner_count += l.degree(n);
      }
      EXPECT_EQ(corner_count, 2 * static_cast<int>(x.corners_at(v).size()));
    }
  }
}

TEST(Link, SimpleCyclesAgreeWithBruteForce) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto x = SquareComplex::from_raw(gen::random_complex(seed, 30));
    for (int v = 0; v < x.vertex_count(); ++v) {
      const auto l = link(x, v);
      if (l.node_count() > 12) continue;
      EXPECT_EQ(counts_of(simple_cycles(l, 7)), brute_force_cycle_counts(l, 7)) << "seed " << seed;
    }
  }
}

TEST(Npc, FlatGridIsNpc) {
  EXPECT_TRUE(is_npc(SquareComplex::from_raw(gen::grid(5))).npc);
}

TEST(Npc, CubeCornerWitness) {
  const auto x = SquareComplex::from_raw(gen::cube_corner());
  const auto r = is_npc(x);
  ASSERT_FALSE(r.npc);
  EXPECT_EQ(x.vertex_id(r.witness->vertex), "c");
  EXPECT_EQ(r.witness->edges.size(), 3u);
  EXPECT_THROW(require_npc(x), CurvatureError);
}

TEST(Npc, FakePlaneIsNpc) {
  EXPECT_TRUE(is_npc(SquareComplex::from_raw(gen::fake_plane(3))).npc);
}

TEST(Npc, ParallelAgreesWithSequential) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = SquareComplex::from_raw(gen::random_complex(seed, 30));
    const auto a = is_npc(x, 1);
    const auto b = is_npc(x, 4);
    EXPECT_EQ(a.npc, b.npc);
    if (!a.npc) EXPECT_EQ(a.witness->edges, b.witness->edges);
  }
}

TEST(FiveLoop, GridHasNone) {
  EXPECT_TRUE(has_five_loop(SquareComplex::from_raw(gen::grid(5))).empty());
  EXPECT_TRUE(has_five_loop(SquareComplex::from_raw(gen::torus(3))).empty());
}

TEST(FiveLoop, FakePlaneConeOnly) {
  const auto x = SquareComplex::from_raw(gen::fake_plane(3));
  const auto loops = has_five_loop(x);
  ASSERT_EQ(loops.size(), 1u);
  EXPECT_EQ(x.vertex_id(loops[0].vertex), "o");
  EXPECT_EQ(loops[0].edges.size(), 5u);
}

TEST(FiveLoop, BipartiteLinkHasNone) {
  const auto x = SquareComplex::from_raw(gen::tripod_product());
  EXPECT_TRUE(brute_force_cycle_counts(link(x, "cc"), 5).count(5) == 0);
  EXPECT_TRUE(has_five_loop(x).empty());
}

TEST(Link, GirthInvariantUnderIsomorphism) {
  auto x = fixtures::build(gen::torus(3));
  std::vector<std::pair<std::string, std::string>> swap;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      swap.emplace_back("t" + std::to_string(a) + "_" + std::to_string(b),
                        "t" + std::to_string(b) + "_" + std::to_string((3 - a) % 3));
    }
  }
  const auto f = CellularMap::from_vertex_map(x, x, swap);
  ASSERT_TRUE(f.is_isomorphism());
  for (int v = 0; v < x->vertex_count(); ++v) EXPECT_EQ(girth(link(*x, v)), girth(link(*x, f.vertex(v))));
}
