#include <cat0sq/generators.hpp>
#include <cat0sq/link.hpp>
#include <cat0sq/sector.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"

using namespace cat0sq;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Same complex with shuffled vertex and square names; `cone` is carried over to the new indices.
ComplexPtr relabeled(const SquareComplex& x, unsigned seed, int& cone) {
  std::vector<int> perm(x.vertex_count());
  for (int i = 0; i < x.vertex_count(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), std::mt19937(seed));
  ComplexBuilder b;
  for (int s = 0; s < x.square_count(); ++s) {
    const auto& sq = x.square_at(s);
    std::array<std::string, 4> cycle;
    for (int k = 0; k < 4; ++k) cycle[k] = "z" + std::to_string(perm[sq.v[k]]);
    b.add_square("f" + std::to_string((s * 7919 + seed) % 100003), cycle);
  }
  auto out = fixtures::build(b.raw());
  cone = out->vertex("z" + std::to_string(perm[cone]));
  return out;
}

// Pattern is an injective, incidence-preserving copy of the model.
void expect_embedded(const SquareComplex& x, const SectorPattern& p) {
  const int n = sheet_count(p.kind), r = p.radius;
  std::set<int> squares;
  for (int i = 0; i < n; ++i) {
    for (int yy = 0; yy < r; ++yy) {
      for (int xx = 0; xx < r; ++xx) {
        const int s = p.square_at(i, xx, yy);
        squares.insert(s);
        std::set<int> corners(x.square_at(s).v.begin(), x.square_at(s).v.end());
        const std::set<int> model{p.vertex_at(i, xx, yy), p.vertex_at(i, xx + 1, yy), p.vertex_at(i, xx, yy + 1),
                                  p.vertex_at(i, xx + 1, yy + 1)};
        EXPECT_EQ(corners, model);
      }
    }
  }
  EXPECT_EQ(static_cast<int>(squares.size()), n * r * r);
  const int rays = n == 1 ? 2 : n;
  EXPECT_EQ(static_cast<int>(p.all_vertices().size()), 1 + rays * r + n * r * r);
  for (int i = 0; i < n; ++i) EXPECT_EQ(p.vertex_at(i, 0, 0), p.cone);
  if (n >= 2) {
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t <= r; ++t) EXPECT_EQ(p.vertex_at(i, 0, t), p.vertex_at((i + 1) % n, t, 0));
    }
  }
}

}  // namespace

TEST(SectorKindNames, RoundTrip) {
  for (auto k : {SectorKind::FlatDisk, SectorKind::QuarterDisk, SectorKind::FakeDisk}) {
    EXPECT_EQ(parse_sector_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_sector_kind("half-disk"), DomainError);
}

TEST(DetectSector, GridCenterHoldsFlatDiskOfRadiusTwo) {
  const auto b = fixtures::grid_ball(4);
  const auto r = detect_sector(b, b.center(), 2, SectorKind::FlatDisk);
  ASSERT_TRUE(r.pattern);
  EXPECT_EQ(r.achieved, 2);
  EXPECT_EQ(r.pattern->all_squares().size(), 16u);
  expect_embedded(b.complex(), *r.pattern);
}

TEST(DetectSector, FakePlaneOfRadiusThreeHasFortyFiveSquares) {
  const auto b = fixtures::fake_ball(3);
  const auto r = detect_sector(b, b.complex().vertex("o"), 3, SectorKind::FakeDisk);
  ASSERT_TRUE(r.pattern);
  EXPECT_EQ(r.pattern->all_squares().size(), 45u);
  expect_embedded(b.complex(), *r.pattern);
}

TEST(DetectSector, GridHasNoFakeDisk) {
  const auto b = fixtures::grid_ball(4);
  const auto r = detect_sector(b, b.center(), 2, SectorKind::FakeDisk);
  EXPECT_FALSE(r.pattern);
  EXPECT_EQ(r.achieved, 0);
}

TEST(DetectSector, QuarterDiskAtGridCenterAndInASingleSquare) {
  const auto b = fixtures::grid_ball(5);
  const auto r = detect_sector(b, b.center(), 3, SectorKind::QuarterDisk);
  ASSERT_TRUE(r.pattern);
  EXPECT_EQ(r.pattern->all_squares().size(), 9u);
  expect_embedded(b.complex(), *r.pattern);

  auto c = fixtures::build(gen::single_square());
  const auto cb = as_ball(c, 0);
  EXPECT_TRUE(detect_sector(cb, 0, 1, SectorKind::QuarterDisk).pattern);
  const auto two = detect_sector(cb, 0, 2, SectorKind::QuarterDisk);
  EXPECT_FALSE(two.pattern);
  EXPECT_EQ(two.achieved, 1);
}

TEST(DetectSector, ReportsAchievedRadiusWhenTruncated) {
  // Five sheets of radius 2 hold a fake disk of radius 2 but not 3.
  const auto b = fixtures::fake_ball(2);
  const int o = b.complex().vertex("o");
  const auto r = detect_sector(b, o, 3, SectorKind::FakeDisk);
  EXPECT_FALSE(r.pattern);
  EXPECT_EQ(r.achieved, 2);
  EXPECT_EQ(detect_sector(b, o, 3, SectorKind::FlatDisk).achieved, 0);
}

TEST(DetectSector, BallTooSmallIsDistinctFromNotFound) {
  const auto b = fixtures::grid_ball(3);
  EXPECT_NO_THROW(detect_sector(b, b.center(), 2, SectorKind::FlatDisk));
  EXPECT_THROW(detect_sector(b, b.center(), 3, SectorKind::FlatDisk), BallTooSmall);
  EXPECT_THROW(detect_sector(b, b.center(), 0, SectorKind::FlatDisk), DomainError);
  const auto coords = fixtures::grid_coords(b);
  EXPECT_THROW(detect_sector(b, fixtures::vertex_at(coords, 1, 0), 2, SectorKind::FlatDisk), BallTooSmall);
}

TEST(DetectSector, FakeDiskAtEveryRadiusUpToFive) {
  for (int r = 1; r <= 5; ++r) {
    const auto b = fixtures::fake_ball(r);
    const auto found = detect_sector(b, b.complex().vertex("o"), r, SectorKind::FakeDisk);
    ASSERT_TRUE(found.pattern) << r;
    EXPECT_EQ(static_cast<int>(found.pattern->all_squares().size()), 5 * r * r);
  }
}

TEST(DetectSector, InvariantUnderRelabeling) {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto src = fixtures::fake_ball(3);
    int cone = src.complex().vertex("o");
    const auto f = relabeled(src.complex(), seed, cone);
    const auto b = as_ball(f, cone);
    const auto r = detect_sector(b, cone, 3, SectorKind::FakeDisk);
    ASSERT_TRUE(r.pattern);
    EXPECT_EQ(r.pattern->all_squares().size(), 45u);
    EXPECT_FALSE(detect_sector(b, cone, 3, SectorKind::FlatDisk).pattern);
  }
}

TEST(DetectSector, ScanFindsExactlyTheConeOfTheFakePlane) {
  const auto b = fixtures::fake_ball(3);
  for (int jobs : {1, 4}) {
    const auto scan = detect_sectors(b, 1, SectorKind::FakeDisk, jobs);
    ASSERT_EQ(scan.found.size(), 1u);
    EXPECT_EQ(scan.found[0].cone, b.complex().vertex("o"));
    EXPECT_TRUE(scan.skipped.empty());
  }
}

TEST(DetectSector, FakeDiskImpliesFiveLoopInLink) {
  for (auto raw : {gen::fake_plane(2), gen::cone_of_quarters(6, 2), gen::tripod_product(), gen::single_square()}) {
    auto x = fixtures::build(raw);
    const auto b = as_ball(x, 0);
    for (const auto& p : detect_sectors(b, 1, SectorKind::FakeDisk).found) {
      const auto loops = simple_cycles(link(*x, p.cone), 5);
      EXPECT_TRUE(std::any_of(loops.cycles.begin(), loops.cycles.end(), [](const auto& c) { return c.size() == 5; }));
    }
  }
}

TEST(Curvature, FakeDisksCarryMinusHalfPi) {
  for (int r = 2; r <= 5; ++r) {
    const auto b = fixtures::fake_ball(r);
    const auto p = detect_sector(b, b.complex().vertex("o"), r, SectorKind::FakeDisk);
    ASSERT_TRUE(p.pattern);
    const auto c = curvature(b.complex(), p.pattern->all_squares());
    EXPECT_TRUE(c.disk);
    EXPECT_TRUE(c.gauss_bonnet);
    EXPECT_EQ(c.interior_quarter_turns, -1);
    EXPECT_NEAR(c.interior_curvature, -kPi / 2, 1e-12);
    EXPECT_NEAR(2 * kPi - c.boundary_turning, c.interior_curvature, 1e-12);
  }
}

TEST(Curvature, FlatDisksCarryNone) {
  for (int r = 2; r <= 4; ++r) {
    const auto b = fixtures::grid_ball(2 * r);
    const auto p = detect_sector(b, b.center(), r, SectorKind::FlatDisk);
    ASSERT_TRUE(p.pattern);
    const auto c = curvature(b.complex(), p.pattern->all_squares());
    EXPECT_TRUE(c.disk);
    EXPECT_EQ(c.interior_quarter_turns, 0);
    EXPECT_EQ(c.boundary_quarter_turns, 4);
    EXPECT_NEAR(c.interior_curvature, 0, 1e-12);
  }
}

TEST(Curvature, NonDisks) {
  const auto b = fixtures::grid_ball(4);
  const auto p = detect_sector(b, b.center(), 2, SectorKind::FlatDisk);
  ASSERT_TRUE(p.pattern);
  // Removing the four squares around the center leaves an annulus.
  auto squares = p.pattern->all_squares();
  std::vector<int> annulus;
  std::set<int> inner;
  for (int i = 0; i < 4; ++i) inner.insert(p.pattern->square_at(i, 0, 0));
  for (int s : squares) {
    if (!inner.count(s)) annulus.push_back(s);
  }
  EXPECT_FALSE(curvature(b.complex(), annulus).disk);
  // Two squares meeting in a single vertex.
  EXPECT_FALSE(curvature(b.complex(), {p.pattern->square_at(0, 0, 0), p.pattern->square_at(2, 0, 0)}).disk);
  EXPECT_FALSE(curvature(b.complex(), {}).disk);
  // The tripod product has an edge in three squares.
  auto t = fixtures::build(gen::tripod_product());
  std::vector<int> all(t->square_count());
  for (int s = 0; s < t->square_count(); ++s) all[s] = s;
  EXPECT_FALSE(curvature(*t, all).disk);
}

TEST(ClassifyDirection, EdgeParallelIsSingular) {
  const auto b = fixtures::grid_ball(4);
  const auto p = detect_sector(b, b.center(), 2, SectorKind::FlatDisk).pattern;
  ASSERT_TRUE(p);
  EXPECT_TRUE(classify_direction(*p, q(1), q(0)).singular);
  EXPECT_FALSE(classify_direction(*p, q(1), q(1)).singular);
  EXPECT_TRUE(classify_direction(*p, q(0), q(-3)).singular);
  EXPECT_FALSE(classify_direction(*p, q(-2, 3), q(5, 7)).singular);
  EXPECT_THROW(classify_direction(*p, q(0), q(0)), DomainError);

  const auto small = detect_sector(b, b.center(), 1, SectorKind::FlatDisk).pattern;
  ASSERT_TRUE(small);
  EXPECT_THROW(classify_direction(*small, q(1), q(0)), BallTooSmall);
  const auto f = fixtures::fake_ball(2);
  const auto fake = detect_sector(f, f.complex().vertex("o"), 2, SectorKind::FakeDisk).pattern;
  EXPECT_THROW(classify_direction(*fake, q(1), q(0)), DomainError);
}

TEST(SingularSpacing, FourEvenlySpacedRays) {
  const auto b = fixtures::grid_ball(4);
  const auto p = detect_sector(b, b.center(), 2, SectorKind::FlatDisk).pattern;
  ASSERT_TRUE(p);
  const auto r = singular_spacing_check(b, *p);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.angles.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.angles[i], i * kPi / 2, 1e-12);

  const auto flat = fixtures::flat_ball(3);
  const auto fp = detect_sector(flat, flat.complex().vertex("o"), 3, SectorKind::FlatDisk).pattern;
  ASSERT_TRUE(fp);
  EXPECT_TRUE(singular_spacing_check(flat, *fp).pass);

  const auto small = detect_sector(b, b.center(), 1, SectorKind::FlatDisk).pattern;
  EXPECT_THROW(singular_spacing_check(b, *small), BallTooSmall);
}

TEST(SingularSpacing, SameVerdictAfterRelabeling) {
  const auto src = fixtures::flat_ball(2);
  int cone = src.complex().vertex("o");
  const auto f = relabeled(src.complex(), 7, cone);
  const auto b = as_ball(f, cone);
  const auto p = detect_sector(b, cone, 2, SectorKind::FlatDisk).pattern;
  ASSERT_TRUE(p);
  EXPECT_TRUE(singular_spacing_check(b, *p).pass);
}
