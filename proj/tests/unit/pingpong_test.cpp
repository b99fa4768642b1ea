#include <cat0sq/pingpong.hpp>
#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "free_product.hpp"

using namespace cat0sq;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Vertex reached from v by following base vertices one edge at a time.
int walk(const DevelopedBall& b, int v, const std::vector<std::string>& ids) {
  for (const auto& id : ids) v = fixtures::neighbour_over(b, v, id);
  return v;
}

double euclid_angle(double ax, double ay, double bx, double by) {
  return std::abs(std::atan2(ax * by - ay * bx, ax * bx + ay * by));
}

}  // namespace

TEST(ImagePoint, TranslatesSquareAndEdgePoints) {
  const auto b = fixtures::grid_ball(6);
  const auto coords = fixtures::grid_coords(b);
  const auto g = lift_map(b, b, b.center(), fixtures::vertex_at(coords, 3, 0));
  const auto p = fixtures::grid_point(b, coords, q(1, 3), q(3, 4));
  const auto img = image_point(g, p);
  ASSERT_TRUE(img);
  EXPECT_EQ(*img, fixtures::grid_point(b, coords, q(10, 3), q(3, 4)));
  const auto e = fixtures::grid_point(b, coords, q(1, 2), q(0));
  EXPECT_EQ(*image_point(g, e), fixtures::grid_point(b, coords, q(7, 2), q(0)));
  const auto far = fixtures::grid_point(b, coords, q(9, 2), q(1, 2));
  EXPECT_FALSE(image_point(g, far));
}

TEST(Axis, LiftedAxesValidate) {
  const auto inst = fixtures::z2_instance();
  EXPECT_NO_THROW(validate_axis(inst.ball, inst.a1));
  EXPECT_NO_THROW(validate_axis(inst.ball, inst.a2));
  EXPECT_DOUBLE_EQ(inst.a1.lower(), -4);
  EXPECT_DOUBLE_EQ(inst.a1.upper(), 4);
  EXPECT_EQ(inst.a1.period_squared(), 9);
  const auto w = fixtures::wedge_instance();
  EXPECT_NO_THROW(validate_axis(w.ball, w.a1));
  EXPECT_EQ(w.a1.period_squared(), 18);
  EXPECT_NEAR(w.a1.upper(), 4 * std::sqrt(2.0), 1e-12);
}

TEST(Axis, PointsAtParameters) {
  const auto inst = fixtures::z2_instance();
  const auto coords = fixtures::grid_coords(inst.ball);
  const auto& x = inst.ball.complex();
  EXPECT_EQ(inst.a1.at(x, 0), Point::vertex(inst.ball.center()));
  EXPECT_EQ(inst.a1.at(x, 2), Point::vertex(fixtures::vertex_at(coords, 2, 0)));
  EXPECT_EQ(inst.a1.at(x, -2.5), fixtures::grid_point(inst.ball, coords, q(-5, 2), q(0)));
  EXPECT_EQ(inst.a2.at(x, 3), Point::vertex(fixtures::vertex_at(coords, 0, 3)));
  EXPECT_THROW(inst.a1.at(x, 4.5), DomainError);
}

TEST(Axis, ReversalNegatesParameters) {
  const auto inst = fixtures::z2_instance();
  const auto r = inst.a1.reversed();
  const auto& x = inst.ball.complex();
  EXPECT_EQ(r.plus_tag(), inst.a1.minus_tag());
  EXPECT_NO_THROW(validate_axis(inst.ball, r));
  for (double t : {-3.0, -1.0, 0.0, 2.0}) EXPECT_EQ(r.at(x, t), inst.a1.at(x, -t));
  EXPECT_EQ(r.reversed().carrier(), inst.a1.carrier());
}

TEST(Axis, ValidationRejectsWrongPeriodAndBends) {
  const auto inst = fixtures::z2_instance();
  const auto& a = inst.a1;
  const Axis wrong(a.carrier(), a.origin(), q(4), a.translation());
  EXPECT_THROW(validate_axis(inst.ball, wrong), DomainError);

  const auto coords = fixtures::grid_coords(inst.ball);
  auto v = [&](int px, int py) { return Point::vertex(fixtures::vertex_at(coords, px, py)); };
  const auto bent = PLPath::from_points(inst.ball.complex(), {v(-1, 0), v(0, 0), v(0, 1)});
  EXPECT_THROW(validate_axis(inst.ball, Axis(bent, 1, q(9), a.translation())), DomainError);
  EXPECT_THROW(Axis(a.carrier(), 99, q(9), a.translation()), DomainError);
  EXPECT_THROW(Axis(a.carrier(), 0, q(0), a.translation()), DomainError);
}

TEST(Axis, TextRoundTrip) {
  const auto w = fixtures::wedge_instance(8, 3);
  const auto text = to_text(w.a2, w.ball);
  const auto back = parse_axis(text, w.ball);
  EXPECT_EQ(back.carrier(), w.a2.carrier());
  EXPECT_EQ(back.origin(), w.a2.origin());
  EXPECT_EQ(back.period_squared(), w.a2.period_squared());
  EXPECT_TRUE(back.translation() == w.a2.translation());
  EXPECT_EQ(to_text(back, w.ball), text);

  EXPECT_THROW(parse_axis("{}", w.ball), ParseError);
  auto bad = text;
  bad.replace(bad.find("cat0sq-axis/1"), 13, "cat0sq-axis/9");
  EXPECT_THROW(parse_axis(bad, w.ball), ParseError);
  try {
    auto broken = text;
    broken.replace(broken.find("\"v:"), 3, "\"q:");
    parse_axis(broken, w.ball);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().rfind("/breakpoints/", 0), 0u);
  }
}

TEST(PerpMargin, ThreeCases) {
  const double a = std::atan(0.5);
  EXPECT_DOUBLE_EQ(perp_margin(0, kPi / 4), kPi / 4);
  EXPECT_DOUBLE_EQ(perp_margin(kPi / 4, kPi / 4), kPi / 2);
  EXPECT_DOUBLE_EQ(perp_margin(0, 0), kPi / 2);
  EXPECT_DOUBLE_EQ(perp_margin(a, a), std::min(2 * a, kPi / 2 - 2 * a));
  EXPECT_DOUBLE_EQ(perp_margin(a, 0), a);
  EXPECT_DOUBLE_EQ(perp_margin(kPi / 4, a), kPi / 4 - a);
  const double b = std::atan(1.0 / 3);
  EXPECT_DOUBLE_EQ(perp_margin(b, b), 2 * b);
  EXPECT_THROW(perp_margin(-0.1, 0), DomainError);
  EXPECT_THROW(perp_margin(0, 1.0), DomainError);
}

TEST(PerpConstant, FromSlopeInvariants) {
  const auto b = fixtures::grid_ball(7);
  const auto x_axis = lift_axis(b, b.center(), {"t0_0", "t1_0", "t2_0"}, 3, 3);
  const auto diag = lift_axis(b, b.center(), {"t0_0", "t1_1", "t2_2"}, 3, 3);
  const auto p = perp_constant(b, x_axis, diag);
  EXPECT_NEAR(p.alpha1, 0, 1e-12);
  EXPECT_NEAR(p.alpha2, kPi / 4, 1e-12);
  EXPECT_NEAR(p.margin, kPi / 4, 1e-12);
  EXPECT_NEAR(perp_constant(b, diag, diag).margin, kPi / 2, 1e-12);
}

TEST(PerpConstant, RejectsAxesThatAreNotRGeodesics) {
  const auto f = fixtures::fake_ball(3);
  const auto& x = f.complex();
  const auto path = PLPath::from_points(
      x, {fixtures::sheet_point(x, 0, 3, q(1), q(1)), Point::vertex(x.vertex("o")), fixtures::sheet_point(x, 3, 3, q(1), q(0))});
  const Axis bent(path, 1, q(2), CellularMap::identity(f.complex_ptr()));
  EXPECT_THROW(perp_constant(f, bent, bent), DomainError);
}

TEST(AngleDecay, PerpendicularGridAxesStayAtQuarterPi) {
  const auto inst = fixtures::z2_instance();
  for (const auto sg : kAllSigns) {
    const auto d = angle_decay(inst.ball, inst.a1, inst.a2, kPi / 6, sg);
    EXPECT_FALSE(d.reached);
    ASSERT_EQ(d.samples.size(), 4u);
    for (const auto& s : d.samples) {
      // Euclidean angle at (s1 t, 0) between the origin and (0, s2 t).
      const double t = s.t;
      EXPECT_NEAR(s.angle1, euclid_angle(-sg.s1 * t, 0, -sg.s1 * t, sg.s2 * t), 1e-12);
      EXPECT_NEAR(s.angle2, kPi / 4, 1e-12);
      EXPECT_NEAR(s.distance, t * std::sqrt(2.0), 1e-9);
    }
    EXPECT_TRUE(d.diverging);
    const auto loose = angle_decay(inst.ball, inst.a1, inst.a2, 0.8, sg);
    EXPECT_TRUE(loose.reached);
    EXPECT_EQ(loose.T, 0);
  }
}

TEST(AngleDecay, IdenticalAxesDecayImmediately) {
  const auto inst = fixtures::z2_instance();
  const auto d = angle_decay(inst.ball, inst.a1, inst.a1, 0.01, {1, 1});
  EXPECT_TRUE(d.reached);
  EXPECT_EQ(d.T, 0);
  EXPECT_FALSE(d.diverging);
}

TEST(AngleDecay, WedgeAxesThroughACommonPoint) {
  const auto w = fixtures::wedge_instance();
  for (const auto sg : kAllSigns) {
    const auto d = angle_decay(w.ball, w.a1, w.a2, 0.1, sg);
    EXPECT_TRUE(d.reached);
    EXPECT_EQ(d.T, 0);
    for (const auto& s : d.samples) EXPECT_NEAR(std::max(s.angle1, s.angle2), 0, 1e-12);
  }
}

TEST(AngleDecay, WedgeAxesMatchTheTripodComparison) {
  // Second axis in the flat hanging off the wedge point p = (3, 0) of the first flat.
  const auto b = fixtures::wedge_ball(10);
  const auto a1 = lift_axis(b, b.center(), {"w", "a1_1", "a2_2"}, 4, 4);
  const int p = walk(b, b.center(), {"a1_0", "a2_0", "w"});
  const auto a2 = lift_axis(b, p, {"w", "b1_1", "b2_2"}, 4, 4);
  const auto d = angle_decay(b, a1, a2, kPi / 12, {1, 1});
  ASSERT_GE(d.samples.size(), 4u);
  for (const auto& s : d.samples) {
    const double c = s.t / std::sqrt(2.0);
    const double oracle = euclid_angle(-c, -c, 3 - c, -c);
    EXPECT_NEAR(s.angle1, oracle, 2e-3) << s.t;
    EXPECT_NEAR(s.angle2, 0, 1e-12);
    // The tripod distance passes through p.
    EXPECT_NEAR(s.distance, std::hypot(3 - c, c) + s.t, 2e-3);
  }
}

TEST(ProjectionDisjointness, GridAxesMeetFar) {
  auto inst = fixtures::z2_instance();
  const auto d = projection_disjointness(inst, 1);
  EXPECT_FALSE(d.holds);
  const auto& x = inst.ball.complex();
  for (const auto& c : d.cases) {
    EXPECT_FALSE(c.disjoint);
    ASSERT_FALSE(c.witnesses.empty());
    for (const auto& w : c.witnesses) {
      const auto p1 = project_to_path(inst.ball, w.point, inst.a1.carrier());
      const auto p2 = project_to_path(inst.ball, w.point, inst.a2.carrier());
      EXPECT_GE(c.signs.s1 * (p1.parameter - 4), 1 - 1e-9) << format_point(w.point, x);
      EXPECT_GE(c.signs.s2 * (p2.parameter - 4), 1 - 1e-9);
    }
  }
}

TEST(ProjectionDisjointness, IdenticalAxesFail) {
  auto inst = fixtures::z2_instance();
  inst.a2 = inst.a1;
  const auto d = projection_disjointness(inst, 1);
  EXPECT_FALSE(d.cases[0].disjoint);
  EXPECT_FALSE(d.cases[3].disjoint);
}

TEST(ProjectionDisjointness, WedgeBranchesAreDisjoint) {
  const auto w = fixtures::wedge_instance();
  const auto d = projection_disjointness(w, 1);
  EXPECT_TRUE(d.holds);
  EXPECT_GT(d.cells, 1000);
  for (const auto& c : d.cases) {
    EXPECT_TRUE(c.disjoint);
    EXPECT_EQ(c.undecided, 0);
  }
}

TEST(Periodicity, TranslationsAreEquivariant) {
  EXPECT_TRUE(periodicity_closure(fixtures::z2_instance(), 1).pass);
  EXPECT_TRUE(periodicity_closure(fixtures::wedge_instance(), 1).pass);
  // Carrier too short to hold an annulus past T.
  const auto short_axes = fixtures::z2_instance(7, 3);
  const auto p = periodicity_closure(short_axes, 1);
  EXPECT_FALSE(p.pass);
  EXPECT_FALSE(p.failures.empty());
}

TEST(Certificate, GridAxesFail) {
  const auto inst = fixtures::z2_instance();
  const auto c = free_certificate(inst);
  EXPECT_EQ(c.verdict, Verdict::ConditionFails);
  ASSERT_TRUE(c.witness);
  ASSERT_TRUE(c.witness_signs);
  const auto p1 = project_to_path(inst.ball, c.witness->point, inst.a1.carrier());
  const auto p2 = project_to_path(inst.ball, c.witness->point, inst.a2.carrier());
  EXPECT_GE(c.witness_signs->s1 * (p1.parameter - 4), c.T - 1e-9);
  EXPECT_GE(c.witness_signs->s2 * (p2.parameter - 4), c.T - 1e-9);
}

TEST(Certificate, WedgeAxesCertified) {
  const auto c = free_certificate(fixtures::wedge_instance());
  EXPECT_EQ(c.verdict, Verdict::FreeRankTwoBallCertified);
  EXPECT_TRUE(c.r_geodesic1 && c.r_geodesic2);
  ASSERT_TRUE(c.perp);
  EXPECT_NEAR(c.perp->margin, kPi / 2, 1e-12);
  EXPECT_NEAR(c.threshold, kPi / 6, 1e-12);
  EXPECT_TRUE(c.disjointness.holds);
  EXPECT_TRUE(c.periodicity.pass);
  EXPECT_FALSE(c.witness);
}

TEST(Certificate, ParallelAxesAreInconclusive) {
  const auto c = free_certificate(fixtures::parallel_instance());
  EXPECT_EQ(c.verdict, Verdict::Inconclusive);
  EXPECT_FALSE(c.witness);
}

TEST(Certificate, InvariantUnderSwapAndReversal) {
  for (const auto& inst : {fixtures::z2_instance(), fixtures::wedge_instance(9, 4)}) {
    const auto base = free_certificate(inst).verdict;
    auto swapped = inst;
    std::swap(swapped.a1, swapped.a2);
    EXPECT_EQ(free_certificate(swapped).verdict, base);
    auto reversed = inst;
    reversed.a1 = inst.a1.reversed();
    EXPECT_EQ(free_certificate(reversed).verdict, base);
    reversed.a2 = inst.a2.reversed();
    EXPECT_EQ(free_certificate(reversed).verdict, base);
  }
}

TEST(Certificate, InvariantUnderChoiceOfIsomorphicCenter) {
  auto t = fixtures::build(gen::torus(3));
  const auto b = develop(t, t->vertex("t1_2"), 7);
  const auto a1 = lift_axis(b, b.center(), {"t1_2", "t2_2", "t0_2"}, 4, 4);
  const auto a2 = lift_axis(b, b.center(), {"t1_2", "t1_0", "t1_1"}, 4, 4);
  EXPECT_EQ(free_certificate({b, a1, a2}).verdict, Verdict::ConditionFails);
}

TEST(Certificate, NonRGeodesicAxisUsesProjectionRouteOnly) {
  const auto f = fixtures::fake_ball(3);
  const auto& x = f.complex();
  const auto path = PLPath::from_points(
      x, {fixtures::sheet_point(x, 0, 3, q(1), q(1)), Point::vertex(x.vertex("o")), fixtures::sheet_point(x, 3, 3, q(1), q(0))});
  const Axis bent(path, 1, q(2), CellularMap::identity(f.complex_ptr()));
  const auto c = free_certificate({f, bent, bent});
  EXPECT_FALSE(c.r_geodesic1);
  EXPECT_FALSE(c.perp);
  EXPECT_NE(c.verdict, Verdict::FreeRankTwoBallCertified);
}

TEST(WordOracle, WedgeGeneratorsSatisfyNoRelation) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const auto w = fixtures::random_reduced_word(rng, 12);
    EXPECT_FALSE(fixtures::evaluate(w, {3, 3}, {3, 3}).trivial());
  }
}

TEST(WordOracle, GridGeneratorsCommute) {
  // In Z^2 the commutator of the two translations vanishes.
  long x = 0, y = 0;
  for (int g : {0, 2, 1, 3}) {
    const int sign = g % 2 == 0 ? 1 : -1;
    (g < 2 ? x : y) += 3 * sign;
  }
  EXPECT_EQ(x, 0);
  EXPECT_EQ(y, 0);
  EXPECT_FALSE(fixtures::evaluate({0, 2, 1, 3}, {3, 0}, {0, 3}).trivial());
}
