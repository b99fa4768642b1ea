#pragma once

#include <memory>
#include <vector>

#include "cat0sq/ball.hpp"
#include "cat0sq/path.hpp"

namespace cat0sq {

struct BreakpointCheck {
  int index = -1;
  double link_distance = 0;
  /// max(0, pi - link_distance).
  double deficit = 0;
};

struct LocalCheck {
  bool pass = true;
  /// One entry per interior breakpoint.
  std::vector<BreakpointCheck> breakpoints;
  /// Indices of breakpoints with link distance below pi - eps.
  std::vector<int> deficient;
};

LocalCheck local_geodesic_check(const PLPath& path, const DevelopedBall& ball, double eps = kDefaultEps);
/// Local geodesic whose directions at every interior breakpoint are at link distance pi within eps.
bool r_geodesic_check(const PLPath& path, const DevelopedBall& ball, double eps = kDefaultEps);

/// Exact CAT(0) geodesic between two points of the ball, by visibility over unfolded galleries.
/// Throws BallTooSmall when the shortest path in the ball bends at a boundary vertex, and
/// DomainError when p == q.
PLPath geodesic(const DevelopedBall& ball, const Point& p, const Point& q);
double distance(const DevelopedBall& ball, const Point& p, const Point& q);

struct StraightenOptions {
  double eps = kDefaultEps;
  long budget = 100000;
};

/// Repairs deficient breakpoints until the path is a local geodesic. Each repair replaces the stretch
/// between the neighbouring anchors (endpoints, vertex breakpoints and bends) by the exact geodesic.
/// Throws BudgetExceeded with the current deficit when the budget runs out.
PLPath straighten(const PLPath& path, const DevelopedBall& ball, const StraightenOptions& options = {});

/// 1-skeleton seed path (tie-breaking varied by `seed`) followed by straighten.
PLPath shortest_path(const DevelopedBall& ball, const Point& p, const Point& q, double eps = kDefaultEps,
                     unsigned seed = 0, long budget = StraightenOptions{}.budget);

/// Initial direction of the geodesic from p to q.
Direction log_dir(const DevelopedBall& ball, const Point& p, const Point& q);

struct Projection {
  Point point;
  int segment = -1;
  /// Fraction along the segment.
  Rational fraction;
  /// Arc length from the start of the path.
  double parameter = 0;
  double distance = 0;
};

/// Nearest-point projection onto a fixed path. Builds the distance field of the path over all ball
/// vertices once; each query then costs one visibility sweep from the query point.
class PathProjector {
 public:
  PathProjector(const DevelopedBall& ball, PLPath path);
  ~PathProjector();
  PathProjector(PathProjector&&) noexcept;
  PathProjector& operator=(PathProjector&&) noexcept;

  const PLPath& path() const noexcept;
  Projection project(const Point& x) const;
  Projection project_vertex(int v) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Projection project_to_path(const DevelopedBall& ball, const Point& x, const PLPath& path, double eps = kDefaultEps);

struct SlopeInvariant {
  /// tan(alpha), alpha in [0, pi/4].
  Rational tan_alpha;
  double alpha = 0;
};

/// The common angle in [0, pi/4] between the path and the edges of every square it crosses.
/// Throws DomainError if segments disagree.
SlopeInvariant slope_invariant(const PLPath& path, const DevelopedBall& ball, double eps = kDefaultEps);

/// Square root of a rational when it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& r);

}  // namespace cat0sq
