#pragma once

#include <optional>
#include <vector>

#include "cat0sq/complex.hpp"
#include "cat0sq/point.hpp"
#include "cat0sq/rational.hpp"

namespace cat0sq {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultEps = 1e-9;

/// Closed cell carrying a path segment.
struct Cell {
  enum class Kind : std::uint8_t { Edge, Square };
  Kind kind = Kind::Square;
  int index = -1;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Tangent direction at a point. Either a rational vector in the local coordinates of a square
/// containing the anchor (pointing into that square), or the direction along an edge through the
/// anchor toward one of its ends.
struct Direction {
  enum class Kind : std::uint8_t { InSquare, AlongEdge };
  Point anchor;
  Kind kind = Kind::InSquare;
  int carrier = -1;
  Rational dx, dy;  // InSquare only
  int toward = -1;  // AlongEdge only: 0 or 1, the edge end the direction points to
};

/// Direction at `anchor` toward `target`, both in the closed cell `cell`. Vectors parallel to an
/// edge through the anchor are normalized to AlongEdge. Throws DomainError on coincident points.
Direction direction_toward(const SquareComplex& x, const Point& anchor, const Point& target, Cell cell);
/// Direction at `anchor` given by the local vector (dx, dy) of square s; normalized as above.
Direction direction_in_square(const SquareComplex& x, const Point& anchor, int s, Rational dx, Rational dy);

/// Distance in the link of the anchor (path metric, pi/2 per corner). Infinity when the two
/// directions lie in different components. Throws DomainError for different anchors.
double link_distance(const SquareComplex& x, const Direction& u, const Direction& v);
/// min(pi, link_distance).
double angle(const SquareComplex& x, const Point& p, const Direction& u, const Direction& v);

/// Euclidean cone metric: t1 + t2 when the angular separation is at least pi, the law of cosines otherwise.
double cone_distance(double t1, double t2, double link_separation);
/// Same, for two directions at a common anchor.
double cone_distance(const SquareComplex& x, double t1, const Direction& xi1, double t2, const Direction& xi2);

/// Piecewise linear path. Consecutive breakpoints share a closed cell, recorded per segment
/// (the edge when both lie on a common closed edge, otherwise the unique common square).
class PLPath {
 public:
  PLPath() = default;
  /// Throws DomainError if consecutive points coincide or share no closed cell.
  static PLPath from_points(const SquareComplex& x, std::vector<Point> points);

  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::vector<Rational>& squared_lengths() const noexcept { return squared_; }
  int size() const noexcept { return static_cast<int>(points_.size()); }
  int segment_count() const noexcept { return static_cast<int>(cells_.size()); }
  double segment_length(int i) const;
  double length() const;
  /// Arc length at each breakpoint.
  std::vector<double> arc_lengths() const;
  PLPath reversed() const;

  Direction incoming(const SquareComplex& x, int i) const;
  Direction outgoing(const SquareComplex& x, int i) const;

  /// Local coordinates of both ends of segment i in square s (which must contain the segment).
  std::pair<LocalXY, LocalXY> segment_in_square(const SquareComplex& x, int i, int s) const;
  /// Point at fraction f in [0, 1] of segment i.
  Point point_on_segment(const SquareComplex& x, int i, const Rational& f) const;

  friend bool operator==(const PLPath& a, const PLPath& b) { return a.points_ == b.points_; }

 private:
  std::vector<Point> points_;
  std::vector<Cell> cells_;
  std::vector<Rational> squared_;
};

/// Smallest closed cell containing both points, if any.
std::optional<Cell> common_cell(const SquareComplex& x, const Point& p, const Point& q);
/// Exact squared distance between two points in a common closed cell.
Rational squared_distance_in(const SquareComplex& x, const Point& p, const Point& q, Cell cell);

}  // namespace cat0sq
