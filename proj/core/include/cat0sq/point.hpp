#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "cat0sq/complex.hpp"
#include "cat0sq/rational.hpp"

namespace cat0sq {

/// Exact location in a square complex: a vertex, an interior point of an edge, or an interior point
/// of a square. Edge points are parametrized from `ends[0]` (t=0) to `ends[1]` (t=1); square points
/// use the square's local coordinates.
struct Point {
  enum class Kind : std::uint8_t { Vertex, Edge, Square };

  Kind kind = Kind::Vertex;
  int cell = -1;
  Rational a;  // t on an edge, x in a square
  Rational b;  // y in a square

  static Point vertex(int v);
  /// Throws DomainError unless 0 < t < 1.
  static Point on_edge(int e, Rational t);
  /// Throws DomainError unless (x, y) is in the open unit square.
  static Point in_square(int s, Rational x, Rational y);

  friend bool operator==(const Point& p, const Point& q) {
    return p.kind == q.kind && p.cell == q.cell && p.a == q.a && p.b == q.b;
  }
};

using LocalXY = std::pair<Rational, Rational>;

/// Local coordinates of corner k of the unit square.
LocalXY corner_xy(int k);

/// Canonical point for local coordinates (x, y) in the closed square `s`.
Point point_in_closed_square(const SquareComplex& x, int s, Rational px, Rational py);

/// Local coordinates of `p` in square `s`, or nullopt if p is not in the closed square.
std::optional<LocalXY> local_xy(const SquareComplex& x, const Point& p, int s);

/// Squares whose closure contains `p`.
std::vector<int> squares_containing(const SquareComplex& x, const Point& p);

/// Grammar: `v:<id>`, `e:<id>:<t>`, `s:<id>:<x>,<y>` with rational literals.
Point parse_point(std::string_view spec, const SquareComplex& x);
std::string format_point(const Point& p, const SquareComplex& x);

}  // namespace cat0sq
