#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cat0sq/ball.hpp"
#include "cat0sq/rational.hpp"

namespace cat0sq {

enum class SectorKind { FlatDisk, QuarterDisk, FakeDisk };

/// "flat-disk", "quarter-disk", "fake-disk".
std::string_view to_string(SectorKind kind);
/// Throws DomainError for unknown names.
SectorKind parse_sector_kind(std::string_view name);
/// Number of quarter grids in the model: 4, 1, 5.
int sheet_count(SectorKind kind);

/// Embedding of R x R quarter grids glued cyclically along their rays at a cone vertex.
///
/// Chart i has vertices (x, y), 0 <= x, y <= R, with (0, 0) the cone. Its x-axis is ray i and its
/// y-axis is ray i + 1, which is also the x-axis of chart i + 1 (cyclically; a quarter disk has a
/// single chart with two distinct rays).
struct SectorPattern {
  SectorKind kind = SectorKind::FlatDisk;
  int cone = -1;
  int radius = 0;
  /// Ball vertex of chart i at (x, y), row-major in y: charts[i][y * (R + 1) + x].
  std::vector<std::vector<int>> charts;
  /// Ball square of chart i with lower corner (x, y): squares[i][y * R + x].
  std::vector<std::vector<int>> squares;

  int vertex_at(int chart, int x, int y) const { return charts.at(chart).at(y * (radius + 1) + x); }
  int square_at(int chart, int x, int y) const { return squares.at(chart).at(y * radius + x); }
  /// Distinct squares of the pattern, sorted.
  std::vector<int> all_squares() const;
  /// Distinct vertices of the pattern, sorted.
  std::vector<int> all_vertices() const;
};

struct SectorSearch {
  std::optional<SectorPattern> pattern;
  /// Largest radius r <= R for which a pattern exists at the vertex (0 when even r = 1 fails).
  int achieved = 0;
};

/// Exhaustive search for a pattern of the given kind and radius with cone at v. Anchors on the
/// simple link cycles of the matching length at v (a single corner for quarter disks) and grows the
/// charts row by row, backtracking over the squares glued to the rays.
/// Throws BallTooSmall when a boundary vertex lies within 2R - 1 hops of v (interior margin below
/// 2R - 2), DomainError when R < 1 or v is out of range.
SectorSearch detect_sector(const DevelopedBall& ball, int v, int radius, SectorKind kind);

struct SectorScan {
  /// Patterns found, in vertex order.
  std::vector<SectorPattern> found;
  /// Vertices skipped because the ball does not reach 2R - 2 hops around them.
  std::vector<int> skipped;
};

/// detect_sector at every vertex of the ball (or only at `vertex` when it is >= 0), on up to `jobs` threads.
SectorScan detect_sectors(const DevelopedBall& ball, int radius, SectorKind kind, int jobs = 1, int vertex = -1);

/// Curvature of a subcomplex given by its squares, in quarter turns: interior vertices contribute
/// 4 - n and boundary vertices turn by 2 - n, where n counts the corners of the subcomplex at the vertex.
struct CurvatureReport {
  /// Every edge in at most two squares, each vertex link a path or a cycle, Euler characteristic 1.
  bool disk = false;
  int interior_quarter_turns = 0;
  int boundary_quarter_turns = 0;
  /// interior_quarter_turns * pi/2.
  double interior_curvature = 0;
  /// Total turning of the boundary, boundary_quarter_turns * pi/2.
  double boundary_turning = 0;
  /// Interior curvature plus boundary turning equals 2 pi.
  bool gauss_bonnet = false;
};

CurvatureReport curvature(const SquareComplex& x, const std::vector<int>& squares);

struct DirectionClass {
  Rational dx, dy;
  bool singular = false;
};

/// Classifies a direction given in flat-disk chart coordinates: singular exactly when a width-one
/// strip of chart squares runs parallel to it. Throws DomainError for the zero vector or a
/// non-flat pattern, BallTooSmall when the chart radius is below 2.
DirectionClass classify_direction(const SectorPattern& chart, const Rational& dx, const Rational& dy);

struct SpacingReport {
  bool pass = false;
  /// Cone angles of the singular rays, measured in the link from ray 0.
  std::vector<double> angles;
};

/// The singular directions of a flat-disk chart are its four rays, evenly spaced by pi/2.
/// Throws BallTooSmall when the chart radius is below 2.
SpacingReport singular_spacing_check(const DevelopedBall& ball, const SectorPattern& chart);

}  // namespace cat0sq
