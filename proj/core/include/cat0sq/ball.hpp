#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cat0sq/cellular_map.hpp"
#include "cat0sq/complex.hpp"

namespace cat0sq {

using ComplexPtr = std::shared_ptr<const SquareComplex>;

/// Finite simply connected piece of the universal cover of a base complex, with its covering map.
///
/// A developed ball of radius R is the union of the closed stars of all lifts at hop depth <= R-1
/// from the center. Vertices at depth <= R-1 have complete links (the covering map is a link
/// isomorphism there); all other vertices are boundary vertices. An edge is a boundary edge when
/// both endpoints are. Squares are never boundary cells.
class DevelopedBall {
 public:
  DevelopedBall(ComplexPtr ball, ComplexPtr base, int center, int radius, CellularMap covering,
                std::vector<int> depth, std::vector<char> boundary);

  const SquareComplex& complex() const noexcept { return *ball_; }
  const ComplexPtr& complex_ptr() const noexcept { return ball_; }
  const SquareComplex& base() const noexcept { return *base_; }
  const ComplexPtr& base_ptr() const noexcept { return base_; }
  const CellularMap& covering() const noexcept { return covering_; }

  int center() const noexcept { return center_; }
  /// Development radius; -1 for a complex used as its own cover.
  int radius() const noexcept { return radius_; }
  /// Hop distance from the center in the ball's 1-skeleton.
  int depth(int v) const { return depth_.at(v); }
  bool is_boundary_vertex(int v) const { return boundary_.at(v) != 0; }
  bool is_boundary_edge(int e) const;
  /// Largest r such that every vertex within hop distance r of v is a non-boundary vertex
  /// (-1 if v itself is a boundary vertex).
  int interior_margin(int v) const;
  /// Number of vertices at depth <= r.
  int vertex_count_within(int r) const;

  /// Lazily filled query caches, shared by copies of the ball.
  struct Memo;
  Memo& memo() const { return *memo_; }

 private:
  ComplexPtr ball_;
  ComplexPtr base_;
  int center_;
  int radius_;
  CellularMap covering_;
  std::vector<int> depth_;
  std::vector<char> boundary_;
  std::shared_ptr<Memo> memo_;
};

/// Develops the radius-R ball of the universal cover around a lift of `base_vertex`.
/// Requires R >= 1; throws CurvatureError if the base is not nonpositively curved.
DevelopedBall develop(ComplexPtr base, int base_vertex, int radius);
DevelopedBall develop(const SquareComplex& base, std::string_view base_vertex, int radius);

/// Uses a finite simply connected NPC complex as its own cover: identity covering, no boundary.
/// Throws DomainError unless the complex is connected with Euler characteristic 1,
/// CurvatureError if it is not NPC.
DevelopedBall as_ball(ComplexPtr complex, int center);

/// Lift of the base automorphism `phi` sending `from` in `src` to `to` in `dst`, propagated along
/// edges; defined on the cells of `src` whose lift lands in `dst`. Throws DomainError if the
/// covering maps disagree at the seed.
CellularMap lift_map(const DevelopedBall& src, const DevelopedBall& dst, const CellularMap& phi, int from, int to);
CellularMap lift_map(const DevelopedBall& src, const DevelopedBall& dst, int from, int to);

/// Ball documents: the ball complex in the canonical format plus a "ball" section carrying the
/// center, radius, depths, boundary vertices, covering table and the embedded base complex.
std::string to_text(const DevelopedBall& ball);
DevelopedBall parse_ball(std::string_view text);
DevelopedBall load_ball(const std::filesystem::path& path);
void save_ball(const DevelopedBall& ball, const std::filesystem::path& path);

}  // namespace cat0sq
