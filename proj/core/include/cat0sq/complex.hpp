#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cat0sq/error.hpp"

namespace cat0sq {

// ---------------------------------------------------------------------------
// Unchecked input

struct CornerRecord {
  std::string vertex;
  std::string in_edge;
  std::string out_edge;
};

struct RawEdge {
  std::string id;
  std::string from;
  std::string to;
};

struct RawSquare {
  std::string id;
  std::array<CornerRecord, 4> corners;
};

/// Complex description as read from a file, before any axiom is checked.
struct RawComplex {
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
  std::vector<RawSquare> squares;
};

// ---------------------------------------------------------------------------
// Validation

namespace axiom {
inline constexpr std::string_view kDuplicateId = "duplicate-id";
inline constexpr std::string_view kDanglingReference = "dangling-reference";
inline constexpr std::string_view kCornerChain = "corner-chain";
inline constexpr std::string_view kEdgeEndpoints = "edge-distinct-endpoints";
inline constexpr std::string_view kSquareBoundary = "square-embedded-boundary";
inline constexpr std::string_view kCellsMeet = "cells-meet-in-one-cell";
}  // namespace axiom

struct Violation {
  std::string axiom;
  std::vector<std::string> cells;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
  bool has(std::string_view axiom_id) const;
};

/// Checks every polygonal-complex axiom and reports all violations, in a deterministic order.
ValidationReport validate(const RawComplex& raw);

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// ---------------------------------------------------------------------------
// Validated complex

/// Corner of a square: the vertex at position `corner` of `square`.
struct CornerRef {
  int square = -1;
  int corner = -1;
  friend bool operator==(const CornerRef&, const CornerRef&) = default;
};

/// Side `side` of `square`, running from corner `side` to corner `side + 1`.
struct SideRef {
  int square = -1;
  int side = -1;
};

/// Finite square complex satisfying the polygonal axioms. Immutable after construction.
///
/// Cells are addressed by dense indices, assigned in lexicographic order of their string ids.
/// Square `s` has corners `vertex(s)[0..3]` in boundary order; `edges(s)[i]` joins corner `i`
/// to corner `i + 1`. In local coordinates corner 0 sits at (0,0), then (1,0), (1,1), (0,1).
class SquareComplex {
 public:
  struct Edge {
    std::array<int, 2> ends;
  };
  struct Square {
    std::array<int, 4> v;
    std::array<int, 4> e;
  };

  SquareComplex() = default;

  /// Throws ValidationError when `raw` violates an axiom.
  static SquareComplex from_raw(const RawComplex& raw);
  RawComplex to_raw() const;

  int vertex_count() const noexcept { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int square_count() const noexcept { return static_cast<int>(squares_.size()); }
  int euler_characteristic() const noexcept { return vertex_count() - edge_count() + square_count(); }

  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(int e) const { return edge_ids_.at(e); }
  const std::string& square_id(int s) const { return square_ids_.at(s); }

  std::optional<int> find_vertex(std::string_view id) const;
  std::optional<int> find_edge(std::string_view id) const;
  std::optional<int> find_square(std::string_view id) const;
  /// As find_*, but throw DomainError for unknown ids.
  int vertex(std::string_view id) const;
  int edge(std::string_view id) const;
  int square(std::string_view id) const;

  const Edge& edge_at(int e) const { return edges_.at(e); }
  const Square& square_at(int s) const { return squares_.at(s); }

  std::span<const int> edges_at(int v) const { return edges_at_[v]; }
  std::span<const CornerRef> corners_at(int v) const { return corners_at_[v]; }
  std::span<const SideRef> sides_of(int e) const { return sides_of_[e]; }

  std::optional<int> edge_between(int a, int b) const;
  int other_end(int e, int v) const;
  /// Index 0/1 of `v` in the edge's endpoint pair.
  int end_index(int e, int v) const;
  /// Position of edge `e` in the boundary of square `s`, or -1.
  int side_index(int s, int e) const;
  /// Position of vertex `v` among the corners of square `s`, or -1.
  int corner_index(int s, int v) const;

  friend bool operator==(const SquareComplex& a, const SquareComplex& b);

 private:
  void build_incidence();

  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<std::string> square_ids_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> edge_index_;
  std::unordered_map<std::string, int> square_index_;
  std::vector<Edge> edges_;
  std::vector<Square> squares_;
  std::vector<std::vector<int>> edges_at_;
  std::vector<std::vector<CornerRef>> corners_at_;
  std::vector<std::vector<SideRef>> sides_of_;
};

/// Builds a RawComplex from square vertex cycles, creating edges as needed.
/// Edge ids are `prefix` + the two vertex ids joined by '-'; intended for generators and tests.
class ComplexBuilder {
 public:
  void add_vertex(const std::string& v);
  /// Returns the edge id joining a and b, creating it if needed.
  std::string add_edge(const std::string& a, const std::string& b);
  void add_square(const std::string& id, const std::array<std::string, 4>& cycle);
  RawComplex raw() const;
  SquareComplex build() const { return SquareComplex::from_raw(raw()); }

 private:
  std::vector<std::string> vertices_;
  std::unordered_map<std::string, bool> has_vertex_;
  std::vector<RawEdge> edges_;
  std::unordered_map<std::string, std::string> edge_by_pair_;
  std::vector<RawSquare> squares_;
};

}  // namespace cat0sq
