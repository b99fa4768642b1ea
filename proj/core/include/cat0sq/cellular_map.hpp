#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cat0sq/complex.hpp"

namespace cat0sq {

/// Element of the symmetry group of the square acting on corner positions:
/// corner k goes to (rot + k) mod 4, or (rot - k) mod 4 when flipped.
struct Dihedral {
  std::uint8_t rot = 0;
  bool flip = false;

  int apply(int corner) const noexcept {
    const int k = flip ? static_cast<int>(rot) - corner : static_cast<int>(rot) + corner;
    return ((k % 4) + 4) % 4;
  }
  /// Side i joins corners i and i+1; returns the side joining their images.
  int apply_side(int side) const noexcept { return flip ? apply(side + 1) : apply(side); }
  /// this ∘ inner
  Dihedral after(Dihedral inner) const noexcept;
  Dihedral inverse() const noexcept;
  static Dihedral from_corners(int c0_image, int c1_image);

  friend bool operator==(const Dihedral&, const Dihedral&) = default;
};

/// Possibly partial cellular map between two square complexes, sending vertices to vertices,
/// edges to edges and squares to squares with a corner alignment per square.
/// Undefined cells map to -1. Incidence is checked on construction.
class CellularMap {
 public:
  using ComplexPtr = std::shared_ptr<const SquareComplex>;

  CellularMap(ComplexPtr source, ComplexPtr target, std::vector<int> vertices, std::vector<int> edges,
              std::vector<int> squares, std::vector<Dihedral> alignment);

  static CellularMap identity(ComplexPtr complex);
  /// Derives edges and squares from a vertex correspondence; cells whose vertex images do not
  /// span a cell of the target stay undefined.
  static CellularMap from_vertex_map(ComplexPtr source, ComplexPtr target,
                                     const std::vector<std::pair<std::string, std::string>>& pairs);
  static CellularMap from_vertex_indices(ComplexPtr source, ComplexPtr target, std::vector<int> vertices);

  const ComplexPtr& source() const noexcept { return source_; }
  const ComplexPtr& target() const noexcept { return target_; }

  int vertex(int v) const { return vertices_.at(v); }
  int edge(int e) const { return edges_.at(e); }
  int square(int s) const { return squares_.at(s); }
  Dihedral alignment(int s) const { return alignment_.at(s); }

  bool is_total() const;
  /// Total, and bijective on vertices, edges and squares.
  bool is_isomorphism() const;
  /// Number of defined vertices.
  int defined_vertex_count() const;

  /// Restriction to the cells whose vertices all satisfy `keep`.
  template <class Pred>
  CellularMap restricted(Pred keep) const {
    auto v = vertices_;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (!keep(i)) v[i] = -1;
    }
    return restricted_to_vertices(std::move(v));
  }

  /// Vertex pairs as ids, sorted; used for serialization.
  std::vector<std::pair<std::string, std::string>> vertex_pairs() const;

  friend CellularMap compose(const CellularMap& f, const CellularMap& g);
  friend CellularMap inverse(const CellularMap& f);
  friend bool operator==(const CellularMap& a, const CellularMap& b);

 private:
  CellularMap restricted_to_vertices(std::vector<int> vertices) const;
  void check_incidence() const;

  ComplexPtr source_;
  ComplexPtr target_;
  std::vector<int> vertices_;
  std::vector<int> edges_;
  std::vector<int> squares_;
  std::vector<Dihedral> alignment_;
};

/// f ∘ g. Requires g's target to equal f's source; defined where both are.
CellularMap compose(const CellularMap& f, const CellularMap& g);
/// Inverse of an injective map. Throws DomainError if f is not injective.
CellularMap inverse(const CellularMap& f);

}  // namespace cat0sq
