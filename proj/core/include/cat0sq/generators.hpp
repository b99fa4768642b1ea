#pragma once

#include <cstdint>

#include "cat0sq/complex.hpp"

namespace cat0sq::gen {

/// n x n patch of the square grid. Vertex (x, y) is "p<x>_<y>", square with lower-left corner
/// (x, y) is "s<x>_<y>".
RawComplex grid(int n);
/// n x n torus (n >= 3 for a valid complex). Vertex (x, y) mod n is "t<x>_<y>".
RawComplex torus(int n);
/// The 2 x 2 torus: two edges join every pair of adjacent vertices, so it fails "cells-meet-in-one-cell".
RawComplex torus2x2();
/// One square with opposite sides identified: one vertex, two loop edges.
RawComplex one_square_torus();
/// A single square whose last side names a missing edge.
RawComplex dangling_edge();
/// Single unit square with corners a, b, c, d.
RawComplex single_square();
/// Five R x R quarter grids glued cyclically along their boundary rays at the cone vertex "o".
/// Ray i has vertices "r<i>_<k>"; quarter i spans rays i and i+1 with interior vertices
/// "q<i>_<x>_<y>" and squares "s<i>_<x>_<y>".
RawComplex fake_plane(int radius);
/// `sheets` quarter grids glued cyclically; 4 gives a flat disk, 5 a fake plane.
RawComplex cone_of_quarters(int sheets, int radius);
/// Three squares around vertex "c", pairwise sharing an edge: the cone vertex link is a 3-cycle.
RawComplex cube_corner();
/// Product of two tripods; the link at the product of the centers is K(3,3).
RawComplex tripod_product();
/// Two n x n tori wedged at the vertex "w"; other vertices are "a<x>_<y>" and "b<x>_<y>".
RawComplex wedge_of_tori(int n);

/// Random connected square complex with at most `max_squares` squares, grown by gluing squares
/// along sides of earlier ones; always passes validation. Used for property tests.
RawComplex random_complex(std::uint64_t seed, int max_squares);

}  // namespace cat0sq::gen
