#pragma once

// Straight-line visibility from an apex by unfolding galleries of squares into the plane.
//
// Squares are placed by a signed permutation matrix and a translation, all coordinates scaled by
// an integer D so that the apex and every corner land on integer points. A window is an open cone
// of directions (lo, hi), counterclockwise with cross(lo, hi) > 0, of rays from the apex that enter
// the node's square through its entry side. Rays through a vertex stop there, so windows split at
// corners. T is std::int64_t (with __int128 products) or Rational.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cat0sq/complex.hpp"
#include "cat0sq/error.hpp"
#include "cat0sq/path.hpp"
#include "cat0sq/point.hpp"
#include "cat0sq/rational.hpp"

namespace cat0sq::detail {

using i64 = std::int64_t;
using i128 = __int128;

template <class T>
struct WideOf {
  using type = Rational;
};
template <>
struct WideOf<i64> {
  using type = i128;
};
template <class T>
using Wide = typename WideOf<T>::type;

template <class T>
struct Vec2 {
  T x{};
  T y{};
};

template <class T>
Vec2<T> operator+(const Vec2<T>& a, const Vec2<T>& b) {
  return {T(a.x + b.x), T(a.y + b.y)};
}
template <class T>
Vec2<T> operator-(const Vec2<T>& a, const Vec2<T>& b) {
  return {T(a.x - b.x), T(a.y - b.y)};
}
template <class T>
bool operator==(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x == b.x && a.y == b.y;
}
template <class T>
Wide<T> cross(const Vec2<T>& a, const Vec2<T>& b) {
  return Wide<T>(Wide<T>(a.x) * b.y) - Wide<T>(Wide<T>(a.y) * b.x);
}
template <class T>
Wide<T> dot(const Vec2<T>& a, const Vec2<T>& b) {
  return Wide<T>(Wide<T>(a.x) * b.x) + Wide<T>(Wide<T>(a.y) * b.y);
}

inline Rational to_rational(const Rational& r) { return r; }
inline Rational to_rational(i64 v) { return Rational(static_cast<long>(v)); }
inline Rational to_rational(i128 v) {
  const bool neg = v < 0;
  const unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  if (neg) r = -r;
  return Rational(r);
}
template <class T>
Vec2<Rational> to_rational(const Vec2<T>& v) {
  return {to_rational(v.x), to_rational(v.y)};
}

inline double to_real(const Rational& r) { return r.get_d(); }
inline double to_real(i128 v) { return static_cast<double>(static_cast<long double>(v)); }

template <class T>
T from_rational(const Rational& r);
template <>
inline Rational from_rational<Rational>(const Rational& r) {
  return r;
}
template <>
inline i64 from_rational<i64>(const Rational& r) {
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw Error("unfolding coordinate is not a machine integer");
  return r.get_num().get_si();
}

/// The eight symmetries of the square as signed permutation matrices {a, b; c, d}.
inline constexpr int kD4[8][4] = {{1, 0, 0, 1},  {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
                                  {1, 0, 0, -1}, {-1, 0, 0, 1}, {0, 1, 1, 0},   {0, -1, -1, 0}};

template <class T>
Vec2<T> apply_d4(int m, const Vec2<T>& v) {
  const int* a = kD4[m];
  return {T(a[0] * v.x + a[1] * v.y), T(a[2] * v.x + a[3] * v.y)};
}

inline bool on_side(const LocalXY& p, int j) {
  switch (j & 3) {
    case 0: return p.second == 0;
    case 1: return p.first == 1;
    case 2: return p.second == 1;
    default: return p.first == 0;
  }
}

/// Least common multiple of the denominators of the local coordinates of the given points.
inline Rational common_scale(const SquareComplex& x, std::initializer_list<const Point*> points) {
  mpz_class d = 1;
  for (const Point* p : points) {
    if (!p) continue;
    for (int s : squares_containing(x, *p)) {
      const auto l = *local_xy(x, *p, s);
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), l.first.get_den_mpz_t());
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), l.second.get_den_mpz_t());
      break;
    }
    if (p->kind == Point::Kind::Edge) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), p->a.get_den_mpz_t());
  }
  return Rational(d);
}

/// Whether machine integers suffice for a sweep at this scale.
inline bool fits_machine(const SquareComplex& x, const Rational& scale) {
  const double bound = to_real(scale) * (x.square_count() + 2.0);
  return bound < 1e12;
}

template <class T>
struct UnfoldNode {
  int square = -1;
  int entry = -1;
  int parent = -1;
  int depth = 0;
  int apex = 0;
  int m = 0;
  Vec2<T> origin;
  Vec2<T> lo, hi;
};

template <class T>
class Unfolder {
 public:
  using W = Wide<T>;
  using Node = UnfoldNode<T>;

  Unfolder(const SquareComplex& x, Point apex, const Rational& scale)
      : x_(x), apex_(std::move(apex)), scale_(scale), d_(from_rational<T>(scale)) {
    for (int k = 0; k < 4; ++k) {
      const auto c = corner_xy(k);
      corners_[k] = {T(c.first == 1 ? d_ : T(0)), T(c.second == 1 ? d_ : T(0))};
    }
  }

  const SquareComplex& complex() const { return x_; }
  const Point& apex_point() const { return apex_; }
  const Rational& scale() const { return scale_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_[i]; }

  Vec2<T> corner(const Node& n, int k) const { return n.origin + apply_d4(n.m, corners_[k & 3]); }
  const Vec2<T>& apex(const Node& n) const { return apexes_[n.apex]; }

  /// Exact plane position of a point with local coordinates l in the node's square.
  Vec2<Rational> place(const Node& n, const LocalXY& l) const {
    const Vec2<Rational> v{Rational(l.first * scale_), Rational(l.second * scale_)};
    return to_rational(n.origin) + apply_d4(n.m, v);
  }

  /// Whether the plane offset d from the apex lies strictly inside the node's window.
  bool inside(const Node& n, const Vec2<Rational>& d) const {
    return cross(to_rational(n.lo), d) > 0 && cross(d, to_rational(n.hi)) > 0;
  }

  /// Vertices in the closed star of the apex's carrier, with exact unscaled squared distances.
  std::vector<std::pair<int, Rational>> direct_vertices() const {
    std::vector<int> seen;
    std::vector<std::pair<int, Rational>> out;
    auto add = [&](int w) {
      if (apex_.kind == Point::Kind::Vertex && apex_.cell == w) return;
      for (int s : seen) {
        if (s == w) return;
      }
      seen.push_back(w);
      const Point pw = Point::vertex(w);
      const auto cell = common_cell(x_, apex_, pw);
      out.emplace_back(w, squared_distance_in(x_, apex_, pw, *cell));
    };
    if (apex_.kind == Point::Kind::Vertex) {
      for (int e : x_.edges_at(apex_.cell)) add(x_.other_end(e, apex_.cell));
    } else if (apex_.kind == Point::Kind::Edge) {
      for (int w : x_.edge_at(apex_.cell).ends) add(w);
    }
    for (int s : squares_containing(x_, apex_)) {
      for (int w : x_.square_at(s).v) add(w);
    }
    return out;
  }

  /// Sweeps all windows breadth first. on_vertex(v, node, squared plane distance) is called for each
  /// vertex seen through a window, on_node(node) once per node; either may return false to stop.
  template <class OnVertex, class OnNode>
  void run(OnVertex&& on_vertex, OnNode&& on_node) {
    nodes_.clear();
    apexes_.clear();
    for (int s : squares_containing(x_, apex_)) {
      const auto loc = *local_xy(x_, apex_, s);
      Node root;
      root.square = s;
      root.apex = static_cast<int>(apexes_.size());
      apexes_.push_back({from_rational<T>(loc.first * scale_), from_rational<T>(loc.second * scale_)});
      const auto& a = apexes_.back();
      for (int j = 0; j < 4; ++j) {
        if (on_side(loc, j)) continue;
        auto pa = corner(root, j) - a;
        auto pb = corner(root, j + 1) - a;
        if (cross(pa, pb) < 0) std::swap(pa, pb);
        push_children(root, -1, j, pa, pb);
      }
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!process(static_cast<int>(i), on_vertex, on_node)) return;
    }
  }

  /// Edge crossings of the straight segment from the apex to `target` (plane position in the
  /// node's unfolding), in order from the apex.
  std::vector<Point> crossings(int node, const Vec2<Rational>& target) const {
    std::vector<Point> out;
    for (int c = node; c >= 0; c = nodes_[c].parent) {
      const Node& n = nodes_[c];
      const auto a = to_rational(apex(n));
      const auto q0 = to_rational(corner(n, n.entry));
      const auto q1 = to_rational(corner(n, n.entry + 1));
      const auto w = target - a;
      const Rational u = cross(w, q0 - a) / cross(q1 - q0, w);
      const auto c0 = corner_xy(n.entry);
      const auto c1 = corner_xy(n.entry + 1);
      out.push_back(point_in_closed_square(x_, n.square, c0.first + u * (c1.first - c0.first),
                                           c0.second + u * (c1.second - c0.second)));
    }
    return {out.rbegin(), out.rend()};
  }

 private:
  void push_children(const Node& par, int par_index, int side, const Vec2<T>& lo, const Vec2<T>& hi) {
    const auto& S = x_.square_at(par.square);
    const int e = S.e[side & 3];
    const Vec2<T> p0 = corner(par, side);
    const Vec2<T> p1 = corner(par, side + 1);
    const int v0 = S.v[side & 3];
    const Vec2<T> ev = p1 - p0;
    const Vec2<T> diag{d_, d_};
    const Vec2<T> pc = par.origin + par.origin + apply_d4(par.m, diag) - p0 - p0;
    const bool par_left = cross(ev, pc) > 0;
    if (par.depth > x_.square_count() + 1) throw Error("unfolding revisits a square; the complex is not CAT(0)");
    for (const auto& sd : x_.sides_of(e)) {
      if (sd.square == par.square) continue;
      const auto& Q = x_.square_at(sd.square);
      const int jt = sd.side;
      const Vec2<T>& a = Q.v[jt] == v0 ? p0 : p1;
      const Vec2<T>& b = Q.v[jt] == v0 ? p1 : p0;
      for (int m = 0; m < 8; ++m) {
        const Vec2<T> origin = a - apply_d4(m, corners_[jt]);
        if (!(origin + apply_d4(m, corners_[(jt + 1) & 3]) == b)) continue;
        const Vec2<T> qc = origin + origin + apply_d4(m, diag) - p0 - p0;
        if ((cross(ev, qc) > 0) == par_left) continue;
        Node child;
        child.square = sd.square;
        child.entry = jt;
        child.parent = par_index;
        child.depth = par.depth + 1;
        child.apex = par.apex;
        child.m = m;
        child.origin = origin;
        child.lo = lo;
        child.hi = hi;
        nodes_.push_back(std::move(child));
        break;
      }
    }
  }

  template <class OnVertex, class OnNode>
  bool process(int i, OnVertex& on_vertex, OnNode& on_node) {
    if (!on_node(i)) return false;
    const Node n = nodes_[i];
    const auto& S = x_.square_at(n.square);
    const Vec2<T> a = apex(n);
    for (int k = n.entry + 2; k <= n.entry + 3; ++k) {
      const auto d = corner(n, k) - a;
      if (cross(n.lo, d) > 0 && cross(d, n.hi) > 0) {
        if (!on_vertex(S.v[k & 3], i, dot(d, d))) return false;
      }
    }
    for (int j = n.entry + 1; j <= n.entry + 3; ++j) {
      auto pa = corner(n, j) - a;
      auto pb = corner(n, j + 1) - a;
      const W c = cross(pa, pb);
      if (c == 0) continue;
      if (c < 0) std::swap(pa, pb);
      const Vec2<T>& lo = cross(n.lo, pa) > 0 ? pa : n.lo;
      const Vec2<T>& hi = cross(pb, n.hi) > 0 ? pb : n.hi;
      if (cross(lo, hi) > 0) push_children(n, i, j & 3, lo, hi);
    }
    return true;
  }

  const SquareComplex& x_;
  Point apex_;
  Rational scale_;
  T d_;
  Vec2<T> corners_[4];
  std::vector<Vec2<T>> apexes_;
  std::vector<Node> nodes_;
};

}  // namespace cat0sq::detail
