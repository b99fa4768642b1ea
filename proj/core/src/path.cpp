#include "cat0sq/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cat0sq/link.hpp"

namespace cat0sq {

namespace {

LocalXY sub(const LocalXY& a, const LocalXY& b) { return {a.first - b.first, a.second - b.second}; }
Rational dot(const LocalXY& a, const LocalXY& b) { return a.first * b.first + a.second * b.second; }
Rational cross(const LocalXY& a, const LocalXY& b) { return a.first * b.second - a.second * b.first; }

double angle_between(const LocalXY& a, const LocalXY& b) {
  return std::atan2(std::abs(to_double(cross(a, b))), to_double(dot(a, b)));
}

/// Parameter of a point lying on the closed edge e, or nullopt.
std::optional<Rational> edge_param(const SquareComplex& x, const Point& p, int e) {
  const auto& ends = x.edge_at(e).ends;
  switch (p.kind) {
    case Point::Kind::Vertex:
      if (p.cell == ends[0]) return Rational(0);
      if (p.cell == ends[1]) return Rational(1);
      return std::nullopt;
    case Point::Kind::Edge:
      if (p.cell == e) return p.a;
      return std::nullopt;
    case Point::Kind::Square:
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<int> edges_containing(const SquareComplex& x, const Point& p) {
  if (p.kind == Point::Kind::Vertex) {
    const auto es = x.edges_at(p.cell);
    std::vector<int> out(es.begin(), es.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  if (p.kind == Point::Kind::Edge) return {p.cell};
  return {};
}

Direction along(const Point& anchor, int e, int toward) {
  Direction d;
  d.anchor = anchor;
  d.kind = Direction::Kind::AlongEdge;
  d.carrier = e;
  d.toward = toward;
  return d;
}

}  // namespace

Direction direction_in_square(const SquareComplex& x, const Point& anchor, int s, Rational dx, Rational dy) {
  const auto at = local_xy(x, anchor, s);
  if (!at) throw DomainError("direction anchor is not in the carrier square");
  if (dx == 0 && dy == 0) throw DomainError("zero direction vector");
  const LocalXY v{dx, dy};
  const auto& sq = x.square_at(s);
  Direction d;
  d.anchor = anchor;
  d.kind = Direction::Kind::InSquare;
  d.carrier = s;
  d.dx = std::move(dx);
  d.dy = std::move(dy);
  if (anchor.kind == Point::Kind::Vertex) {
    const int k = x.corner_index(s, anchor.cell);
    const auto c = corner_xy(k);
    const Rational c1 = dot(v, sub(corner_xy(k + 1), c));
    const Rational c2 = dot(v, sub(corner_xy(k + 3), c));
    if (c1 < 0 || c2 < 0) throw DomainError("direction points out of the carrier square");
    if (c2 == 0) return along(anchor, sq.e[k], x.end_index(sq.e[k], sq.v[(k + 1) % 4]));
    if (c1 == 0) {
      const int e = sq.e[(k + 3) % 4];
      return along(anchor, e, x.end_index(e, sq.v[(k + 3) % 4]));
    }
  } else if (anchor.kind == Point::Kind::Edge) {
    const int i = x.side_index(s, anchor.cell);
    const auto c = corner_xy(i);
    const Rational normal = dot(v, sub(corner_xy(i + 3), c));
    if (normal < 0) throw DomainError("direction points out of the carrier square");
    if (normal == 0) {
      const Rational forward = dot(v, sub(corner_xy(i + 1), c));
      const int end_vertex = forward > 0 ? sq.v[(i + 1) % 4] : sq.v[i];
      return along(anchor, anchor.cell, x.end_index(anchor.cell, end_vertex));
    }
  }
  return d;
}

Direction direction_toward(const SquareComplex& x, const Point& anchor, const Point& target, Cell cell) {
  if (anchor == target) throw DomainError("direction between coincident points");
  if (cell.kind == Cell::Kind::Edge) {
    const auto ta = edge_param(x, anchor, cell.index);
    const auto tb = edge_param(x, target, cell.index);
    if (!ta || !tb) throw DomainError("points do not lie on the carrier edge");
    return along(anchor, cell.index, *tb > *ta ? 1 : 0);
  }
  const auto a = local_xy(x, anchor, cell.index);
  const auto b = local_xy(x, target, cell.index);
  if (!a || !b) throw DomainError("points do not lie in the carrier square");
  const auto v = sub(*b, *a);
  return direction_in_square(x, anchor, cell.index, v.first, v.second);
}

double link_distance(const SquareComplex& x, const Direction& u, const Direction& v) {
  if (!(u.anchor == v.anchor)) throw DomainError("directions have different anchors");
  const Point& p = u.anchor;
  constexpr double inf = std::numeric_limits<double>::infinity();

  if (p.kind == Point::Kind::Square) {
    return angle_between({u.dx, u.dy}, {v.dx, v.dy});
  }

  if (p.kind == Point::Kind::Edge) {
    const int e = p.cell;
    // Angle measured from the pole pointing at ends[0]; sheet -1 marks a pole.
    auto polar = [&](const Direction& d) -> std::pair<double, int> {
      if (d.kind == Direction::Kind::AlongEdge) return {d.toward == 0 ? 0.0 : kPi, -1};
      const auto at = *local_xy(x, p, d.carrier);
      const auto end0 = *local_xy(x, Point::vertex(x.edge_at(e).ends[0]), d.carrier);
      return {angle_between(sub(end0, at), {d.dx, d.dy}), d.carrier};
    };
    const auto [t1, s1] = polar(u);
    const auto [t2, s2] = polar(v);
    if (s1 < 0 || s2 < 0 || s1 == s2) return std::abs(t1 - t2);
    return std::min(t1 + t2, 2 * kPi - t1 - t2);
  }

  const LinkGraph l(x, p.cell);
  struct Position {
    int arc = -1;
    double phi = 0;
    std::vector<std::pair<int, double>> ends;
  };
  auto position = [&](const Direction& d) {
    Position pos;
    if (d.kind == Direction::Kind::AlongEdge) {
      pos.ends.push_back({l.node_of(d.carrier), 0.0});
      return pos;
    }
    const int k = x.corner_index(d.carrier, p.cell);
    const auto& sq = x.square_at(d.carrier);
    const int a = l.node_of(sq.e[k]);
    for (int i : l.arcs_at(a)) {
      if (l.arc(i).corner == CornerRef{d.carrier, k}) pos.arc = i;
    }
    const auto c = corner_xy(k);
    const LocalXY vec{d.dx, d.dy};
    pos.phi = std::atan2(to_double(dot(vec, sub(corner_xy(k + 3), c))), to_double(dot(vec, sub(corner_xy(k + 1), c))));
    pos.ends.push_back({l.arc(pos.arc).a, pos.phi});
    pos.ends.push_back({l.arc(pos.arc).b, kPi / 2 - pos.phi});
    return pos;
  };
  const auto a = position(u);
  const auto b = position(v);
  double best = inf;
  if (a.arc >= 0 && a.arc == b.arc) best = std::abs(a.phi - b.phi);
  for (const auto& [n1, o1] : a.ends) {
    for (const auto& [n2, o2] : b.ends) {
      const int h = l.hops(n1, n2);
      if (h >= 0) best = std::min(best, o1 + h * (kPi / 2) + o2);
    }
  }
  return best;
}

double angle(const SquareComplex& x, const Point& p, const Direction& u, const Direction& v) {
  if (!(u.anchor == p) || !(v.anchor == p)) throw DomainError("directions are not anchored at the point");
  return std::min(kPi, link_distance(x, u, v));
}

double cone_distance(double t1, double t2, double link_separation) {
  if (t1 < 0 || t2 < 0) throw DomainError("cone radii must be non-negative");
  if (link_separation >= kPi) return t1 + t2;
  return std::sqrt(std::max(0.0, t1 * t1 + t2 * t2 - 2 * t1 * t2 * std::cos(link_separation)));
}

double cone_distance(const SquareComplex& x, double t1, const Direction& xi1, double t2, const Direction& xi2) {
  if (t1 == 0) return t2;
  if (t2 == 0) return t1;
  return cone_distance(t1, t2, link_distance(x, xi1, xi2));
}

// ---------------------------------------------------------------------------

std::optional<Cell> common_cell(const SquareComplex& x, const Point& p, const Point& q) {
  const auto ep = edges_containing(x, p);
  const auto eq = edges_containing(x, q);
  for (int e : ep) {
    if (std::binary_search(eq.begin(), eq.end(), e)) return Cell{Cell::Kind::Edge, e};
  }
  const auto sp = squares_containing(x, p);
  const auto sq = squares_containing(x, q);
  for (int s : sp) {
    if (std::binary_search(sq.begin(), sq.end(), s)) return Cell{Cell::Kind::Square, s};
  }
  return std::nullopt;
}

Rational squared_distance_in(const SquareComplex& x, const Point& p, const Point& q, Cell cell) {
  if (cell.kind == Cell::Kind::Edge) {
    const auto a = edge_param(x, p, cell.index);
    const auto b = edge_param(x, q, cell.index);
    if (!a || !b) throw DomainError("points do not lie on the edge");
    const Rational d = *b - *a;
    return d * d;
  }
  const auto a = local_xy(x, p, cell.index);
  const auto b = local_xy(x, q, cell.index);
  if (!a || !b) throw DomainError("points do not lie in the square");
  const auto d = sub(*b, *a);
  return dot(d, d);
}

PLPath PLPath::from_points(const SquareComplex& x, std::vector<Point> points) {
  PLPath path;
  if (points.empty()) throw DomainError("empty path");
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i] == points[i + 1]) throw DomainError("zero-length path segment at breakpoint " + std::to_string(i));
    const auto cell = common_cell(x, points[i], points[i + 1]);
    if (!cell) throw DomainError("breakpoints " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                 " share no closed cell");
    path.cells_.push_back(*cell);
    path.squared_.push_back(squared_distance_in(x, points[i], points[i + 1], *cell));
  }
  path.points_ = std::move(points);
  return path;
}

double PLPath::segment_length(int i) const { return std::sqrt(to_double(squared_.at(i))); }

double PLPath::length() const {
  double total = 0;
  for (int i = 0; i < segment_count(); ++i) total += segment_length(i);
  return total;
}

std::vector<double> PLPath::arc_lengths() const {
  std::vector<double> out{0.0};
  for (int i = 0; i < segment_count(); ++i) out.push_back(out.back() + segment_length(i));
  return out;
}

PLPath PLPath::reversed() const {
  PLPath r;
  r.points_.assign(points_.rbegin(), points_.rend());
  r.cells_.assign(cells_.rbegin(), cells_.rend());
  r.squared_.assign(squared_.rbegin(), squared_.rend());
  return r;
}

Direction PLPath::incoming(const SquareComplex& x, int i) const {
  return direction_toward(x, points_.at(i), points_.at(i - 1), cells_.at(i - 1));
}

Direction PLPath::outgoing(const SquareComplex& x, int i) const {
  return direction_toward(x, points_.at(i), points_.at(i + 1), cells_.at(i));
}

std::pair<LocalXY, LocalXY> PLPath::segment_in_square(const SquareComplex& x, int i, int s) const {
  const auto a = local_xy(x, points_.at(i), s);
  const auto b = local_xy(x, points_.at(i + 1), s);
  if (!a || !b) throw DomainError("segment does not lie in the square");
  return {*a, *b};
}

Point PLPath::point_on_segment(const SquareComplex& x, int i, const Rational& f) const {
  if (f < 0 || f > 1) throw DomainError("segment fraction outside [0, 1]");
  if (f == 0) return points_.at(i);
  if (f == 1) return points_.at(i + 1);
  const auto& cell = cells_.at(i);
  if (cell.kind == Cell::Kind::Edge) {
    const auto a = *edge_param(x, points_[i], cell.index);
    const auto b = *edge_param(x, points_[i + 1], cell.index);
    return Point::on_edge(cell.index, a + f * (b - a));
  }
  const auto [a, b] = segment_in_square(x, i, cell.index);
  return point_in_closed_square(x, cell.index, a.first + f * (b.first - a.first), a.second + f * (b.second - a.second));
}

}  // namespace cat0sq
