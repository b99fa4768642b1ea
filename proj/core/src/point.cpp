#include "cat0sq/point.hpp"

#include <algorithm>
#include <cctype>

namespace cat0sq {

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const auto num = body.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!digits(num) || (slash != std::string_view::npos && !digits(den))) {
    throw ParseError("", "malformed rational '" + std::string(text) + "'");
  }
  std::string canon(text.front() == '+' ? text.substr(1) : text);
  Rational r;
  if (r.set_str(canon, 10) != 0 || (slash != std::string_view::npos && mpz_class(std::string(den)) == 0)) {
    throw ParseError("", "malformed rational '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Point Point::vertex(int v) { return Point{Kind::Vertex, v, 0, 0}; }

Point Point::on_edge(int e, Rational t) {
  t.canonicalize();
  if (t <= 0 || t >= 1) throw DomainError("edge parameter must lie strictly between 0 and 1");
  return Point{Kind::Edge, e, std::move(t), 0};
}

Point Point::in_square(int s, Rational x, Rational y) {
  x.canonicalize();
  y.canonicalize();
  if (x <= 0 || x >= 1 || y <= 0 || y >= 1) throw DomainError("square coordinates must lie in the open unit square");
  return Point{Kind::Square, s, std::move(x), std::move(y)};
}

LocalXY corner_xy(int k) {
  static const int cx[4] = {0, 1, 1, 0};
  static const int cy[4] = {0, 0, 1, 1};
  k = ((k % 4) + 4) % 4;
  return {Rational(cx[k]), Rational(cy[k])};
}

Point point_in_closed_square(const SquareComplex& x, int s, Rational px, Rational py) {
  px.canonicalize();
  py.canonicalize();
  if (px < 0 || px > 1 || py < 0 || py > 1) throw DomainError("local coordinates outside the closed square");
  const auto& sq = x.square_at(s);
  const bool xb = px == 0 || px == 1;
  const bool yb = py == 0 || py == 1;
  if (xb && yb) {
    for (int k = 0; k < 4; ++k) {
      if (corner_xy(k) == LocalXY{px, py}) return Point::vertex(sq.v[k]);
    }
  }
  if (!xb && !yb) return Point::in_square(s, px, py);
  // Interior of one side.
  int side;
  Rational along;
  if (py == 0) {
    side = 0;
    along = px;
  } else if (px == 1) {
    side = 1;
    along = py;
  } else if (py == 1) {
    side = 2;
    along = 1 - px;
  } else {
    side = 3;
    along = 1 - py;
  }
  const int e = sq.e[side];
  const Rational t = x.edge_at(e).ends[0] == sq.v[side] ? along : Rational(1 - along);
  return Point::on_edge(e, t);
}

std::optional<LocalXY> local_xy(const SquareComplex& x, const Point& p, int s) {
  const auto& sq = x.square_at(s);
  switch (p.kind) {
    case Point::Kind::Vertex: {
      const int k = x.corner_index(s, p.cell);
      if (k < 0) return std::nullopt;
      return corner_xy(k);
    }
    case Point::Kind::Edge: {
      const int i = x.side_index(s, p.cell);
      if (i < 0) return std::nullopt;
      const auto [x0, y0] = corner_xy(i);
      const auto [x1, y1] = corner_xy(i + 1);
      const Rational t = x.edge_at(p.cell).ends[0] == sq.v[i] ? p.a : Rational(1 - p.a);
      return LocalXY{x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
    }
    case Point::Kind::Square:
      if (p.cell != s) return std::nullopt;
      return LocalXY{p.a, p.b};
  }
  return std::nullopt;
}

std::vector<int> squares_containing(const SquareComplex& x, const Point& p) {
  std::vector<int> out;
  switch (p.kind) {
    case Point::Kind::Vertex:
      for (const auto& c : x.corners_at(p.cell)) out.push_back(c.square);
      break;
    case Point::Kind::Edge:
      for (const auto& side : x.sides_of(p.cell)) out.push_back(side.square);
      break;
    case Point::Kind::Square:
      out.push_back(p.cell);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Point parse_point(std::string_view spec, const SquareComplex& x) {
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("", "point '" + std::string(spec) + "': " + why);
  };
  if (spec.size() < 3 || spec[1] != ':') throw fail("expected v:, e: or s: prefix");
  const char tag = spec[0];
  const auto rest = spec.substr(2);
  auto cell = [&](std::optional<int> idx, std::string_view id, const char* what) {
    if (!idx) throw fail(std::string("unknown ") + what + " '" + std::string(id) + "'");
    return *idx;
  };
  try {
    if (tag == 'v') return Point::vertex(cell(x.find_vertex(rest), rest, "vertex"));
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw fail("missing coordinates");
    const auto id = rest.substr(0, colon);
    const auto coords = rest.substr(colon + 1);
    if (tag == 'e') return Point::on_edge(cell(x.find_edge(id), id, "edge"), parse_rational(coords));
    if (tag == 's') {
      const auto comma = coords.find(',');
      if (comma == std::string_view::npos) throw fail("square point needs x,y");
      return Point::in_square(cell(x.find_square(id), id, "square"), parse_rational(coords.substr(0, comma)),
                              parse_rational(coords.substr(comma + 1)));
    }
  } catch (const DomainError& e) {
    throw fail(e.what());
  } catch (const ParseError& e) {
    if (e.location().empty() && std::string(e.what()).rfind("point '", 0) != 0) throw fail(e.what());
    throw;
  }
  throw fail("expected v:, e: or s: prefix");
}

std::string format_point(const Point& p, const SquareComplex& x) {
  switch (p.kind) {
    case Point::Kind::Vertex:
      return "v:" + x.vertex_id(p.cell);
    case Point::Kind::Edge:
      return "e:" + x.edge_id(p.cell) + ":" + to_string(p.a);
    case Point::Kind::Square:
      return "s:" + x.square_id(p.cell) + ":" + to_string(p.a) + "," + to_string(p.b);
  }
  return {};
}

}  // namespace cat0sq
