#pragma once

#include <cat0sq/ball.hpp>
#include <cat0sq/format.hpp>
#include <cat0sq/generators.hpp>

#include <climits>
#include <filesystem>
#include <memory>
#include <string>

namespace fixtures {

inline std::filesystem::path corpus(const std::string& name) {
  return std::filesystem::path(CAT0SQ_CORPUS_DIR) / name;
}

inline cat0sq::ComplexPtr build(const cat0sq::RawComplex& raw) {
  return std::make_shared<const cat0sq::SquareComplex>(cat0sq::SquareComplex::from_raw(raw));
}

/// Cover of the 3x3 torus: the square grid.
inline cat0sq::DevelopedBall grid_ball(int radius) {
  auto t = build(cat0sq::gen::torus(3));
  return cat0sq::develop(t, t->vertex("t0_0"), radius);
}

inline cat0sq::DevelopedBall fake_ball(int radius) {
  auto f = build(cat0sq::gen::fake_plane(radius));
  return cat0sq::as_ball(f, f->vertex("o"));
}

inline cat0sq::DevelopedBall flat_ball(int radius) {
  auto f = build(cat0sq::gen::cone_of_quarters(4, radius));
  return cat0sq::as_ball(f, f->vertex("o"));
}

}  // namespace fixtures

#include <deque>
#include <utility>
#include <vector>

namespace fixtures {

/// Integer coordinates of the vertices of a developed ball over the n x n torus, with the center at
/// the origin. Read off the base ids "t<x>_<y>", independent of the development code.
inline std::vector<std::pair<int, int>> grid_coords(const cat0sq::DevelopedBall& b, int n = 3) {
  const auto& x = b.complex();
  auto parse = [&](int v) {
    const auto& id = b.base().vertex_id(b.covering().vertex(v));
    const auto us = id.find('_');
    return std::pair<int, int>{std::stoi(id.substr(1, us - 1)), std::stoi(id.substr(us + 1))};
  };
  auto step = [n](int a, int b) {
    const int d = ((b - a) % n + n) % n;
    return d == 1 ? 1 : d == n - 1 ? -1 : 0;
  };
  std::vector<std::pair<int, int>> c(x.vertex_count(), {INT32_MIN, INT32_MIN});
  c[b.center()] = {0, 0};
  std::deque<int> queue{b.center()};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : x.edges_at(u)) {
      const int w = x.other_end(e, u);
      if (c[w].first != INT32_MIN) continue;
      const auto pu = parse(u), pw = parse(w);
      c[w] = {c[u].first + step(pu.first, pw.first), c[u].second + step(pu.second, pw.second)};
      queue.push_back(w);
    }
  }
  return c;
}

inline int vertex_at(const std::vector<std::pair<int, int>>& coords, int x, int y) {
  for (int v = 0; v < static_cast<int>(coords.size()); ++v) {
    if (coords[v] == std::pair<int, int>{x, y}) return v;
  }
  return -1;
}

}  // namespace fixtures

#include <cat0sq/path.hpp>

#include <cmath>

namespace fixtures {

/// Point of a sheet of a cone of quarters at sheet coordinates (x, y), 0 <= x, y <= radius.
inline cat0sq::Point sheet_point(const cat0sq::SquareComplex& x, int sheet, int radius, const cat0sq::Rational& px,
                                 const cat0sq::Rational& py) {
  if (px == 0 && py == 0) return cat0sq::Point::vertex(x.vertex("o"));
  auto cell = [&](const cat0sq::Rational& c) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
    return std::min(static_cast<int>(f.get_si()), radius - 1);
  };
  const int fx = cell(px), fy = cell(py);
  const int s = x.square("s" + std::to_string(sheet) + "_" + std::to_string(fx) + "_" + std::to_string(fy));
  return cat0sq::point_in_closed_square(x, s, px - fx, py - fy);
}

/// Polar angle of a sheet point on the cone, in [0, sheets * pi/2).
inline double cone_angle(int sheet, double x, double y) { return sheet * cat0sq::kPi / 2 + std::atan2(y, x); }

/// Cone metric between two sheet points, from first principles.
inline double cone_formula(int sheets, int s1, double x1, double y1, int s2, double x2, double y2) {
  const double t1 = std::hypot(x1, y1), t2 = std::hypot(x2, y2);
  if (t1 == 0) return t2;
  if (t2 == 0) return t1;
  const double total = sheets * cat0sq::kPi / 2;
  double sep = std::abs(cone_angle(s1, x1, y1) - cone_angle(s2, x2, y2));
  sep = std::min(sep, total - sep);
  if (sep >= cat0sq::kPi) return t1 + t2;
  return std::sqrt(std::max(0.0, t1 * t1 + t2 * t2 - 2 * t1 * t2 * std::cos(sep)));
}

/// Grid point at integer lattice offset plus a local offset inside the square with lower-left (gx, gy).
inline cat0sq::Point grid_point(const cat0sq::DevelopedBall& b, const std::vector<std::pair<int, int>>& coords,
                                const cat0sq::Rational& px, const cat0sq::Rational& py) {
  const auto& x = b.complex();
  auto floor_of = [](const cat0sq::Rational& c) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
    return static_cast<int>(f.get_si());
  };
  const int gx = floor_of(px), gy = floor_of(py);
  const int v = vertex_at(coords, gx, gy);
  if (px == gx && py == gy) return cat0sq::Point::vertex(v);
  const int v1 = vertex_at(coords, gx + 1, gy), v2 = vertex_at(coords, gx + 1, gy + 1);
  for (const auto& c : x.corners_at(v)) {
    const auto& sq = x.square_at(c.square);
    if (sq.v[(c.corner + 2) % 4] != v2) continue;
    // Local frame of the square: corner index of v, then whether (1,0) lattice step is the next corner.
    const bool forward = sq.v[(c.corner + 1) % 4] == v1;
    const cat0sq::Rational u = px - gx, w = py - gy;
    const auto c0 = cat0sq::corner_xy(c.corner);
    const auto ca = cat0sq::corner_xy(c.corner + (forward ? 1 : 3));
    const auto cb = cat0sq::corner_xy(c.corner + (forward ? 3 : 1));
    const cat0sq::Rational lx = c0.first + u * (ca.first - c0.first) + w * (cb.first - c0.first);
    const cat0sq::Rational ly = c0.second + u * (ca.second - c0.second) + w * (cb.second - c0.second);
    return cat0sq::point_in_closed_square(x, c.square, lx, ly);
  }
  throw std::runtime_error("grid point outside the ball");
}

}  // namespace fixtures

#include <cat0sq/pingpong.hpp>

namespace fixtures {

/// Neighbour of v covering the base vertex `id`.
inline int neighbour_over(const cat0sq::DevelopedBall& b, int v, const std::string& id) {
  const auto& x = b.complex();
  for (int e : x.edges_at(v)) {
    const int w = x.other_end(e, v);
    if (b.base().vertex_id(b.covering().vertex(w)) == id) return w;
  }
  throw std::runtime_error("no neighbour over " + id);
}

/// Grid cover of the 3x3 torus with the x-axis and y-axis through the center.
inline cat0sq::PingPongInstance z2_instance(int radius = 7, int steps = 4) {
  auto b = grid_ball(radius);
  auto a1 = cat0sq::lift_axis(b, b.center(), {"t0_0", "t1_0", "t2_0"}, steps, steps);
  auto a2 = cat0sq::lift_axis(b, b.center(), {"t0_0", "t0_1", "t0_2"}, steps, steps);
  return {b, a1, a2};
}

/// Two parallel horizontal axes one unit apart.
inline cat0sq::PingPongInstance parallel_instance(int radius = 7, int steps = 4) {
  auto b = grid_ball(radius);
  auto a1 = cat0sq::lift_axis(b, b.center(), {"t0_0", "t1_0", "t2_0"}, steps, steps);
  auto a2 = cat0sq::lift_axis(b, neighbour_over(b, b.center(), "t0_1"), {"t0_1", "t1_1", "t2_1"}, steps, steps);
  return {b, a1, a2};
}

inline cat0sq::DevelopedBall wedge_ball(int radius) {
  auto w = build(cat0sq::gen::wedge_of_tori(3));
  return cat0sq::develop(w, w->vertex("w"), radius);
}

/// Cover of the wedge of two 3x3 tori with diagonal axes through the center in the two flats there.
inline cat0sq::PingPongInstance wedge_instance(int radius = 10, int steps = 4) {
  auto b = wedge_ball(radius);
  auto a1 = cat0sq::lift_axis(b, b.center(), {"w", "a1_1", "a2_2"}, steps, steps);
  auto a2 = cat0sq::lift_axis(b, b.center(), {"w", "b1_1", "b2_2"}, steps, steps);
  return {b, a1, a2};
}

}  // namespace fixtures
