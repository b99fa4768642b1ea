#include "cat0sq/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <random>
#include <thread>

#include "ball_memo.hpp"
#include "parallel.hpp"
#include "unfold.hpp"

namespace cat0sq {

namespace {

using detail::i64;
using detail::Unfolder;
using detail::Vec2;

constexpr double kInf = std::numeric_limits<double>::infinity();

int hardware_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

template <class F>
auto with_engine(const SquareComplex& x, const Rational& scale, F&& f) {
  if (detail::fits_machine(x, scale)) return f(i64{});
  return f(Rational{});
}

const std::vector<std::vector<std::pair<int, double>>>& vertex_visibility(const DevelopedBall& ball) {
  auto& memo = ball.memo();
  std::call_once(memo.visibility_once, [&] {
    const auto& x = ball.complex();
    std::vector<std::vector<std::pair<int, double>>> vis(x.vertex_count());
    detail::parallel_for(x.vertex_count(), hardware_jobs(), [&](int v) {
      Unfolder<i64> u(x, Point::vertex(v), Rational(1));
      auto& out = vis[v];
      for (const auto& [w, d2] : u.direct_vertices()) out.emplace_back(w, std::sqrt(to_double(d2)));
      u.run(
          [&](int w, int, detail::i128 d2) {
            out.emplace_back(w, std::sqrt(detail::to_real(d2)));
            return true;
          },
          [](int) { return true; });
    });
    memo.visibility = std::move(vis);
  });
  return memo.visibility;
}

std::vector<char> square_mask(const SquareComplex& x, const Point& p) {
  std::vector<char> mask(x.square_count(), 0);
  for (int s : squares_containing(x, p)) mask[s] = 1;
  return mask;
}

/// Visibility from an apex: distance to every vertex seen along a straight segment, and to a target.
template <class T>
struct Sweep {
  std::vector<double> dist;
  double target = kInf;
};

template <class T>
Sweep<T> sweep(const SquareComplex& x, const Point& apex, const Rational& scale, const Point* target) {
  Sweep<T> out;
  out.dist.assign(x.vertex_count(), kInf);
  Unfolder<T> u(x, apex, scale);
  for (const auto& [w, d2] : u.direct_vertices()) out.dist[w] = std::sqrt(to_double(d2));
  const bool point_target = target && target->kind != Point::Kind::Vertex;
  const auto mask = point_target ? square_mask(x, *target) : std::vector<char>{};
  const double inv = 1.0 / to_double(scale);
  u.run(
      [&](int w, int, const auto& d2) {
        out.dist[w] = std::sqrt(detail::to_real(d2)) * inv;
        return true;
      },
      [&](int nd) {
        if (!point_target) return true;
        const auto& n = u.node(nd);
        if (!mask[n.square]) return true;
        const auto l = *local_xy(x, *target, n.square);
        if (detail::on_side(l, n.entry)) return true;
        const auto d = u.place(n, l) - detail::to_rational(u.apex(n));
        if (u.inside(n, d)) out.target = std::min(out.target, std::sqrt(to_double(detail::dot(d, d))) * inv);
        return true;
      });
  if (target && target->kind == Point::Kind::Vertex) out.target = out.dist[target->cell];
  return out;
}

/// Breakpoints of the straight segment from a to b, which must see each other.
std::vector<Point> straight_segment(const SquareComplex& x, const Point& a, const Point& b) {
  if (common_cell(x, a, b)) return {a, b};
  const Rational scale = detail::common_scale(x, {&a, &b});
  return with_engine(x, scale, [&](auto tag) -> std::vector<Point> {
    using T = decltype(tag);
    Unfolder<T> u(x, a, scale);
    const bool vertex_target = b.kind == Point::Kind::Vertex;
    const auto mask = square_mask(x, b);
    int found = -1;
    Vec2<Rational> pos;
    u.run(
        [&](int w, int nd, const auto&) {
          if (!vertex_target || w != b.cell) return true;
          found = nd;
          pos = u.place(u.node(nd), *local_xy(x, b, u.node(nd).square));
          return false;
        },
        [&](int nd) {
          if (vertex_target) return true;
          const auto& n = u.node(nd);
          if (!mask[n.square]) return true;
          const auto l = *local_xy(x, b, n.square);
          if (detail::on_side(l, n.entry)) return true;
          const auto p = u.place(n, l);
          if (!u.inside(n, p - detail::to_rational(u.apex(n)))) return true;
          found = nd;
          pos = p;
          return false;
        });
    if (found < 0) throw Error("straight segment between sites was not found");
    auto pts = u.crossings(found, pos);
    pts.insert(pts.begin(), a);
    pts.push_back(b);
    return pts;
  });
}

std::vector<int> corners_of(const SquareComplex& x, const Point& p) {
  switch (p.kind) {
    case Point::Kind::Vertex: return {p.cell};
    case Point::Kind::Edge: return {x.edge_at(p.cell).ends[0], x.edge_at(p.cell).ends[1]};
    case Point::Kind::Square: {
      const auto& v = x.square_at(p.cell).v;
      return {v.begin(), v.end()};
    }
  }
  return {};
}

void require_interior(const DevelopedBall& ball, const PLPath& path) {
  const auto& pts = path.points();
  for (int i = 1; i + 1 < path.size(); ++i) {
    if (pts[i].kind == Point::Kind::Vertex && ball.is_boundary_vertex(pts[i].cell)) {
      throw BallTooSmall("geodesic passes through boundary vertex '" + ball.complex().vertex_id(pts[i].cell) + "'");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

LocalCheck local_geodesic_check(const PLPath& path, const DevelopedBall& ball, double eps) {
  const auto& x = ball.complex();
  LocalCheck out;
  for (int i = 1; i + 1 < path.size(); ++i) {
    BreakpointCheck b;
    b.index = i;
    b.link_distance = link_distance(x, path.incoming(x, i), path.outgoing(x, i));
    b.deficit = std::max(0.0, kPi - b.link_distance);
    if (b.link_distance < kPi - eps) out.deficient.push_back(i);
    out.breakpoints.push_back(b);
  }
  out.pass = out.deficient.empty();
  return out;
}

bool r_geodesic_check(const PLPath& path, const DevelopedBall& ball, double eps) {
  const auto check = local_geodesic_check(path, ball, eps);
  if (!check.pass) return false;
  return std::all_of(check.breakpoints.begin(), check.breakpoints.end(),
                     [&](const BreakpointCheck& b) { return std::abs(b.link_distance - kPi) <= eps; });
}

PLPath geodesic(const DevelopedBall& ball, const Point& p, const Point& q) {
  const auto& x = ball.complex();
  if (p == q) throw DomainError("geodesic between coincident points");
  if (common_cell(x, p, q)) return PLPath::from_points(x, {p, q});

  const Rational scale = detail::common_scale(x, {&p, &q});
  const auto& vis = vertex_visibility(ball);
  std::vector<double> from_p, to_q;
  double best = kInf;
  with_engine(x, scale, [&](auto tag) {
    using T = decltype(tag);
    auto sp = sweep<T>(x, p, scale, &q);
    from_p = std::move(sp.dist);
    best = sp.target;
    to_q = sweep<T>(x, q, scale, nullptr).dist;
    return 0;
  });

  const int n = x.vertex_count();
  std::vector<double> dist = from_p;
  std::vector<int> prev(n, -1);
  std::vector<char> done(n, 0);
  int last = -1;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (int v = 0; v < n; ++v) {
    if (dist[v] < kInf) queue.push({dist[v], v});
  }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v] || d > dist[v]) continue;
    if (d >= best) break;
    done[v] = 1;
    if (d + to_q[v] < best) {
      best = d + to_q[v];
      last = v;
    }
    for (const auto& [w, len] : vis[v]) {
      if (!done[w] && d + len < dist[w]) {
        dist[w] = d + len;
        prev[w] = v;
        queue.push({dist[w], w});
      }
    }
  }
  if (best == kInf) throw DomainError("points lie in different components of the ball");

  std::vector<Point> sites{q};
  for (int v = last; v >= 0; v = prev[v]) {
    if (ball.is_boundary_vertex(v)) {
      throw BallTooSmall("geodesic bends at boundary vertex '" + x.vertex_id(v) + "'");
    }
    sites.push_back(Point::vertex(v));
  }
  sites.push_back(p);
  std::reverse(sites.begin(), sites.end());

  std::vector<Point> points{p};
  for (std::size_t i = 0; i + 1 < sites.size(); ++i) {
    auto seg = straight_segment(x, sites[i], sites[i + 1]);
    points.insert(points.end(), seg.begin() + 1, seg.end());
  }
  return PLPath::from_points(x, std::move(points));
}

double distance(const DevelopedBall& ball, const Point& p, const Point& q) {
  if (p == q) return 0;
  return geodesic(ball, p, q).length();
}

PLPath straighten(const PLPath& path, const DevelopedBall& ball, const StraightenOptions& options) {
  const auto& x = ball.complex();
  PLPath cur = path;
  long repairs = 0;
  for (;;) {
    const int m = cur.size();
    const auto& pts = cur.points();
    std::vector<double> d(m, kPi);
    int bad = -1;
    for (int i = 1; i + 1 < m; ++i) {
      d[i] = link_distance(x, cur.incoming(x, i), cur.outgoing(x, i));
      if (bad < 0 && d[i] < kPi - options.eps) bad = i;
    }
    if (bad < 0) return cur;
    if (repairs >= options.budget) {
      throw BudgetExceeded("straighten: budget of " + std::to_string(options.budget) + " repairs exhausted",
                           kPi - d[bad]);
    }
    ++repairs;
    auto anchor = [&](int i) {
      return i == 0 || i == m - 1 || pts[i].kind == Point::Kind::Vertex || std::abs(d[i] - kPi) > options.eps;
    };
    int a = bad - 1;
    while (!anchor(a)) --a;
    int b = bad + 1;
    while (!anchor(b)) ++b;
    std::vector<Point> next(pts.begin(), pts.begin() + a);
    if (pts[a] == pts[b]) {
      next.push_back(pts[a]);
    } else {
      const auto g = geodesic(ball, pts[a], pts[b]);
      next.insert(next.end(), g.points().begin(), g.points().end());
    }
    next.insert(next.end(), pts.begin() + b + 1, pts.end());
    cur = PLPath::from_points(x, std::move(next));
  }
}

PLPath shortest_path(const DevelopedBall& ball, const Point& p, const Point& q, double eps, unsigned seed,
                     long budget) {
  const auto& x = ball.complex();
  if (p == q) throw DomainError("shortest path between coincident points");
  std::mt19937 rng(seed);
  const auto cp = corners_of(x, p);
  const auto cq = corners_of(x, q);
  const int from = cp[rng() % cp.size()];
  const int to = cq[rng() % cq.size()];

  std::vector<int> prev(x.vertex_count(), -2);
  prev[from] = -1;
  std::deque<int> queue{from};
  while (!queue.empty() && prev[to] == -2) {
    const int u = queue.front();
    queue.pop_front();
    std::vector<int> next;
    for (int e : x.edges_at(u)) next.push_back(x.other_end(e, u));
    std::shuffle(next.begin(), next.end(), rng);
    for (int w : next) {
      if (prev[w] == -2) {
        prev[w] = u;
        queue.push_back(w);
      }
    }
  }
  if (prev[to] == -2) throw DomainError("points lie in different components of the ball");
  std::vector<Point> seed_points{q};
  if (!(q == Point::vertex(to))) seed_points.push_back(Point::vertex(to));
  for (int v = prev[to]; v >= 0; v = prev[v]) seed_points.push_back(Point::vertex(v));
  if (!(seed_points.back() == p)) seed_points.push_back(p);
  std::reverse(seed_points.begin(), seed_points.end());

  StraightenOptions options;
  options.eps = eps;
  options.budget = budget;
  auto path = straighten(PLPath::from_points(x, std::move(seed_points)), ball, options);
  require_interior(ball, path);
  return path;
}

Direction log_dir(const DevelopedBall& ball, const Point& p, const Point& q) {
  const auto& x = ball.complex();
  if (p == q) throw DomainError("log of coincident points");
  if (const auto cell = common_cell(x, p, q)) return direction_toward(x, p, q, *cell);
  return geodesic(ball, p, q).outgoing(x, 0);
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  double distance = kInf;
  int segment = -1;
  Rational fraction;
};

void consider(Candidate& best, double distance, int segment, const Rational& fraction) {
  if (distance < best.distance) best = {distance, segment, fraction};
}

/// Closest point to A on the part of P0 + u d (u in [0,1]) seen through the cone (lo, hi).
std::optional<std::pair<Rational, Rational>> closest_visible(const Vec2<Rational>& lo, const Vec2<Rational>& hi,
                                                             const Vec2<Rational>& a, const Vec2<Rational>& p0,
                                                             const Vec2<Rational>& d) {
  Rational l = 0, h = 1;
  auto constrain = [&](const Rational& c0, const Rational& c1) {
    if (c1 == 0) return c0 > 0;
    const Rational root = -c0 / c1;
    if (c1 > 0) {
      l = std::max(l, root);
    } else {
      h = std::min(h, root);
    }
    return true;
  };
  const auto r = p0 - a;
  if (!constrain(detail::cross(lo, r), detail::cross(lo, d))) return std::nullopt;
  if (!constrain(detail::cross(r, hi), detail::cross(d, hi))) return std::nullopt;
  if (!(l < h)) return std::nullopt;
  Rational t = -detail::dot(r, d) / detail::dot(d, d);
  t = std::clamp(t, l, h);
  const Vec2<Rational> f{Rational(r.x + t * d.x), Rational(r.y + t * d.y)};
  return std::pair{t, detail::dot(f, f)};
}

/// Closest point to a on the segment a0 + u (a1 - a0) in local coordinates.
std::pair<Rational, Rational> closest_on_segment(const LocalXY& a, const LocalXY& a0, const LocalXY& a1) {
  const Vec2<Rational> d{a1.first - a0.first, a1.second - a0.second};
  const Vec2<Rational> r{a0.first - a.first, a0.second - a.second};
  Rational t = -detail::dot(r, d) / detail::dot(d, d);
  t = std::clamp(t, Rational(0), Rational(1));
  const Vec2<Rational> f{Rational(r.x + t * d.x), Rational(r.y + t * d.y)};
  return {t, detail::dot(f, f)};
}

}  // namespace

struct PathProjector::Impl {
  const DevelopedBall* ball = nullptr;
  PLPath path;
  std::vector<double> arc;
  std::vector<std::vector<int>> by_square;
  std::vector<std::vector<int>> by_edge;
  std::vector<Candidate> field;

  /// Best foot reachable by a straight segment from the apex, plus the vertices the apex sees.
  template <class T>
  Candidate straight(const Point& apex, const Rational& scale, std::vector<std::pair<int, double>>* seen) const {
    const auto& x = ball->complex();
    Candidate best;
    for (int s : squares_containing(x, apex)) {
      const auto a = *local_xy(x, apex, s);
      for (int i : by_square[s]) {
        const auto [a0, a1] = path.segment_in_square(x, i, s);
        const auto [t, d2] = closest_on_segment(a, a0, a1);
        consider(best, std::sqrt(to_double(d2)), i, t);
      }
    }
    std::vector<int> edges;
    if (apex.kind == Point::Kind::Vertex) {
      for (int e : x.edges_at(apex.cell)) edges.push_back(e);
    } else if (apex.kind == Point::Kind::Edge) {
      edges.push_back(apex.cell);
    }
    for (int e : edges) {
      const auto& ends = x.edge_at(e).ends;
      const Rational ta = apex.kind == Point::Kind::Edge ? apex.a : Rational(apex.cell == ends[0] ? 0 : 1);
      auto param = [&](const Point& p) {
        return p.kind == Point::Kind::Edge ? p.a : Rational(p.cell == ends[0] ? 0 : 1);
      };
      for (int i : by_edge[e]) {
        const LocalXY a{ta, 0}, a0{param(path.points()[i]), 0}, a1{param(path.points()[i + 1]), 0};
        const auto [t, d2] = closest_on_segment(a, a0, a1);
        consider(best, std::sqrt(to_double(d2)), i, t);
      }
    }

    Unfolder<T> u(x, apex, scale);
    if (seen) {
      for (const auto& [w, d2] : u.direct_vertices()) seen->emplace_back(w, std::sqrt(to_double(d2)));
    }
    const double inv = 1.0 / to_double(scale);
    u.run(
        [&](int w, int, const auto& d2) {
          if (seen) seen->emplace_back(w, std::sqrt(detail::to_real(d2)) * inv);
          return true;
        },
        [](int) { return true; });
    for (const auto& n : u.nodes()) {
      if (by_square[n.square].empty()) continue;
      const auto lo = detail::to_rational(n.lo);
      const auto hi = detail::to_rational(n.hi);
      const auto a = detail::to_rational(u.apex(n));
      for (int i : by_square[n.square]) {
        const auto [l0, l1] = path.segment_in_square(x, i, n.square);
        const auto p0 = u.place(n, l0);
        const auto d = u.place(n, l1) - p0;
        if (const auto hit = closest_visible(lo, hi, a, p0, d)) {
          consider(best, std::sqrt(to_double(hit->second)) * inv, i, hit->first);
        }
      }
    }
    return best;
  }

  Projection finish(const Candidate& c) const {
    if (c.segment < 0) throw DomainError("point cannot reach the path inside the ball");
    const auto& x = ball->complex();
    Projection p;
    p.segment = c.segment;
    p.fraction = c.fraction;
    p.point = path.point_on_segment(x, c.segment, c.fraction);
    p.parameter = arc[c.segment] + to_double(c.fraction) * path.segment_length(c.segment);
    p.distance = c.distance;
    return p;
  }
};

PathProjector::PathProjector(const DevelopedBall& ball, PLPath path) : impl_(std::make_unique<Impl>()) {
  const auto& x = ball.complex();
  impl_->ball = &ball;
  impl_->path = std::move(path);
  const auto& pl = impl_->path;
  if (pl.segment_count() == 0) throw DomainError("cannot project onto a single point path");
  impl_->arc = pl.arc_lengths();
  impl_->by_square.assign(x.square_count(), {});
  impl_->by_edge.assign(x.edge_count(), {});
  for (int i = 0; i < pl.segment_count(); ++i) {
    const auto& cell = pl.cells()[i];
    if (cell.kind == Cell::Kind::Square) {
      impl_->by_square[cell.index].push_back(i);
    } else {
      impl_->by_edge[cell.index].push_back(i);
      for (const auto& sd : x.sides_of(cell.index)) impl_->by_square[sd.square].push_back(i);
    }
  }

  const int n = x.vertex_count();
  std::vector<Candidate> field(n);
  detail::parallel_for(n, hardware_jobs(), [&](int v) {
    field[v] = impl_->straight<i64>(Point::vertex(v), Rational(1), nullptr);
  });
  const auto& vis = vertex_visibility(ball);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (int v = 0; v < n; ++v) {
    if (field[v].distance < kInf) queue.push({field[v].distance, v});
  }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > field[v].distance) continue;
    for (const auto& [w, len] : vis[v]) {
      if (d + len < field[w].distance) {
        field[w] = {d + len, field[v].segment, field[v].fraction};
        queue.push({field[w].distance, w});
      }
    }
  }
  impl_->field = std::move(field);
}

PathProjector::~PathProjector() = default;
PathProjector::PathProjector(PathProjector&&) noexcept = default;
PathProjector& PathProjector::operator=(PathProjector&&) noexcept = default;

const PLPath& PathProjector::path() const noexcept { return impl_->path; }

Projection PathProjector::project_vertex(int v) const { return impl_->finish(impl_->field.at(v)); }

Projection PathProjector::project(const Point& x) const {
  if (x.kind == Point::Kind::Vertex) return project_vertex(x.cell);
  const auto& cx = impl_->ball->complex();
  const Rational scale = detail::common_scale(cx, {&x});
  std::vector<std::pair<int, double>> seen;
  Candidate best = with_engine(cx, scale, [&](auto tag) {
    using T = decltype(tag);
    return impl_->straight<T>(x, scale, &seen);
  });
  for (const auto& [v, len] : seen) {
    const auto& f = impl_->field[v];
    consider(best, len + f.distance, f.segment, f.fraction);
  }
  return impl_->finish(best);
}

Projection project_to_path(const DevelopedBall& ball, const Point& x, const PLPath& path, double) {
  return PathProjector(ball, path).project(x);
}

// ---------------------------------------------------------------------------

SlopeInvariant slope_invariant(const PLPath& path, const DevelopedBall& ball, double eps) {
  const auto& x = ball.complex();
  if (path.segment_count() == 0) throw DomainError("slope of a single point path");
  std::optional<SlopeInvariant> first;
  for (int i = 0; i < path.segment_count(); ++i) {
    SlopeInvariant s;
    const auto& cell = path.cells()[i];
    if (cell.kind == Cell::Kind::Square) {
      const auto [a, b] = path.segment_in_square(x, i, cell.index);
      const Rational dx = abs(b.first - a.first);
      const Rational dy = abs(b.second - a.second);
      s.tan_alpha = std::min(dx, dy) / std::max(dx, dy);
    }
    s.alpha = std::atan(to_double(s.tan_alpha));
    if (!first) {
      first = s;
    } else if (std::abs(s.alpha - first->alpha) > eps) {
      throw DomainError("inconsistent slopes: segment 0 has tan " + to_string(first->tan_alpha) + ", segment " +
                        std::to_string(i) + " has tan " + to_string(s.tan_alpha));
    }
  }
  return *first;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace cat0sq
