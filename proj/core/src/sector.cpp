#include "cat0sq/sector.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "cat0sq/error.hpp"
#include "cat0sq/link.hpp"
#include "cat0sq/path.hpp"
#include "parallel.hpp"

namespace cat0sq {

std::string_view to_string(SectorKind kind) {
  switch (kind) {
    case SectorKind::FlatDisk: return "flat-disk";
    case SectorKind::QuarterDisk: return "quarter-disk";
    case SectorKind::FakeDisk: return "fake-disk";
  }
  return "?";
}

SectorKind parse_sector_kind(std::string_view name) {
  if (name == "flat-disk") return SectorKind::FlatDisk;
  if (name == "quarter-disk") return SectorKind::QuarterDisk;
  if (name == "fake-disk") return SectorKind::FakeDisk;
  throw DomainError("unknown sector kind '" + std::string(name) + "'");
}

int sheet_count(SectorKind kind) {
  switch (kind) {
    case SectorKind::FlatDisk: return 4;
    case SectorKind::QuarterDisk: return 1;
    case SectorKind::FakeDisk: return 5;
  }
  return 0;
}

std::vector<int> SectorPattern::all_squares() const {
  std::set<int> out;
  for (const auto& c : squares) out.insert(c.begin(), c.end());
  return {out.begin(), out.end()};
}

std::vector<int> SectorPattern::all_vertices() const {
  std::set<int> out;
  for (const auto& c : charts) out.insert(c.begin(), c.end());
  return {out.begin(), out.end()};
}

namespace {

// Injective filling of the model grid, one square per step, with an undo log.
class Filler {
 public:
  Filler(const SquareComplex& x, int sheets, int radius)
      : x_(x), n_(sheets), r_(radius), side_(radius + 1),
        val_(static_cast<std::size_t>(sheets) * side_ * side_, -1), owner_(x.vertex_count(), -1),
        used_(x.square_count(), 0), placed_(static_cast<std::size_t>(sheets) * radius * radius, -1) {}

  int slot(int i, int px, int py) const {
    if (n_ >= 2) {
      if (px == 0 && py == 0) return 0;
      if (px == 0) {
        i = (i + 1) % n_;
        px = py;
        py = 0;
      }
    }
    return (i * side_ + py) * side_ + px;
  }

  std::size_t mark() const { return log_.size(); }

  bool assign(int s, int v) {
    if (val_[s] == v) return true;
    if (val_[s] != -1 || owner_[v] != -1) return false;
    val_[s] = v;
    owner_[v] = s;
    log_.push_back({Undo::Vertex, s, {}});
    return true;
  }

  bool bind_edge(int s1, int s2, int e) {
    const auto key = std::minmax(s1, s2);
    const auto it = edges_.find(key);
    if (it != edges_.end()) return it->second == e;
    edges_.emplace(key, e);
    log_.push_back({Undo::Edge, 0, key});
    return true;
  }

  void rollback(std::size_t m) {
    while (log_.size() > m) {
      const auto u = log_.back();
      log_.pop_back();
      switch (u.kind) {
        case Undo::Vertex:
          owner_[val_[u.index]] = -1;
          val_[u.index] = -1;
          break;
        case Undo::Edge: edges_.erase(u.key); break;
        case Undo::Square: used_[u.index] = 0; break;
      }
    }
  }

  bool fill(int task = 0) {
    if (task == static_cast<int>(placed_.size())) return true;
    const int i = task / (r_ * r_), rest = task % (r_ * r_), py = rest / r_, px = rest % r_;
    const int sl[4] = {slot(i, px, py), slot(i, px + 1, py), slot(i, px + 1, py + 1), slot(i, px, py + 1)};
    const int a = val_[sl[0]];
    for (const auto& c : x_.corners_at(a)) {
      if (used_[c.square]) continue;
      const auto& sq = x_.square_at(c.square);
      for (int dir : {1, 3}) {
        const auto m = mark();
        bool ok = true;
        for (int j = 0; j < 4 && ok; ++j) ok = assign(sl[j], sq.v[(c.corner + dir * j) % 4]);
        for (int j = 0; j < 4 && ok; ++j) {
          const int k0 = (c.corner + dir * j) % 4, k1 = (c.corner + dir * (j + 1)) % 4;
          ok = bind_edge(sl[j], sl[(j + 1) % 4], sq.e[dir == 1 ? k0 : k1]);
        }
        if (ok) {
          used_[c.square] = 1;
          log_.push_back({Undo::Square, c.square, {}});
          placed_[task] = c.square;
          if (fill(task + 1)) return true;
        }
        rollback(m);
      }
    }
    return false;
  }

  SectorPattern pattern(SectorKind kind, int cone) const {
    SectorPattern p;
    p.kind = kind;
    p.cone = cone;
    p.radius = r_;
    p.charts.assign(n_, std::vector<int>(side_ * side_));
    p.squares.assign(n_, std::vector<int>(r_ * r_));
    for (int i = 0; i < n_; ++i) {
      for (int y = 0; y <= r_; ++y) {
        for (int x = 0; x <= r_; ++x) p.charts[i][y * side_ + x] = val_[slot(i, x, y)];
      }
      for (int k = 0; k < r_ * r_; ++k) p.squares[i][k] = placed_[i * r_ * r_ + k];
    }
    return p;
  }

 private:
  struct Undo {
    enum Kind { Vertex, Edge, Square } kind;
    int index;
    std::pair<int, int> key;
  };

  const SquareComplex& x_;
  int n_, r_, side_;
  std::vector<int> val_;
  std::vector<int> owner_;
  std::vector<char> used_;
  std::vector<int> placed_;
  std::map<std::pair<int, int>, int> edges_;
  std::vector<Undo> log_;
};

std::optional<SectorPattern> search(const SquareComplex& x, int v, int radius, SectorKind kind) {
  const int n = sheet_count(kind);
  if (kind == SectorKind::QuarterDisk) {
    for (const auto& c : x.corners_at(v)) {
      const auto& sq = x.square_at(c.square);
      Filler f(x, 1, radius);
      const bool ok = f.assign(f.slot(0, 0, 0), v) && f.assign(f.slot(0, 1, 0), sq.v[(c.corner + 1) % 4]) &&
                      f.assign(f.slot(0, 0, 1), sq.v[(c.corner + 3) % 4]) &&
                      f.bind_edge(f.slot(0, 0, 0), f.slot(0, 1, 0), sq.e[c.corner]) &&
                      f.bind_edge(f.slot(0, 0, 0), f.slot(0, 0, 1), sq.e[(c.corner + 3) % 4]);
      if (ok && f.fill()) return f.pattern(kind, v);
    }
    return std::nullopt;
  }
  const LinkGraph l = link(x, v);
  const auto loops = simple_cycles(l, n);
  for (const auto& cycle : loops.cycles) {
    if (static_cast<int>(cycle.size()) != n) continue;
    Filler f(x, n, radius);
    bool ok = f.assign(0, v);
    for (int i = 0; i < n && ok; ++i) {
      const int e = l.edge_of(cycle[i]);
      ok = f.assign(f.slot(i, 1, 0), x.other_end(e, v)) && f.bind_edge(0, f.slot(i, 1, 0), e);
    }
    if (ok && f.fill()) return f.pattern(kind, v);
  }
  return std::nullopt;
}

}  // namespace

SectorSearch detect_sector(const DevelopedBall& ball, int v, int radius, SectorKind kind) {
  const auto& x = ball.complex();
  if (radius < 1) throw DomainError("sector radius must be at least 1");
  if (v < 0 || v >= x.vertex_count()) throw DomainError("vertex out of range");
  const int margin = ball.interior_margin(v);
  if (margin < 2 * radius - 2) {
    throw BallTooSmall("vertex " + x.vertex_id(v) + " has interior margin " + std::to_string(margin) +
                       ", a radius-" + std::to_string(radius) + " sector needs " + std::to_string(2 * radius - 2));
  }
  SectorSearch out;
  out.pattern = search(x, v, radius, kind);
  if (out.pattern) {
    out.achieved = radius;
    return out;
  }
  for (int r = radius - 1; r >= 1; --r) {
    if (search(x, v, r, kind)) {
      out.achieved = r;
      break;
    }
  }
  return out;
}

SectorScan detect_sectors(const DevelopedBall& ball, int radius, SectorKind kind, int jobs, int vertex) {
  const auto& x = ball.complex();
  std::vector<int> targets;
  if (vertex >= 0) {
    targets.push_back(vertex);
  } else {
    for (int v = 0; v < x.vertex_count(); ++v) targets.push_back(v);
  }
  std::vector<std::optional<SectorPattern>> found(targets.size());
  std::vector<char> skipped(targets.size(), 0);
  detail::parallel_for(static_cast<int>(targets.size()), jobs, [&](int i) {
    const int v = targets[i];
    if (ball.interior_margin(v) < 2 * radius - 2) {
      skipped[i] = 1;
      return;
    }
    found[i] = detect_sector(ball, v, radius, kind).pattern;
  });
  SectorScan out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (skipped[i]) out.skipped.push_back(targets[i]);
    if (found[i]) out.found.push_back(std::move(*found[i]));
  }
  return out;
}

CurvatureReport curvature(const SquareComplex& x, const std::vector<int>& squares) {
  std::set<int> sq(squares.begin(), squares.end());
  std::map<int, int> edge_use;
  std::map<int, int> corners;
  for (int s : sq) {
    const auto& q = x.square_at(s);
    for (int k = 0; k < 4; ++k) {
      ++edge_use[q.e[k]];
      ++corners[q.v[k]];
    }
  }
  std::set<int> boundary;
  bool manifold = true;
  for (const auto& [e, n] : edge_use) {
    if (n > 2) manifold = false;
    if (n == 1) {
      boundary.insert(x.edge_at(e).ends[0]);
      boundary.insert(x.edge_at(e).ends[1]);
    }
  }
  // Link of each vertex inside the subcomplex: a cycle at interior vertices, a path at boundary ones.
  for (const auto& [v, n] : corners) {
    std::map<int, std::vector<int>> adj;
    for (const auto& c : x.corners_at(v)) {
      if (!sq.count(c.square)) continue;
      const auto& q = x.square_at(c.square);
      const int e1 = q.e[c.corner], e2 = q.e[(c.corner + 3) % 4];
      adj[e1].push_back(e2);
      adj[e2].push_back(e1);
    }
    std::set<int> seen;
    std::deque<int> queue{adj.begin()->first};
    seen.insert(queue.front());
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      for (int f : adj[e]) {
        if (seen.insert(f).second) queue.push_back(f);
      }
    }
    int ends = 0;
    for (const auto& [e, nb] : adj) ends += nb.size() == 1;
    const bool is_boundary = boundary.count(v) != 0;
    if (seen.size() != adj.size() || ends != (is_boundary ? 2 : 0)) manifold = false;
  }
  // Connectivity through shared vertices.
  std::map<int, std::vector<int>> by_vertex;
  for (int s : sq) {
    for (int w : x.square_at(s).v) by_vertex[w].push_back(s);
  }
  std::set<int> reached;
  if (!sq.empty()) {
    std::deque<int> queue{*sq.begin()};
    reached.insert(*sq.begin());
    while (!queue.empty()) {
      const int s = queue.front();
      queue.pop_front();
      for (int w : x.square_at(s).v) {
        for (int t : by_vertex[w]) {
          if (reached.insert(t).second) queue.push_back(t);
        }
      }
    }
  }
  const int euler = static_cast<int>(corners.size()) - static_cast<int>(edge_use.size()) + static_cast<int>(sq.size());

  CurvatureReport r;
  for (const auto& [v, n] : corners) {
    if (boundary.count(v)) {
      r.boundary_quarter_turns += 2 - n;
    } else {
      r.interior_quarter_turns += 4 - n;
    }
  }
  r.interior_curvature = r.interior_quarter_turns * kPi / 2;
  r.boundary_turning = r.boundary_quarter_turns * kPi / 2;
  r.gauss_bonnet = r.interior_quarter_turns + r.boundary_quarter_turns == 4;
  r.disk = !sq.empty() && manifold && euler == 1 && reached.size() == sq.size();
  return r;
}

DirectionClass classify_direction(const SectorPattern& chart, const Rational& dx, const Rational& dy) {
  if (chart.kind != SectorKind::FlatDisk) throw DomainError("direction classes need a flat-disk chart");
  if (dx == 0 && dy == 0) throw DomainError("zero direction vector");
  if (chart.radius < 2) throw BallTooSmall("flat chart of radius " + std::to_string(chart.radius) + " holds no strip", chart.radius);
  DirectionClass c;
  c.dx = dx;
  c.dy = dy;
  c.singular = dx == 0 || dy == 0;
  return c;
}

SpacingReport singular_spacing_check(const DevelopedBall& ball, const SectorPattern& chart) {
  if (chart.kind != SectorKind::FlatDisk) throw DomainError("spacing check needs a flat-disk chart");
  if (chart.radius < 2) throw BallTooSmall("flat chart of radius " + std::to_string(chart.radius) + " holds no strip", chart.radius);
  const auto& x = ball.complex();
  const Point cone = Point::vertex(chart.cone);
  std::vector<Direction> rays;
  for (int i = 0; i < 4; ++i) {
    const auto e = x.edge_between(chart.cone, chart.vertex_at(i, 1, 0));
    if (!e) throw DomainError("chart ray is not an edge");
    rays.push_back(direction_toward(x, cone, Point::vertex(chart.vertex_at(i, 1, 0)), Cell{Cell::Kind::Edge, *e}));
  }
  auto multiple = [](double a) {
    const double k = a / (kPi / 2);
    return std::isfinite(a) && std::abs(k - std::round(k)) < 1e-12;
  };
  SpacingReport r;
  r.pass = true;
  double total = 0;
  for (int i = 0; i < 4; ++i) {
    r.angles.push_back(total);
    const double step = link_distance(x, rays[i], rays[(i + 1) % 4]);
    if (std::abs(step - kPi / 2) > 1e-12) r.pass = false;
    total += step;
    for (int j = i + 1; j < 4; ++j) {
      if (!multiple(link_distance(x, rays[i], rays[j]))) r.pass = false;
    }
  }
  if (std::abs(total - 2 * kPi) > 1e-12) r.pass = false;
  return r;
}

}  // namespace cat0sq
