#include "cat0sq/ball.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <unordered_map>

#include "cat0sq/format.hpp"
#include "cat0sq/link.hpp"
#include "ball_memo.hpp"
#include "json_detail.hpp"

namespace cat0sq {

namespace {

std::vector<int> bfs_depth(const SquareComplex& x, int from) {
  std::vector<int> d(x.vertex_count(), -1);
  d[from] = 0;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : x.edges_at(u)) {
      const int w = x.other_end(e, u);
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return d;
}

std::string padded(char tag, int i, int width) {
  auto s = std::to_string(i);
  return std::string(1, tag) + std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0, '0') + s;
}

}  // namespace

DevelopedBall::DevelopedBall(ComplexPtr ball, ComplexPtr base, int center, int radius, CellularMap covering,
                             std::vector<int> depth, std::vector<char> boundary)
    : ball_(std::move(ball)),
      base_(std::move(base)),
      center_(center),
      radius_(radius),
      covering_(std::move(covering)),
      depth_(std::move(depth)),
      boundary_(std::move(boundary)),
      memo_(std::make_shared<Memo>()) {
  if (static_cast<int>(depth_.size()) != ball_->vertex_count() ||
      static_cast<int>(boundary_.size()) != ball_->vertex_count()) {
    throw DomainError("ball tables do not match the ball complex");
  }
  if (covering_.source().get() != ball_.get() || covering_.target().get() != base_.get()) {
    if (!(*covering_.source() == *ball_) || !(*covering_.target() == *base_)) {
      throw DomainError("covering map does not run from the ball to the base");
    }
  }
}

bool DevelopedBall::is_boundary_edge(int e) const {
  const auto [a, b] = ball_->edge_at(e).ends;
  return boundary_[a] && boundary_[b];
}

int DevelopedBall::interior_margin(int v) const {
  if (boundary_.at(v)) return -1;
  const auto d = bfs_depth(*ball_, v);
  int nearest = INT_MAX;
  for (int w = 0; w < ball_->vertex_count(); ++w) {
    if (boundary_[w] && d[w] >= 0) nearest = std::min(nearest, d[w]);
  }
  return nearest == INT_MAX ? INT_MAX : nearest - 1;
}

int DevelopedBall::vertex_count_within(int r) const {
  return static_cast<int>(std::count_if(depth_.begin(), depth_.end(), [r](int d) { return d >= 0 && d <= r; }));
}

DevelopedBall develop(ComplexPtr base, int base_vertex, int radius) {
  const auto& X = *base;
  if (radius < 1) throw DomainError("development radius must be at least 1");
  if (base_vertex < 0 || base_vertex >= X.vertex_count()) throw DomainError("base vertex out of range");
  require_npc(X);

  std::vector<int> lift;   // ball vertex -> base vertex
  std::vector<int> depth;  // creation depth
  struct BallEdge {
    int a, b, base;
  };
  std::vector<BallEdge> edges;
  struct BallSquare {
    std::array<int, 4> v, e;
    int base;
  };
  std::vector<BallSquare> squares;
  std::unordered_map<std::int64_t, int> edge_at;    // (ball vertex, base edge) -> ball edge
  std::unordered_map<std::int64_t, int> square_at;  // (ball edge, base square) -> ball square
  auto key = [](int a, int b) { return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b); };
  std::vector<std::vector<int>> layers(radius + 2);

  auto add_vertex = [&](int b, int d) {
    lift.push_back(b);
    depth.push_back(d);
    const int u = static_cast<int>(lift.size()) - 1;
    if (d < static_cast<int>(layers.size())) layers[d].push_back(u);
    return u;
  };
  auto find_edge = [&](int u, int e) {
    auto it = edge_at.find(key(u, e));
    return it == edge_at.end() ? -1 : it->second;
  };
  // Ball edges keep the orientation of the base edge they cover.
  auto add_edge = [&](int u, int w, int e) {
    const bool forward = X.edge_at(e).ends[0] == lift[u];
    edges.push_back({forward ? u : w, forward ? w : u, e});
    const int id = static_cast<int>(edges.size()) - 1;
    edge_at.emplace(key(u, e), id);
    edge_at.emplace(key(w, e), id);
    return id;
  };
  auto other = [&](int ball_edge, int u) { return edges[ball_edge].a == u ? edges[ball_edge].b : edges[ball_edge].a; };

  add_vertex(base_vertex, 0);
  for (int d = 0; d < radius; ++d) {
    for (std::size_t i = 0; i < layers[d].size(); ++i) {
      const int u = layers[d][i];
      const int b = lift[u];
      for (int e : X.edges_at(b)) {
        if (find_edge(u, e) < 0) add_edge(u, add_vertex(X.other_end(e, b), d + 1), e);
      }
      for (const auto& c : X.corners_at(b)) {
        const auto& s = X.square_at(c.square);
        const int k = c.corner;
        const int e1 = find_edge(u, s.e[k]);
        const int e2 = find_edge(u, s.e[(k + 3) % 4]);
        if (square_at.contains(key(e1, c.square))) continue;
        const int w1 = other(e1, u);
        const int w2 = other(e2, u);
        const int f1 = find_edge(w1, s.e[(k + 1) % 4]);
        const int f2 = find_edge(w2, s.e[(k + 2) % 4]);
        int opposite = -1;
        if (f1 >= 0) opposite = other(f1, w1);
        if (f2 >= 0) {
          const int o2 = other(f2, w2);
          if (opposite >= 0 && opposite != o2) throw Error("development produced inconsistent square lifts");
          opposite = o2;
        }
        if (opposite < 0) opposite = add_vertex(s.v[(k + 2) % 4], std::min(depth[w1], depth[w2]) + 1);
        const int g1 = f1 >= 0 ? f1 : add_edge(w1, opposite, s.e[(k + 1) % 4]);
        const int g2 = f2 >= 0 ? f2 : add_edge(w2, opposite, s.e[(k + 2) % 4]);
        BallSquare sq;
        sq.base = c.square;
        sq.v[k] = u;
        sq.v[(k + 1) % 4] = w1;
        sq.v[(k + 2) % 4] = opposite;
        sq.v[(k + 3) % 4] = w2;
        sq.e[k] = e1;
        sq.e[(k + 1) % 4] = g1;
        sq.e[(k + 2) % 4] = g2;
        sq.e[(k + 3) % 4] = e2;
        const int id = static_cast<int>(squares.size());
        for (int ee : sq.e) {
          if (!square_at.emplace(key(ee, c.square), id).second) {
            throw Error("development produced a square lift twice");
          }
        }
        squares.push_back(sq);
      }
    }
  }

  const int n = static_cast<int>(lift.size());
  const int width = std::max<int>(5, static_cast<int>(std::to_string(std::max({n, (int)edges.size(), (int)squares.size()})).size()));
  RawComplex raw;
  for (int v = 0; v < n; ++v) raw.vertices.push_back(padded('v', v, width));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    raw.edges.push_back({padded('e', static_cast<int>(i), width), raw.vertices[edges[i].a], raw.vertices[edges[i].b]});
  }
  for (std::size_t i = 0; i < squares.size(); ++i) {
    RawSquare rs;
    rs.id = padded('s', static_cast<int>(i), width);
    const auto& sq = squares[i];
    for (int k = 0; k < 4; ++k) {
      rs.corners[k] = {raw.vertices[sq.v[k]], raw.edges[sq.e[(k + 3) % 4]].id, raw.edges[sq.e[k]].id};
    }
    raw.squares.push_back(std::move(rs));
  }
  auto ball = std::make_shared<const SquareComplex>(SquareComplex::from_raw(raw));

  std::vector<int> emap(edges.size()), smap(squares.size());
  for (std::size_t i = 0; i < edges.size(); ++i) emap[i] = edges[i].base;
  for (std::size_t i = 0; i < squares.size(); ++i) smap[i] = squares[i].base;
  CellularMap covering(ball, base, lift, std::move(emap), std::move(smap), std::vector<Dihedral>(squares.size()));

  auto hop = bfs_depth(*ball, 0);
  std::vector<char> boundary(n);
  for (int v = 0; v < n; ++v) {
    if (hop[v] != depth[v]) throw Error("development depth bookkeeping disagrees with the ball metric");
    boundary[v] = hop[v] >= radius;
  }
  return DevelopedBall(std::move(ball), std::move(base), 0, radius, std::move(covering), std::move(hop),
                       std::move(boundary));
}

DevelopedBall develop(const SquareComplex& base, std::string_view base_vertex, int radius) {
  const int v = base.vertex(base_vertex);
  return develop(std::make_shared<const SquareComplex>(base), v, radius);
}

DevelopedBall as_ball(ComplexPtr complex, int center) {
  const auto& X = *complex;
  if (center < 0 || center >= X.vertex_count()) throw DomainError("center vertex out of range");
  auto d = bfs_depth(X, center);
  if (std::any_of(d.begin(), d.end(), [](int x) { return x < 0; })) throw DomainError("complex is not connected");
  if (X.euler_characteristic() != 1) {
    throw DomainError("complex has Euler characteristic " + std::to_string(X.euler_characteristic()) +
                      "; a simply connected square complex needs 1");
  }
  require_npc(X);
  auto id = CellularMap::identity(complex);
  return DevelopedBall(complex, complex, center, -1, std::move(id), std::move(d),
                       std::vector<char>(X.vertex_count(), 0));
}

CellularMap lift_map(const DevelopedBall& src, const DevelopedBall& dst, const CellularMap& phi, int from, int to) {
  const auto& S = src.complex();
  const auto& D = dst.complex();
  const auto& cs = src.covering();
  const auto& cd = dst.covering();
  if (!(*phi.source() == src.base()) || !(*phi.target() == dst.base())) {
    throw DomainError("lift_map: base map does not match the balls' bases");
  }
  if (phi.vertex(cs.vertex(from)) != cd.vertex(to)) {
    throw DomainError("lift_map: seed vertices do not cover corresponding base vertices");
  }
  std::vector<int> m(S.vertex_count(), -1);
  m[from] = to;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : S.edges_at(u)) {
      const int target_base = phi.edge(cs.edge(e));
      if (target_base < 0) continue;
      int image = -1;
      for (int f : D.edges_at(m[u])) {
        if (cd.edge(f) == target_base) {
          image = f;
          break;
        }
      }
      if (image < 0) continue;
      const int w = S.other_end(e, u);
      const int w_img = D.other_end(image, m[u]);
      if (m[w] < 0) {
        m[w] = w_img;
        queue.push_back(w);
      } else if (m[w] != w_img) {
        throw Error("lift_map: inconsistent lift; the source is not simply connected");
      }
    }
  }
  return CellularMap::from_vertex_indices(src.complex_ptr(), dst.complex_ptr(), std::move(m));
}

CellularMap lift_map(const DevelopedBall& src, const DevelopedBall& dst, int from, int to) {
  return lift_map(src, dst, CellularMap::identity(src.base_ptr()), from, to);
}

// ---------------------------------------------------------------------------

std::string to_text(const DevelopedBall& b) {
  using detail::json;
  const auto& X = b.complex();
  json doc = detail::complex_to_json(X);
  json section;
  section["center"] = X.vertex_id(b.center());
  section["radius"] = b.radius();
  json depth = json::object(), covering = json::object(), boundary = json::array();
  for (int v = 0; v < X.vertex_count(); ++v) {
    depth[X.vertex_id(v)] = b.depth(v);
    covering[X.vertex_id(v)] = b.base().vertex_id(b.covering().vertex(v));
    if (b.is_boundary_vertex(v)) boundary.push_back(X.vertex_id(v));
  }
  section["depth"] = std::move(depth);
  section["covering"] = std::move(covering);
  section["boundary"] = std::move(boundary);
  section["base"] = detail::complex_to_json(b.base());
  doc["ball"] = std::move(section);
  return doc.dump(2) + "\n";
}

DevelopedBall parse_ball(std::string_view text) {
  using detail::json;
  const json doc = detail::parse_json(text);
  auto ball = std::make_shared<const SquareComplex>(SquareComplex::from_raw(detail::raw_from_json(doc, "")));
  const auto& section = detail::field(doc, "ball", "");
  auto base = std::make_shared<const SquareComplex>(
      SquareComplex::from_raw(detail::raw_from_json(detail::field(section, "base", "/ball"), "/ball/base")));
  const auto center_id = detail::string_field(section, "center", "/ball");
  const auto center = ball->find_vertex(center_id);
  if (!center) throw ParseError("/ball/center", "unknown vertex '" + center_id + "'");
  const auto& radius = detail::field(section, "radius", "/ball");
  if (!radius.is_number_integer()) throw ParseError("/ball/radius", "expected an integer");

  const int n = ball->vertex_count();
  std::vector<int> depth(n, -1);
  std::vector<std::pair<std::string, std::string>> pairs;
  const auto& dj = detail::field(section, "depth", "/ball");
  const auto& cj = detail::field(section, "covering", "/ball");
  for (int v = 0; v < n; ++v) {
    const auto& id = ball->vertex_id(v);
    const auto d = dj.find(id);
    if (d == dj.end() || !d->is_number_integer()) throw ParseError("/ball/depth/" + id, "missing depth");
    depth[v] = d->get<int>();
    const auto c = cj.find(id);
    if (c == cj.end() || !c->is_string()) throw ParseError("/ball/covering/" + id, "missing covering image");
    if (!base->find_vertex(c->get<std::string>())) {
      throw ParseError("/ball/covering/" + id, "unknown base vertex '" + c->get<std::string>() + "'");
    }
    pairs.emplace_back(id, c->get<std::string>());
  }
  std::vector<char> boundary(n, 0);
  const auto& bj = detail::field(section, "boundary", "/ball");
  if (!bj.is_array()) throw ParseError("/ball/boundary", "expected an array");
  for (std::size_t i = 0; i < bj.size(); ++i) {
    const auto v = bj[i].is_string() ? ball->find_vertex(bj[i].get<std::string>()) : std::nullopt;
    if (!v) throw ParseError("/ball/boundary/" + std::to_string(i), "unknown vertex");
    boundary[*v] = 1;
  }
  auto covering = CellularMap::from_vertex_map(ball, base, pairs);
  if (!covering.is_total()) throw ParseError("/ball/covering", "covering table does not extend to a cellular map");
  return DevelopedBall(std::move(ball), std::move(base), *center, radius.get<int>(), std::move(covering),
                       std::move(depth), std::move(boundary));
}

DevelopedBall load_ball(const std::filesystem::path& path) { return parse_ball(read_file(path)); }

void save_ball(const DevelopedBall& ball, const std::filesystem::path& path) { write_file(path, to_text(ball)); }

}  // namespace cat0sq
