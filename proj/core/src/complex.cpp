#include "cat0sq/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace cat0sq {

bool ValidationReport::has(std::string_view axiom_id) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.axiom == axiom_id; });
}

namespace {

std::string summarize(const ValidationReport& report) {
  std::string msg = "complex violates " + std::to_string(report.violations.size()) + " axiom check(s)";
  if (!report.violations.empty()) {
    const auto& v = report.violations.front();
    msg += "; first: [" + v.axiom + "] " + v.message;
  }
  return msg;
}

using VertexPair = std::pair<std::string, std::string>;

VertexPair unordered(const std::string& a, const std::string& b) {
  return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(summarize(report)), report_(std::move(report)) {}

ValidationReport validate(const RawComplex& raw) {
  ValidationReport report;
  auto add = [&](std::string_view axiom_id, std::vector<std::string> cells, std::string message) {
    report.violations.push_back({std::string(axiom_id), std::move(cells), std::move(message)});
  };

  std::set<std::string> vertices;
  for (const auto& v : raw.vertices) {
    if (!vertices.insert(v).second) add(axiom::kDuplicateId, {v}, "vertex id '" + v + "' declared twice");
  }

  // Edges that resolve and have distinct endpoints.
  std::map<std::string, VertexPair> edges;
  std::set<std::string> seen_edges;
  for (const auto& e : raw.edges) {
    if (!seen_edges.insert(e.id).second) {
      add(axiom::kDuplicateId, {e.id}, "edge id '" + e.id + "' declared twice");
      continue;
    }
    bool ok = true;
    for (const auto* end : {&e.from, &e.to}) {
      if (!vertices.contains(*end)) {
        add(axiom::kDanglingReference, {e.id, *end}, "edge '" + e.id + "' references missing vertex '" + *end + "'");
        ok = false;
      }
    }
    if (ok && e.from == e.to) {
      add(axiom::kEdgeEndpoints, {e.id}, "edge '" + e.id + "' has both endpoints at '" + e.from + "'");
      ok = false;
    }
    if (ok) edges.emplace(e.id, VertexPair{e.from, e.to});
  }

  struct GoodSquare {
    std::array<std::string, 4> v;
    std::array<std::string, 4> e;
  };
  std::map<std::string, GoodSquare> squares;
  std::set<std::string> seen_squares;
  for (const auto& s : raw.squares) {
    if (!seen_squares.insert(s.id).second) {
      add(axiom::kDuplicateId, {s.id}, "square id '" + s.id + "' declared twice");
      continue;
    }
    bool resolved = true;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& c = s.corners[i];
      if (!vertices.contains(c.vertex)) {
        add(axiom::kDanglingReference, {s.id, c.vertex},
            "square '" + s.id + "' corner " + std::to_string(i) + " references missing vertex '" + c.vertex + "'");
        resolved = false;
      }
      for (const auto* e : {&c.in_edge, &c.out_edge}) {
        if (!seen_edges.contains(*e)) {
          add(axiom::kDanglingReference, {s.id, *e},
              "square '" + s.id + "' corner " + std::to_string(i) + " references missing edge '" + *e + "'");
          resolved = false;
        } else if (!edges.contains(*e)) {
          resolved = false;  // edge exists but is itself broken; already reported
        }
      }
    }
    if (!resolved) continue;

    bool chained = true;
    GoodSquare g;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& c = s.corners[i];
      const auto& next = s.corners[(i + 1) % 4];
      g.v[i] = c.vertex;
      g.e[i] = c.out_edge;
      if (c.out_edge != next.in_edge) {
        add(axiom::kCornerChain, {s.id, c.out_edge, next.in_edge},
            "square '" + s.id + "' corner " + std::to_string(i) + " leaves along '" + c.out_edge +
                "' but corner " + std::to_string((i + 1) % 4) + " enters along '" + next.in_edge + "'");
        chained = false;
        continue;
      }
      const auto& ends = edges.at(c.out_edge);
      if (unordered(ends.first, ends.second) != unordered(c.vertex, next.vertex)) {
        add(axiom::kCornerChain, {s.id, c.out_edge},
            "square '" + s.id + "' side " + std::to_string(i) + " uses edge '" + c.out_edge + "' which does not join '" +
                c.vertex + "' and '" + next.vertex + "'");
        chained = false;
      }
    }
    if (!chained) continue;

    std::set<std::string> vs(g.v.begin(), g.v.end());
    std::set<std::string> es(g.e.begin(), g.e.end());
    if (vs.size() != 4 || es.size() != 4) {
      add(axiom::kSquareBoundary, {s.id},
          "square '" + s.id + "' boundary is not an embedded 4-cycle (" + std::to_string(vs.size()) +
              " distinct vertices, " + std::to_string(es.size()) + " distinct edges)");
      continue;
    }
    squares.emplace(s.id, std::move(g));
  }

  // Two closed 1-cells meet in at most one vertex.
  std::map<VertexPair, std::vector<std::string>> edges_by_pair;
  for (const auto& [id, ends] : edges) edges_by_pair[unordered(ends.first, ends.second)].push_back(id);
  for (const auto& [pair, ids] : edges_by_pair) {
    if (ids.size() > 1) {
      add(axiom::kCellsMeet, ids,
          "edges joining '" + pair.first + "' and '" + pair.second + "' meet in two vertices");
    }
  }

  // A square meets an edge outside its boundary in at most one vertex.
  for (const auto& [id, g] : squares) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        auto it = edges_by_pair.find(unordered(g.v[i], g.v[j]));
        if (it == edges_by_pair.end()) continue;
        for (const auto& e : it->second) {
          if (std::find(g.e.begin(), g.e.end(), e) == g.e.end()) {
            add(axiom::kCellsMeet, {id, e},
                "edge '" + e + "' meets square '" + id + "' in two vertices without being a side");
          }
        }
      }
    }
  }

  // Two squares meet in nothing, one vertex, or one edge.
  std::map<std::string, std::vector<std::string>> squares_at;
  for (const auto& [id, g] : squares) {
    for (const auto& v : g.v) squares_at[v].push_back(id);
  }
  std::set<std::pair<std::string, std::string>> checked;
  for (const auto& [v, ids] : squares_at) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        auto key = ids[i] < ids[j] ? std::pair{ids[i], ids[j]} : std::pair{ids[j], ids[i]};
        if (!checked.insert(key).second) continue;
        const auto& a = squares.at(key.first);
        const auto& b = squares.at(key.second);
        int shared_v = 0, shared_e = 0;
        for (const auto& x : a.v) shared_v += static_cast<int>(std::count(b.v.begin(), b.v.end(), x));
        for (const auto& x : a.e) shared_e += static_cast<int>(std::count(b.e.begin(), b.e.end(), x));
        const bool ok = (shared_e == 0 && shared_v <= 1) || (shared_e == 1 && shared_v == 2);
        if (!ok) {
          add(axiom::kCellsMeet, {key.first, key.second},
              "squares '" + key.first + "' and '" + key.second + "' share " + std::to_string(shared_e) + " edge(s) and " +
                  std::to_string(shared_v) + " vertices");
        }
      }
    }
  }

  std::stable_sort(report.violations.begin(), report.violations.end(), [](const Violation& x, const Violation& y) {
    return std::tie(x.axiom, x.cells) < std::tie(y.axiom, y.cells);
  });
  return report;
}

// ---------------------------------------------------------------------------

SquareComplex SquareComplex::from_raw(const RawComplex& raw) {
  auto report = validate(raw);
  if (!report.passed()) throw ValidationError(std::move(report));

  SquareComplex x;
  x.vertex_ids_ = raw.vertices;
  std::sort(x.vertex_ids_.begin(), x.vertex_ids_.end());
  for (int i = 0; i < x.vertex_count(); ++i) x.vertex_index_.emplace(x.vertex_ids_[i], i);

  std::vector<const RawEdge*> edges;
  for (const auto& e : raw.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const auto* e : edges) {
    x.edge_index_.emplace(e->id, static_cast<int>(x.edge_ids_.size()));
    x.edge_ids_.push_back(e->id);
    x.edges_.push_back({{x.vertex_index_.at(e->from), x.vertex_index_.at(e->to)}});
  }

  std::vector<const RawSquare*> squares;
  for (const auto& s : raw.squares) squares.push_back(&s);
  std::sort(squares.begin(), squares.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const auto* s : squares) {
    x.square_index_.emplace(s->id, static_cast<int>(x.square_ids_.size()));
    x.square_ids_.push_back(s->id);
    Square sq;
    for (int i = 0; i < 4; ++i) {
      sq.v[i] = x.vertex_index_.at(s->corners[i].vertex);
      sq.e[i] = x.edge_index_.at(s->corners[i].out_edge);
    }
    x.squares_.push_back(sq);
  }
  x.build_incidence();
  return x;
}

void SquareComplex::build_incidence() {
  edges_at_.assign(vertex_count(), {});
  corners_at_.assign(vertex_count(), {});
  sides_of_.assign(edge_count(), {});
  for (int e = 0; e < edge_count(); ++e) {
    for (int v : edges_[e].ends) edges_at_[v].push_back(e);
  }
  for (int s = 0; s < square_count(); ++s) {
    for (int i = 0; i < 4; ++i) {
      corners_at_[squares_[s].v[i]].push_back({s, i});
      sides_of_[squares_[s].e[i]].push_back({s, i});
    }
  }
}

RawComplex SquareComplex::to_raw() const {
  RawComplex raw;
  raw.vertices = vertex_ids_;
  for (int e = 0; e < edge_count(); ++e) {
    raw.edges.push_back({edge_ids_[e], vertex_ids_[edges_[e].ends[0]], vertex_ids_[edges_[e].ends[1]]});
  }
  for (int s = 0; s < square_count(); ++s) {
    RawSquare rs;
    rs.id = square_ids_[s];
    const auto& sq = squares_[s];
    for (int i = 0; i < 4; ++i) {
      rs.corners[i] = {vertex_ids_[sq.v[i]], edge_ids_[sq.e[(i + 3) % 4]], edge_ids_[sq.e[i]]};
    }
    raw.squares.push_back(std::move(rs));
  }
  return raw;
}

namespace {
template <class Map>
std::optional<int> lookup(const Map& m, std::string_view id) {
  auto it = m.find(std::string(id));
  if (it == m.end()) return std::nullopt;
  return it->second;
}
}  // namespace

std::optional<int> SquareComplex::find_vertex(std::string_view id) const { return lookup(vertex_index_, id); }
std::optional<int> SquareComplex::find_edge(std::string_view id) const { return lookup(edge_index_, id); }
std::optional<int> SquareComplex::find_square(std::string_view id) const { return lookup(square_index_, id); }

int SquareComplex::vertex(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw DomainError("unknown vertex '" + std::string(id) + "'");
}
int SquareComplex::edge(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw DomainError("unknown edge '" + std::string(id) + "'");
}
int SquareComplex::square(std::string_view id) const {
  if (auto s = find_square(id)) return *s;
  throw DomainError("unknown square '" + std::string(id) + "'");
}

std::optional<int> SquareComplex::edge_between(int a, int b) const {
  for (int e : edges_at_[a]) {
    if (other_end(e, a) == b) return e;
  }
  return std::nullopt;
}

int SquareComplex::other_end(int e, int v) const {
  const auto& ends = edges_[e].ends;
  return ends[0] == v ? ends[1] : ends[0];
}

int SquareComplex::end_index(int e, int v) const { return edges_[e].ends[0] == v ? 0 : 1; }

int SquareComplex::side_index(int s, int e) const {
  const auto& sq = squares_[s];
  for (int i = 0; i < 4; ++i) {
    if (sq.e[i] == e) return i;
  }
  return -1;
}

int SquareComplex::corner_index(int s, int v) const {
  const auto& sq = squares_[s];
  for (int i = 0; i < 4; ++i) {
    if (sq.v[i] == v) return i;
  }
  return -1;
}

bool operator==(const SquareComplex& a, const SquareComplex& b) {
  if (a.vertex_ids_ != b.vertex_ids_ || a.edge_ids_ != b.edge_ids_ || a.square_ids_ != b.square_ids_) return false;
  for (int e = 0; e < a.edge_count(); ++e) {
    if (a.edges_[e].ends != b.edges_[e].ends) return false;
  }
  for (int s = 0; s < a.square_count(); ++s) {
    if (a.squares_[s].v != b.squares_[s].v || a.squares_[s].e != b.squares_[s].e) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

void ComplexBuilder::add_vertex(const std::string& v) {
  if (has_vertex_.emplace(v, true).second) vertices_.push_back(v);
}

std::string ComplexBuilder::add_edge(const std::string& a, const std::string& b) {
  add_vertex(a);
  add_vertex(b);
  const auto key = a < b ? a + "\x1f" + b : b + "\x1f" + a;
  auto it = edge_by_pair_.find(key);
  if (it != edge_by_pair_.end()) return it->second;
  std::string id = a < b ? a + "-" + b : b + "-" + a;
  edges_.push_back({id, a < b ? a : b, a < b ? b : a});
  edge_by_pair_.emplace(key, id);
  return id;
}

void ComplexBuilder::add_square(const std::string& id, const std::array<std::string, 4>& cycle) {
  std::array<std::string, 4> sides;
  for (int i = 0; i < 4; ++i) sides[i] = add_edge(cycle[i], cycle[(i + 1) % 4]);
  RawSquare sq;
  sq.id = id;
  for (int i = 0; i < 4; ++i) sq.corners[i] = {cycle[i], sides[(i + 3) % 4], sides[i]};
  squares_.push_back(std::move(sq));
}

RawComplex ComplexBuilder::raw() const { return {vertices_, edges_, squares_}; }

}  // namespace cat0sq
