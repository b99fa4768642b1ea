#include "cat0sq/link.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "parallel.hpp"

namespace cat0sq {

LinkGraph::LinkGraph(const SquareComplex& x, int v) : owner_(v) {
  const auto es = x.edges_at(v);
  nodes_.assign(es.begin(), es.end());
  std::sort(nodes_.begin(), nodes_.end());
  incident_.assign(nodes_.size(), {});
  for (const auto& c : x.corners_at(v)) {
    const auto& sq = x.square_at(c.square);
    const int out = node_of(sq.e[c.corner]);
    const int in = node_of(sq.e[(c.corner + 3) % 4]);
    incident_[out].push_back(arc_count());
    incident_[in].push_back(arc_count());
    arcs_.push_back({out, in, c});
  }
}

int LinkGraph::node_of(int e) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), e);
  return it != nodes_.end() && *it == e ? static_cast<int>(it - nodes_.begin()) : -1;
}

int LinkGraph::arc_between(int a, int b) const {
  for (int i : incident_.at(a)) {
    const auto& arc = arcs_[i];
    if ((arc.a == a && arc.b == b) || (arc.a == b && arc.b == a)) return i;
  }
  return -1;
}

int LinkGraph::hops(int a, int b) const {
  if (hops_.empty()) {
    const int n = node_count();
    hops_.assign(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
      auto& d = hops_[s];
      d[s] = 0;
      std::deque<int> queue{s};
      while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int i : incident_[u]) {
          const int w = arcs_[i].a == u ? arcs_[i].b : arcs_[i].a;
          if (d[w] < 0) {
            d[w] = d[u] + 1;
            queue.push_back(w);
          }
        }
      }
    }
  }
  return hops_.at(a).at(b);
}

LinkGraph link(const SquareComplex& x, int v) {
  if (v < 0 || v >= x.vertex_count()) throw DomainError("vertex index out of range");
  return LinkGraph(x, v);
}

LinkGraph link(const SquareComplex& x, std::string_view vertex_id) { return LinkGraph(x, x.vertex(vertex_id)); }

namespace {

std::vector<std::vector<int>> adjacency(const LinkGraph& l) {
  std::vector<std::vector<int>> adj(l.node_count());
  for (int i = 0; i < l.arc_count(); ++i) {
    adj[l.arc(i).a].push_back(l.arc(i).b);
    adj[l.arc(i).b].push_back(l.arc(i).a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

}  // namespace

std::optional<int> girth(const LinkGraph& l) {
  const auto adj = adjacency(l);
  const int n = l.node_count();
  std::optional<int> best;
  std::vector<int> dist(n), parent(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent[s] = -1;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int w : adj[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          const int len = dist[u] + dist[w] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

std::vector<int> canonical_cycle(std::vector<int> cycle) {
  if (cycle.empty()) return cycle;
  const auto n = cycle.size();
  std::vector<int> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<int> cand(n);
      for (std::size_t i = 0; i < n; ++i) cand[i] = cycle[(r + i) % n];
      if (best.empty() || cand < best) best = std::move(cand);
    }
    std::reverse(cycle.begin(), cycle.end());
  }
  return best;
}

LoopReport simple_cycles(const LinkGraph& l, int max_edges) {
  if (max_edges < 3) throw DomainError("max_edges must be at least 3");
  LoopReport report;
  report.max_edges = max_edges;
  report.girth = girth(l);
  const auto adj = adjacency(l);
  const int n = l.node_count();
  std::vector<int> path;
  std::vector<char> on_path(n, 0);
  // Each cycle is found once from its least node, in the orientation whose second node is smaller.
  auto dfs = [&](auto&& self, int start, int u) -> void {
    for (int w : adj[u]) {
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        report.cycles.push_back(path);
      }
      if (w <= start || on_path[w] || static_cast<int>(path.size()) >= max_edges) continue;
      on_path[w] = 1;
      path.push_back(w);
      self(self, start, w);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  std::sort(report.cycles.begin(), report.cycles.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return report;
}

namespace {

LinkLoop to_loop(const LinkGraph& l, const std::vector<int>& cycle) {
  LinkLoop loop{l.owner(), {}};
  for (int n : cycle) loop.edges.push_back(l.edge_of(n));
  return loop;
}

/// Vertex indices in id order (indices are already sorted by id).
std::vector<std::optional<LinkLoop>> per_vertex(const SquareComplex& x, int jobs,
                                                const std::function<std::optional<LinkLoop>(int)>& fn) {
  std::vector<std::optional<LinkLoop>> out(x.vertex_count());
  detail::parallel_for(x.vertex_count(), jobs, [&](int v) { out[v] = fn(v); });
  return out;
}

}  // namespace

NpcReport is_npc(const SquareComplex& x, int jobs) {
  auto found = per_vertex(x, jobs, [&](int v) -> std::optional<LinkLoop> {
    const LinkGraph l(x, v);
    const auto g = girth(l);
    if (!g || *g >= 4) return std::nullopt;
    return to_loop(l, simple_cycles(l, std::max(3, *g)).cycles.front());
  });
  for (auto& f : found) {
    if (f) return {false, std::move(f)};
  }
  return {};
}

void require_npc(const SquareComplex& x) {
  const auto r = is_npc(x);
  if (r.npc) return;
  std::vector<std::string> ids;
  for (int e : r.witness->edges) ids.push_back(x.edge_id(e));
  const auto& v = x.vertex_id(r.witness->vertex);
  throw CurvatureError(v, ids,
                       "link of vertex '" + v + "' has a simple loop of " + std::to_string(ids.size()) + " edges");
}

std::vector<LinkLoop> find_loops(const SquareComplex& x, int edges, int jobs) {
  if (edges < 3) throw DomainError("loop length must be at least 3");
  auto found = per_vertex(x, jobs, [&](int v) -> std::optional<LinkLoop> {
    const LinkGraph l(x, v);
    for (const auto& c : simple_cycles(l, edges).cycles) {
      if (static_cast<int>(c.size()) == edges) return to_loop(l, c);
    }
    return std::nullopt;
  });
  std::vector<LinkLoop> out;
  for (auto& f : found) {
    if (f) out.push_back(std::move(*f));
  }
  return out;
}

std::vector<LinkLoop> has_five_loop(const SquareComplex& x, int jobs) { return find_loops(x, 5, jobs); }

}  // namespace cat0sq
