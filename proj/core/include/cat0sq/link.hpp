#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cat0sq/complex.hpp"

namespace cat0sq {

/// Link of a vertex. Nodes are the incident edges (each edge has exactly one end at the vertex),
/// ordered by edge index; link-edges are the square corners at the vertex, each of length pi/2.
class LinkGraph {
 public:
  struct Arc {
    int a = -1;  // node of the corner's leaving edge
    int b = -1;  // node of the corner's entering edge
    CornerRef corner;
  };

  LinkGraph() = default;
  LinkGraph(const SquareComplex& x, int v);

  int owner() const noexcept { return owner_; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  int arc_count() const noexcept { return static_cast<int>(arcs_.size()); }
  /// Complex edge index of node n.
  int edge_of(int n) const { return nodes_.at(n); }
  /// Node of complex edge e, or -1 if e is not incident to the owner.
  int node_of(int e) const;
  const Arc& arc(int i) const { return arcs_.at(i); }
  /// Arc indices incident to node n.
  const std::vector<int>& arcs_at(int n) const { return incident_.at(n); }
  int degree(int n) const { return static_cast<int>(incident_.at(n).size()); }
  /// Arc joining nodes a and b, or -1.
  int arc_between(int a, int b) const;
  /// Hop distance between nodes (-1 if disconnected). Computed on first use.
  int hops(int a, int b) const;

 private:
  int owner_ = -1;
  std::vector<int> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> incident_;
  mutable std::vector<std::vector<int>> hops_;
};

LinkGraph link(const SquareComplex& x, int v);
/// Throws DomainError for unknown vertex ids.
LinkGraph link(const SquareComplex& x, std::string_view vertex_id);

struct LoopReport {
  /// Length of the shortest simple cycle in edges, or nullopt for a forest.
  std::optional<int> girth;
  int max_edges = 0;
  /// Simple cycles with at most max_edges edges as node sequences, each starting at its least node
  /// and oriented toward the smaller neighbour; sorted by (length, sequence).
  std::vector<std::vector<int>> cycles;
};

std::optional<int> girth(const LinkGraph& l);
/// Throws DomainError when max_edges < 3.
LoopReport simple_cycles(const LinkGraph& l, int max_edges);
/// Minimal rotation of the lexicographically smaller orientation.
std::vector<int> canonical_cycle(std::vector<int> cycle);

/// A cycle in a vertex link, described by the complex edges it passes through.
struct LinkLoop {
  int vertex = -1;
  std::vector<int> edges;
};

struct NpcReport {
  bool npc = true;
  /// First offending vertex in id order with one shortest loop.
  std::optional<LinkLoop> witness;
};

/// Every vertex link has girth >= 4. `jobs` bounds worker threads.
NpcReport is_npc(const SquareComplex& x, int jobs = 1);
/// Throws CurvatureError naming the witness when x is not NPC.
void require_npc(const SquareComplex& x);
/// Vertices (in id order) whose link has a simple 5-edge loop, with the least such loop.
std::vector<LinkLoop> has_five_loop(const SquareComplex& x, int jobs = 1);
/// Vertices whose link has a simple loop of exactly `edges` edges.
std::vector<LinkLoop> find_loops(const SquareComplex& x, int edges, int jobs = 1);

}  // namespace cat0sq
