#include "cat0sq/cellular_map.hpp"

#include <algorithm>

namespace cat0sq {

Dihedral Dihedral::after(Dihedral inner) const noexcept {
  const int r = flip ? static_cast<int>(rot) - inner.rot : static_cast<int>(rot) + inner.rot;
  return {static_cast<std::uint8_t>(((r % 4) + 4) % 4), flip != inner.flip};
}

Dihedral Dihedral::inverse() const noexcept {
  if (flip) return *this;
  return {static_cast<std::uint8_t>((4 - rot) % 4), false};
}

Dihedral Dihedral::from_corners(int c0_image, int c1_image) {
  if ((c0_image + 1) % 4 == c1_image) return {static_cast<std::uint8_t>(c0_image), false};
  if ((c0_image + 3) % 4 == c1_image) return {static_cast<std::uint8_t>(c0_image), true};
  throw DomainError("corner images are not adjacent");
}

namespace {

bool same_complex(const CellularMap::ComplexPtr& a, const CellularMap::ComplexPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace

CellularMap::CellularMap(ComplexPtr source, ComplexPtr target, std::vector<int> vertices, std::vector<int> edges,
                         std::vector<int> squares, std::vector<Dihedral> alignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      squares_(std::move(squares)),
      alignment_(std::move(alignment)) {
  if (!source_ || !target_) throw DomainError("cellular map needs both complexes");
  if (static_cast<int>(vertices_.size()) != source_->vertex_count() ||
      static_cast<int>(edges_.size()) != source_->edge_count() ||
      static_cast<int>(squares_.size()) != source_->square_count() || alignment_.size() != squares_.size()) {
    throw DomainError("cellular map tables do not match the source complex");
  }
  check_incidence();
}

void CellularMap::check_incidence() const {
  const auto& src = *source_;
  const auto& tgt = *target_;
  for (int v = 0; v < src.vertex_count(); ++v) {
    if (vertices_[v] < -1 || vertices_[v] >= tgt.vertex_count()) throw DomainError("vertex image out of range");
  }
  for (int e = 0; e < src.edge_count(); ++e) {
    const int f = edges_[e];
    if (f == -1) continue;
    if (f < 0 || f >= tgt.edge_count()) throw DomainError("edge image out of range");
    const auto [a, b] = src.edge_at(e).ends;
    const auto [c, d] = tgt.edge_at(f).ends;
    const int fa = vertices_[a], fb = vertices_[b];
    if (!((fa == c && fb == d) || (fa == d && fb == c))) {
      throw DomainError("edge '" + src.edge_id(e) + "' is not mapped compatibly with its endpoints");
    }
  }
  for (int s = 0; s < src.square_count(); ++s) {
    const int t = squares_[s];
    if (t == -1) continue;
    if (t < 0 || t >= tgt.square_count()) throw DomainError("square image out of range");
    const auto& S = src.square_at(s);
    const auto& T = tgt.square_at(t);
    const auto d = alignment_[s];
    for (int k = 0; k < 4; ++k) {
      if (vertices_[S.v[k]] != T.v[d.apply(k)] || edges_[S.e[k]] != T.e[d.apply_side(k)]) {
        throw DomainError("square '" + src.square_id(s) + "' is not mapped compatibly with its corners");
      }
    }
  }
}

CellularMap CellularMap::identity(ComplexPtr complex) {
  std::vector<int> v(complex->vertex_count()), e(complex->edge_count()), s(complex->square_count());
  for (int i = 0; i < static_cast<int>(v.size()); ++i) v[i] = i;
  for (int i = 0; i < static_cast<int>(e.size()); ++i) e[i] = i;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) s[i] = i;
  std::vector<Dihedral> a(s.size());
  return CellularMap(complex, complex, std::move(v), std::move(e), std::move(s), std::move(a));
}

CellularMap CellularMap::from_vertex_indices(ComplexPtr source, ComplexPtr target, std::vector<int> vmap) {
  const auto& src = *source;
  const auto& tgt = *target;
  std::vector<int> emap(src.edge_count(), -1), smap(src.square_count(), -1);
  std::vector<Dihedral> align(src.square_count());
  for (int e = 0; e < src.edge_count(); ++e) {
    const auto [a, b] = src.edge_at(e).ends;
    if (vmap[a] < 0 || vmap[b] < 0) continue;
    if (auto f = tgt.edge_between(vmap[a], vmap[b])) emap[e] = *f;
  }
  for (int s = 0; s < src.square_count(); ++s) {
    const auto& S = src.square_at(s);
    if (std::any_of(S.v.begin(), S.v.end(), [&](int v) { return vmap[v] < 0; })) continue;
    if (std::any_of(S.e.begin(), S.e.end(), [&](int e) { return emap[e] < 0; })) continue;
    for (const auto& side : tgt.sides_of(emap[S.e[0]])) {
      const int c0 = tgt.corner_index(side.square, vmap[S.v[0]]);
      const int c1 = tgt.corner_index(side.square, vmap[S.v[1]]);
      if (c0 < 0 || c1 < 0) continue;
      const int diff = (c1 - c0 + 4) % 4;
      if (diff != 1 && diff != 3) continue;
      const auto d = Dihedral::from_corners(c0, c1);
      const auto& T = tgt.square_at(side.square);
      bool ok = true;
      for (int k = 0; k < 4 && ok; ++k) ok = T.v[d.apply(k)] == vmap[S.v[k]];
      if (ok) {
        smap[s] = side.square;
        align[s] = d;
        break;
      }
    }
  }
  return CellularMap(std::move(source), std::move(target), std::move(vmap), std::move(emap), std::move(smap),
                     std::move(align));
}

CellularMap CellularMap::from_vertex_map(ComplexPtr source, ComplexPtr target,
                                         const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<int> vmap(source->vertex_count(), -1);
  for (const auto& [a, b] : pairs) {
    const int v = source->vertex(a);
    const int w = target->vertex(b);
    if (vmap[v] != -1 && vmap[v] != w) throw DomainError("vertex '" + a + "' mapped twice");
    vmap[v] = w;
  }
  return from_vertex_indices(std::move(source), std::move(target), std::move(vmap));
}

bool CellularMap::is_total() const {
  auto defined = [](const std::vector<int>& m) { return std::none_of(m.begin(), m.end(), [](int x) { return x < 0; }); };
  return defined(vertices_) && defined(edges_) && defined(squares_);
}

bool CellularMap::is_isomorphism() const {
  if (!is_total()) return false;
  auto bijective = [](const std::vector<int>& m, int n) {
    if (static_cast<int>(m.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int x : m) {
      if (hit[x]) return false;
      hit[x] = 1;
    }
    return true;
  };
  return bijective(vertices_, target_->vertex_count()) && bijective(edges_, target_->edge_count()) &&
         bijective(squares_, target_->square_count());
}

int CellularMap::defined_vertex_count() const {
  return static_cast<int>(std::count_if(vertices_.begin(), vertices_.end(), [](int x) { return x >= 0; }));
}

CellularMap CellularMap::restricted_to_vertices(std::vector<int> vmap) const {
  std::vector<int> emap(edges_.size(), -1), smap(squares_.size(), -1);
  for (int e = 0; e < static_cast<int>(emap.size()); ++e) {
    const auto [a, b] = source_->edge_at(e).ends;
    if (vmap[a] >= 0 && vmap[b] >= 0) emap[e] = edges_[e];
  }
  for (int s = 0; s < static_cast<int>(smap.size()); ++s) {
    const auto& S = source_->square_at(s);
    if (std::all_of(S.v.begin(), S.v.end(), [&](int v) { return vmap[v] >= 0; })) smap[s] = squares_[s];
  }
  return CellularMap(source_, target_, std::move(vmap), std::move(emap), std::move(smap), alignment_);
}

std::vector<std::pair<std::string, std::string>> CellularMap::vertex_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
    if (vertices_[v] >= 0) out.emplace_back(source_->vertex_id(v), target_->vertex_id(vertices_[v]));
  }
  return out;
}

CellularMap compose(const CellularMap& f, const CellularMap& g) {
  if (!same_complex(g.target_, f.source_)) throw DomainError("compose: target of g is not the source of f");
  auto chain = [](const std::vector<int>& inner, const std::vector<int>& outer) {
    std::vector<int> out(inner.size(), -1);
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] >= 0) out[i] = outer[inner[i]];
    }
    return out;
  };
  auto v = chain(g.vertices_, f.vertices_);
  auto e = chain(g.edges_, f.edges_);
  auto s = chain(g.squares_, f.squares_);
  std::vector<Dihedral> a(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= 0) a[i] = f.alignment_[g.squares_[i]].after(g.alignment_[i]);
  }
  // Cells whose image is defined but whose boundary is not are dropped to keep incidence sound.
  CellularMap raw(g.source_, f.target_, v, std::vector<int>(e.size(), -1), std::vector<int>(s.size(), -1), a);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto [x, y] = g.source_->edge_at(static_cast<int>(i)).ends;
    if (v[x] >= 0 && v[y] >= 0) raw.edges_[i] = e[i];
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& S = g.source_->square_at(static_cast<int>(i));
    const bool ok = std::all_of(S.e.begin(), S.e.end(), [&](int x) { return raw.edges_[x] >= 0; });
    if (ok) raw.squares_[i] = s[i];
  }
  raw.check_incidence();
  return raw;
}

CellularMap inverse(const CellularMap& f) {
  const auto& tgt = *f.target_;
  std::vector<int> v(tgt.vertex_count(), -1), e(tgt.edge_count(), -1), s(tgt.square_count(), -1);
  std::vector<Dihedral> a(tgt.square_count());
  auto invert = [](const std::vector<int>& m, std::vector<int>& out) {
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (m[i] < 0) continue;
      if (out[m[i]] != -1) throw DomainError("inverse: map is not injective");
      out[m[i]] = i;
    }
  };
  invert(f.vertices_, v);
  invert(f.edges_, e);
  invert(f.squares_, s);
  for (int t = 0; t < tgt.square_count(); ++t) {
    if (s[t] >= 0) a[t] = f.alignment_[s[t]].inverse();
  }
  return CellularMap(f.target_, f.source_, std::move(v), std::move(e), std::move(s), std::move(a));
}

bool operator==(const CellularMap& a, const CellularMap& b) {
  if (!same_complex(a.source_, b.source_) || !same_complex(a.target_, b.target_)) return false;
  if (a.vertices_ != b.vertices_ || a.edges_ != b.edges_ || a.squares_ != b.squares_) return false;
  for (std::size_t i = 0; i < a.squares_.size(); ++i) {
    if (a.squares_[i] >= 0 && !(a.alignment_[i] == b.alignment_[i])) return false;
  }
  return true;
}

}  // namespace cat0sq
