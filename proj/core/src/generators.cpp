#include "cat0sq/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace cat0sq::gen {

namespace {

std::string name(const char* prefix, int x, int y) {
  return prefix + std::to_string(x) + "_" + std::to_string(y);
}

RawComplex torus_with(int n, const std::string& vprefix, const std::string& sprefix, const std::string& base) {
  ComplexBuilder b;
  auto v = [&](int x, int y) {
    x = ((x % n) + n) % n;
    y = ((y % n) + n) % n;
    return x == 0 && y == 0 && !base.empty() ? base : name(vprefix.c_str(), x, y);
  };
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      b.add_square(name(sprefix.c_str(), x, y), {v(x, y), v(x + 1, y), v(x + 1, y + 1), v(x, y + 1)});
    }
  }
  return b.raw();
}

void add_squares(ComplexBuilder& b, const RawComplex& raw) {
  for (const auto& s : raw.squares) {
    b.add_square(s.id, {s.corners[0].vertex, s.corners[1].vertex, s.corners[2].vertex, s.corners[3].vertex});
  }
}

}  // namespace

RawComplex grid(int n) {
  ComplexBuilder b;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      b.add_square(name("s", x, y), {name("p", x, y), name("p", x + 1, y), name("p", x + 1, y + 1), name("p", x, y + 1)});
    }
  }
  return b.raw();
}

RawComplex torus(int n) { return torus_with(n, "t", "s", ""); }

RawComplex torus2x2() {
  // Built by hand: the builder would merge the parallel edges.
  RawComplex raw;
  auto v = [](int x, int y) { return name("t", ((x % 2) + 2) % 2, ((y % 2) + 2) % 2); };
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) raw.vertices.push_back(v(x, y));
  }
  auto h = [](int x, int y) { return name("h", x % 2, y % 2); };
  auto u = [](int x, int y) { return name("u", x % 2, y % 2); };
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      raw.edges.push_back({h(x, y), v(x, y), v(x + 1, y)});
      raw.edges.push_back({u(x, y), v(x, y), v(x, y + 1)});
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      RawSquare s;
      s.id = name("s", x, y);
      s.corners[0] = {v(x, y), u(x, y), h(x, y)};
      s.corners[1] = {v(x + 1, y), h(x, y), u(x + 1, y)};
      s.corners[2] = {v(x + 1, y + 1), u(x + 1, y), h(x, y + 1)};
      s.corners[3] = {v(x, y + 1), h(x, y + 1), u(x, y)};
      raw.squares.push_back(s);
    }
  }
  return raw;
}

RawComplex one_square_torus() {
  RawComplex raw;
  raw.vertices = {"v"};
  raw.edges = {{"a", "v", "v"}, {"b", "v", "v"}};
  RawSquare s;
  s.id = "s";
  s.corners = {CornerRecord{"v", "b", "a"}, CornerRecord{"v", "a", "b"}, CornerRecord{"v", "b", "a"},
               CornerRecord{"v", "a", "b"}};
  raw.squares.push_back(s);
  return raw;
}

RawComplex dangling_edge() {
  auto raw = single_square();
  auto& s = raw.squares.front();
  raw.edges.erase(std::remove_if(raw.edges.begin(), raw.edges.end(),
                                 [&](const RawEdge& e) { return e.id == s.corners[3].out_edge; }),
                  raw.edges.end());
  return raw;
}

RawComplex single_square() {
  ComplexBuilder b;
  b.add_square("s", {"a", "b", "c", "d"});
  return b.raw();
}

RawComplex cone_of_quarters(int sheets, int radius) {
  ComplexBuilder b;
  auto v = [&](int i, int x, int y) -> std::string {
    if (x == 0 && y == 0) return "o";
    if (y == 0) return name("r", i, x);
    if (x == 0) return name("r", (i + 1) % sheets, y);
    return "q" + std::to_string(i) + "_" + std::to_string(x) + "_" + std::to_string(y);
  };
  for (int i = 0; i < sheets; ++i) {
    for (int x = 0; x < radius; ++x) {
      for (int y = 0; y < radius; ++y) {
        b.add_square("s" + std::to_string(i) + "_" + std::to_string(x) + "_" + std::to_string(y),
                     {v(i, x, y), v(i, x + 1, y), v(i, x + 1, y + 1), v(i, x, y + 1)});
      }
    }
  }
  return b.raw();
}

RawComplex fake_plane(int radius) { return cone_of_quarters(5, radius); }

RawComplex cube_corner() {
  ComplexBuilder b;
  b.add_square("sab", {"c", "a", "ab", "b"});
  b.add_square("sbd", {"c", "b", "bd", "d"});
  b.add_square("sda", {"c", "d", "da", "a"});
  return b.raw();
}

RawComplex tripod_product() {
  ComplexBuilder b;
  const char* leaves[] = {"1", "2", "3"};
  for (const char* i : leaves) {
    for (const char* j : leaves) {
      const std::string si(i), sj(j);
      b.add_square("s" + si + sj, {"cc", si + "c", si + sj, "c" + sj});
    }
  }
  return b.raw();
}

RawComplex wedge_of_tori(int n) {
  ComplexBuilder b;
  add_squares(b, torus_with(n, "a", "sa", "w"));
  add_squares(b, torus_with(n, "b", "sb", "w"));
  return b.raw();
}

RawComplex random_complex(std::uint64_t seed, int max_squares) {
  std::mt19937_64 rng(seed);
  const int target = std::uniform_int_distribution<int>(1, std::max(1, max_squares))(rng);
  std::vector<std::array<std::string, 4>> cycles{{"v0", "v1", "v2", "v3"}};
  int fresh = 4;
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  // Each candidate is glued along a side of an accepted square; its other two corners are reused
  // vertices or new ones.
  for (int attempt = 0; attempt < 20 * target && static_cast<int>(cycles.size()) < target; ++attempt) {
    const auto& host = cycles[pick(static_cast<int>(cycles.size()))];
    const int side = pick(4);
    std::array<std::string, 4> cycle{host[(side + 1) % 4], host[side], "", ""};
    for (int k = 2; k < 4; ++k) {
      cycle[k] = pick(3) == 0 ? "v" + std::to_string(fresh++) : "v" + std::to_string(pick(fresh));
    }
    // Every axiom concerns a pair of cells, so only squares touching the candidate need rechecking.
    ComplexBuilder trial;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const bool touches = std::any_of(cycles[i].begin(), cycles[i].end(), [&](const std::string& v) {
        return std::find(cycle.begin(), cycle.end(), v) != cycle.end();
      });
      if (touches) trial.add_square("s" + std::to_string(i), cycles[i]);
    }
    trial.add_square("s" + std::to_string(cycles.size()), cycle);
    if (validate(trial.raw()).passed()) cycles.push_back(cycle);
  }
  ComplexBuilder accepted;
  for (std::size_t i = 0; i < cycles.size(); ++i) accepted.add_square("s" + std::to_string(i), cycles[i]);
  return accepted.raw();
}

}  // namespace cat0sq::gen
