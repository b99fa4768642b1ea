// Writes the shipped corpus: base complexes, broken fixtures, developed balls and axis files.
#include <cat0sq/ball.hpp>
#include <cat0sq/format.hpp>
#include <cat0sq/generators.hpp>
#include <cat0sq/pingpong.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

namespace fs = std::filesystem;
using namespace cat0sq;

namespace {

ComplexPtr build(const RawComplex& raw) { return std::make_shared<const SquareComplex>(SquareComplex::from_raw(raw)); }

int neighbour_over(const DevelopedBall& b, int v, const std::string& id) {
  const auto& x = b.complex();
  for (int e : x.edges_at(v)) {
    const int w = x.other_end(e, v);
    if (b.base().vertex_id(b.covering().vertex(w)) == id) return w;
  }
  throw DomainError("no neighbour over " + id);
}

void put(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  write_file(path, text);
  std::cout << path.generic_string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: cat0sq-corpus <output-dir>\n";
    return 1;
  }
  const fs::path out = argv[1];
  try {
    put(out / "single_square.cat0sq", to_text(gen::single_square()));
    put(out / "grid5.cat0sq", to_text(gen::grid(5)));
    put(out / "torus3.cat0sq", to_text(gen::torus(3)));
    put(out / "torus4.cat0sq", to_text(gen::torus(4)));
    for (int r = 2; r <= 5; ++r) put(out / ("fakeplane" + std::to_string(r) + ".cat0sq"), to_text(gen::fake_plane(r)));
    put(out / "flatdisk3.cat0sq", to_text(gen::cone_of_quarters(4, 3)));
    put(out / "cubecorner.cat0sq", to_text(gen::cube_corner()));
    put(out / "tripods.cat0sq", to_text(gen::tripod_product()));
    put(out / "wedge3.cat0sq", to_text(gen::wedge_of_tori(3)));

    put(out / "broken" / "torus2x2.cat0sq", to_text(gen::torus2x2()));
    put(out / "broken" / "one_square_torus.cat0sq", to_text(gen::one_square_torus()));
    put(out / "broken" / "dangling_edge.cat0sq", to_text(gen::dangling_edge()));

    auto torus = build(gen::torus(3));
    const auto z2 = develop(torus, torus->vertex("t0_0"), 7);
    put(out / "balls" / "z2.cat0sq", to_text(z2));
    const auto x_axis = lift_axis(z2, z2.center(), {"t0_0", "t1_0", "t2_0"}, 4, 4);
    const auto y_axis = lift_axis(z2, z2.center(), {"t0_0", "t0_1", "t0_2"}, 4, 4);
    const auto shifted =
        lift_axis(z2, neighbour_over(z2, z2.center(), "t0_1"), {"t0_1", "t1_1", "t2_1"}, 4, 4);
    put(out / "balls" / "z2_x.axis", to_text(x_axis, z2));
    put(out / "balls" / "z2_y.axis", to_text(y_axis, z2));
    put(out / "balls" / "z2_x_shifted.axis", to_text(shifted, z2));

    auto wedge = build(gen::wedge_of_tori(3));
    const auto wb = develop(wedge, wedge->vertex("w"), 10);
    put(out / "balls" / "wedge.cat0sq", to_text(wb));
    put(out / "balls" / "wedge_a.axis", to_text(lift_axis(wb, wb.center(), {"w", "a1_1", "a2_2"}, 4, 4), wb));
    put(out / "balls" / "wedge_b.axis", to_text(lift_axis(wb, wb.center(), {"w", "b1_1", "b2_2"}, 4, 4), wb));

    auto fake = build(gen::fake_plane(3));
    put(out / "balls" / "fakeplane3.cat0sq", to_text(as_ball(fake, fake->vertex("o"))));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
