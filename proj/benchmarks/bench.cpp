#include <benchmark/benchmark.h>

#include <cat0sq/ball.hpp>
#include <cat0sq/generators.hpp>
#include <cat0sq/geodesic.hpp>
#include <cat0sq/link.hpp>
#include <cat0sq/pingpong.hpp>
#include <cat0sq/sector.hpp>

#include <random>

#include "fixtures.hpp"
#include "probes.hpp"

using namespace cat0sq;

static void BM_DevelopTorus(benchmark::State& state) {
  auto torus = fixtures::build(gen::torus(3));
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(develop(torus, torus->vertex("t0_0"), r));
  state.counters["vertices"] = develop(torus, torus->vertex("t0_0"), r).complex().vertex_count();
}
BENCHMARK(BM_DevelopTorus)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_DevelopWedge(benchmark::State& state) {
  auto wedge = fixtures::build(gen::wedge_of_tori(3));
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(develop(wedge, wedge->vertex("w"), r));
}
BENCHMARK(BM_DevelopWedge)->Arg(4)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_IsNpcRandom(benchmark::State& state) {
  std::vector<SquareComplex> xs;
  for (int s = 0; s < 50; ++s) xs.push_back(SquareComplex::from_raw(gen::random_complex(s, 30)));
  for (auto _ : state) {
    for (const auto& x : xs) benchmark::DoNotOptimize(is_npc(x));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK(BM_IsNpcRandom);

static void BM_SimpleCyclesBipartite(benchmark::State& state) {
  const auto x = SquareComplex::from_raw(gen::tripod_product());
  const auto l = link(x, "cc");
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simple_cycles(l, bound));
}
BENCHMARK(BM_SimpleCyclesBipartite)->Arg(4)->Arg(6)->Arg(8);

static void BM_FiveLoopFakePlane(benchmark::State& state) {
  const auto x = SquareComplex::from_raw(gen::fake_plane(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(has_five_loop(x));
}
BENCHMARK(BM_FiveLoopFakePlane)->Arg(3)->Arg(6)->Arg(10);

static void BM_GeodesicFakeDisk(benchmark::State& state) {
  const auto b = fixtures::fake_ball(static_cast<int>(state.range(0)));
  std::mt19937 rng(1);
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < 32) {
    auto p = probes::random_point(b, rng, -1), q = probes::random_point(b, rng, -1);
    if (!(p == q)) pairs.push_back({p, q});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [p, q] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(geodesic(b, p, q));
  }
}
BENCHMARK(BM_GeodesicFakeDisk)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_GeodesicGridBall(benchmark::State& state) {
  const auto b = fixtures::grid_ball(static_cast<int>(state.range(0)));
  std::mt19937 rng(2);
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < 32) {
    auto p = probes::random_point(b, rng, 3), q = probes::random_point(b, rng, 3);
    if (!(p == q)) pairs.push_back({p, q});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [p, q] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(geodesic(b, p, q));
  }
}
BENCHMARK(BM_GeodesicGridBall)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

static void BM_ShortestPathStraighten(benchmark::State& state) {
  const auto b = fixtures::fake_ball(5);
  std::mt19937 rng(3);
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < 16) {
    auto p = probes::random_point(b, rng, -1), q = probes::random_point(b, rng, -1);
    if (!(p == q)) pairs.push_back({p, q});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [p, q] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(shortest_path(b, p, q, kDefaultEps, static_cast<unsigned>(i)));
  }
}
BENCHMARK(BM_ShortestPathStraighten)->Unit(benchmark::kMicrosecond);

static void BM_PathProjector(benchmark::State& state) {
  const auto inst = fixtures::wedge_instance(8, 3);
  for (auto _ : state) benchmark::DoNotOptimize(PathProjector(inst.ball, inst.a1.carrier()));
}
BENCHMARK(BM_PathProjector)->Unit(benchmark::kMillisecond);

static void BM_DetectFakeDisk(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto b = fixtures::fake_ball(r);
  const int cone = b.complex().vertex("o");
  for (auto _ : state) benchmark::DoNotOptimize(detect_sector(b, cone, r, SectorKind::FakeDisk));
}
BENCHMARK(BM_DetectFakeDisk)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_CertificateWedge(benchmark::State& state) {
  const auto inst = fixtures::wedge_instance();
  for (auto _ : state) benchmark::DoNotOptimize(free_certificate(inst));
}
BENCHMARK(BM_CertificateWedge)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_CertificateGrid(benchmark::State& state) {
  const auto inst = fixtures::z2_instance();
  for (auto _ : state) benchmark::DoNotOptimize(free_certificate(inst));
}
BENCHMARK(BM_CertificateGrid)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
