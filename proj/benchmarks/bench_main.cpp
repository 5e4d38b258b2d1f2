#include "wildfront/fixtures.hpp"
#include "wildfront/propagation.hpp"
#include "wildfront/randers.hpp"

#include <benchmark/benchmark.h>

using namespace wildfront;

namespace {

void BM_RandersEval(benchmark::State& state) {
  const ZermeloData data = fixtures::example1_data();
  Vec3 v(0.3, -0.2, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_randers(data, Point3::Zero(), v));
    v.x() += 1e-9;
  }
}
BENCHMARK(BM_RandersEval);

void BM_FundamentalTensor(benchmark::State& state) {
  const ZermeloData data = fixtures::example1_data();
  const Vec3 v(0.3, -0.2, 0.5), u(1, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_tensor(data, Point3::Zero(), v, u, u));
}
BENCHMARK(BM_FundamentalTensor);

void BM_TraceGeneralRay(benchmark::State& state) {
  GeodesicProblem p;
  p.mode = RayMode::General;
  p.data = fixtures::example2_data(fixtures::kExample2DefaultK);
  p.p = Point3(0, 0.5, 0);
  p.v = unit_f_direction(p.data, p.p, Vec3(1, 1, 0));
  p.horizon = 1.0;
  p.dt = 1.0 / static_cast<double>(state.range(0));
  p.record_stride = 1u << 30;
  for (auto _ : state) benchmark::DoNotOptimize(trace_wave_ray(p).end_point());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TraceGeneralRay)->Arg(250)->Arg(1000);

void BM_PointFrontConstant(benchmark::State& state) {
  const ZermeloData data = fixtures::example1_data();
  PropagationSettings s;
  s.sampling.sphere_points = static_cast<std::size_t>(state.range(0));
  s.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(propagate_front(data, FrontGeometry::point(Point3::Zero()), 2.0, s).samples.size());
}
BENCHMARK(BM_PointFrontConstant)->Arg(512)->Arg(2112);

void BM_HuygensStep(benchmark::State& state) {
  const ZermeloData data = fixtures::example1_data();
  const auto seeds = propagate_front(data, FrontGeometry::point(Point3::Zero()), 1.0).positions();
  SliceGrid grid;
  grid.lo = Vec2(-4, -4);
  grid.hi = Vec2(4, 6);
  grid.nu = grid.nv = static_cast<std::size_t>(state.range(0));
  HuygensSettings hs;
  hs.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(huygens_step(data, seeds, 1.0, grid, hs).contours.size());
}
BENCHMARK(BM_HuygensStep)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
