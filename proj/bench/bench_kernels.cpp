// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "coarse/adversary.hpp"
#include "coarse/cover.hpp"
#include "coarse/cube.hpp"
#include "coarse/distance.hpp"
#include "coarse/generators.hpp"
#include "coarse/space.hpp"

using namespace coarse;

namespace {

std::vector<std::uint8_t> sparse_sources(const Box& box, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> s(box.volume(), 0);
  for (std::size_t k = 0; k < box.volume() / 500 + 1; ++k) s[rng() % s.size()] = 1;
  return s;
}

Box cube_of(benchmark::State& state) {
  return Box::cube(static_cast<std::size_t>(state.range(0)), 0, state.range(1));
}

template <auto Fn>
void BM_Distance(benchmark::State& state) {
  const Box box = cube_of(state);
  const auto src = sparse_sources(box, 1);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(box, src));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.volume()));
}

template <auto Fn>
void BM_Membership(benchmark::State& state) {
  const Box box = cube_of(state);
  const SpaceSpec spec{{0, 1, 2}, {1, 1, static_cast<int>(box.dim()) - 2}};
  for (auto _ : state) benchmark::DoNotOptimize(Fn(spec, box, point_cap()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.volume()));
}

template <auto Fn>
void BM_VerifyCover(benchmark::State& state) {
  const Box box = cube_of(state);
  const auto fams = brick_cover(box.dim(), 3, box);
  const auto carrier = box_points(box);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(fams, carrier, point_cap()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(carrier.size()));
}

template <auto Fn>
void BM_CubesMeeting(benchmark::State& state) {
  const Box box = cube_of(state);
  const auto cubes = subdivide(box, 4).cubes;
  GridRegion region(box);
  region.mask() = sparse_sources(box, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(cubes, region));
}

template <auto Fn>
void BM_Skeleton(benchmark::State& state) {
  const Box box = cube_of(state);
  const auto cubes = subdivide(box, 4).cubes;
  for (auto _ : state) benchmark::DoNotOptimize(Fn(cubes, box.dim() - 1, box, Adjacency::kFace));
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({3, 64})->Args({4, 24})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Distance<chebyshev_transform>)->Apply(sizes)->Name("distance/parallel");
BENCHMARK(BM_Distance<chebyshev_transform_serial>)->Apply(sizes)->Name("distance/serial");
BENCHMARK(BM_Membership<membership_mask>)->Apply(sizes)->Name("membership/parallel");
BENCHMARK(BM_Membership<membership_mask_serial>)->Apply(sizes)->Name("membership/serial");
BENCHMARK(BM_VerifyCover<verify_cover>)->Apply(sizes)->Name("verify_cover/parallel");
BENCHMARK(BM_VerifyCover<verify_cover_serial>)->Apply(sizes)->Name("verify_cover/serial");
BENCHMARK(BM_CubesMeeting<cubes_meeting>)->Apply(sizes)->Name("cubes_meeting/parallel");
BENCHMARK(BM_CubesMeeting<cubes_meeting_serial>)->Apply(sizes)->Name("cubes_meeting/serial");
BENCHMARK(BM_Skeleton<static_cast<GridRegion (*)(const std::vector<Cube>&, std::size_t, const Box&, Adjacency)>(skeleton)>)
    ->Apply(sizes)
    ->Name("skeleton/parallel");
BENCHMARK(BM_Skeleton<skeleton_serial>)->Apply(sizes)->Name("skeleton/serial");

BENCHMARK_MAIN();
