#include <random>

#include <benchmark/benchmark.h>

#include "geophase/cocycles.hpp"
#include "geophase/grassmann.hpp"
#include "geophase/matfun.hpp"
#include "geophase/phases.hpp"

using namespace geophase;
using grassmann::ManifoldSpec;

namespace {

CMatrix random_hermitian(int size, std::mt19937_64& eng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix a(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) a(r, c) = complexd(n01(eng), n01(eng));
  return 0.5 * (a + a.adjoint()).eval();
}

void bm_triangle_area_quadrature(benchmark::State& state) {
  const ManifoldSpec spec{2, 2, -1, 1};
  std::mt19937_64 eng(1);
  const auto z1 = grassmann::random_point(spec, eng);
  const auto z2 = grassmann::random_point(spec, eng);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(phases::triangle_area_quadrature(z1, z2, order).value);
}

void bm_triangle_area_closed(benchmark::State& state) {
  const ManifoldSpec spec{2, 2, -1, 1};
  std::mt19937_64 eng(2);
  const auto z1 = grassmann::random_point(spec, eng);
  const auto z2 = grassmann::random_point(spec, eng);
  for (auto _ : state)
    benchmark::DoNotOptimize(phases::triangle_area_closed(z1, z2).value);
}

void bm_kernel(benchmark::State& state) {
  const ManifoldSpec spec{2, 3, -1, 2};
  std::mt19937_64 eng(3);
  const auto z1 = grassmann::random_point(spec, eng);
  const auto z2 = grassmann::random_point(spec, eng);
  for (auto _ : state) benchmark::DoNotOptimize(phases::kernel(z1, z2).value);
}

void bm_block_product(benchmark::State& state) {
  const ManifoldSpec spec{2, 3, -1, 1};
  std::mt19937_64 eng(4);
  const auto z1 = grassmann::random_point(spec, eng);
  const auto z2 = grassmann::random_point(spec, eng);
  for (auto _ : state)
    benchmark::DoNotOptimize(cocycles::block_product(z1, z2).alpha.sum());
}

void bm_herm_sqrt(benchmark::State& state) {
  std::mt19937_64 eng(5);
  const int size = static_cast<int>(state.range(0));
  const CMatrix shifted =
      random_hermitian(size, eng) + 4.0 * size * CMatrix::Identity(size, size);
  for (auto _ : state)
    benchmark::DoNotOptimize(matfun::herm_fn(shifted, matfun::ScalarFn::Sqrt).sum());
}

BENCHMARK(bm_triangle_area_quadrature)->Arg(8)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(bm_triangle_area_closed);
BENCHMARK(bm_kernel);
BENCHMARK(bm_block_product);
BENCHMARK(bm_herm_sqrt)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
