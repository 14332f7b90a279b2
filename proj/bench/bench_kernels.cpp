#include <benchmark/benchmark.h>

#include <random>

#include "tomo/cstomo.hpp"
#include "tomo/radon_affine.hpp"
#include "tomo/radon_deformed.hpp"

using namespace tomo;

namespace {

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

ScalarField phantom(std::size_t n) {
  Eigen::MatrixXd cov(2, 2);
  cov << 0.8, 0.2, 0.2, 0.5;
  return make_gaussian_phantom(BoxDomain::cube(2, -4.0, 4.0, n), {0.4, -0.3}, cov, 1.0);
}

void BM_Sinogram(benchmark::State& state) {
  const ScalarField f = phantom(128);
  SinogramSpec spec;
  spec.n_angles = 180;
  for (auto _ : state) benchmark::DoNotOptimize(sinogram(f, spec, exec_of(state)));
}

void BM_HilbertInverse(benchmark::State& state) {
  const ScalarField f = phantom(128);
  SinogramSpec spec;
  spec.n_angles = 180;
  const TomogramTable s = sinogram(f, spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(invert_radon_hilbert(s, f.domain(), exec_of(state)));
}

void BM_AffineInverse(benchmark::State& state) {
  const ScalarField f = phantom(64);
  const AffineFieldSampler sampler(f);
  const QuadratureSpec q = default_quadrature(2, f.domain().bounding_radius(), 0.25);
  for (auto _ : state)
    benchmark::DoNotOptimize(invert_affine(sampler, f.domain(), q, exec_of(state)));
}

void BM_QuadricTable(benchmark::State& state) {
  const BoxDomain d = BoxDomain::cube(2, -2.0, 2.0, 48);
  const ScalarField f = make_gaussian_phantom(d, {0.2, -0.1}, 0.5, 1.0);
  const QuadricSpec spec(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  const BoxDomain grid({-3.0, -3.0, -1.0}, {3.0, 3.0, 8.0}, {13, 13, 37});
  for (auto _ : state)
    benchmark::DoNotOptimize(quadric_table(f, spec, grid, 1, exec_of(state)));
}

void BM_HusimiGrid(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const OperatorMatrix rho = random_density(9, rng);
  const PhaseGrid grid(6.0, 129);
  for (auto _ : state) benchmark::DoNotOptimize(husimi_grid(rho, grid, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_Sinogram)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HilbertInverse)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AffineInverse)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadricTable)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HusimiGrid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
