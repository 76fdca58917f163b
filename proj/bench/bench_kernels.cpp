#include <vector>

#include <benchmark/benchmark.h>

#include "greenlab/cauchy/kernels.hpp"
#include "greenlab/cauchy/solver.hpp"
#include "greenlab/hadamard/hadamard.hpp"

using namespace greenlab;

namespace {

void leapfrog_row(benchmark::State& state, Backend backend) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> far(n, 0.1), u(n), src(n, 0.0), mn(n, 1e-4), mf(n, 1e-4), out(n);
  for (int j = 0; j < n; ++j) u[j] = 1.0 / (1.0 + j);
  const cauchy::StepCoeffs c{1.0, 1.0, 0.64, 1e-4};
  const cauchy::StepRows r{far.data(), u.data(), src.data(), mn.data(), mf.data(), out.data(), n, true};
  for (auto _ : state) {
    cauchy::leapfrog_row(backend, c, r);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void green_apply(benchmark::State& state, Backend backend) {
  const auto s = geometry::Spacetime::cylinder();
  const int n = static_cast<int>(state.range(0));
  const auto g = cauchy::Grid::periodic(s, -1.0, 1.0, n / 2, n);
  const auto P = hadamard::ScalarOperator::klein_gordon(s, 1.0);
  const cauchy::DiscreteGreen G(P, g, cauchy::GreenSign::Plus, backend);
  const auto phi = cauchy::GridSection::sample(g, [](const geometry::Point& p) {
    const double q = (p.t * p.t + (p.theta - 3.0) * (p.theta - 3.0)) / 0.09;
    return q < 1.0 ? 1.0 - q : 0.0;
  });
  for (auto _ : state) benchmark::DoNotOptimize(G.apply(phi).max_abs());
}

void hadamard_build(benchmark::State& state, Backend backend) {
  const auto P = hadamard::ScalarOperator::klein_gordon(geometry::Spacetime::flrw_cosh(), 1.0);
  hadamard::HadamardOptions o;
  o.spacing = 0.05;
  o.reach = 0.2;
  o.backend = backend;
  for (auto _ : state) {
    const hadamard::HadamardExpansion e(P, {0.2, 0.1}, static_cast<int>(state.range(0)), o);
    benchmark::DoNotOptimize(e.diagonal(1));
  }
}

}  // namespace

BENCHMARK_CAPTURE(leapfrog_row, serial, Backend::Serial)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK_CAPTURE(leapfrog_row, openmp, Backend::OpenMP)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK_CAPTURE(green_apply, serial, Backend::Serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(green_apply, openmp, Backend::OpenMP)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(hadamard_build, serial, Backend::Serial)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(hadamard_build, openmp, Backend::OpenMP)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
