// Serial versus OpenMP kernel comparison at the sizes the solver uses and
// above. Run with --benchmark_min_time=0.1s for a quick look.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pmc/kernels.hpp"

namespace {

struct Data {
  std::size_t m, k1;
  std::vector<double> x, y, yt, a, wf, values;
  Data(std::size_t m_, std::size_t k1_) : m(m_), k1(k1_) {
    std::mt19937 rng(1);
    std::normal_distribution<double> d(0.0, 1.0);
    x.resize(m);
    for (auto& v : x) v = std::tanh(d(rng));
    y.resize(k1 * m);
    pmc::kernels::serial::gegenbauer_matrix(1.0, x.data(), m, k1 - 1, y.data());
    yt.resize(m * k1);
    for (std::size_t k = 0; k < k1; ++k)
      for (std::size_t j = 0; j < m; ++j) yt[j * k1 + k] = y[k * m + j];
    a.resize(k1);
    for (auto& v : a) v = d(rng);
    wf.resize(m);
    for (auto& v : wf) v = d(rng);
    values.resize(m);
  }
};

void bench_synth_serial(benchmark::State& state) {
  Data d(state.range(0), state.range(0) / 2 + 1);
  for (auto _ : state) {
    pmc::kernels::serial::synth_apply(d.yt.data(), d.m, d.k1, d.a.data(),
                                      d.values.data());
    benchmark::DoNotOptimize(d.values.data());
  }
}

void bench_synth_omp(benchmark::State& state) {
  Data d(state.range(0), state.range(0) / 2 + 1);
  for (auto _ : state) {
    pmc::kernels::omp::synth_apply(d.yt.data(), d.m, d.k1, d.a.data(),
                                   d.values.data());
    benchmark::DoNotOptimize(d.values.data());
  }
}

void bench_analyze_serial(benchmark::State& state) {
  Data d(state.range(0), state.range(0) / 2 + 1);
  std::vector<double> c(d.k1);
  for (auto _ : state) {
    pmc::kernels::serial::analyze_apply(d.y.data(), d.m, d.k1, d.wf.data(),
                                        c.data());
    benchmark::DoNotOptimize(c.data());
  }
}

void bench_analyze_omp(benchmark::State& state) {
  Data d(state.range(0), state.range(0) / 2 + 1);
  std::vector<double> c(d.k1);
  for (auto _ : state) {
    pmc::kernels::omp::analyze_apply(d.y.data(), d.m, d.k1, d.wf.data(),
                                     c.data());
    benchmark::DoNotOptimize(c.data());
  }
}

void bench_basis_serial(benchmark::State& state) {
  Data d(state.range(0), state.range(0) / 2 + 1);
  std::vector<double> out(d.k1 * d.m);
  for (auto _ : state) {
    pmc::kernels::serial::gegenbauer_matrix(1.0, d.x.data(), d.m, d.k1 - 1,
                                            out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

void bench_basis_omp(benchmark::State& state) {
  Data d(state.range(0), state.range(0) / 2 + 1);
  std::vector<double> out(d.k1 * d.m);
  for (auto _ : state) {
    pmc::kernels::omp::gegenbauer_matrix(1.0, d.x.data(), d.m, d.k1 - 1,
                                         out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

void bench_pow_serial(benchmark::State& state) {
  Data d(state.range(0), 2);
  std::vector<double> out(d.m);
  for (auto _ : state) {
    pmc::kernels::serial::pow_nonneg(d.wf.data(), d.m, 1.7, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

void bench_pow_omp(benchmark::State& state) {
  Data d(state.range(0), 2);
  std::vector<double> out(d.m);
  for (auto _ : state) {
    pmc::kernels::omp::pow_nonneg(d.wf.data(), d.m, 1.7, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(bench_synth_serial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(bench_synth_omp)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(bench_analyze_serial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(bench_analyze_omp)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(bench_basis_serial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(bench_basis_omp)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(bench_pow_serial)->Arg(4096)->Arg(65536);
BENCHMARK(bench_pow_omp)->Arg(4096)->Arg(65536);

BENCHMARK_MAIN();
