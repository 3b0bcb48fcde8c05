#include <benchmark/benchmark.h>

#include "whittaker/bz.hpp"
#include "whittaker/lusztig.hpp"
#include "whittaker/quad.hpp"
#include "whittaker/special.hpp"

using namespace whittaker;

namespace {

void charts(benchmark::State& state, Family f, BZResult (*fn)(const LusztigChart&)) {
  RationalSampler rng(1);
  std::vector<LusztigChart> cs;
  for (int k = 0; k < 16; ++k) cs.push_back(random_chart(f, static_cast<int>(state.range(0)), rng));
  size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fn(cs[k++ % cs.size()]));
}

void BM_ClosedForm(benchmark::State& s, Family f) { charts(s, f, [](const LusztigChart& c) { return bz_closed_form(c); }); }
void BM_Oracle(benchmark::State& s, Family f) { charts(s, f, bz_oracle); }

BENCHMARK_CAPTURE(BM_ClosedForm, gl, Family::A)->DenseRange(2, 6);
BENCHMARK_CAPTURE(BM_Oracle, gl, Family::A)->DenseRange(2, 6);
BENCHMARK_CAPTURE(BM_ClosedForm, sp, Family::C)->DenseRange(1, 4);
BENCHMARK_CAPTURE(BM_Oracle, sp, Family::C)->DenseRange(1, 4);
BENCHMARK_CAPTURE(BM_ClosedForm, so_even, Family::D)->DenseRange(2, 4);
BENCHMARK_CAPTURE(BM_ClosedForm, so_odd, Family::B)->DenseRange(1, 4);

void BM_LogGamma(benchmark::State& state) {
  std::complex<double> z(0.7, -3.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma_complex(z));
    z += std::complex<double>(0, 1e-9);
  }
}
BENCHMARK(BM_LogGamma);

void BM_EvalMB(benchmark::State& state, Family f, int n) {
  MBIntegrand g = assemble_mb_integrand(f, n);
  std::vector<double> lambda(n), x(n);
  for (int k = 0; k < n; ++k) {
    lambda[k] = 0.3 * (k + 1) - 0.5;
    x[k] = 0.1 * k;
  }
  for (auto _ : state) benchmark::DoNotOptimize(eval_mb(g, x, lambda));
}
BENCHMARK_CAPTURE(BM_EvalMB, gl2, Family::A, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvalMB, gl3, Family::A, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvalMB, sp1, Family::C, 1)->Unit(benchmark::kMillisecond);

void BM_EvalCone(benchmark::State& state, Family f, int n) {
  std::vector<double> lambda(n, 0.2), x(n, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(eval_cone(f, n, lambda, x));
}
BENCHMARK_CAPTURE(BM_EvalCone, gl3, Family::A, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvalCone, sp2, Family::C, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
