#include <benchmark/benchmark.h>

#include "apx/covering.hpp"
#include "apx/setalg.hpp"
#include "apx/sweep.hpp"

using namespace apx;

namespace {

FiniteSet block(const char* ring, std::int64_t lo, std::int64_t hi, std::int64_t step = 1) {
  auto r = parse_ring(ring);
  std::vector<Element> e;
  for (std::int64_t v = lo; v <= hi; v += step) e.push_back(r->parse_element(std::to_string(v)));
  return FiniteSet(r, e);
}

void BM_Sumset(benchmark::State& state) {
  auto a = block("zmod:1000003", 0, state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(sumset(a, a));
}

void BM_SumsetSerial(benchmark::State& state) {
  auto a = block("zmod:1000003", 0, state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(serial::sumset(a, a));
}

void BM_Prodset(benchmark::State& state) {
  auto a = block("int", -state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prodset(a, a));
}

void BM_ProdsetSerial(benchmark::State& state) {
  auto a = block("int", -state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::prodset(a, a));
}

void BM_Closure(benchmark::State& state) {
  auto g = block("zmod:4096", 0, 8, 8);
  for (auto _ : state) benchmark::DoNotOptimize(closure(g, 1 << 20));
}

void BM_ClosureSerial(benchmark::State& state) {
  auto g = block("zmod:4096", 0, 8, 8);
  for (auto _ : state) benchmark::DoNotOptimize(serial::closure(g));
}

void BM_ApproxInterval(benchmark::State& state) {
  auto x = block("int", -state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx_constant(x, ApproxMode::ring, true));
}

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.rings = {"zmod:11", "zmod:13"};
  spec.k_max = 3;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, 1, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_Sumset)->Arg(3000)->Arg(30000);
BENCHMARK(BM_SumsetSerial)->Arg(3000)->Arg(30000);
BENCHMARK(BM_Prodset)->Arg(100)->Arg(400);
BENCHMARK(BM_ProdsetSerial)->Arg(100)->Arg(400);
BENCHMARK(BM_Closure);
BENCHMARK(BM_ClosureSerial);
BENCHMARK(BM_ApproxInterval)->DenseRange(2, 6, 2);
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
