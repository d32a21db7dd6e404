#include <benchmark/benchmark.h>

#include "dmod/bernstein.hpp"
#include "dmod/dmodops.hpp"
#include "dmod/kernels.hpp"
#include "dmod/parse.hpp"

using namespace dmod;

namespace {

RingPtr ring3() {
  static RingPtr r = RingContext::make({"x", "y", "z"});
  return r;
}

// (x + y + z + dx + dy + dz + 1)^k
WeylOperator dense(int k) {
  auto r = ring3();
  auto base = parse_operator(r, "x+y+z+dx+dy+dz+1");
  auto p = WeylOperator::constant(r, 1);
  for (int i = 0; i < k; ++i) p = kernels::weyl_product_serial(p, base);
  return p;
}

void BM_ProductSerial(benchmark::State& st) {
  auto p = dense(static_cast<int>(st.range(0))), q = dense(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::weyl_product_serial(p, q));
}

void BM_ProductParallel(benchmark::State& st) {
  auto p = dense(static_cast<int>(st.range(0))), q = dense(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::weyl_product_parallel(p, q));
  st.counters["threads"] = kernels::max_threads();
}

void BM_LeftMultiplySerial(benchmark::State& st) {
  std::vector<WeylOperator> batch;
  for (int i = 0; i < st.range(0); ++i) batch.push_back(dense(1 + i % 4));
  auto f = dense(3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::left_multiply_serial(f, batch));
}

void BM_LeftMultiplyParallel(benchmark::State& st) {
  std::vector<WeylOperator> batch;
  for (int i = 0; i < st.range(0); ++i) batch.push_back(dense(1 + i % 4));
  auto f = dense(3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::left_multiply_parallel(f, batch));
}

void BM_LocalizeCusp(benchmark::State& st) {
  auto r = RingContext::make({"x", "y"});
  CyclicDMod M(r, parse_operator_list(r, "2*x*dx+3*y*dy-1, 2*y*dx+3*x^2*dy"));
  PolyWithParam f(parse_operator(r, "x^3-y^2"));
  for (auto _ : st) benchmark::DoNotOptimize(localize(M, f));
}

void BM_MultiplicityGkz(benchmark::State& st) {
  auto r = RingContext::make({"x1", "x2", "x3", "x4"});
  auto I = parse_operator_list(r,
                               "x1*dx1+x2*dx2+x3*dx3+x4*dx4-1, x2*dx2+3*x3*dx3+4*x4*dx4-2, dx2*dx4^2-dx3^3, "
                               "dx1*dx4-dx2*dx3, dx2^2*dx4-dx1*dx3^2, dx1^2*dx3-dx2^3");
  for (auto _ : st) benchmark::DoNotOptimize(bernstein_dimension_multiplicity(I, r));
}

}  // namespace

BENCHMARK(BM_ProductSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductParallel)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeftMultiplySerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeftMultiplyParallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalizeCusp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplicityGkz)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
