#include <benchmark/benchmark.h>

#include <random>

#include "morsekit/barannikov.hpp"
#include "morsekit/coeff.hpp"
#include "morsekit/gen.hpp"
#include "morsekit/oracle.hpp"
#include "morsekit/selector.hpp"

using namespace morsekit;

namespace {

FilteredComplex sized(std::int64_t points) {
  return random_complex(3, random_shape(3, static_cast<std::size_t>(points))).complex;
}

void BM_ReduceQ(benchmark::State& state) {
  const auto c = sized(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(c, Coefficients::rationals()));
  state.SetLabel(std::to_string(c.size()) + " points");
}
BENCHMARK(BM_ReduceQ)->Arg(10)->Arg(40)->Arg(120);

void BM_ReduceF2(benchmark::State& state) {
  const auto c = sized(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(c, Coefficients::prime_field(2)));
}
BENCHMARK(BM_ReduceF2)->Arg(10)->Arg(40)->Arg(120);

void BM_ReduceInteger(benchmark::State& state) {
  const auto c = sized(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_integer(c));
}
BENCHMARK(BM_ReduceInteger)->Arg(10)->Arg(40);

void BM_Smith(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_Smith)->Arg(4)->Arg(8)->Arg(16);

void BM_SelectorReport(benchmark::State& state) {
  const auto c = rearrange_values(sized(state.range(0)), 3);
  const std::vector<Coefficients> all{Coefficients::integers(), Coefficients::rationals(),
                                      Coefficients::prime_field(2), Coefficients::prime_field(3)};
  for (auto _ : state) benchmark::DoNotOptimize(selector_report(c, all));
}
BENCHMARK(BM_SelectorReport)->Arg(10)->Arg(40);

void BM_PairsByRank(benchmark::State& state) {
  const auto c = sized(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::pairs_by_rank(c, Coefficients::rationals()));
}
BENCHMARK(BM_PairsByRank)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
