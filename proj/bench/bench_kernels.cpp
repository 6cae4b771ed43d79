// serial-vs-parallel timings for the bulk compute kernels
#include <benchmark/benchmark.h>

#include <nsvm/kernel.hpp>
#include <nsvm/ops.hpp>
#include <nsvm/rng.hpp>
#include <nsvm/types.hpp>

#include <vector>

namespace {

nsvm::Dataset make_data(std::size_t n, std::size_t d) {
  nsvm::SplitMix64 rng(17);
  nsvm::Dataset data;
  std::vector<double> x(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& xi : x) xi = rng.uniform_pm1();
    data.add(x, rng.sign(), rng.sign());
  }
  return data;
}

std::vector<double> make_values(std::size_t n, std::uint64_t seed) {
  nsvm::SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& vi : v) vi = rng.uniform_pm1();
  return v;
}

void bm_decision_values(benchmark::State& state, bool serial) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t d = 32;
  const nsvm::Dataset data = make_data(n, d);
  const std::vector<double> w = make_values(d, 1);
  std::vector<double> out(n);
  for (auto _ : state) {
    if (serial) nsvm::ops::decision_values_serial(data, w, 0.25, out);
    else nsvm::ops::decision_values(data, w, 0.25, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * d));
}

void bm_margin_sums(benchmark::State& state, bool serial) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const nsvm::Dataset data = make_data(n, 8);
  const std::vector<double> scores = make_values(n, 2);
  for (auto _ : state) {
    nsvm::ops::MarginSums ms =
        serial ? nsvm::ops::margin_sums_serial(data, scores) : nsvm::ops::margin_sums(data, scores);
    benchmark::DoNotOptimize(ms);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}

void bm_weighted_input_sum(benchmark::State& state, bool serial) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t d = 32;
  const nsvm::Dataset data = make_data(n, d);
  const std::vector<double> coef = make_values(n, 3);
  for (auto _ : state) {
    std::vector<double> acc = serial ? nsvm::ops::weighted_input_sum_serial(data, coef)
                                     : nsvm::ops::weighted_input_sum(data, coef);
    benchmark::DoNotOptimize(acc.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * d));
}

void bm_gram_row(benchmark::State& state, bool serial) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t d = 32;
  const nsvm::Dataset data = make_data(n, d);
  nsvm::KernelSpec spec;
  spec.kind = nsvm::KernelKind::rbf;
  spec.gamma = 0.5;
  std::vector<double> out(n);
  std::size_t i = 0;
  for (auto _ : state) {
    if (serial) nsvm::gram_row_serial(data, spec, i, out);
    else nsvm::gram_row(data, spec, i, out);
    benchmark::DoNotOptimize(out.data());
    i = (i + 1) % n;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * d));
}

}  // namespace

BENCHMARK_CAPTURE(bm_decision_values, parallel, false)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(bm_decision_values, serial, true)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(bm_margin_sums, parallel, false)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(bm_margin_sums, serial, true)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(bm_weighted_input_sum, parallel, false)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(bm_weighted_input_sum, serial, true)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(bm_gram_row, parallel, false)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(bm_gram_row, serial, true)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
