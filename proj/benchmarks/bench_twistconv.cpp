#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "twistconv/finite_twisted.hpp"
#include "twistconv/gabor.hpp"
#include "twistconv/seq_matrix.hpp"
#include "twistconv/sequence.hpp"
#include "twistconv/twisted_inverse.hpp"

using namespace twistconv;

namespace {

Sequence random_sequence(std::mt19937_64& rng, int points, std::int64_t range) {
  std::uniform_int_distribution<std::int64_t> idx(-range, range);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  Sequence s(1);
  for (int i = 0; i < points; ++i) {
    s.set(Index{idx(rng)}, Index{idx(rng)}, Complex{val(rng), val(rng)});
  }
  return s;
}

void BM_TwistedConvolve(benchmark::State& state) {
  const auto points = static_cast<int>(state.range(0));
  std::mt19937_64 rng(42);
  const TwistParams tp(3, 2, 1);
  const Sequence a = random_sequence(rng, points, 20);
  const Sequence b = random_sequence(rng, points, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(twisted_convolve(a, b, tp));
  }
  state.SetComplexityN(points);
}
BENCHMARK(BM_TwistedConvolve)->Arg(32)->Arg(128)->Arg(512)->Complexity();

void BM_Determinant(benchmark::State& state) {
  const auto p = static_cast<int>(state.range(0));
  std::mt19937_64 rng(43);
  const TwistParams tp(p, 1, 1);
  const SeqMatrix m = phi(random_sequence(rng, 24, 6), tp);
  for (auto _ : state) {
    benchmark::DoNotOptimize(determinant(m));
  }
}
BENCHMARK(BM_Determinant)->Arg(2)->Arg(3)->Arg(5);

void BM_InvertTwisted(benchmark::State& state) {
  const TwistParams tp(2, 1, 1);
  Sequence a = make_delta(1);
  a.set(Index{1}, Index{1}, Complex{0.5, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_twisted(a, tp));
  }
}
BENCHMARK(BM_InvertTwisted);

void BM_FiniteInvert(benchmark::State& state) {
  const auto p = static_cast<int>(state.range(0));
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> val(-0.5 / (p * p), 0.5 / (p * p));
  FiniteGrid g(p);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) g.set(j, k, Complex{val(rng), val(rng)});
  }
  g.set(0, 0, g.at(0, 0) + Complex{2.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_block_circulant(g, 3));
  }
}
BENCHMARK(BM_FiniteInvert)->Arg(8);

void BM_DualWindow(benchmark::State& state) {
  GaborConfig cfg;
  cfg.L = 12;
  cfg.a_step = 2;
  cfg.b_step = 4;
  cfg.window.resize(12);
  for (int t = 0; t < 12; ++t) {
    const double x = (t - 6.0);
    cfg.window(t) = Complex{std::exp(-x * x / 6.0), 0.0};
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dual_window(cfg));
  }
}
BENCHMARK(BM_DualWindow);

}  // namespace

BENCHMARK_MAIN();
