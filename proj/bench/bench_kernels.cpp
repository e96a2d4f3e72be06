// Serial reference vs OpenMP line kernels, and the operators built on them.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "frtv/gridfield.hpp"
#include "frtv/kernels.hpp"
#include "frtv/rofr.hpp"
#include "frtv/special_fn.hpp"
#include "frtv/tvr.hpp"

namespace {

using namespace frtv;

struct Square {
  std::size_t extent;
  std::vector<double> taps, in, out;
  kernels::Lines rows;

  explicit Square(std::size_t e) : extent(e), taps(gl_taps(0.5, e)), in(e * e), out(e * e) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double& v : in) v = unif(rng);
    rows = {e, e, static_cast<std::ptrdiff_t>(e), 1};
  }
};

void BM_causal_serial(benchmark::State& st) {
  Square s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::causal_serial(s.taps, 1.0, s.in.data(), s.out.data(), s.rows);
    benchmark::DoNotOptimize(s.out.data());
  }
}

void BM_causal_parallel(benchmark::State& st) {
  Square s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::causal_parallel(s.taps, 1.0, s.in.data(), s.out.data(), s.rows);
    benchmark::DoNotOptimize(s.out.data());
  }
}

void BM_anticausal_serial(benchmark::State& st) {
  Square s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::anticausal_serial(s.taps, 1.0, s.in.data(), s.out.data(), s.rows);
    benchmark::DoNotOptimize(s.out.data());
  }
}

void BM_anticausal_parallel(benchmark::State& st) {
  Square s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::anticausal_parallel(s.taps, 1.0, s.in.data(), s.out.data(), s.rows);
    benchmark::DoNotOptimize(s.out.data());
  }
}

void BM_tv(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const GridField u = GridField::sample(2, n, [](double a, double b) { return a * b * (1 - a); });
  for (auto _ : st) benchmark::DoNotOptimize(tv_r(u, Order(1.5), EllP(2.0)).value);
}

void BM_denoise_pd(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.1);
  GridField u = GridField::sample(2, n, [](double a, double b) { return a > 0.5 && b > 0.3 ? 0.8 : 0.2; });
  for (double& v : u.values()) v += noise(rng);
  const DenoiseProblem pb{u, 0.01, Order(1.0), EllP(2.0), 1e-6, 5000, 1e-4};
  for (auto _ : st) benchmark::DoNotOptimize(denoise_pd(pb).final_energy);
}

}  // namespace

BENCHMARK(BM_causal_serial)->Arg(129)->Arg(257)->Arg(513);
BENCHMARK(BM_causal_parallel)->Arg(129)->Arg(257)->Arg(513);
BENCHMARK(BM_anticausal_serial)->Arg(129)->Arg(257)->Arg(513);
BENCHMARK(BM_anticausal_parallel)->Arg(129)->Arg(257)->Arg(513);
BENCHMARK(BM_tv)->Arg(64)->Arg(128);
BENCHMARK(BM_denoise_pd)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
