// Serial scatter vs OpenMP gather multiplication of truncated series.
#include <benchmark/benchmark.h>

#include "fglab/fgl/lubin_tate.hpp"
#include "fglab/series/kernels.hpp"

using namespace fglab;

namespace {

series::TruncSeries<IntegerRing> dense(int nvars, int cap)
{
    static const std::vector<std::string> names{"x", "y", "z"};
    series::TruncSeries<IntegerRing> s(IntegerRing{}, std::vector<std::string>(names.begin(), names.begin() + nvars), cap);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = Int(static_cast<long>(i % 17) - 8);
    return s;
}

series::TruncSeries<LocalRing> lt_law(int cap)
{
    const auto L = local::make_local_field(local::make_unramified(5, 1, 42), {{-5}}, 40);
    return fgl::from_log(fgl::lubin_tate_log(L, cap), cap, true).F;
}

void BM_IntSerial(benchmark::State& st)
{
    const auto a = dense(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(series::mul_serial(a, a));
}

void BM_IntParallel(benchmark::State& st)
{
    const auto a = dense(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(series::mul_parallel(a, a));
}

void BM_LocalSerial(benchmark::State& st)
{
    const auto F = lt_law(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(series::mul_serial(F, F));
}

void BM_LocalParallel(benchmark::State& st)
{
    const auto F = lt_law(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(series::mul_parallel(F, F));
}

}  // namespace

BENCHMARK(BM_IntSerial)->Args({1, 400})->Args({2, 40})->Args({3, 16});
BENCHMARK(BM_IntParallel)->Args({1, 400})->Args({2, 40})->Args({3, 16});
BENCHMARK(BM_LocalSerial)->Arg(25);
BENCHMARK(BM_LocalParallel)->Arg(25);

BENCHMARK_MAIN();
