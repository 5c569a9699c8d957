// Serial reference vs OpenMP kernels.  Arg 0 is serial, 1 parallel.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hermite/error_analysis.hpp"
#include "hermite/function_spec.hpp"
#include "hermite/kernels.hpp"
#include "hermite/spectral.hpp"

using namespace hermite;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) == 0 ? Exec::serial : Exec::parallel; }

std::vector<double> grid(int count, double half_width) {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = -half_width + 2.0 * half_width * i / (count - 1);
    return xs;
}

void BM_psi_table(benchmark::State& s) {
    const auto xs = grid(2000, 20.0);
    for (auto _ : s) benchmark::DoNotOptimize(kernels::psi_table(200, xs, exec_of(s)));
}

void BM_project_table(benchmark::State& s) {
    const auto xs = grid(2000, 20.0);
    const auto table = kernels::psi_table(200, xs, Exec::serial);
    const std::vector<double> w(xs.size(), 1e-3);
    for (auto _ : s) benchmark::DoNotOptimize(kernels::project_table(table, 200, w, exec_of(s)));
}

void BM_abs_error_scan(benchmark::State& s) {
    const auto xs = grid(20001, 12.0);
    const auto f = [](double x) { return std::exp(-x * x) / (x * x + 2.0); };
    const auto g = [](double x) { return std::exp(-x * x) / (x * x + 2.0 + 1e-9); };
    for (auto _ : s) benchmark::DoNotOptimize(kernels::abs_error_scan(f, g, xs, exec_of(s)));
}

void BM_project(benchmark::State& s) {
    const FunctionSpec& f = builtin_function("gauss_pole2");
    // Gauss-Hermite rules are cached; build them outside the timed loop
    (void)project(f, 300, Basis::hermite_func);
    for (auto _ : s) benchmark::DoNotOptimize(project(f, 300, Basis::hermite_func, 1.0, exec_of(s)));
}

void BM_contour_coeffs(benchmark::State& s) {
    const FunctionSpec f = runge_function(1.0);
    for (auto _ : s) benchmark::DoNotOptimize(contour_coeffs(f, 100, 0.9, exec_of(s)));
}

}  // namespace

BENCHMARK(BM_psi_table)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_project_table)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_abs_error_scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_project)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_contour_coeffs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
