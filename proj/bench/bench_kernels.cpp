#include <benchmark/benchmark.h>

#include "gslab/dynsys.hpp"
#include "gslab/exec.hpp"
#include "gslab/grid.hpp"
#include "gslab/oracle.hpp"
#include "gslab/oscillation.hpp"
#include "gslab/profile.hpp"
#include "gslab/smallmat.hpp"

namespace {

using gslab::AngularRule;
using gslab::BoundaryData;
using gslab::Exec;
using gslab::MatrixNorm;
using gslab::RadialProfile;
using gslab::TGrid;

void bm_oscillation_curve(benchmark::State& state, Exec ex) {
    const RadialProfile p = RadialProfile::ex2(1.0);
    const TGrid grid = gslab::default_curve_grid(p, 2, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gslab::oscillation_curve(p, 2, grid, MatrixNorm::spectral, ex));
    }
}
BENCHMARK_CAPTURE(bm_oscillation_curve, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_oscillation_curve, openmp, Exec::openmp)->Unit(benchmark::kMillisecond);

void bm_drift_matrix(benchmark::State& state, Exec ex) {
    const RadialProfile p = RadialProfile::ex3(10.0, 3);
    const gslab::MatrixField A = gslab::radial_field(p, 3);
    const AngularRule rule{1024, 128};
    double r = 0.25;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gslab::compute_R_matrix(A, 3, r, rule, ex));
        r = (r > 1e-12) ? r * 0.75 : 0.25;
    }
}
BENCHMARK_CAPTURE(bm_drift_matrix, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_drift_matrix, openmp, Exec::openmp)->Unit(benchmark::kMillisecond);

void bm_ratio_comparison(benchmark::State& state, Exec ex) {
    const RadialProfile p = RadialProfile::ex1_neg(0.8);
    const BoundaryData bd = BoundaryData::random_zero_mean(2, 5, 8, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gslab::comparison_check(p, 2, bd, 1e-6, ex));
    }
}
BENCHMARK_CAPTURE(bm_ratio_comparison, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_ratio_comparison, openmp, Exec::openmp)->Unit(benchmark::kMillisecond);

void bm_fd2d_solve(benchmark::State& state, Exec ex) {
    const RadialProfile p = RadialProfile::ex1_pos(2.0);
    BoundaryData bd;
    bd.modes = {{1, 1.0, 0.0}, {3, 0.0, 0.4}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gslab::fd2d_solve(p, bd, 96, 48, 12.0, 1e-10, ex));
    }
}
BENCHMARK_CAPTURE(bm_fd2d_solve, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_fd2d_solve, openmp, Exec::openmp)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
