#include <benchmark/benchmark.h>

#include <vector>

#include "triadic/closure.hpp"
#include "triadic/models.hpp"
#include "triadic/normal.hpp"
#include "triadic/procedures.hpp"
#include "triadic/risk.hpp"

using namespace triadic;

namespace {

HypothesisFamily family_of(std::size_t m) {
    std::vector<PValuePair> pairs;
    CounterStream s(1, 0, 0);
    for (std::size_t i = 0; i < m; ++i) pairs.push_back(PValuePair::from_h(s.uniform()));
    return HypothesisFamily::free_combination(std::move(pairs));
}

void BM_ClosedTest(benchmark::State& state) {
    const auto f = family_of(static_cast<std::size_t>(state.range(0)));
    const auto rule = LocalTestRule::bonferroni(0.05);
    for (auto _ : state) benchmark::DoNotOptimize(closed_test(f, rule));
}
BENCHMARK(BM_ClosedTest)->DenseRange(2, 10, 2);

void BM_SingleStep(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const auto f = family_of(m);
    const auto t = calibrate(CalibrationKind::Bonferroni, 0.05, m);
    for (auto _ : state) benchmark::DoNotOptimize(single_step(f, t));
}
BENCHMARK(BM_SingleStep)->DenseRange(2, 10, 2)->Arg(1000);

void BM_MonteCarloRisk(benchmark::State& state) {
    const GaussianMeansModel model(std::vector<double>(static_cast<std::size_t>(state.range(0)), 0.1), 25.0);
    const MonteCarloOptions options{10000, 3, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo_risk(model, ProcedureSpec{}, LossSpec::identity(0.5), options));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_MonteCarloRisk)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_NormalQuantile(benchmark::State& state) {
    double p = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(std_normal_quantile(p));
        p = p < 0.999 ? p + 1e-3 : 1e-6;
    }
}
BENCHMARK(BM_NormalQuantile);

} // namespace

BENCHMARK_MAIN();
