#include <benchmark/benchmark.h>

#include "graver/classical.hpp"
#include "graver/io.hpp"
#include "graver/qubo.hpp"
#include "graver/sampler.hpp"

#include <string>

using namespace graver;

namespace {

IntMatrix fixture(const std::string& name) { return io::read_matrix_file(std::string(GRAVER_FIXTURE_DIR) + "/" + name); }

void BM_Pottier(benchmark::State& state, const char* name) {
    const IntMatrix a = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(pottier(a));
}
BENCHMARK_CAPTURE(BM_Pottier, fourcoin, "fourcoin.mat");
BENCHMARK_CAPTURE(BM_Pottier, fourcycle, "fourcycle.mat");
BENCHMARK_CAPTURE(BM_Pottier, random2x5, "random2x5.mat");

void BM_MinimalFilter(benchmark::State& state) {
    const VectorSet g = pottier(fixture("random2x5.mat"));
    // Pad the basis with conformal sums so the filter has work to discard.
    VectorSet input = g.symmetric();
    for (std::size_t i = 0; i + 1 < g.size(); i += 2) input.insert(g[i] + g[i + 1]);
    for (auto _ : state) benchmark::DoNotOptimize(minimal_filter(input, static_cast<unsigned>(state.range(0))));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * input.size()));
}
BENCHMARK(BM_MinimalFilter)->Arg(1)->Arg(4)->UseRealTime();

void BM_BuildKernelQubo(benchmark::State& state) {
    const IntMatrix a = fixture("fourcycle.mat");
    const EncodingSpec enc = EncodingSpec::uniform(a.cols(), static_cast<int>(state.range(0)), -4);
    for (auto _ : state) benchmark::DoNotOptimize(build_kernel_qubo(a, enc));
}
BENCHMARK(BM_BuildKernelQubo)->Arg(3)->Arg(6);

void BM_Annealing(benchmark::State& state) {
    const IntMatrix a = fixture("variation.mat");
    const QuboProblem q = build_kernel_qubo(a, EncodingSpec::uniform(a.cols(), 3, -4));
    SamplerConfig cfg;
    cfg.backend = Backend::simulated_annealing;
    cfg.reads = 1000;
    cfg.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_qubo(q, cfg));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * cfg.reads));
}
BENCHMARK(BM_Annealing)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_Exhaustive(benchmark::State& state) {
    const IntMatrix a = fixture("fourcoin.mat");
    const QuboProblem q = build_kernel_qubo(a, EncodingSpec::uniform(a.cols(), static_cast<int>(state.range(0)), -8));
    SamplerConfig cfg;
    cfg.backend = Backend::exhaustive;
    for (auto _ : state) benchmark::DoNotOptimize(sample_qubo(q, cfg));
}
BENCHMARK(BM_Exhaustive)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
