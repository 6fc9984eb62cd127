#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "emoact/batch.hpp"

using namespace emoact;

namespace {

const batch::Grid& grid() {
    static const batch::Grid g = [] {
        const std::array<double, 9> values{-4, -3, -2, -1, 0, 1, 2, 3, 4};
        return batch::cartesian_grid(values);
    }();
    return g;
}

template <auto Kernel>
void bm_generate(benchmark::State& state) {
    const auto& g = grid();
    std::vector<EpaVector> out(g.identities.size());
    for (auto _ : state) {
        Kernel(g.identities, g.impressions, GenerationParams{0.5}, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

template <auto Kernel>
void bm_label(benchmark::State& state) {
    const auto& g = grid();
    std::vector<EpaVector> emotions(g.identities.size());
    batch::generate_raw_serial(g.identities, g.impressions, GenerationParams{0.5}, emotions);
    for (auto& e : emotions) e = clamp_epa(e);
    const EmotionCatalog catalog;
    std::vector<LabelResult> out(emotions.size());
    for (auto _ : state) {
        Kernel(emotions, catalog, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

}  // namespace

BENCHMARK(bm_generate<batch::generate_raw_serial>)->Name("generate/serial");
BENCHMARK(bm_generate<batch::generate_raw_parallel>)->Name("generate/openmp");
BENCHMARK(bm_label<batch::label_serial>)->Name("label/serial");
BENCHMARK(bm_label<batch::label_parallel>)->Name("label/openmp");

BENCHMARK_MAIN();
