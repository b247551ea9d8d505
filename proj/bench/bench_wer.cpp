#include <benchmark/benchmark.h>

#include "admmpd/instanton.hpp"
#include "admmpd/wer.hpp"

using namespace admmpd;

namespace {

const TannerGraph &tanner() {
    static const TannerGraph g = load_alist(ADMMPD_DATA_DIR "/tanner155.alist");
    return g;
}

const StopRule kStop{1000000, 256};

void BM_WerSerial(benchmark::State &state) {
    const DecoderSetup s = DecoderSetup::with_defaults(static_cast<DecoderKind>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_wer_point_serial(tanner(), s, 2.5, kStop, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(kStop.max_trials));
}

void BM_WerParallel(benchmark::State &state) {
    const DecoderSetup s = DecoderSetup::with_defaults(static_cast<DecoderKind>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_wer_point(tanner(), s, 2.5, kStop, 1, static_cast<int>(state.range(1))));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(kStop.max_trials));
}

CampaignParams small_campaign() {
    CampaignParams p;
    p.k_trials = 8;
    p.isa_pd.max_iters = 5;
    p.isa_r.iters = 10;
    return p;
}

void BM_InstantonSerial(benchmark::State &state) {
    for (auto _ : state) benchmark::DoNotOptimize(instanton_campaign_serial(tanner(), DecoderConfig{}, small_campaign()));
}

void BM_InstantonParallel(benchmark::State &state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            instanton_campaign(tanner(), DecoderConfig{}, small_campaign(), static_cast<int>(state.range(0))));
}

} // namespace

BENCHMARK(BM_WerSerial)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WerParallel)->Args({0, 1})->Args({0, 2})->Args({0, 4})->Args({2, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InstantonSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InstantonParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
