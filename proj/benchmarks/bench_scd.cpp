#include <benchmark/benchmark.h>

#include <vector>

#include "cyclo/dsp.hpp"
#include "cyclo/features.hpp"
#include "cyclo/scd.hpp"
#include "cyclo/synth.hpp"
#include "cyclo/vocoder.hpp"

using namespace cyclo;

namespace {

AudioSignal bench_signal(double seconds) {
  TestSignalSpec spec = TestSignalSpec::defaults(TestSignalKind::noise_mixture);
  spec.duration = seconds;
  return gen_test_signal(spec);
}

}  // namespace

static void BM_Dft(benchmark::State& state) {
  const auto frame = gen_white_noise(400, 1);
  for (auto _ : state) {
    auto X = dft(std::span<const double>(frame), int(state.range(0)));
    benchmark::DoNotOptimize(X);
  }
}
BENCHMARK(BM_Dft)->Arg(512)->Arg(1024)->Arg(4096);

static void BM_SpectralCorrelationFrame(benchmark::State& state) {
  AnalysisConfig cfg = AnalysisConfig::defaults(16000);
  auto frame = gen_white_noise(400, 2);
  const auto w = window_coefficients(cfg.window, cfg.frame_len);
  for (int i = 0; i < cfg.frame_len; ++i) frame[i] *= w[i];
  for (auto _ : state) {
    auto sc = spectral_correlation_frame(frame, 437.5, 16000, cfg);
    benchmark::DoNotOptimize(sc);
  }
}
BENCHMARK(BM_SpectralCorrelationFrame);

static void BM_ScdMap(benchmark::State& state) {
  AnalysisConfig cfg = AnalysisConfig::defaults(16000);
  cfg.n_alpha = int(state.range(0));
  const AudioSignal sig = bench_signal(1.0);
  for (auto _ : state) {
    auto map = scd_map(sig, cfg, 1);
    benchmark::DoNotOptimize(map);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ScdMap)->Arg(33)->Arg(65)->Arg(257)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_ScdMapParallel(benchmark::State& state) {
  AnalysisConfig cfg = AnalysisConfig::defaults(16000);
  const AudioSignal sig = bench_signal(1.0);
  for (auto _ : state) {
    auto map = scd_map(sig, cfg, int(state.range(0)));
    benchmark::DoNotOptimize(map);
  }
}
BENCHMARK(BM_ScdMapParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMillisecond);

static void BM_ExtractScdB400(benchmark::State& state) {
  AnalysisConfig cfg = AnalysisConfig::defaults(16000);
  cfg.alpha_max = default_alpha_max(FeatureKind::scd_b);
  const AudioSignal sig = bench_signal(1.0);
  for (auto _ : state) {
    auto m = extract_features(sig, FeatureKind::scd_b, cfg, 400, false, 1);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_ExtractScdB400)->Unit(benchmark::kMillisecond);

static void BM_LpcAnalyze(benchmark::State& state) {
  auto frame = gen_white_noise(320, 3);
  for (auto _ : state) {
    auto model = lpc_analyze(frame, 20);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_LpcAnalyze);

static void BM_ResynthesizeLpc(benchmark::State& state) {
  AnalysisConfig cfg;
  cfg.frame_len = 320;
  cfg.hop = 160;
  cfg.n_fft = 512;
  const AudioSignal sig = bench_signal(1.0);
  for (auto _ : state) {
    auto out = resynthesize_utterance(sig, VocoderMethod::lpc, cfg);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() *
                          std::int64_t(sig.samples.size()));
}
BENCHMARK(BM_ResynthesizeLpc)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
