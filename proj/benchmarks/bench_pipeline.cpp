#include "monoscribe/onset.hpp"
#include "monoscribe/pipeline.hpp"
#include "monoscribe/synth.hpp"
#include "monoscribe/yin.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace monoscribe;

AudioBuffer make_melody(int notes) {
  RefScore score;
  score.tempo_bpm = 120.0;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pitch(57, 81);
  for (int i = 0; i < notes; ++i) {
    score.notes.push_back({pitch(rng), Beats(1)});
  }
  return render(score, ToneModel{}, 44100);
}

void BM_LocalEnergy(benchmark::State& state) {
  const AudioBuffer buffer = make_melody(16);
  const FrameSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_energy(buffer, spec));
  }
}
BENCHMARK(BM_LocalEnergy);

void BM_DifferenceFunctionFFT(benchmark::State& state) {
  std::mt19937 rng(11);
  std::normal_distribution<double> dist(0.0, 0.3);
  std::vector<double> frame(2999);
  for (auto& s : frame) s = dist(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(difference_function(frame, frame.size() / 2));
  }
}
BENCHMARK(BM_DifferenceFunctionFFT);

void BM_DifferenceFunctionNaive(benchmark::State& state) {
  std::mt19937 rng(11);
  std::normal_distribution<double> dist(0.0, 0.3);
  std::vector<double> frame(2999);
  for (auto& s : frame) s = dist(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(difference_function_naive(frame, frame.size() / 2));
  }
}
BENCHMARK(BM_DifferenceFunctionNaive);

void BM_NotePitch(benchmark::State& state) {
  const AudioBuffer buffer = make_melody(4);
  const YinParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(note_pitch(buffer, 0.0, 0.5, params));
  }
}
BENCHMARK(BM_NotePitch);

void BM_Transcribe(benchmark::State& state) {
  const AudioBuffer buffer = make_melody(16);
  const PipelineConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transcribe(buffer, config));
  }
}
BENCHMARK(BM_Transcribe);

}  // namespace

BENCHMARK_MAIN();
