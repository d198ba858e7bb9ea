// Copyright 2026 The AxialVC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths: convolution, generator forward and
// backward, STFT, Griffin-Lim, DTW and a full toy training step.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "axialvc/autodiff/ops.hpp"
#include "axialvc/config/run_config.hpp"
#include "axialvc/dsp/stft.hpp"
#include "axialvc/eval/dtw.hpp"
#include "axialvc/model/networks.hpp"
#include "axialvc/training/trainer.hpp"

namespace {

using namespace axialvc;

std::vector<float> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void BM_Conv1dDepthwise(benchmark::State& st) {
  const auto c = static_cast<std::size_t>(st.range(0));
  const std::size_t t = 128, k = 17;
  const auto spec = ad::ConvSpec::same(c, c, k, c);
  const auto x = random_values(c * t, 1), w = random_values(c * k, 2), b = random_values(c, 3);
  for (auto _ : st) {
    ad::Tape<float> tape;
    auto y = ad::conv1d(tape.variable({c, t}, x), tape.variable({c, 1, k}, w),
                        tape.variable({c}, b), spec);
    tape.backward(ad::sum(y));
    benchmark::DoNotOptimize(y.values().data());
  }
}
BENCHMARK(BM_Conv1dDepthwise)->Arg(65)->Arg(513);

void BM_Conv1dPointwise(benchmark::State& st) {
  const auto c = static_cast<std::size_t>(st.range(0));
  const std::size_t t = 128;
  const auto spec = ad::ConvSpec::same(c, c, 1);
  const auto x = random_values(c * t, 1), w = random_values(c * c, 2), b = random_values(c, 3);
  for (auto _ : st) {
    ad::Tape<float> tape;
    auto y = ad::conv1d(tape.variable({c, t}, x), tape.variable({c, c, 1}, w),
                        tape.variable({c}, b), spec);
    tape.backward(ad::sum(y));
    benchmark::DoNotOptimize(y.values().data());
  }
}
BENCHMARK(BM_Conv1dPointwise)->Arg(65)->Arg(513);

void BM_GeneratorForward(benchmark::State& st) {
  const auto cfg = st.range(0) == 0 ? config::RunConfig::toy() : config::RunConfig{};
  const auto mc = cfg.model();
  model::Generator<float> g(mc.generator, 7);
  const std::size_t c = mc.bins(), t = 128;
  const auto x = random_values(c * t, 4);
  for (auto _ : st) {
    ad::Tape<float> tape;
    auto bound = g.bind(tape, false);
    auto y = bound(tape.constant({c, t}, x));
    benchmark::DoNotOptimize(y.values().data());
  }
}
BENCHMARK(BM_GeneratorForward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_StftMagnitude(benchmark::State& st) {
  dsp::StftConfig cfg;
  dsp::Waveform w;
  w.samples.resize(static_cast<std::size_t>(cfg.sample_rate));
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    w.samples[i] = 0.5 * std::sin(0.05 * static_cast<double>(i));
  }
  for (auto _ : st) {
    auto s = dsp::stft_magnitude(w, cfg);
    benchmark::DoNotOptimize(s.mag.data());
  }
}
BENCHMARK(BM_StftMagnitude)->Unit(benchmark::kMillisecond);

void BM_GriffinLim(benchmark::State& st) {
  dsp::StftConfig cfg;
  dsp::Waveform w;
  w.samples.resize(static_cast<std::size_t>(cfg.sample_rate / 2));
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    w.samples[i] = 0.5 * std::sin(0.05 * static_cast<double>(i));
  }
  const auto mag = dsp::stft_magnitude(w, cfg);
  for (auto _ : st) {
    auto y = dsp::griffin_lim(mag, 32);
    benchmark::DoNotOptimize(y.samples.data());
  }
}
BENCHMARK(BM_GriffinLim)->Unit(benchmark::kMillisecond);

void BM_Dtw(benchmark::State& st) {
  const auto t = static_cast<std::size_t>(st.range(0));
  const std::size_t dim = 40;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::vector<double> a(t * dim), b(t * dim);
  for (auto& x : a) x = n(rng);
  for (auto& x : b) x = n(rng);
  for (auto _ : st) {
    auto r = eval::dtw_align(a, t, b, t, dim);
    benchmark::DoNotOptimize(r.total_cost);
  }
}
BENCHMARK(BM_Dtw)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ToyTrainStep(benchmark::State& st) {
  const auto cfg = config::RunConfig::toy();
  const auto tc = cfg.train();
  training::TrainState state(cfg.model(), 11);
  training::Batch batch;
  batch.channels = cfg.bins;
  batch.frames = tc.crop_frames;
  const std::size_t n = batch.channels * batch.frames;
  for (std::size_t i = 0; i < tc.batch_size; ++i) {
    batch.x.push_back(random_values(n, 100 + i));
    batch.y.push_back(random_values(n, 200 + i));
  }
  for (auto _ : st) {
    auto r = training::train_step(state, batch, tc, tc.adam.learning_rate);
    benchmark::DoNotOptimize(r.total);
  }
}
BENCHMARK(BM_ToyTrainStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
