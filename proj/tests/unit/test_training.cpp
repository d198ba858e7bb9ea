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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>

#include "axialvc/error.hpp"
#include "axialvc/training/checkpoint.hpp"
#include "axialvc/training/trainer.hpp"
#include "test_util.hpp"

namespace axialvc {
namespace {

namespace fs = std::filesystem;
using training::AdamConfig;

fs::path temp_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("axialvc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

training::ModelConfig tiny_model() {
  training::ModelConfig m;
  m.generator.block.channels = 9;
  m.generator.block.temporal_kernel = 3;
  m.generator.blocks = 2;
  m.discriminator.in_channels = 9;
  m.discriminator.hidden_channels = 4;
  m.discriminator.blocks = 2;
  m.discriminator.kernel = 3;
  return m;
}

training::TrainConfig tiny_train() {
  training::TrainConfig c;
  c.batch_size = 2;
  c.crop_frames = 8;
  c.epochs = 3;
  c.adam.learning_rate = 1e-3;
  return c;
}

data::CorpusDataset random_dataset(std::size_t items, std::uint64_t seed, double level = 1.0) {
  data::CorpusDataset ds;
  ds.stft.window_length = 16;
  ds.stft.hop = 4;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < items; ++i) {
    data::SpectrogramItem it;
    it.identity = "id";
    it.name = "item" + std::to_string(i);
    it.frames = 8 + rng() % 12;
    it.mag = testing::to_float(testing::uniform_values(9 * it.frames, rng(), 0.0, level));
    ds.items.push_back(std::move(it));
  }
  return ds;
}

template <typename T>
std::vector<T> flatten(const model::ParameterSet<T>& p) {
  std::vector<T> out;
  for (const auto& e : p) out.insert(out.end(), e.value.begin(), e.value.end());
  return out;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

TEST(Adam, SingleStepFromFreshState) {
  std::vector<double> w{1.0}, g{1.0}, m{0.0}, v{0.0};
  training::adam_step<double>(w, g, m, v, 1, 2e-4, AdamConfig{});
  EXPECT_NEAR(w[0], 1.0 - 2e-4 / (1.0 + 1e-8), 1e-15);
  EXPECT_NEAR(w[0], 0.9998, 1e-10);
  EXPECT_DOUBLE_EQ(m[0], 0.5);
  EXPECT_NEAR(v[0], 0.001, 1e-15);
}

TEST(Adam, ZeroGradientLeavesParameter) {
  std::vector<double> w{0.3, -2.0}, g{0.0, 0.0}, m{0.0, 0.0}, v{0.0, 0.0};
  training::adam_step<double>(w, g, m, v, 1, 1e-2, AdamConfig{});
  EXPECT_EQ(w, (std::vector<double>{0.3, -2.0}));
}

TEST(Adam, ConstantGradientUpdateApproachesLearningRate) {
  for (double grad : {0.37, -5.0}) {
    std::vector<double> w{0.0}, g{grad}, m{0.0}, v{0.0};
    double prev = 0.0;
    for (std::uint64_t t = 1; t <= 2000; ++t) {
      prev = w[0];
      training::adam_step<double>(w, g, m, v, t, 1e-3, AdamConfig{});
    }
    const double step = w[0] - prev;
    EXPECT_NEAR(step, -1e-3 * (grad > 0 ? 1.0 : -1.0), 1e-9);
  }
}

TEST(Adam, UpdateIncrementsStepCounter) {
  model::ParameterSet<float> p;
  p.add("w", {2}, {1.0f, 2.0f});
  auto state = training::AdamState<float>::zeros_like(p);
  training::adam_update(p, {{1.0f, -1.0f}}, state, 0.1, AdamConfig{});
  EXPECT_EQ(state.step, 1u);
  EXPECT_NEAR(p[0].value[0], 0.9f, 1e-6);
  EXPECT_NEAR(p[0].value[1], 2.1f, 1e-6);
}

TEST(LrSchedule, Breakpoints) {
  EXPECT_DOUBLE_EQ(training::lr_schedule(0), 2e-4);
  EXPECT_NEAR(training::lr_schedule(50), 2e-5, 1e-20);
  EXPECT_NEAR(training::lr_schedule(199), 2e-7, 1e-22);
  EXPECT_DOUBLE_EQ(training::lr_schedule(49), 2e-4);
}

TEST(LrScheduleProperty, NonIncreasingPiecewiseConstant) {
  for (std::uint64_t e = 1; e < 400; ++e) {
    const double a = training::lr_schedule(e - 1), b = training::lr_schedule(e);
    EXPECT_LE(b, a);
    if (e % 50 == 0) {
      EXPECT_LT(b, a) << e;
    } else {
      EXPECT_EQ(b, a) << e;
    }
  }
}

TEST(SampleBatch, ExactLengthCropIsWholeItem) {
  auto ds = random_dataset(1, 1);
  ds.items[0].frames = 8;
  ds.items[0].mag.resize(9 * 8);
  std::mt19937_64 rng(2);
  const auto b = training::sample_batch(ds, ds, 3, 8, rng);
  for (const auto& crop : b.x) EXPECT_EQ(crop, ds.items[0].mag);
}

TEST(SampleBatch, CropsCopyTheDrawnWindow) {
  const auto dx = random_dataset(4, 3), dy = random_dataset(5, 4);
  std::mt19937_64 rng(5);
  const auto b = training::sample_batch(dx, dy, 6, 8, rng);
  ASSERT_EQ(b.x.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& it = dx.items[b.draws_x[i].item];
    for (std::size_t c = 0; c < 9; ++c) {
      for (std::size_t t = 0; t < 8; ++t) {
        ASSERT_EQ(b.x[i][c * 8 + t], it.mag[c * it.frames + b.draws_x[i].start + t]);
      }
    }
    EXPECT_LE(b.draws_y[i].start + 8, dy.items[b.draws_y[i].item].frames);
  }
}

TEST(SampleBatch, FixedSeedIsDeterministic) {
  const auto dx = random_dataset(4, 6), dy = random_dataset(4, 7);
  std::mt19937_64 a(8), b(8);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(training::sample_batch(dx, dy, 4, 8, a).x, training::sample_batch(dx, dy, 4, 8, b).x);
  }
}

TEST(SampleBatch, ShortItemsAreRejected) {
  auto ds = random_dataset(2, 9);
  std::mt19937_64 rng(1);
  EXPECT_THROW(training::sample_batch(ds, ds, 2, 64, rng), ValidationError);
  data::CorpusDataset empty;
  empty.stft = ds.stft;
  EXPECT_THROW(training::sample_batch(empty, ds, 2, 8, rng), ValidationError);
}

TEST(SampleBatchProperty, CropStartIsUniform) {
  data::CorpusDataset ds;
  ds.stft.window_length = 2;
  ds.stft.hop = 1;
  data::SpectrogramItem it;
  it.frames = 256;
  it.mag.assign(2 * 256, 0.0f);
  ds.items.push_back(it);
  std::mt19937_64 rng(10);
  std::vector<double> counts(129, 0.0);
  std::size_t draws = 0;
  while (draws < 100000) {
    const auto b = training::sample_batch(ds, ds, 50, 128, rng);
    for (const auto& d : b.draws_x) {
      counts[d.start] += 1.0;
      ++draws;
    }
  }
  const double expected = double(draws) / 129.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 128 degrees of freedom; 0.999 quantile is about 184.
  EXPECT_LT(chi2, 184.0);
}

TEST(StepsPerEpoch, SmallerCorpusOverBatch) {
  EXPECT_EQ(training::steps_per_epoch(100, 40, 16), 2u);
  EXPECT_EQ(training::steps_per_epoch(5, 40, 16), 1u);
  EXPECT_EQ(training::steps_per_epoch(64, 64, 16), 4u);
}

TEST(TrainStep, SameSeedGivesIdenticalReports) {
  const auto dx = random_dataset(4, 11), dy = random_dataset(4, 12);
  auto run = [&] {
    training::TrainState s(tiny_model(), 5);
    std::vector<std::string> rows;
    for (int i = 0; i < 3; ++i) {
      const auto b = training::sample_batch(dx, dy, 2, 8, s.rng);
      rows.push_back(
          training::format_log_row(s.step, training::train_step(s, b, tiny_train(), 1e-3)));
    }
    rows.push_back(std::to_string(flatten(s.g_xy.parameters()).back()));
    return rows;
  };
  EXPECT_EQ(run(), run());
}

TEST(TrainStep, StepCounterAndFiniteness) {
  const auto dx = random_dataset(4, 13), dy = random_dataset(4, 14);
  training::TrainState s(tiny_model(), 6);
  const auto b = training::sample_batch(dx, dy, 2, 8, s.rng);
  const auto r = training::train_step(s, b, tiny_train(), 1e-3);
  EXPECT_EQ(s.step, 1u);
  for (double v : {r.adv_d_x, r.adv_d_y, r.adv_g, r.cyc, r.id, r.total})
    EXPECT_TRUE(std::isfinite(v));
  for (const auto* st : {&s.adam_g_xy, &s.adam_g_yx, &s.adam_d_x, &s.adam_d_y}) {
    EXPECT_EQ(st->step, 1u);
    for (const auto& m : st->m) {
      for (float v : m) ASSERT_TRUE(std::isfinite(v));
    }
  }
  EXPECT_NEAR(r.total, model::total_generator_loss(r.adv_g, r.cyc, r.id, {}), 1e-4 * r.total);
}

TEST(TrainStepProperty, GeneratorPhaseNeverTouchesDiscriminators) {
  const auto dx = random_dataset(4, 15), dy = random_dataset(4, 16);
  auto run = [&](model::LossWeights w) {
    training::TrainState s(tiny_model(), 7);
    const auto b = training::sample_batch(dx, dy, 2, 8, s.rng);
    auto cfg = tiny_train();
    cfg.weights = w;
    training::train_step(s, b, cfg, 1e-3);
    return s;
  };
  const auto a = run({}), b = run({0.0, 0.0, 0.0});
  EXPECT_EQ(flatten(a.d_x.parameters()), flatten(b.d_x.parameters()));
  EXPECT_EQ(flatten(a.d_y.parameters()), flatten(b.d_y.parameters()));
  EXPECT_NE(flatten(a.g_xy.parameters()), flatten(b.g_xy.parameters()));
}

TEST(TrainStepProperty, DiscriminatorPhaseNeverTouchesGenerators) {
  const auto dx = random_dataset(4, 17), dy = random_dataset(4, 18);
  training::TrainState s(tiny_model(), 8);
  const auto g_before = flatten(s.g_xy.parameters()), g2_before = flatten(s.g_yx.parameters());
  const auto d_before = flatten(s.d_x.parameters());
  auto cfg = tiny_train();
  cfg.weights = {0.0, 0.0, 0.0};
  const auto b = training::sample_batch(dx, dy, 2, 8, s.rng);
  training::train_step(s, b, cfg, 1e-3);
  EXPECT_EQ(flatten(s.g_xy.parameters()), g_before);
  EXPECT_EQ(flatten(s.g_yx.parameters()), g2_before);
  EXPECT_NE(flatten(s.d_x.parameters()), d_before);
}

TEST(TrainStep, ZeroLogitDiscriminatorsLeaveOnlyAdversarialGradient) {
  training::TrainState s(tiny_model(), 9);
  for (auto* d : {&s.d_x, &s.d_y}) {
    for (auto& v : d->parameters().at("postnet.weight").value) v = 0.0f;
    for (auto& v : d->parameters().at("postnet.bias").value) v = 0.0f;
  }
  const auto xv = testing::to_float(testing::uniform_values(9 * 8, 1));
  const auto yv = testing::to_float(testing::uniform_values(9 * 8, 2));
  auto grads = [&](bool adversarial_only) {
    ad::Tape<float> tape;
    auto x = tape.constant({9, 8}, xv), y = tape.constant({9, 8}, yv);
    auto gxy = s.g_xy.bind(tape, true), gyx = s.g_yx.bind(tape, true);
    auto dx = s.d_x.bind(tape, false), dy = s.d_y.bind(tape, false);
    auto terms = model::generator_objective(x, y, gxy, gyx, dx, dy, {1.0, 0.0, 0.0}, {}, 1, 2);
    EXPECT_NEAR(terms.adv_g.item(), 2.0 * std::log(2.0), 1e-6);
    tape.backward(adversarial_only ? terms.adv_g : terms.total);
    auto g = model::collect_gradients(gxy.leaves);
    for (auto& v : model::collect_gradients(gyx.leaves)) g.push_back(v);
    return g;
  };
  const auto total = grads(false), adversarial = grads(true);
  EXPECT_EQ(total, adversarial);
  for (const auto& g : total) {
    for (float v : g) ASSERT_EQ(v, 0.0f);
  }
}

TEST(Train, DivergenceSavesDiagnosticCheckpoint) {
  const auto dir = temp_dir("diverge");
  const auto dx = random_dataset(4, 21, 1e30), dy = random_dataset(4, 22, 1e30);
  training::TrainState s(tiny_model(), 10);
  training::TrainOptions opts;
  opts.out_dir = dir;
  EXPECT_THROW(training::train(s, dx, dy, tiny_train(), opts), NonFiniteError);
  EXPECT_TRUE(fs::exists(dir / "diverged.ckpt"));
  EXPECT_NO_THROW(training::load_checkpoint(dir / "diverged.ckpt"));
}

TEST(Train, LogAndCheckpointsAreWritten) {
  const auto dir = temp_dir("train_log");
  const auto dx = random_dataset(4, 23), dy = random_dataset(4, 24);
  training::TrainState s(tiny_model(), 11);
  training::TrainOptions opts;
  opts.out_dir = dir;
  opts.checkpoint_every = 1;
  opts.config_text = "seed=11\n";
  const auto sum = training::train(s, dx, dy, tiny_train(), opts);
  EXPECT_EQ(sum.steps_run, 3u * 2u);
  const auto lines = read_lines(dir / "train_log.csv");
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], training::kLogHeader);
  EXPECT_EQ(lines[1].rfind("1,", 0), 0u);
  for (const char* f :
       {"epoch_0001.ckpt", "epoch_0002.ckpt", "epoch_0003.ckpt", "final.ckpt", "config.txt"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_EQ(training::load_checkpoint(dir / "final.ckpt").config_text, "seed=11\n");
}

TEST(Checkpoint, RoundTripIsBitwise) {
  const auto dir = temp_dir("ckpt_roundtrip");
  const auto dx = random_dataset(4, 25), dy = random_dataset(4, 26);
  training::TrainState s(tiny_model(), 12);
  const auto b = training::sample_batch(dx, dy, 2, 8, s.rng);
  training::train_step(s, b, tiny_train(), 1e-3);
  s.epoch = 4;
  training::save_checkpoint(dir / "a.ckpt", s, "cfg");
  const auto ck = training::load_checkpoint(dir / "a.ckpt");
  const auto& r = ck.state;
  EXPECT_EQ(ck.config_text, "cfg");
  EXPECT_EQ(r.config, s.config);
  EXPECT_EQ(flatten(r.g_xy.parameters()), flatten(s.g_xy.parameters()));
  EXPECT_EQ(flatten(r.g_yx.parameters()), flatten(s.g_yx.parameters()));
  EXPECT_EQ(flatten(r.d_x.parameters()), flatten(s.d_x.parameters()));
  EXPECT_EQ(flatten(r.d_y.parameters()), flatten(s.d_y.parameters()));
  for (std::size_t i = 0; i < s.d_x.spectral_state().size(); ++i) {
    EXPECT_EQ(r.d_x.spectral_state()[i].u, s.d_x.spectral_state()[i].u);
  }
  EXPECT_EQ(r.adam_d_y.m, s.adam_d_y.m);
  EXPECT_EQ(r.adam_g_xy.v, s.adam_g_xy.v);
  EXPECT_EQ(r.adam_g_yx.step, 1u);
  EXPECT_EQ(r.epoch, 4u);
  EXPECT_EQ(r.step, 1u);
  EXPECT_TRUE(r.rng == s.rng);
}

TEST(Checkpoint, TruncatedCorruptAndMismatchedFilesAreRejected) {
  const auto dir = temp_dir("ckpt_bad");
  training::TrainState s(tiny_model(), 13);
  training::save_checkpoint(dir / "good.ckpt", s);
  std::string bytes;
  {
    std::ifstream in(dir / "good.ckpt", std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto write = [&](const char* name, const std::string& b) {
    std::ofstream(dir / name, std::ios::binary) << b;
    return dir / name;
  };
  EXPECT_THROW(training::load_checkpoint(write("trunc.ckpt", bytes.substr(0, bytes.size() / 2))),
               FormatError);
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x5a;
  EXPECT_THROW(training::load_checkpoint(write("flip.ckpt", flipped)), FormatError);
  auto version = bytes;
  version[8] = 99;
  EXPECT_THROW(training::load_checkpoint(write("version.ckpt", version)), FormatError);
  EXPECT_THROW(training::load_checkpoint(write("magic.ckpt", "NOTACKPT" + bytes.substr(8))),
               FormatError);
  EXPECT_THROW(training::load_checkpoint(dir / "missing.ckpt"), ValidationError);
}

TEST(Checkpoint, ResumeMatchesUninterruptedRun) {
  const auto dx = random_dataset(4, 27), dy = random_dataset(4, 28);
  auto cfg = tiny_train();
  cfg.epochs = 4;
  const auto full_dir = temp_dir("resume_full"), part_dir = temp_dir("resume_part");

  training::TrainState full(tiny_model(), 14);
  training::TrainOptions opts;
  opts.out_dir = full_dir;
  training::train(full, dx, dy, cfg, opts);

  training::TrainState first(tiny_model(), 14);
  auto half = cfg;
  half.max_steps = 5;
  opts.out_dir = part_dir;
  training::train(first, dx, dy, half, opts);
  auto resumed = training::load_checkpoint(part_dir / "final.ckpt").state;
  training::train(resumed, dx, dy, cfg, opts);

  EXPECT_EQ(read_lines(full_dir / "train_log.csv"), read_lines(part_dir / "train_log.csv"));
  EXPECT_EQ(flatten(full.g_xy.parameters()), flatten(resumed.g_xy.parameters()));
  EXPECT_EQ(flatten(full.d_y.parameters()), flatten(resumed.d_y.parameters()));
  EXPECT_EQ(full.step, resumed.step);
}

TEST(ParallelFor, RunsEveryIndexAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(37);
  training::parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(training::parallel_for(10,
                                      [](std::size_t i) {
                                        if (i == 7) throw ValidationError("boom");
                                      }),
               ValidationError);
}

}  // namespace
}  // namespace axialvc
