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

#include "axialvc/training/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "../common/binary_io.hpp"
#include "axialvc/error.hpp"
#include "axialvc/training/checkpoint.hpp"

namespace axialvc::training {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

const char* name(model::TemporalMode m) {
  return m == model::TemporalMode::depthwise ? "depthwise" : "lightweight";
}
const char* name(model::ResidualMode m) {
  return m == model::ResidualMode::once ? "once" : "twice";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
void require_finite(const model::ParameterSet<T>& ps, const char* what) {
  for (const auto& p : ps) {
    for (T v : p.value) {
      if (!std::isfinite(v)) {
        throw NonFiniteError(std::string(what) + ": parameter " + p.name + " became non-finite");
      }
    }
  }
}

template <typename T>
void require_finite(const AdamState<T>& s, const char* what) {
  for (const auto* moments : {&s.m, &s.v}) {
    for (const auto& vec : *moments) {
      for (T v : vec) {
        if (!std::isfinite(v)) {
          throw NonFiniteError(std::string(what) + ": optimizer moment became non-finite");
        }
      }
    }
  }
}

void scale_gradients(model::Gradients<float>& g, double s) {
  for (auto& v : g) {
    for (auto& x : v) x = static_cast<float>(x * s);
  }
}

// Fixed-order reduction of per-item gradients into their mean.
model::Gradients<float> mean_gradients(std::vector<model::Gradients<float>>& items) {
  model::Gradients<float> out = std::move(items.front());
  for (std::size_t i = 1; i < items.size(); ++i) model::accumulate(out, items[i]);
  scale_gradients(out, 1.0 / double(items.size()));
  return out;
}

}  // namespace

void ModelConfig::validate() const {
  generator.validate();
  discriminator.validate();
  if (discriminator.in_channels != generator.channels()) {
    throw ValidationError(
        "model: discriminator input channels (" + std::to_string(discriminator.in_channels) +
        ") must equal generator channels (" + std::to_string(generator.channels()) + ")");
  }
}

std::string ModelConfig::canonical() const {
  const auto& b = generator.block;
  const auto& d = discriminator;
  std::ostringstream s;
  s << "channels=" << b.channels << ";temporal_kernel=" << b.temporal_kernel
    << ";temporal_mode=" << name(b.temporal_mode) << ";lightweight_share=" << b.lightweight_share
    << ";freq_kernel=" << b.freq_kernel << ";gen_slope=" << fmt(b.activation_slope)
    << ";residual_mode=" << name(b.residual_mode) << ";gen_blocks=" << generator.blocks
    << ";input_scale=" << fmt(generator.input_scale) << ";disc_in=" << d.in_channels
    << ";disc_hidden=" << d.hidden_channels << ";disc_blocks=" << d.blocks
    << ";disc_kernel=" << d.kernel << ";disc_prenet=" << d.prenet_kernel
    << ";disc_postnet=" << d.postnet_kernel << ";disc_slope=" << fmt(d.activation_slope)
    << ";disc_noise=" << fmt(d.noise_std) << ";sn_iterations=" << d.sn_iterations;
  return s.str();
}

std::uint64_t ModelConfig::hash() const { return detail::fnv1a64(canonical()); }

void TrainConfig::validate() const {
  if (epochs == 0) throw ValidationError("train: epochs must be > 0");
  if (batch_size == 0) throw ValidationError("train: batch_size must be > 0");
  if (crop_frames == 0) throw ValidationError("train: crop_frames must be > 0");
  if (d_updates_per_step == 0) throw ValidationError("train: d_updates_per_step must be > 0");
  if (anneal_every == 0) throw ValidationError("train: anneal_every must be > 0");
  if (!(anneal_factor > 0.0 && anneal_factor <= 1.0)) {
    throw ValidationError("train: anneal_factor must be in (0, 1]");
  }
  if (weights.adv < 0 || weights.cyc < 0 || weights.id < 0) {
    throw ValidationError("train: loss weights must be >= 0");
  }
  adam.validate();
}

Batch sample_batch(const data::CorpusDataset& ds_x, const data::CorpusDataset& ds_y,
                   std::size_t batch_size, std::size_t crop_frames, std::mt19937_64& rng) {
  if (ds_x.empty() || ds_y.empty()) throw ValidationError("sample_batch: empty dataset");
  if (ds_x.bins() != ds_y.bins()) {
    throw ValidationError("sample_batch: datasets disagree on bin count");
  }
  Batch b;
  b.channels = ds_x.bins();
  b.frames = crop_frames;
  auto draw = [&](const data::CorpusDataset& ds, std::vector<std::vector<float>>& out,
                  std::vector<CropDraw>& draws) {
    std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
    const std::size_t item = pick(rng);
    const auto& it = ds.items[item];
    if (it.frames < crop_frames) {
      throw ValidationError("sample_batch: item " + it.name + " has " + std::to_string(it.frames) +
                            " frames, fewer than the crop of " + std::to_string(crop_frames));
    }
    std::uniform_int_distribution<std::size_t> pos(0, it.frames - crop_frames);
    const std::size_t start = pos(rng);
    std::vector<float> crop(b.channels * crop_frames);
    for (std::size_t c = 0; c < b.channels; ++c) {
      std::copy_n(it.mag.begin() + c * it.frames + start, crop_frames,
                  crop.begin() + c * crop_frames);
    }
    out.push_back(std::move(crop));
    draws.push_back({item, start});
  };
  for (std::size_t i = 0; i < batch_size; ++i) {
    draw(ds_x, b.x, b.draws_x);
    draw(ds_y, b.y, b.draws_y);
  }
  return b;
}

TrainState::TrainState(const ModelConfig& cfg, std::uint64_t seed)
    : config(cfg),
      g_xy(cfg.generator, splitmix64(seed ^ 0x11)),
      g_yx(cfg.generator, splitmix64(seed ^ 0x22)),
      d_x(cfg.discriminator, splitmix64(seed ^ 0x33)),
      d_y(cfg.discriminator, splitmix64(seed ^ 0x44)),
      adam_g_xy(AdamState<float>::zeros_like(g_xy.parameters())),
      adam_g_yx(AdamState<float>::zeros_like(g_yx.parameters())),
      adam_d_x(AdamState<float>::zeros_like(d_x.parameters())),
      adam_d_y(AdamState<float>::zeros_like(d_y.parameters())),
      rng(splitmix64(seed ^ 0x55)) {
  cfg.validate();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(n, hw);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

model::LossReport train_step(TrainState& s, const Batch& batch, const TrainConfig& cfg, double lr) {
  const std::size_t n = batch.x.size();
  if (n == 0 || batch.y.size() != n) throw ValidationError("train_step: empty or ragged batch");
  if (batch.channels != s.config.bins()) {
    throw ValidationError("train_step: batch has " + std::to_string(batch.channels) +
                          " channels, model expects " + std::to_string(s.config.bins()));
  }
  const ad::Shape shape{batch.channels, batch.frames};

  // All randomness for the step is drawn up front, in a fixed order.
  const std::size_t d_rounds = cfg.d_updates_per_step;
  std::vector<std::array<std::uint64_t, 4>> d_seeds(d_rounds * n);
  for (auto& a : d_seeds) {
    for (auto& v : a) v = s.rng();
  }
  std::vector<std::array<std::uint64_t, 2>> g_seeds(n);
  for (auto& a : g_seeds) {
    for (auto& v : a) v = s.rng();
  }

  model::LossReport report;

  for (std::size_t round = 0; round < d_rounds; ++round) {
    s.d_x.advance_spectral_norm();
    s.d_y.advance_spectral_norm();
    std::vector<model::Gradients<float>> gx(n), gy(n);
    std::vector<double> lx(n), ly(n);
    parallel_for(n, [&](std::size_t i) {
      ad::Tape<float> tape;
      const auto g_xy = s.g_xy.bind(tape, false);
      const auto g_yx = s.g_yx.bind(tape, false);
      const auto d_x = s.d_x.bind(tape, true);
      const auto d_y = s.d_y.bind(tape, true);
      const auto x = tape.constant(shape, batch.x[i]);
      const auto y = tape.constant(shape, batch.y[i]);
      const auto fake_y = ad::detach(g_xy(x));
      const auto fake_x = ad::detach(g_yx(y));
      const auto terms =
          model::discriminator_objective(x, y, fake_x, fake_y, d_x, d_y, d_seeds[round * n + i]);
      tape.backward(terms.total);
      gx[i] = model::collect_gradients(d_x.leaves);
      gy[i] = model::collect_gradients(d_y.leaves);
      lx[i] = terms.adv_d_x.item();
      ly[i] = terms.adv_d_y.item();
    });
    adam_update(s.d_x.parameters(), mean_gradients(gx), s.adam_d_x, lr, cfg.adam);
    adam_update(s.d_y.parameters(), mean_gradients(gy), s.adam_d_y, lr, cfg.adam);
    report.adv_d_x = report.adv_d_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      report.adv_d_x += lx[i] / double(n);
      report.adv_d_y += ly[i] / double(n);
    }
  }
  require_finite(s.d_x.parameters(), "discriminator x");
  require_finite(s.d_y.parameters(), "discriminator y");

  s.d_x.advance_spectral_norm();
  s.d_y.advance_spectral_norm();
  std::vector<model::Gradients<float>> gxy(n), gyx(n);
  std::vector<std::array<double, 4>> terms(n);
  parallel_for(n, [&](std::size_t i) {
    ad::Tape<float> tape;
    const auto g_xy = s.g_xy.bind(tape, true);
    const auto g_yx = s.g_yx.bind(tape, true);
    const auto d_x = s.d_x.bind(tape, false);
    const auto d_y = s.d_y.bind(tape, false);
    const auto x = tape.constant(shape, batch.x[i]);
    const auto y = tape.constant(shape, batch.y[i]);
    const auto t = model::generator_objective(x, y, g_xy, g_yx, d_x, d_y, cfg.weights, cfg.options,
                                              g_seeds[i][0], g_seeds[i][1]);
    tape.backward(t.total);
    gxy[i] = model::collect_gradients(g_xy.leaves);
    gyx[i] = model::collect_gradients(g_yx.leaves);
    terms[i] = {t.adv_g.item(), t.cyc.item(), t.id.item(), t.total.item()};
  });
  adam_update(s.g_xy.parameters(), mean_gradients(gxy), s.adam_g_xy, lr, cfg.adam);
  adam_update(s.g_yx.parameters(), mean_gradients(gyx), s.adam_g_yx, lr, cfg.adam);
  for (std::size_t i = 0; i < n; ++i) {
    report.adv_g += terms[i][0] / double(n);
    report.cyc += terms[i][1] / double(n);
    report.id += terms[i][2] / double(n);
    report.total += terms[i][3] / double(n);
  }
  require_finite(s.g_xy.parameters(), "generator x->y");
  require_finite(s.g_yx.parameters(), "generator y->x");
  require_finite(s.adam_g_xy, "generator x->y");
  require_finite(s.adam_g_yx, "generator y->x");
  require_finite(s.adam_d_x, "discriminator x");
  require_finite(s.adam_d_y, "discriminator y");
  for (double v :
       {report.adv_d_x, report.adv_d_y, report.adv_g, report.cyc, report.id, report.total}) {
    if (!std::isfinite(v)) throw NonFiniteError("train_step: non-finite loss");
  }
  ++s.step;
  return report;
}

std::uint64_t steps_per_epoch(std::size_t nx, std::size_t ny, std::size_t batch_size) {
  if (batch_size == 0) throw ValidationError("steps_per_epoch: batch_size must be > 0");
  return std::max<std::uint64_t>(1, std::min(nx, ny) / batch_size);
}

std::string format_log_row(std::uint64_t step, const model::LossReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g",
                static_cast<unsigned long long>(step), r.adv_d_x, r.adv_d_y, r.adv_g, r.cyc, r.id,
                r.total);
  return buf;
}

TrainSummary train(TrainState& state, const data::CorpusDataset& ds_x,
                   const data::CorpusDataset& ds_y, const TrainConfig& cfg,
                   const TrainOptions& opts) {
  cfg.validate();
  state.config.validate();
  for (const auto* ds : {&ds_x, &ds_y}) {
    if (ds->empty()) throw ValidationError("train: dataset is empty");
    if (ds->bins() != state.config.bins()) {
      throw ValidationError("train: dataset has " + std::to_string(ds->bins()) +
                            " bins, model expects " + std::to_string(state.config.bins()));
    }
    for (const auto& it : ds->items) {
      if (it.frames < cfg.crop_frames) {
        throw ValidationError("train: item " + it.name + " is shorter than crop_frames");
      }
    }
  }

  const std::uint64_t spe = steps_per_epoch(ds_x.size(), ds_y.size(), cfg.batch_size);
  std::uint64_t total = cfg.epochs * spe;
  if (cfg.max_steps != 0) total = std::min(total, cfg.max_steps);

  std::ofstream log;
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    const bool fresh = state.step == 0;
    log.open(opts.out_dir / "train_log.csv", fresh ? std::ios::trunc : std::ios::app);
    if (!log) throw Error("cannot open training log in " + opts.out_dir.string());
    if (fresh) log << kLogHeader << '\n';
    if (!opts.config_text.empty()) {
      std::ofstream(opts.out_dir / "config.txt") << opts.config_text;
    }
  }

  TrainSummary summary;
  while (state.step < total) {
    state.epoch = state.step / spe;
    const double lr = cfg.learning_rate(state.epoch);
    model::LossReport r;
    try {
      const Batch batch = sample_batch(ds_x, ds_y, cfg.batch_size, cfg.crop_frames, state.rng);
      r = train_step(state, batch, cfg, lr);
    } catch (const NonFiniteError&) {
      if (!opts.out_dir.empty()) {
        save_checkpoint(opts.out_dir / "diverged.ckpt", state, opts.config_text);
      }
      throw;
    }
    state.epoch = state.step / spe;
    ++summary.steps_run;
    summary.reports.push_back(r);
    if (log.is_open()) log << format_log_row(state.step, r) << '\n';
    if (opts.on_step) opts.on_step(state.step, r);
    if (!opts.out_dir.empty() && opts.checkpoint_every != 0 && state.step % spe == 0 &&
        state.epoch % opts.checkpoint_every == 0) {
      char name[48];
      std::snprintf(name, sizeof name, "epoch_%04llu.ckpt",
                    static_cast<unsigned long long>(state.epoch));
      save_checkpoint(opts.out_dir / name, state, opts.config_text);
    }
  }
  if (!opts.out_dir.empty()) {
    log.flush();
    summary.final_checkpoint = opts.out_dir / "final.ckpt";
    save_checkpoint(summary.final_checkpoint, state, opts.config_text);
  }
  return summary;
}

}  // namespace axialvc::training
