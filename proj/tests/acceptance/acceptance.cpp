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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails. With no arguments every
// criterion runs; otherwise only the numbered ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "axialvc/config/run_config.hpp"
#include "axialvc/dsp/stft.hpp"
#include "axialvc/eval/msd.hpp"
#include "axialvc/model/inference.hpp"
#include "axialvc/model/losses.hpp"
#include "axialvc/pipeline.hpp"
#include "axialvc/training/checkpoint.hpp"
#include "axialvc/training/trainer.hpp"
#include "suites.hpp"

namespace fs = std::filesystem;
using namespace axialvc;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("axialvc_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// 1. Finite-difference gradients: ops at 1e-4, composition at 1e-3, < 2 min.
Outcome gradients() {
  const auto t0 = Clock::now();
  const auto ops = oracle::gradient_ops_suite(1e-4);
  const auto comp = oracle::gradient_composition_suite(1e-3);
  const double s = seconds_since(t0);
  return {ops.passed && comp.passed && s < 120.0,
          fmt("ops: %s; composition: %s; %.1f s (limit 120 s)", ops.detail.c_str(),
              comp.detail.c_str(), s)};
}

// 2. Generator output shape equals input shape at toy and full scale.
Outcome shapes() {
  const auto r = oracle::shape_sweep_suite(true);
  return {r.passed, r.detail};
}

// 3. Receptive field of one block at full scale.
Outcome receptive() {
  const auto rf = model::receptive_field(17, 1, 256, 1024, 22050.0);
  const bool ok = rf.samples == 5120 && std::abs(rf.milliseconds - 230.0) <= 2.5;
  return {ok, fmt("%zu samples = %.2f ms = %.3f Hz (target 5120 samples, 230 +- 2.5 ms)",
                  rf.samples, rf.milliseconds, rf.hertz)};
}

// 4. Spectral norm: 100 random 16x16 matrices, <= 50 power iterations.
Outcome spectral() {
  const auto r = oracle::spectral_norm_suite(100, 16, 50, 1e-3, 1e-3);
  return {r.passed, r.detail};
}

// 5. STFT against the direct DFT and DTW against path enumeration, < 1 min.
Outcome oracles() {
  const auto t0 = Clock::now();
  const auto stft = oracle::stft_oracle_suite(1e-6);
  const auto dtw = oracle::dtw_oracle_suite(6);
  const double s = seconds_since(t0);
  return {stft.passed && dtw.passed && s < 60.0, fmt("stft: %s; dtw: %s; %.1f s (limit 60 s)",
                                                     stft.detail.c_str(), dtw.detail.c_str(), s)};
}

// 6. Griffin-Lim on a 3-partial tone: monotone, final < 0.5 x initial.
Outcome griffin_lim() {
  const dsp::StftConfig cfg;
  dsp::Waveform w;
  w.samples.resize(22050);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = double(i) / cfg.sample_rate;
    w.samples[i] = 0.3 * std::sin(2 * std::numbers::pi * 220.0 * t) +
                   0.2 * std::sin(2 * std::numbers::pi * 440.0 * t) +
                   0.1 * std::sin(2 * std::numbers::pi * 660.0 * t);
  }
  const auto mag = dsp::stft_magnitude(w, cfg);
  std::vector<double> conv;
  dsp::griffin_lim(mag, 32, 0, &conv);
  bool monotone = true;
  for (std::size_t i = 1; i < conv.size(); ++i) monotone = monotone && conv[i] <= conv[i - 1];
  const bool ok = monotone && conv.back() < 0.5 * conv.front();
  return {ok, fmt("spectral convergence %.4f -> %.4f over %zu iterations, %s", conv.front(),
                  conv.back(), conv.size() - 1, monotone ? "non-increasing" : "NOT monotone")};
}

// 7. Identity generators give cyc = id = 0; total = adv + 10 cyc + id.
Outcome loss_identities() {
  const auto rc = config::RunConfig::toy();
  const auto mc = rc.model();
  const auto ident = model::Generator<double>::identity(mc.generator);
  const model::Generator<double> g1(mc.generator, 1), g2(mc.generator, 2);
  model::Discriminator<double> d1(mc.discriminator, 3), d2(mc.discriminator, 4);
  d1.advance_spectral_norm();
  d2.advance_spectral_norm();
  const model::LossWeights w;  // 1, 10, 1
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xv(65 * 32), yv(65 * 32);
  for (auto& v : xv) v = u(rng);
  for (auto& v : yv) v = u(rng);

  ad::Tape<double> tape;
  auto x = tape.constant({65, 32}, xv), y = tape.constant({65, 32}, yv);
  auto bd1 = d1.bind(tape, false), bd2 = d2.bind(tape, false);
  auto bi = ident.bind(tape, false);
  const auto id_terms = model::generator_objective(x, y, bi, bi, bd1, bd2, w, {}, 7, 8);
  const double cyc0 = id_terms.cyc.item(), id0 = id_terms.id.item();
  const bool zero =
      cyc0 == 0.0 && id0 == 0.0 && id_terms.total.item() == w.adv * id_terms.adv_g.item();

  auto b1 = g1.bind(tape, false), b2 = g2.bind(tape, false);
  const auto t = model::generator_objective(x, y, b1, b2, bd1, bd2, w, {}, 7, 8);
  const double expect = 1.0 * t.adv_g.item() + 10.0 * t.cyc.item() + 1.0 * t.id.item();
  const double err = std::abs(t.total.item() - expect);
  const bool sum_ok = err <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(expect);
  return {zero && sum_ok,
          fmt("identity: cyc %.3g id %.3g; random: total %.17g vs %.17g (diff %.3g)", cyc0, id0,
              t.total.item(), expect, err)};
}

// 8. Toy two-speaker conversion end to end.
Outcome toy_conversion() {
  const auto t0 = Clock::now();
  const auto rc = config::RunConfig::toy();
  const auto corpus = pipeline::build_toy_corpus(rc);
  training::TrainState state(rc.model(), rc.seed);
  const auto tc = rc.train();
  training::TrainOptions opts;
  bool finite = true;
  opts.on_step = [&](std::uint64_t, const model::LossReport& r) {
    for (double v : {r.adv_d_x, r.adv_d_y, r.adv_g, r.cyc, r.id, r.total}) {
      finite = finite && std::isfinite(v);
    }
  };
  training::TrainSummary sum;
  try {
    sum = training::train(state, corpus.x_train, corpus.y_train, tc, opts);
  } catch (const NonFiniteError& e) {
    return {false, std::string("(c) training diverged: ") + e.what()};
  }
  const double train_s = seconds_since(t0);
  const std::size_t n = sum.reports.size();
  if (n < 20) return {false, "fewer than 20 steps ran"};

  // (a) logged cyc at step 10 against the mean of the last 10 logged steps.
  const double cyc10 = sum.reports[9].cyc;
  double tail = 0.0;
  for (std::size_t i = n - 10; i < n; ++i) tail += sum.reports[i].cyc / 10.0;
  const double ratio = tail / cyc10;
  const bool a_ok = ratio <= 0.5;

  // (b) held-out A items converted toward B's corpus mean centroid.
  const auto stft = rc.stft();
  double centroid_b = 0.0;
  for (const auto& it : corpus.y_train.items) {
    centroid_b += eval::spectral_centroid(data::to_spectrogram(it, stft));
  }
  centroid_b /= double(corpus.y_train.size());
  std::size_t closer = 0;
  for (const auto& it : corpus.x_eval.items) {
    const auto src = data::to_spectrogram(it, stft);
    const auto conv = model::convert_spectrogram(state.g_xy, src);
    if (std::abs(eval::spectral_centroid(conv) - centroid_b) <
        std::abs(eval::spectral_centroid(src) - centroid_b)) {
      ++closer;
    }
  }
  const double frac = double(closer) / double(corpus.x_eval.size());
  const bool b_ok = frac >= 0.8;
  const double total_s = seconds_since(t0);
  const bool time_ok = total_s < 900.0 && n <= 2000;
  return {a_ok && b_ok && finite && time_ok,
          fmt("(a) cyc step10 %.4f -> last-10 mean %.4f, ratio %.3f (need <= 0.5) %s; "
              "(b) %zu/%zu held-out items closer to B centroid %.0f Hz (need >= 80%%) %s; "
              "(c) %s; %zu steps, train %.0f s, total %.0f s (limit 900 s)",
              cyc10, tail, ratio, a_ok ? "ok" : "FAIL", closer, corpus.x_eval.size(), centroid_b,
              b_ok ? "ok" : "FAIL", finite ? "NaN-free" : "NON-FINITE", n, train_s, total_s)};
}

// 9. Same seed reproduces the log bitwise; save/load resume matches.
Outcome determinism() {
  auto rc = config::RunConfig::toy();
  rc.toy_utterances = 16;
  rc.max_steps = 8;
  const auto corpus = pipeline::build_toy_corpus(rc);
  const auto text = config::serialize_run_config(rc);
  auto run = [&](const fs::path& dir, std::uint64_t max_steps,
                 std::optional<training::TrainState> resume) {
    auto tc = rc.train();
    tc.max_steps = max_steps;
    training::TrainState state =
        resume ? std::move(*resume) : training::TrainState(rc.model(), rc.seed);
    training::TrainOptions opts;
    opts.out_dir = dir;
    opts.checkpoint_every = 0;
    opts.config_text = text;
    training::train(state, corpus.x_train, corpus.y_train, tc, opts);
  };
  const auto a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
  run(a, 8, std::nullopt);
  run(b, 8, std::nullopt);
  run(c, 4, std::nullopt);
  run(c, 8, training::load_checkpoint(c / "final.ckpt").state);
  const bool same_log = slurp(a / "train_log.csv") == slurp(b / "train_log.csv");
  const bool same_ckpt = slurp(a / "final.ckpt") == slurp(b / "final.ckpt");
  const bool resume_log = slurp(a / "train_log.csv") == slurp(c / "train_log.csv");
  const bool resume_ckpt = slurp(a / "final.ckpt") == slurp(c / "final.ckpt");
  const bool ok = same_log && same_ckpt && resume_log && resume_ckpt;
  return {ok, fmt("repeat run: log %s, checkpoint %s; resume at step 4: log %s, checkpoint %s",
                  same_log ? "identical" : "DIFFERS", same_ckpt ? "identical" : "DIFFERS",
                  resume_log ? "identical" : "DIFFERS", resume_ckpt ? "identical" : "DIFFERS")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gradient correctness", gradients},
      {"shape preservation", shapes},
      {"receptive field", receptive},
      {"spectral normalization", spectral},
      {"stft/dtw oracle equivalence", oracles},
      {"griffin-lim convergence", griffin_lim},
      {"loss identities", loss_identities},
      {"toy conversion end-to-end", toy_conversion},
      {"determinism and persistence", determinism},
  };
  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long v = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || v < 1 || v > long(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1-%zu ...]\n", argv[0], criteria.size());
      return 1;
    }
    selected.insert(std::size_t(v));
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && !selected.count(i + 1)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s (%.1f s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
