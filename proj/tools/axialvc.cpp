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

// axialvc: prepare, train, convert, evaluate, selfcheck.
//
// Exit codes: 0 success, 1 validation error (bad arguments, configuration
// or input files), 2 internal failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>

#include "axialvc/config/run_config.hpp"
#include "axialvc/data/dataset.hpp"
#include "axialvc/dsp/wav.hpp"
#include "axialvc/error.hpp"
#include "axialvc/pipeline.hpp"
#include "axialvc/training/checkpoint.hpp"
#include "suites.hpp"

namespace fs = std::filesystem;
using namespace axialvc;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kInternal = 2;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> epochs;
  std::string out;
  bool toy = false;
};

// Toy runs start from the desk-scale preset; a --config file is applied on
// top, then --seed and --epochs.
config::RunConfig resolve_config(const Common& c) {
  config::RunConfig cfg = c.toy ? config::RunConfig::toy() : config::RunConfig{};
  if (!c.config_path.empty()) cfg = config::load_run_config(c.config_path, cfg);
  if (c.seed) cfg.seed = *c.seed;
  if (c.epochs) cfg.epochs = *c.epochs;
  if (!c.out.empty()) cfg.out_dir = c.out;
  cfg.validate();
  return cfg;
}

void print_dataset(const char* label, const data::CorpusDataset& ds) {
  std::printf("%s: %zu items, %zu frames, %zu bins\n", label, ds.size(), ds.total_frames(),
              ds.bins());
}

int cmd_prepare(const Common& c, const std::string& wav_dir) {
  const auto cfg = resolve_config(c);
  if (c.out.empty()) throw ValidationError("prepare: --out is required");
  if (c.toy) {
    const auto corpus = pipeline::build_toy_corpus(cfg);
    fs::create_directories(c.out);
    const fs::path out(c.out);
    data::save_dataset(out / "x_train.spec", corpus.x_train);
    data::save_dataset(out / "y_train.spec", corpus.y_train);
    data::save_dataset(out / "x_eval.spec", corpus.x_eval);
    data::save_dataset(out / "y_eval.spec", corpus.y_eval);
    std::ofstream(out / "config.txt") << config::serialize_run_config(cfg);
    print_dataset("x_train", corpus.x_train);
    print_dataset("y_train", corpus.y_train);
    print_dataset("x_eval", corpus.x_eval);
    print_dataset("y_eval", corpus.y_eval);
    return kOk;
  }
  if (wav_dir.empty())
    throw ValidationError("prepare: a WAV directory or --toy-corpus is required");
  pipeline::PrepareSummary sum;
  const auto ds = pipeline::prepare_directory(wav_dir, cfg, &sum);
  for (const auto& w : sum.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  const fs::path out(c.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  data::save_dataset(out, ds);
  std::printf("prepared %zu files (%zu skipped), %zu frames total -> %s\n", sum.files, sum.skipped,
              sum.total_frames, out.string().c_str());
  return kOk;
}

int cmd_train(const Common& c, std::string data_x, std::string data_y) {
  auto cfg = resolve_config(c);
  if (cfg.out_dir.empty()) throw ValidationError("train: --out is required");
  data::CorpusDataset dx, dy;
  if (c.toy) {
    auto corpus = pipeline::build_toy_corpus(cfg);
    dx = std::move(corpus.x_train);
    dy = std::move(corpus.y_train);
  } else {
    if (data_x.empty()) data_x = cfg.data_x;
    if (data_y.empty()) data_y = cfg.data_y;
    if (data_x.empty() || data_y.empty()) {
      throw ValidationError("train: two datasets (or --toy-corpus) are required");
    }
    cfg.data_x = data_x;
    cfg.data_y = data_y;
    dx = data::load_dataset(data_x);
    dy = data::load_dataset(data_y);
  }
  for (const auto* ds : {&dx, &dy}) {
    if (ds->stft != cfg.stft()) {
      throw ValidationError("train: dataset STFT (" + std::to_string(ds->stft.window_length) + "/" +
                            std::to_string(ds->stft.hop) + ", " + std::to_string(ds->bins()) +
                            " bins) does not match the configuration (" +
                            std::to_string(cfg.window_length) + "/" + std::to_string(cfg.hop) +
                            ", " + std::to_string(cfg.bins) + " bins)");
    }
  }
  print_dataset("X", dx);
  print_dataset("Y", dy);
  training::TrainState state(cfg.model(), cfg.seed);
  training::TrainOptions opts;
  opts.out_dir = cfg.out_dir;
  opts.checkpoint_every = cfg.checkpoint_every;
  opts.config_text = config::serialize_run_config(cfg);
  opts.on_step = [](std::uint64_t step, const model::LossReport& r) {
    if (step % 50 == 0) std::printf("%s\n", training::format_log_row(step, r).c_str());
  };
  const auto sum = training::train(state, dx, dy, cfg.train(), opts);
  std::printf("trained %llu steps (epoch %llu); final checkpoint %s\n",
              static_cast<unsigned long long>(sum.steps_run),
              static_cast<unsigned long long>(state.epoch), sum.final_checkpoint.string().c_str());
  return kOk;
}

config::RunConfig checkpoint_config(const training::Checkpoint& ck, const Common& c) {
  config::RunConfig cfg = config::parse_run_config(ck.config_text);
  if (!c.config_path.empty()) cfg = config::load_run_config(c.config_path, cfg);
  if (c.seed) cfg.seed = *c.seed;
  cfg.validate();
  if (cfg.bins != ck.state.config.bins()) {
    throw ValidationError("bin mismatch: checkpoint has " + std::to_string(ck.state.config.bins()) +
                          " bins, configuration has " + std::to_string(cfg.bins));
  }
  return cfg;
}

int cmd_convert(const Common& c, const std::string& ckpt, const std::string& direction,
                const std::string& in_wav, const std::string& out_wav) {
  const auto dir = pipeline::parse_direction(direction);
  const auto ck = training::load_checkpoint(ckpt);
  const auto cfg = checkpoint_config(ck, c);
  const auto wave = dsp::read_wav(in_wav, cfg.sample_rate);
  const auto out = pipeline::convert_wave(ck.state, dir, wave, cfg, cfg.seed);
  dsp::write_wav(out_wav, out);
  std::printf("wrote %s (%zu samples)\n", out_wav.c_str(), out.samples.size());
  return kOk;
}

int cmd_evaluate(const Common& c, const std::string& ckpt, std::string src, std::string tgt,
                 const std::string& protocol, const std::string& direction) {
  const auto proto = eval::parse_protocol(protocol);
  const auto dir = pipeline::parse_direction(direction);
  const auto ck = training::load_checkpoint(ckpt);
  const auto cfg = checkpoint_config(ck, c);
  data::CorpusDataset ds_src, ds_tgt;
  if (c.toy) {
    auto corpus = pipeline::build_toy_corpus(cfg);
    ds_src = dir == pipeline::Direction::x2y ? corpus.x_eval : corpus.y_eval;
    ds_tgt = dir == pipeline::Direction::x2y ? corpus.y_eval : corpus.x_eval;
  } else {
    if (src.empty() || tgt.empty()) {
      throw ValidationError("evaluate: source and target datasets (or --toy-corpus) are required");
    }
    ds_src = data::load_dataset(src);
    ds_tgt = data::load_dataset(tgt);
  }
  const auto rep = pipeline::evaluate(ck.state, dir, ds_src, ds_tgt, proto, cfg);
  const fs::path out = c.out.empty() ? fs::path(".") : fs::path(c.out);
  eval::write_report(rep, out);
  std::printf("%s", eval::report_table(rep).c_str());
  std::printf("report written to %s\n", (out / "eval_report.csv").string().c_str());
  return kOk;
}

int cmd_selfcheck() {
  bool ok = true;
  for (const auto& r : oracle::run_selfcheck()) {
    std::printf("[%s] %s (%.1f s): %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());
    ok = ok && r.passed;
  }
  std::printf("selfcheck %s\n", ok ? "passed" : "FAILED");
  return ok ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrogram-domain CycleGAN voice conversion"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "key=value configuration file");
    sub->add_option("--seed", common.seed, "override the configured seed");
    sub->add_option("--epochs", common.epochs, "override the configured epoch count");
    sub->add_option("--out", common.out, "output file or directory");
    sub->add_flag("--toy-corpus", common.toy, "use the built-in two-speaker synthetic corpus");
  };

  std::string wav_dir;
  auto* prepare = app.add_subcommand("prepare", "Preprocess a WAV directory into a dataset");
  add_common(prepare);
  prepare->add_option("wav_dir", wav_dir, "directory of mono WAV files");

  std::string data_x, data_y;
  auto* train = app.add_subcommand("train", "Train both generator/discriminator pairs");
  add_common(train);
  train->add_option("dataset_x", data_x, "dataset of identity X");
  train->add_option("dataset_y", data_y, "dataset of identity Y");

  std::string ckpt, direction = "x2y", in_wav, out_wav;
  auto* convert = app.add_subcommand("convert", "Convert a WAV file with a trained checkpoint");
  add_common(convert);
  convert->add_option("checkpoint", ckpt)->required();
  convert->add_option("direction", direction, "x2y or y2x")->required();
  convert->add_option("in_wav", in_wav)->required();
  convert->add_option("out_wav", out_wav)->required();

  std::string src, tgt, protocol = "parallel";
  auto* evaluate = app.add_subcommand("evaluate", "Mel spectral distortion of converted items");
  add_common(evaluate);
  evaluate->add_option("checkpoint", ckpt)->required();
  evaluate->add_option("source", src, "dataset to convert");
  evaluate->add_option("target", tgt, "dataset of the target identity");
  evaluate->add_option("--protocol", protocol, "parallel or nonparallel");
  evaluate->add_option("--direction", direction, "x2y (default) or y2x");

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the built-in oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*prepare) return cmd_prepare(common, wav_dir);
    if (*train) return cmd_train(common, data_x, data_y);
    if (*convert) return cmd_convert(common, ckpt, direction, in_wav, out_wav);
    if (*evaluate) return cmd_evaluate(common, ckpt, src, tgt, protocol, direction);
    if (*selfcheck) return cmd_selfcheck();
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
  return kInternal;
}
