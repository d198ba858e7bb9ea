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

#include "axialvc/pipeline.hpp"

#include <algorithm>

#include "axialvc/data/toy_corpus.hpp"
#include "axialvc/dsp/wav.hpp"
#include "axialvc/error.hpp"
#include "axialvc/eval/msd.hpp"
#include "axialvc/model/inference.hpp"

namespace axialvc::pipeline {

ToyCorpus build_toy_corpus(const config::RunConfig& cfg) {
  cfg.validate();
  const auto st = cfg.stft();
  const auto pc = cfg.preprocess();
  const std::size_t min_frames = cfg.crop_frames;
  const std::uint64_t base = cfg.seed * 4;
  ToyCorpus c;
  c.x_train = data::make_toy_dataset(data::toy_speaker_a(), cfg.toy_utterances, base + 1, st,
                                     min_frames, pc);
  c.y_train = data::make_toy_dataset(data::toy_speaker_b(), cfg.toy_utterances, base + 2, st,
                                     min_frames, pc);
  c.x_eval =
      data::make_toy_dataset(data::toy_speaker_a(), cfg.toy_heldout, base + 3, st, min_frames, pc);
  c.y_eval =
      data::make_toy_dataset(data::toy_speaker_b(), cfg.toy_heldout, base + 4, st, min_frames, pc);
  return c;
}

data::CorpusDataset prepare_directory(const std::filesystem::path& dir,
                                      const config::RunConfig& cfg, PrepareSummary* summary) {
  cfg.validate();
  if (!std::filesystem::is_directory(dir)) {
    throw ValidationError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    auto ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (e.is_regular_file() && ext == ".wav") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  PrepareSummary local;
  PrepareSummary& sum = summary ? *summary : local;
  const auto st = cfg.stft();
  std::string identity = std::filesystem::absolute(dir).lexically_normal().filename().string();
  if (identity.empty()) identity = std::filesystem::absolute(dir).parent_path().filename().string();
  data::CorpusDataset ds{st, {}};
  for (const auto& f : files) {
    try {
      const auto wave = dsp::read_wav(f, cfg.sample_rate);
      const auto pre = dsp::preprocess(wave, st, cfg.crop_frames, cfg.preprocess());
      const auto spec = dsp::stft_magnitude(pre, st);
      ds.items.push_back(data::make_item(identity, f.stem().string(), spec));
      ++sum.files;
      sum.total_frames += spec.frames;
    } catch (const Error& e) {
      ++sum.skipped;
      sum.warnings.push_back("skipping " + f.filename().string() + ": " + e.what());
    }
  }
  if (ds.items.empty()) {
    throw ValidationError("no usable WAV files in " + dir.string());
  }
  return ds;
}

Direction parse_direction(const std::string& s) {
  if (s == "x2y") return Direction::x2y;
  if (s == "y2x") return Direction::y2x;
  throw ValidationError("direction must be x2y or y2x, got '" + s + "'");
}

const model::Generator<float>& generator_for(const training::TrainState& s, Direction d) {
  return d == Direction::x2y ? s.g_xy : s.g_yx;
}

dsp::Waveform convert_wave(const training::TrainState& s, Direction d, const dsp::Waveform& in,
                           const config::RunConfig& cfg, std::uint64_t seed) {
  const auto st = cfg.stft();
  if (st.bins() != s.config.bins()) {
    throw ValidationError("bin mismatch: checkpoint expects " + std::to_string(s.config.bins()) +
                          " bins, configuration gives " + std::to_string(st.bins()));
  }
  const auto pre = dsp::preprocess(in, st, std::nullopt, cfg.preprocess());
  const auto spec = dsp::stft_magnitude(pre, st);
  const auto out = model::convert_spectrogram(generator_for(s, d), spec);
  return dsp::griffin_lim(out, cfg.griffin_lim_iterations, seed);
}

dsp::MelFilterbank eval_filterbank(const config::RunConfig& cfg) {
  return dsp::mel_matrix(cfg.eval_n_mels, cfg.bins, cfg.sample_rate, cfg.eval_f_min,
                         cfg.eval_f_max);
}

eval::EvalReport evaluate(const training::TrainState& s, Direction d,
                          const data::CorpusDataset& source, const data::CorpusDataset& target,
                          eval::Protocol protocol, const config::RunConfig& cfg) {
  if (source.empty() || target.empty()) throw ValidationError("evaluate: empty dataset");
  for (const auto* ds : {&source, &target}) {
    if (ds->bins() != s.config.bins()) {
      throw ValidationError("bin mismatch: checkpoint expects " + std::to_string(s.config.bins()) +
                            " bins, dataset has " + std::to_string(ds->bins()));
    }
  }
  const auto fb = eval_filterbank(cfg);
  const auto& g = generator_for(s, d);

  std::vector<dsp::MelSpectrogram> converted;
  for (const auto& it : source.items) {
    converted.push_back(
        dsp::log_mel(model::convert_spectrogram(g, data::to_spectrogram(it, source.stft)), fb));
  }
  std::vector<dsp::MelSpectrogram> targets;
  for (const auto& it : target.items) {
    targets.push_back(dsp::log_mel(data::to_spectrogram(it, target.stft), fb));
  }

  eval::EvalReport rep;
  rep.protocol = protocol;
  const std::string tgt_id = target.items.front().identity;
  if (protocol == eval::Protocol::parallel) {
    if (source.size() != target.size()) {
      throw ValidationError("parallel protocol needs equal item counts, got " +
                            std::to_string(source.size()) + " and " +
                            std::to_string(target.size()));
    }
    for (std::size_t i = 0; i < converted.size(); ++i) {
      rep.utterances.push_back({source.items[i].identity, tgt_id, source.items[i].name,
                                eval::msd_parallel(converted[i], targets[i], cfg.msd_multiplier),
                                0.0, 1});
    }
    rep.identities = eval::aggregate(rep.utterances);
    return rep;
  }

  if (cfg.eval_references != 0 && cfg.eval_references < targets.size()) {
    targets.resize(cfg.eval_references);
  }
  const auto stats = eval::make_target_stats(targets, cfg.msd_multiplier);
  const auto res = eval::msd_nonparallel(converted, stats);
  for (std::size_t i = 0; i < converted.size(); ++i) {
    rep.utterances.push_back({source.items[i].identity, tgt_id, source.items[i].name,
                              res.per_utterance[i].mean, res.per_utterance[i].std,
                              stats.references.size()});
  }
  rep.identities = eval::aggregate(rep.utterances);
  for (auto& a : rep.identities) a.ground_truth = res.ground_truth;
  return rep;
}

}  // namespace axialvc::pipeline
